#pragma once

#include "bellbound/bounds.hpp"
#include "bellbound/linalg.hpp"
#include "bellbound/mermin.hpp"
#include "bellbound/observables.hpp"
#include "bellbound/oracle.hpp"
#include "bellbound/state.hpp"
#include "bellbound/states.hpp"
#include "bellbound/svetlichny.hpp"
