#pragma once

// Text form of a state spec:
//   ghz | gghz:<theta> | w | mix:<spec>:<v> | tstate:<9 or 27 floats> | random:<seed>
// tstate with 27 values fills T_ijk row-major; with 9 values D_ij it fills the
// j = k slices, T_ijj = D_ij.

#include <stdexcept>
#include <string>
#include <string_view>

#include "bellbound/states.hpp"

namespace bellbound::cli {

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

states::StateSpec parse_state_spec(std::string_view text);

}  // namespace bellbound::cli
