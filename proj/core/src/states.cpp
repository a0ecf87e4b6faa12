#include "bellbound/states.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bellbound::states {

StateSpec StateSpec::ghz() { return {}; }

StateSpec StateSpec::gghz(double theta) {
    StateSpec s;
    s.kind = Kind::gghz;
    s.theta = theta;
    return s;
}

StateSpec StateSpec::w() {
    StateSpec s;
    s.kind = Kind::w;
    return s;
}

StateSpec StateSpec::tstate(const Mat3x9& t) {
    StateSpec s;
    s.kind = Kind::tstate;
    s.t = t;
    return s;
}

StateSpec StateSpec::mix(const StateSpec& base, double visibility) {
    StateSpec s;
    s.kind = Kind::mix;
    s.base = std::make_shared<const StateSpec>(base);
    s.visibility = visibility;
    return s;
}

StateSpec StateSpec::random(std::uint64_t seed) {
    StateSpec s;
    s.kind = Kind::random;
    s.seed = seed;
    return s;
}

void StateSpec::validate() const {
    switch (kind) {
        case Kind::gghz:
            if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
                throw std::invalid_argument("gghz theta must lie in [0, pi/2]");
            break;
        case Kind::mix:
            if (!base) throw std::invalid_argument("mix needs a base state");
            if (!(visibility >= 0.0 && visibility <= 1.0))
                throw std::invalid_argument("mix visibility must lie in [0, 1]");
            base->validate();
            break;
        case Kind::tstate:
            for (const auto& row : t)
                for (double x : row)
                    if (!std::isfinite(x)) throw std::invalid_argument("tstate entries must be finite");
            break;
        default: break;
    }
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double gaussian(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
}

DensityMatrix projector(const std::array<Complex, 8>& psi) {
    DensityMatrix m{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) m[8 * r + c] = psi[r] * std::conj(psi[c]);
    return m;
}

namespace {

DensityMatrix random_mixed(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::array<Complex, 64> g{};
    for (auto& z : g) {
        const double re = gaussian(rng);
        z = Complex(re, gaussian(rng));
    }
    DensityMatrix m{};
    double tr = 0.0;
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            Complex acc = 0.0;
            for (int k = 0; k < 8; ++k) acc += g[8 * r + k] * std::conj(g[8 * c + k]);
            m[8 * r + c] = acc;
        }
    for (int r = 0; r < 8; ++r) tr += m[9 * r].real();
    for (int r = 0; r < 8; ++r) {
        m[9 * r] = Complex(m[9 * r].real() / tr, 0.0);  // exact Hermitian diagonal
        for (int c = r + 1; c < 8; ++c) {
            m[8 * r + c] /= tr;
            m[8 * c + r] = std::conj(m[8 * r + c]);
        }
    }
    return m;
}

DensityMatrix build_matrix(const StateSpec& spec) {
    using Kind = StateSpec::Kind;
    const double h = std::numbers::sqrt2 / 2;
    switch (spec.kind) {
        case Kind::ghz: return projector({h, 0, 0, 0, 0, 0, 0, h});
        case Kind::gghz: return projector({std::cos(spec.theta), 0, 0, 0, 0, 0, 0, std::sin(spec.theta)});
        case Kind::w: {
            const double a = 1.0 / std::sqrt(3.0);
            return projector({0, a, a, 0, a, 0, 0, 0});  // |001⟩ + |010⟩ + |100⟩
        }
        case Kind::tstate: {
            const Reconstruction rec = reconstruct(CorrelationDecomposition::from_t_matrix(spec.t));
            if (!rec.is_physical) {
                std::ostringstream os;
                os << "tstate operator has minimum eigenvalue " << rec.min_eigenvalue;
                throw PhysicalityError("positive_semidefinite", os.str());
            }
            return rec.matrix;
        }
        case Kind::mix: {
            DensityMatrix m = build_matrix(*spec.base);
            for (auto& z : m) z *= spec.visibility;
            for (int r = 0; r < 8; ++r) m[9 * r] += (1.0 - spec.visibility) / 8.0;
            return m;
        }
        case Kind::random: return random_mixed(spec.seed);
    }
    throw std::logic_error("unknown state kind");
}

}  // namespace

ThreeQubitState build(const StateSpec& spec) {
    spec.validate();
    return ThreeQubitState::from_matrix(build_matrix(spec));
}

bool is_tstate(const CorrelationDecomposition& d, double tol) {
    for (const Vec3& v : {d.bloch_a(), d.bloch_b(), d.bloch_c()})
        for (double x : v)
            if (std::abs(x) > tol) return false;
    for (const Mat3& m : {d.theta(), d.phi(), d.omega()})
        for (const auto& row : m)
            for (double x : row)
                if (std::abs(x) > tol) return false;
    return true;
}

Unitary2 random_unitary(std::mt19937_64& rng) {
    double q[4];
    double n = 0.0;
    do {
        n = 0.0;
        for (double& x : q) {
            x = gaussian(rng);
            n += x * x;
        }
    } while (n < 1e-12);
    n = std::sqrt(n);
    const Complex a(q[0] / n, q[1] / n), b(q[2] / n, q[3] / n);
    return {a, b, -std::conj(b), std::conj(a)};
}

Mat3 bloch_rotation(const Unitary2& u) {
    // R_ij = ½ Tr[σ_i U σ_j U†]
    using C2 = std::array<Complex, 4>;
    const Complex i(0, 1);
    const std::array<C2, 3> sig{C2{0, 1, 1, 0}, C2{0, -i, i, 0}, C2{1, 0, 0, -1}};
    auto mul = [](const C2& a, const C2& b) {
        return C2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                  a[2] * b[1] + a[3] * b[3]};
    };
    const C2 ud{std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
    Mat3 r{};
    for (int j = 0; j < 3; ++j) {
        const C2 m = mul(mul(u, sig[j]), ud);
        for (int k = 0; k < 3; ++k) {
            const C2 p = mul(sig[k], m);
            r[k][j] = 0.5 * (p[0] + p[3]).real();
        }
    }
    return r;
}

ThreeQubitState apply_local(const ThreeQubitState& s, const Unitary2& ua, const Unitary2& ub, const Unitary2& uc) {
    std::array<Complex, 64> u{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            u[8 * r + c] = ua[2 * ((r >> 2) & 1) + ((c >> 2) & 1)] * ub[2 * ((r >> 1) & 1) + ((c >> 1) & 1)] *
                           uc[2 * (r & 1) + (c & 1)];
    const DensityMatrix& m = s.matrix();
    std::array<Complex, 64> um{};
    for (int r = 0; r < 8; ++r)
        for (int k = 0; k < 8; ++k)
            for (int c = 0; c < 8; ++c) um[8 * r + c] += u[8 * r + k] * m[8 * k + c];
    DensityMatrix out{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            Complex acc = 0.0;
            for (int k = 0; k < 8; ++k) acc += um[8 * r + k] * std::conj(u[8 * c + k]);
            out[8 * r + c] = acc;
        }
    for (int r = 0; r < 8; ++r) {
        out[9 * r] = Complex(out[9 * r].real(), 0.0);
        for (int c = r + 1; c < 8; ++c) out[8 * c + r] = std::conj(out[8 * r + c]);
    }
    return ThreeQubitState::from_matrix(out);
}

}  // namespace bellbound::states
