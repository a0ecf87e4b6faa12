#include "state_parse.hpp"

#include <charconv>
#include <vector>

namespace bellbound::cli {

namespace {

double parse_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end || s.empty())
        throw ParseError("state: bad number '" + std::string(s) + "' in " + std::string(what));
    return v;
}

std::vector<double> parse_list(std::string_view s, std::string_view what) {
    std::vector<double> out;
    while (true) {
        const auto comma = s.find(',');
        out.push_back(parse_double(s.substr(0, comma), what));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace

states::StateSpec parse_state_spec(std::string_view text) {
    using states::StateSpec;
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    const bool has_arg = colon != std::string_view::npos;

    auto no_arg = [&](StateSpec s) {
        if (has_arg) throw ParseError("state: '" + std::string(head) + "' takes no argument");
        return s;
    };

    if (head == "ghz") return no_arg(StateSpec::ghz());
    if (head == "w") return no_arg(StateSpec::w());
    if (!has_arg) throw ParseError("state: unknown or incomplete spec '" + std::string(text) + "'");

    if (head == "gghz") return StateSpec::gghz(parse_double(rest, "gghz"));
    if (head == "random") {
        std::uint64_t seed = 0;
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), seed);
        if (ec != std::errc{} || p != rest.data() + rest.size() || rest.empty())
            throw ParseError("state: bad seed '" + std::string(rest) + "'");
        return StateSpec::random(seed);
    }
    if (head == "mix") {
        // the visibility is after the last colon, the base may contain colons
        const auto last = rest.rfind(':');
        if (last == std::string_view::npos) throw ParseError("state: mix needs mix:<spec>:<v>");
        return StateSpec::mix(parse_state_spec(rest.substr(0, last)), parse_double(rest.substr(last + 1), "mix"));
    }
    if (head == "tstate") {
        const std::vector<double> v = parse_list(rest, "tstate");
        Mat3x9 t{};
        if (v.size() == 27) {
            for (int i = 0; i < 3; ++i)
                for (int c = 0; c < 9; ++c) t[i][c] = v[9 * i + c];
        } else if (v.size() == 9) {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) t[i][3 * j + j] = v[3 * i + j];
        } else {
            throw ParseError("state: tstate needs 9 or 27 values, got " + std::to_string(v.size()));
        }
        return StateSpec::tstate(t);
    }
    throw ParseError("state: unknown kind '" + std::string(head) + "'");
}

}  // namespace bellbound::cli
