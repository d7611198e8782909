#include "trapcc/golden.hpp"

#include "trapcc/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

namespace trapcc {

DistanceVector GoldenEntry::distances() const {
    std::array<double, 6> values{};
    for (std::size_t i = 0; i < 6; ++i) {
        char* end = nullptr;
        values[i] = std::strtod(decimals[i].c_str(), &end);
        if (end == decimals[i].c_str() || *end != '\0')
            throw Error(errc::parse_error, "bad decimal in golden entry " + name);
    }
    return DistanceVector::from_array(values);
}

const std::vector<GoldenEntry>& golden_registry() {
    static const std::vector<GoldenEntry> registry = {
        {"E1",
         "trapezoid central configuration with m1/m2 > 1",
         {"8", "9.7414781617108145730", "7.52080447824566090",
          "7.1064329749865061893", "8.75000000000000000",
          "4.0246879466945716437"}},
        {"E2",
         "trapezoid central configuration with m1/m2 < 1",
         {"8", "12.129061710615553753", "7.8020830551846857406",
          "7.6549229903601603027", "9.5117033174926140565",
          "7.3822682494734852600"}},
        {"E3",
         "non-symmetric central configuration with m1 = m2",
         {"8", "10.13318587483539368", "7.59545875301365884",
          "7.03230033956929474", "8.63262460668978253",
          "4.37871386495945262"}},
        {"SQ",
         "unit square",
         {"1", "1.4142135623730950488", "1", "1", "1.4142135623730950488",
          "1"}},
        {"ISO",
         "isosceles trapezoid with sides (2,1,1,1), not a central configuration",
         {"2", "1.7320508075688772935", "1", "1", "1.7320508075688772935",
          "1"}},
    };
    return registry;
}

std::optional<GoldenEntry> golden_lookup(std::string_view name) {
    auto upper = [](std::string_view s) {
        std::string out(s);
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char ch) { return std::toupper(ch); });
        return out;
    };
    const std::string key = upper(name);
    for (const auto& entry : golden_registry()) {
        if (upper(entry.name) == key) return entry;
    }
    return std::nullopt;
}

} // namespace trapcc
