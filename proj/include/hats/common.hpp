#ifndef HATS_COMMON_HPP
#define HATS_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hats {

using Vertex = int;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Thrown for contract violations: malformed inputs, failed constructor
// preconditions, strategies exceeding their declared guess budget.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string u128_to_string(u128 x) {
    if (x == 0) return "0";
    std::string s;
    while (x > 0) {
        s.insert(s.begin(), char('0' + int(x % 10)));
        x /= 10;
    }
    return s;
}

} // namespace hats

#endif
