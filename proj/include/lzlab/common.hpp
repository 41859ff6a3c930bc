#pragma once

#include <string>
#include <string_view>

namespace lzlab {

/// Parity of the matrix dimension; SO(even) models forms with root number +1,
/// SO(odd) models root number -1.
enum class Parity { even, odd };

inline constexpr Parity parity_of(long long m) { return (m % 2 == 0) ? Parity::even : Parity::odd; }

std::string_view to_string(Parity p);
Parity parse_parity(std::string_view text);

/// +1 for even, -1 for odd.
inline constexpr int parity_sign(Parity p) { return p == Parity::even ? 1 : -1; }

}  // namespace lzlab
