#pragma once

#include <cstdint>
#include <string>

namespace signflux {

using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  u128 u = neg ? u128(0) - static_cast<u128>(v) : static_cast<u128>(v);
  std::string out;
  while (u != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  return std::string(out.rbegin(), out.rend());
}

// Return false on overflow, leaving *out unspecified.
inline bool checked_mul(i128 a, i128 b, i128* out) { return !__builtin_mul_overflow(a, b, out); }
inline bool checked_add(i128 a, i128 b, i128* out) { return !__builtin_add_overflow(a, b, out); }
inline bool checked_sub(i128 a, i128 b, i128* out) { return !__builtin_sub_overflow(a, b, out); }

inline int sign_of(i128 v) { return (v > 0) - (v < 0); }

// p^e, or false when it does not fit.
inline bool checked_pow(i128 base, unsigned e, i128* out) {
  i128 acc = 1;
  for (unsigned i = 0; i < e; ++i)
    if (!checked_mul(acc, base, &acc)) return false;
  *out = acc;
  return true;
}

}  // namespace signflux
