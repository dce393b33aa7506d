#include "ntt.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace signflux::ntt {
namespace {

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t mod) {
  std::uint64_t acc = 1;
  base %= mod;
  while (exp != 0) {
    if (exp & 1u) acc = acc * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

// Montgomery form with R = 2^32; requires mod < 2^31.
class Montgomery {
 public:
  explicit Montgomery(std::uint32_t mod) : mod_(mod) {
    std::uint32_t inv = mod;
    for (int i = 0; i < 5; ++i) inv *= 2u - mod * inv;
    neg_inv_ = 0u - inv;
    r2_ = static_cast<std::uint32_t>((u128(1) << 64) % mod);
  }

  std::uint32_t mod() const { return mod_; }

  std::uint32_t reduce(std::uint64_t x) const {
    const std::uint32_t m = static_cast<std::uint32_t>(x) * neg_inv_;
    const std::uint32_t t = static_cast<std::uint32_t>((x + std::uint64_t(m) * mod_) >> 32);
    return t >= mod_ ? t - mod_ : t;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return reduce(std::uint64_t(a) * b); }
  std::uint32_t to_mont(std::uint32_t a) const { return mul(a, r2_); }
  std::uint32_t from_mont(std::uint32_t a) const { return reduce(a); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t s = a + b;
    return s >= mod_ ? s - mod_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + mod_ - b; }

 private:
  std::uint32_t mod_;
  std::uint32_t neg_inv_;
  std::uint32_t r2_;
};

// In-place iterative radix-2 transform on Montgomery-form values.
void transform(std::vector<std::uint32_t>& a, const Montgomery& mg, std::uint32_t root, bool invert) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const std::uint32_t p = mg.mod();
  std::vector<std::uint32_t> tw;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint32_t w = pow_mod(root, (p - 1) / len, p);
    if (invert) w = pow_mod(w, p - 2, p);
    const std::size_t half = len / 2;
    tw.resize(half);
    const std::uint32_t wm = mg.to_mont(w);
    tw[0] = mg.to_mont(1);
    for (std::size_t k = 1; k < half; ++k) tw[k] = mg.mul(tw[k - 1], wm);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::uint32_t u = a[i + k];
        const std::uint32_t v = mg.mul(a[i + k + half], tw[k]);
        a[i + k] = mg.add(u, v);
        a[i + k + half] = mg.sub(u, v);
      }
    }
  }
  if (invert) {
    const std::uint32_t n_inv = mg.to_mont(pow_mod(n % p, p - 2, p));
    for (auto& x : a) x = mg.mul(x, n_inv);
  }
}

std::size_t transform_length(std::size_t len) {
  const std::size_t need = std::bit_ceil(2 * len - 1);
  if (need > kMaxTransform) throw std::length_error("ntt: series too long for the CRT primes");
  return need;
}

std::vector<std::uint32_t> product_one_prime(const std::vector<std::uint32_t>& a,
                                             const std::vector<std::uint32_t>* b, std::size_t len,
                                             std::uint32_t p) {
  const Montgomery mg(p);
  const std::uint32_t root = primitive_root(p);
  const std::size_t size = transform_length(len);
  auto load = [&](const std::vector<std::uint32_t>& src) {
    std::vector<std::uint32_t> out(size, 0);
    const std::size_t m = std::min(len, src.size());
    for (std::size_t i = 0; i < m; ++i) out[i] = mg.to_mont(src[i]);
    transform(out, mg, root, false);
    return out;
  };
  std::vector<std::uint32_t> fa = load(a);
  if (b == nullptr) {
    for (auto& x : fa) x = mg.mul(x, x);
  } else {
    const std::vector<std::uint32_t> fb = load(*b);
    for (std::size_t i = 0; i < size; ++i) fa[i] = mg.mul(fa[i], fb[i]);
  }
  transform(fa, mg, root, true);
  fa.resize(len);
  for (auto& x : fa) x = mg.from_mont(x);
  return fa;
}

}  // namespace

std::uint32_t primitive_root(std::uint32_t p) {
  std::vector<std::uint32_t> factors;
  std::uint32_t m = p - 1;
  for (std::uint32_t f = 2; std::uint64_t(f) * f <= m; ++f) {
    if (m % f == 0) {
      factors.push_back(f);
      while (m % f == 0) m /= f;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::uint32_t g = 2;; ++g) {
    const bool ok = std::all_of(factors.begin(), factors.end(),
                                [&](std::uint32_t f) { return pow_mod(g, (p - 1) / f, p) != 1; });
    if (ok) return g;
  }
}

Residues to_residues(std::span<const std::int64_t> coeffs) {
  Residues out;
  for (std::size_t k = 0; k < kPrimeCount; ++k) {
    const std::int64_t p = kPrimes[k];
    out[k].resize(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::int64_t r = coeffs[i] % p;
      if (r < 0) r += p;
      out[k][i] = static_cast<std::uint32_t>(r);
    }
  }
  return out;
}

Residues multiply_truncated(const Residues& a, const Residues& b, std::size_t len, bool parallel) {
  Residues out;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::size_t k = 0; k < kPrimeCount; ++k) out[k] = product_one_prime(a[k], &b[k], len, kPrimes[k]);
  return out;
}

Residues square_truncated(const Residues& a, std::size_t len, bool parallel) {
  Residues out;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::size_t k = 0; k < kPrimeCount; ++k) out[k] = product_one_prime(a[k], nullptr, len, kPrimes[k]);
  return out;
}

std::vector<i128> reconstruct(const Residues& r, bool parallel) {
  const std::size_t len = r[0].size();
  // prefix[i] = m_0 * ... * m_{i-1}, as an exact u128 and modulo each prime.
  std::array<u128, kPrimeCount> prefix{};
  std::array<std::array<std::uint64_t, kPrimeCount>, kPrimeCount> prefix_mod{};
  std::array<std::uint64_t, kPrimeCount> prefix_inv{};
  prefix[0] = 1;
  for (std::size_t i = 1; i < kPrimeCount; ++i) prefix[i] = prefix[i - 1] * kPrimes[i - 1];
  for (std::size_t i = 0; i < kPrimeCount; ++i) {
    for (std::size_t j = 0; j < kPrimeCount; ++j)
      prefix_mod[i][j] = static_cast<std::uint64_t>(prefix[i] % kPrimes[j]);
    prefix_inv[i] = pow_mod(prefix_mod[i][i], kPrimes[i] - 2, kPrimes[i]);
  }

  std::vector<i128> out(len);
#pragma omp parallel for schedule(static) if (parallel)
  for (std::size_t n = 0; n < len; ++n) {
    std::array<std::int64_t, kPrimeCount> digit{};
    u128 value = 0;
    for (std::size_t i = 0; i < kPrimeCount; ++i) {
      const std::uint64_t p = kPrimes[i];
      std::uint64_t partial = 0;
      for (std::size_t j = 0; j < i; ++j) {
        const std::int64_t d = digit[j];
        const std::uint64_t dm = d >= 0 ? std::uint64_t(d) % p : (p - std::uint64_t(-d) % p) % p;
        partial = (partial + dm * prefix_mod[j][i]) % p;
      }
      const std::uint64_t v = (r[i][n] + p - partial) % p * prefix_inv[i] % p;
      digit[i] = v <= (p - 1) / 2 ? static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v) - static_cast<std::int64_t>(p);
      value += static_cast<u128>(static_cast<i128>(digit[i])) * prefix[i];
    }
    out[n] = static_cast<i128>(value);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::int64_t>> eta3_terms(std::size_t len) {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  for (std::size_t j = 0;; ++j) {
    const std::size_t t = j * (j + 1) / 2;
    if (t >= len) break;
    const std::int64_t c = static_cast<std::int64_t>(2 * j + 1);
    terms.emplace_back(t, (j % 2 == 0) ? c : -c);
  }
  return terms;
}

std::vector<std::int64_t> eta6_coefficients(std::size_t len) {
  const auto terms = eta3_terms(len);
  std::vector<std::int64_t> out(len, 0);
  for (const auto& [ti, ci] : terms)
    for (const auto& [tj, cj] : terms) {
      if (ti + tj >= len) break;
      out[ti + tj] += ci * cj;
    }
  return out;
}

Residues eta24_residues(std::size_t len, bool parallel) {
  const std::vector<std::int64_t> e6 = eta6_coefficients(len);
  const Residues r6 = to_residues(e6);
  const Residues r12 = square_truncated(r6, len, parallel);
  return square_truncated(r12, len, parallel);
}

}  // namespace signflux::ntt
