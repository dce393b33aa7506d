#pragma once

// Truncated Dirichlet series in the region of absolute convergence:
//   L(s, f x theta^2)   = L(2s, chi_{-4}) sum A(n) r2(n) n^{-s}
//   L(s, f x f)         = zeta(2s)        sum A(n)^2 n^{-s}
//   L(s, f x f x chi)   = L(2s, chi_{-4}) sum chi_{-4}(n) A(n)^2 n^{-s}
//   Ltilde(s)           =                 sum A(n)^2 (r2(n)/4) n^{-s}
// Every value comes with a tail bound derived from Deligne's |A(n)| <= d(n):
// the truncated envelope sum is subtracted from an upper bound for the full
// envelope Euler product, which is rigorous and close to sharp.

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "signflux/arithmetic.hpp"
#include "signflux/eigenform.hpp"
#include "signflux/series.hpp"

namespace signflux {

enum class SeriesKind { f_theta2, f_f, f_f_chi, ltilde };

const char* to_string(SeriesKind kind);

// Coefficient arrays and envelopes precomputed from a pair of tables.
class DirichletData {
 public:
  DirichletData(const EigenformTable& eig, const ArithmeticTables& arith,
                std::uint64_t envelope_prime_bound = 1'000'000);

  std::uint64_t limit() const { return limit_; }

  // Coefficients of the sum without its zeta / L(2s) prefactor; index 0 unused.
  std::span<const double> coefficients(SeriesKind kind) const;
  // Multiplicative majorant of |coefficients(kind)|.
  std::span<const double> envelope(SeriesKind kind) const;

  // Upper bound for sum_{n >= 1} envelope(n) n^{-sigma}, sigma > 1.
  double envelope_total_upper(SeriesKind kind, double sigma) const;
  // Upper bound for sum_{n > m} envelope(n) n^{-sigma}.
  double envelope_tail(SeriesKind kind, std::uint64_t m, double sigma) const;
  // sum_{j > depth} envelope(p^j) x^j for real 0 < x < 1.
  double local_envelope_tail(SeriesKind kind, std::uint32_t p, unsigned depth, double x) const;

  double A(std::uint64_t n) const { return a_[n]; }
  std::uint32_t r2(std::uint64_t n) const { return r2_[n]; }

 private:
  std::uint64_t limit_;
  std::vector<double> a_;
  std::vector<std::uint32_t> r2_;
  std::vector<double> c_theta_, c_ff_, c_ffchi_, c_ltilde_;
  std::vector<double> e_theta_, e_sq_, e_ltilde_;
  std::vector<std::uint32_t> env_primes_;
};

struct SeriesSpec {
  SeriesKind kind = SeriesKind::ltilde;
  std::uint64_t terms = 0;  // M
  double delta = 0.01;      // evaluation requires Re s >= 1 + delta
};

struct SeriesValue {
  std::complex<double> value;
  double tail_bound = 0.0;  // |true value - value| <= tail_bound
};

// Throws AbscissaViolation, OutOfRange (M beyond the tables) and
// TruncationTooShort when tail_bound exceeds `tolerance`.
SeriesValue eval_series(const DirichletData& data, const SeriesSpec& spec, std::complex<double> s,
                        double tolerance = std::numeric_limits<double>::infinity());

// Local factors at p to depth J, as power series in x = p^{-s}:
//   Ltilde_p = F_p * G_p * U_p,  F_p = sum A^2(p^j) x^j,  G_p = sum chi(p^j) A^2(p^j) x^j,
// i.e. the p-parts of L(s,f x f)/zeta(2s) and L(s,f x f x chi)/L(2s,chi).
struct EulerFactorCheck {
  std::uint32_t p = 0;
  unsigned depth = 0;
  std::complex<double> s;
  std::complex<double> ltilde;
  std::complex<double> ff;
  std::complex<double> ffchi;
  std::complex<double> u;
  std::vector<double> u_coefficients;  // u_0 .. u_J
  double residual = 0.0;        // |Ltilde_p - F_p G_p U_p| at depth J
  double residual_bound = 0.0;  // Deligne-envelope bound on the omitted x^{>J} terms
  double u_deviation() const { return std::abs(u - 1.0); }
};

EulerFactorCheck solve_local_factor(const DirichletData& data, std::uint32_t p, std::complex<double> s,
                                    unsigned depth, double delta = 0.01);
// Deepest J with p^J <= limit.
unsigned max_depth(const DirichletData& data, std::uint32_t p);

// Euler product of Ltilde over p <= prime_bound at real sigma, each factor to
// its maximal depth, against the Dirichlet sum over all n <= limit.
struct EulerProductCheck {
  double sigma = 0.0;
  std::uint32_t prime_bound = 0;
  double product = 0.0;        // truncated product (a lower bound: all terms >= 0)
  double product_upper = 0.0;  // adds depth tails and the primes beyond prime_bound
  double series = 0.0;
  double series_tail = 0.0;
  bool consistent() const {
    return series + series_tail >= product && series - series_tail <= product_upper;
  }
};

EulerProductCheck euler_product_check(const DirichletData& data, std::uint32_t prime_bound, double sigma);

struct PerronResult {
  double x = 0.0;
  double t = 0.0;
  double sigma = 0.0;
  std::uint64_t terms = 0;
  double contour = 0.0;
  double direct = 0.0;  // primed sum: last term halved when X is an integer
  double discrepancy = 0.0;
  double quadrature_error = 0.0;
  std::size_t panels = 0;
};

// (1 / 2 pi i) int_{sigma - iT}^{sigma + iT} D(s) X^s / s ds for
// D(s) = sum_{n <= M} coeffs[n] n^{-s} (coeffs[0] ignored), by adaptive
// Gauss-Kronrod on panels one fastest-oscillation long. Throws
// QuadratureFailure when a panel misses `panel_tolerance`.
PerronResult perron_integral(std::span<const double> coeffs, double x, double t, double sigma,
                             double panel_tolerance = 1e-8);

struct PerronOptions {
  std::uint64_t terms = 0;  // 0: min(limit, max(2000, 40 X))
  double delta = 0.01;
  double panel_tolerance = 1e-8;
};

// S1 uses D = L(s, f x theta^2) / L(2s, chi) = sum A(n) r2(n) n^{-s};
// S2 uses D = 4 Ltilde = sum A(n)^2 r2(n) n^{-s}, so both match the direct sums.
PerronResult perron_check(const DirichletData& data, SumKind kind, double x, double t, double sigma,
                          const PerronOptions& options = {});

}  // namespace signflux
