#pragma once

// Checkpointed partial sums
//   S1(X) = sum_{n<=X} A(n) r2(n),   S2(X) = sum_{n<=X} A(n)^2 r2(n),
// the drift estimate c_f in S2(X) ~ c_f X, and log-log growth exponents.

#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "signflux/arithmetic.hpp"
#include "signflux/eigenform.hpp"

namespace signflux {

enum class SumKind { S1, S2 };

struct Checkpoint {
  std::uint64_t x;
  double value;
};

// sup_{X <= Y <= 2X} |S(Y) - drift * Y|
struct SupWindow {
  std::uint64_t x;
  double sup;
};

struct CheckpointSeries {
  SumKind kind = SumKind::S1;
  double drift = 0.0;  // 0 for S1; the fitted c_f for S2 once known
  std::vector<Checkpoint> checkpoints;
  std::vector<SupWindow> sup_windows;
};

struct CheckpointPlan {
  std::uint64_t x_min = 1;
  std::uint64_t x_max = 1;
  double ratio = std::exp2(0.125);
  std::vector<std::uint64_t> xs;  // strictly increasing, rounded x_min * ratio^i
};

CheckpointPlan make_checkpoint_plan(std::uint64_t x_min, std::uint64_t x_max,
                                    double ratio = std::exp2(0.125));

// Builds a series from summands terms[1..] (terms[0] ignored): checkpoint values
// at plan.xs and sup windows for every checkpoint X with 2X <= terms.size()-1.
CheckpointSeries series_from_terms(SumKind kind, std::span<const double> terms, const CheckpointPlan& plan,
                                   double drift);

// Same, for a closed-form S(Y) evaluated at every integer Y (synthetic data).
CheckpointSeries series_from_function(SumKind kind, const std::function<double(double)>& s,
                                      const CheckpointPlan& plan, double drift);

struct StreamedSums {
  CheckpointSeries s1;
  CheckpointSeries s2;
};

// One compensated pass for both sums. When the S2 checkpoints support it,
// c_f is fitted and a second pass fills S2's sup windows with drift c_f;
// otherwise S2's windows use drift 0.
StreamedSums stream_sums(const EigenformTable& eig, const ArithmeticTables& arith, const CheckpointPlan& plan);

// Plain single loop; the independent reference for a single checkpoint.
double direct_partial_sum(const EigenformTable& eig, const ArithmeticTables& arith, SumKind kind,
                          std::uint64_t x);

struct DriftFit {
  double c_f;
  CheckpointSeries residuals;  // value = S2(X) - c_f X
};

// Least squares through the origin of S2(X) against X over the top decade.
// Needs >= 10 checkpoints spanning >= 2 decades (InsufficientData otherwise).
DriftFit estimate_cf(const CheckpointSeries& s2);

enum class FitMode {
  sup_dyadic_abs,  // log sup-window magnitude vs log X
  residual_abs,    // log |value - drift X| at checkpoints vs log X
};

struct ExponentEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::uint64_t x_min = 0;
  std::uint64_t x_max = 0;
  std::size_t points = 0;
  std::size_t dropped = 0;  // zero-magnitude points excluded from the fit
};

// OLS of log magnitude on log X over points with x_lo <= X and (window end or
// checkpoint) <= x_hi. Needs >= 8 usable points.
ExponentEstimate fit_exponent(const CheckpointSeries& series, FitMode mode, std::uint64_t x_lo = 0,
                              std::uint64_t x_hi = UINT64_MAX);

// CSV with columns kind,X,value,sup_window,residual.
void write_sums_csv(std::ostream& os, const StreamedSums& sums);

}  // namespace signflux
