#include "signflux/series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "signflux/error.hpp"
#include "signflux/kernels.hpp"
#include "signflux/summation.hpp"

namespace signflux {
namespace {

// Segment boundaries so that every window [X, 2X] is a union of segments.
struct WindowLayout {
  std::vector<std::uint64_t> xs;      // window left ends
  std::vector<std::uint64_t> bounds;  // sorted segment starts (+ final sentinel)
};

WindowLayout layout_windows(const CheckpointPlan& plan, std::uint64_t last_index) {
  WindowLayout w;
  for (std::uint64_t x : plan.xs)
    if (2 * x <= last_index) w.xs.push_back(x);
  for (std::uint64_t x : w.xs) {
    w.bounds.push_back(x);
    w.bounds.push_back(2 * x + 1);
  }
  std::sort(w.bounds.begin(), w.bounds.end());
  w.bounds.erase(std::unique(w.bounds.begin(), w.bounds.end()), w.bounds.end());
  return w;
}

std::vector<SupWindow> collect_windows(const WindowLayout& w, std::span<const double> segment_max) {
  std::vector<SupWindow> out;
  out.reserve(w.xs.size());
  for (std::uint64_t x : w.xs) {
    const auto first = std::lower_bound(w.bounds.begin(), w.bounds.end(), x) - w.bounds.begin();
    const auto last = std::lower_bound(w.bounds.begin(), w.bounds.end(), 2 * x + 1) - w.bounds.begin();
    double sup = 0.0;
    for (auto k = first; k < last; ++k) sup = std::max(sup, segment_max[k]);
    out.push_back({x, sup});
  }
  return out;
}

struct Point {
  double x;
  double y;
};

ExponentEstimate ols_loglog(const std::vector<Point>& pts, std::size_t dropped) {
  const double n = static_cast<double>(pts.size());
  double mx = 0, my = 0;
  for (const auto& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    sxy += (p.x - mx) * (p.y - my);
    syy += (p.y - my) * (p.y - my);
  }
  if (sxx <= 0) throw Error(ErrorCode::InsufficientData, "all fit points share one abscissa");
  ExponentEstimate e;
  e.slope = sxy / sxx;
  e.intercept = my - e.slope * mx;
  e.r_squared = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  e.points = pts.size();
  e.dropped = dropped;
  return e;
}

}  // namespace

CheckpointPlan make_checkpoint_plan(std::uint64_t x_min, std::uint64_t x_max, double ratio) {
  if (x_min == 0 || x_max < x_min) throw Error(ErrorCode::InvalidLimit, "need 1 <= x_min <= x_max");
  if (!(ratio > 1.0)) throw Error(ErrorCode::InvalidLimit, "checkpoint ratio must exceed 1");
  CheckpointPlan plan{x_min, x_max, ratio, {}};
  for (int i = 0;; ++i) {
    const double x = std::round(static_cast<double>(x_min) * std::pow(ratio, i));
    if (x > static_cast<double>(x_max)) break;
    const auto xi = static_cast<std::uint64_t>(x);
    if (plan.xs.empty() || xi > plan.xs.back()) plan.xs.push_back(xi);
  }
  if (plan.xs.back() != x_max) plan.xs.push_back(x_max);
  return plan;
}

CheckpointSeries series_from_terms(SumKind kind, std::span<const double> terms, const CheckpointPlan& plan,
                                   double drift) {
  if (terms.empty() || plan.xs.back() > terms.size() - 1)
    throw Error(ErrorCode::LimitMismatch, "checkpoints extend beyond the available terms");
  const WindowLayout w = layout_windows(plan, terms.size() - 1);
  const kernels::PrefixScan scan = kernels::parallel::prefix_scan(terms, plan.xs, w.bounds, drift);
  CheckpointSeries s;
  s.kind = kind;
  s.drift = drift;
  for (std::size_t i = 0; i < plan.xs.size(); ++i) s.checkpoints.push_back({plan.xs[i], scan.at[i]});
  s.sup_windows = collect_windows(w, scan.segment_max);
  return s;
}

CheckpointSeries series_from_function(SumKind kind, const std::function<double(double)>& fn,
                                      const CheckpointPlan& plan, double drift) {
  const WindowLayout w = layout_windows(plan, plan.x_max);
  std::vector<double> seg(w.bounds.empty() ? 0 : w.bounds.size() - 1, 0.0);
  for (std::size_t k = 0; k < seg.size(); ++k)
    for (std::uint64_t y = w.bounds[k]; y < w.bounds[k + 1]; ++y)
      seg[k] = std::max(seg[k], std::fabs(fn(static_cast<double>(y)) - drift * static_cast<double>(y)));
  CheckpointSeries s;
  s.kind = kind;
  s.drift = drift;
  for (std::uint64_t x : plan.xs) s.checkpoints.push_back({x, fn(static_cast<double>(x))});
  s.sup_windows = collect_windows(w, seg);
  return s;
}

StreamedSums stream_sums(const EigenformTable& eig, const ArithmeticTables& arith, const CheckpointPlan& plan) {
  if (eig.limit != arith.limit) throw Error(ErrorCode::LimitMismatch, "eigenform and arithmetic limits differ");
  if (plan.xs.back() > eig.limit) throw Error(ErrorCode::LimitMismatch, "checkpoint beyond table limit");
  const std::uint64_t limit = plan.xs.back();
  std::vector<double> t1(limit + 1, 0.0), t2(limit + 1, 0.0);
#pragma omp parallel for schedule(static)
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const double a = eig.A(n);
    const double r = arith.r2[n];
    t1[n] = a * r;
    t2[n] = a * a * r;
  }
  StreamedSums out;
  out.s1 = series_from_terms(SumKind::S1, t1, plan, 0.0);
  out.s2 = series_from_terms(SumKind::S2, t2, plan, 0.0);
  try {
    const double c = estimate_cf(out.s2).c_f;
    out.s2 = series_from_terms(SumKind::S2, t2, plan, c);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientData) throw;
  }
  return out;
}

double direct_partial_sum(const EigenformTable& eig, const ArithmeticTables& arith, SumKind kind,
                          std::uint64_t x) {
  if (x > eig.limit || x > arith.limit) throw Error(ErrorCode::OutOfRange, "x beyond table limit");
  CompensatedSum s;
  for (std::uint64_t n = 1; n <= x; ++n) {
    const double a = eig.A(n);
    s.add(kind == SumKind::S1 ? a * arith.r2[n] : a * a * arith.r2[n]);
  }
  return s.value();
}

DriftFit estimate_cf(const CheckpointSeries& s2) {
  const auto& cp = s2.checkpoints;
  if (cp.size() < 10) throw Error(ErrorCode::InsufficientData, "need at least 10 checkpoints");
  const double x_lo = static_cast<double>(cp.front().x);
  const double x_hi = static_cast<double>(cp.back().x);
  if (x_hi < 100.0 * x_lo) throw Error(ErrorCode::InsufficientData, "checkpoints span less than two decades");
  double sxy = 0, sxx = 0;
  for (const auto& c : cp) {
    const double x = static_cast<double>(c.x);
    if (x < x_hi / 10.0) continue;
    sxy += x * c.value;
    sxx += x * x;
  }
  DriftFit fit;
  fit.c_f = sxy / sxx;
  fit.residuals = s2;
  for (auto& c : fit.residuals.checkpoints) c.value -= fit.c_f * static_cast<double>(c.x);
  // Sup windows carry whatever drift the series was streamed with; they are
  // only meaningful here when that drift matches the fit.
  fit.residuals.drift = fit.c_f;
  if (s2.drift != fit.c_f) fit.residuals.sup_windows.clear();
  return fit;
}

ExponentEstimate fit_exponent(const CheckpointSeries& series, FitMode mode, std::uint64_t x_lo,
                              std::uint64_t x_hi) {
  std::vector<Point> pts;
  std::size_t dropped = 0;
  std::uint64_t used_lo = UINT64_MAX, used_hi = 0;
  auto take = [&](std::uint64_t x, std::uint64_t right, double mag) {
    if (x < x_lo || right > x_hi) return;
    if (!(mag > 0.0)) {
      ++dropped;
      return;
    }
    pts.push_back({std::log(static_cast<double>(x)), std::log(mag)});
    used_lo = std::min(used_lo, x);
    used_hi = std::max(used_hi, right);
  };
  if (mode == FitMode::sup_dyadic_abs) {
    for (const auto& w : series.sup_windows) take(w.x, 2 * w.x, w.sup);
  } else {
    for (const auto& c : series.checkpoints)
      take(c.x, c.x, std::fabs(c.value - series.drift * static_cast<double>(c.x)));
  }
  if (pts.size() < 8) {
    if (dropped > 0)
      throw Error(ErrorCode::DegenerateData, std::to_string(dropped) + " zero-magnitude points left " +
                                                 std::to_string(pts.size()) + " usable");
    throw Error(ErrorCode::InsufficientData, "need at least 8 points, have " + std::to_string(pts.size()));
  }
  ExponentEstimate e = ols_loglog(pts, dropped);
  e.x_min = used_lo;
  e.x_max = used_hi;
  return e;
}

void write_sums_csv(std::ostream& os, const StreamedSums& sums) {
  os << "kind,X,value,sup_window,residual\n";
  os.precision(17);
  for (const CheckpointSeries* s : {&sums.s1, &sums.s2}) {
    const char* name = s->kind == SumKind::S1 ? "S1" : "S2";
    for (const auto& c : s->checkpoints) {
      os << name << ',' << c.x << ',' << c.value << ',';
      const auto it = std::lower_bound(s->sup_windows.begin(), s->sup_windows.end(), c.x,
                                       [](const SupWindow& w, std::uint64_t x) { return w.x < x; });
      if (it != s->sup_windows.end() && it->x == c.x) os << it->sup;
      os << ',' << c.value - s->drift * static_cast<double>(c.x) << '\n';
    }
  }
}

}  // namespace signflux
