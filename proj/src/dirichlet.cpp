#include "signflux/dirichlet.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "signflux/error.hpp"
#include "signflux/kernels.hpp"
#include "signflux/primes.hpp"
#include "signflux/summation.hpp"

namespace signflux {
namespace {

using cplx = std::complex<double>;

void require_abscissa(double sigma, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::AbscissaViolation, "delta must be positive");
  if (sigma < 1.0 + delta)
    throw Error(ErrorCode::AbscissaViolation,
                "Re s = " + std::to_string(sigma) + " below 1 + delta = " + std::to_string(1.0 + delta));
}

// q(p^j) = r2(p^j) / 4.
double quarter_r2_at_prime_power(std::uint32_t p, unsigned j) {
  if (p == 2) return 1.0;
  if (p % 4 == 1) return j + 1.0;
  return j % 2 == 0 ? 1.0 : 0.0;
}

// Envelope at p^j divided by its value at 1.
double local_envelope(SeriesKind kind, std::uint32_t p, unsigned j) {
  const double d = j + 1.0;
  switch (kind) {
    case SeriesKind::f_theta2: return d * quarter_r2_at_prime_power(p, j);
    case SeriesKind::f_f:
    case SeriesKind::f_f_chi: return d * d;
    case SeriesKind::ltilde: return d * d * quarter_r2_at_prime_power(p, j);
  }
  return 0.0;
}

// sum_{j >= 0} local_envelope(p^j) x^j in closed form.
long double local_total(SeriesKind kind, std::uint32_t p, long double x) {
  const long double y = x * x;
  const long double one = 1.0L;
  switch (kind) {
    case SeriesKind::f_theta2:
      if (p == 2) return one / ((one - x) * (one - x));
      if (p % 4 == 1) return (one + x) / std::pow(one - x, 3);
      return (one + y) / ((one - y) * (one - y));
    case SeriesKind::f_f:
    case SeriesKind::f_f_chi: return (one + x) / std::pow(one - x, 3);
    case SeriesKind::ltilde:
      if (p == 2) return (one + x) / std::pow(one - x, 3);
      if (p % 4 == 1) return (one + 4 * x + x * x) / std::pow(one - x, 4);
      return (one + 6 * y + y * y) / std::pow(one - y, 3);
  }
  return one;
}

// For p beyond the explicit product, log(local_total) <= c1 x + c2 x^2 when x <= 1/2.
std::pair<double, double> tail_log_constants(SeriesKind kind) {
  return kind == SeriesKind::ltilde ? std::pair{8.0, 5.0} : std::pair{4.0, 3.0};
}

double envelope_scale(SeriesKind kind) { return kind == SeriesKind::f_theta2 ? 4.0 : 1.0; }

struct PartialSums {
  cplx value;
  double abs = 0.0;
};

// sum_{n <= m} c[n] n^{-s} and sum |c[n]| n^{-Re s} over fixed blocks, combined in order.
PartialSums dirichlet_partial(std::span<const double> c, std::uint64_t m, cplx s) {
  const std::size_t block = kernels::kReductionBlock;
  const std::size_t blocks = (m + block - 1) / block;
  std::vector<PartialSums> part(blocks);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::uint64_t lo = 1 + b * block;
    const std::uint64_t hi = std::min<std::uint64_t>(m, lo + block - 1);
    PartialSums acc;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      if (c[n] == 0.0) continue;
      const double ln = std::log(static_cast<double>(n));
      const double mag = std::exp(-s.real() * ln);
      const double ph = -s.imag() * ln;
      acc.value += c[n] * mag * cplx(std::cos(ph), std::sin(ph));
      acc.abs += std::fabs(c[n]) * mag;
    }
    part[b] = acc;
  }
  PartialSums total;
  for (const auto& p : part) {
    total.value += p.value;
    total.abs += p.abs;
  }
  return total;
}

// Prefactor zeta(2s) or L(2s, chi) truncated at m.
PartialSums prefactor_partial(bool twisted, std::uint64_t m, cplx s) {
  PartialSums acc;
  for (std::uint64_t n = 1; n <= m; ++n) {
    const int c = twisted ? chi4(n) : 1;
    if (c == 0) continue;
    const double ln = std::log(static_cast<double>(n));
    const double mag = std::exp(-2.0 * s.real() * ln);
    const double ph = -2.0 * s.imag() * ln;
    acc.value += static_cast<double>(c) * mag * cplx(std::cos(ph), std::sin(ph));
    acc.abs += mag;
  }
  return acc;
}

}  // namespace

const char* to_string(SeriesKind kind) {
  switch (kind) {
    case SeriesKind::f_theta2: return "f_theta2";
    case SeriesKind::f_f: return "f_f";
    case SeriesKind::f_f_chi: return "f_f_chi";
    case SeriesKind::ltilde: return "ltilde";
  }
  return "?";
}

DirichletData::DirichletData(const EigenformTable& eig, const ArithmeticTables& arith,
                             std::uint64_t envelope_prime_bound)
    : limit_(eig.limit), env_primes_(primes_up_to(envelope_prime_bound)) {
  if (eig.limit != arith.limit) throw Error(ErrorCode::LimitMismatch, "eigenform and arithmetic limits differ");
  const std::uint64_t n_max = limit_;
  a_ = eig.normalized;
  r2_ = arith.r2;
  c_theta_.assign(n_max + 1, 0.0);
  c_ff_.assign(n_max + 1, 0.0);
  c_ffchi_.assign(n_max + 1, 0.0);
  c_ltilde_.assign(n_max + 1, 0.0);
  e_theta_.assign(n_max + 1, 0.0);
  e_sq_.assign(n_max + 1, 0.0);
  e_ltilde_.assign(n_max + 1, 0.0);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double a = a_[n];
    const double r = r2_[n];
    const double d = arith.divisors[n];
    c_theta_[n] = a * r;
    c_ff_[n] = a * a;
    c_ffchi_[n] = arith.chi4[n] * a * a;
    c_ltilde_[n] = a * a * r / 4.0;
    e_theta_[n] = d * r;
    e_sq_[n] = d * d;
    e_ltilde_[n] = d * d * r / 4.0;
  }
}

std::span<const double> DirichletData::coefficients(SeriesKind kind) const {
  switch (kind) {
    case SeriesKind::f_theta2: return c_theta_;
    case SeriesKind::f_f: return c_ff_;
    case SeriesKind::f_f_chi: return c_ffchi_;
    case SeriesKind::ltilde: return c_ltilde_;
  }
  return {};
}

std::span<const double> DirichletData::envelope(SeriesKind kind) const {
  switch (kind) {
    case SeriesKind::f_theta2: return e_theta_;
    case SeriesKind::f_f:
    case SeriesKind::f_f_chi: return e_sq_;
    case SeriesKind::ltilde: return e_ltilde_;
  }
  return {};
}

double DirichletData::envelope_total_upper(SeriesKind kind, double sigma) const {
  if (!(sigma > 1.0)) throw Error(ErrorCode::AbscissaViolation, "envelope series needs sigma > 1");
  long double log_total = 0.0L;
  for (std::uint32_t p : env_primes_)
    log_total += std::log(local_total(kind, p, std::pow(static_cast<long double>(p), -sigma)));
  const double bound = env_primes_.empty() ? 1.0 : static_cast<double>(env_primes_.back());
  const auto [c1, c2] = tail_log_constants(kind);
  const double s1 = std::pow(bound, 1.0 - sigma) / (sigma - 1.0);
  const double s2 = std::pow(bound, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
  return envelope_scale(kind) * static_cast<double>(std::exp(log_total)) * std::exp(c1 * s1 + c2 * s2);
}

double DirichletData::envelope_tail(SeriesKind kind, std::uint64_t m, double sigma) const {
  const double total = envelope_total_upper(kind, sigma);
  const auto env = envelope(kind);
  long double partial = 0.0L;
  for (std::uint64_t n = 1; n <= std::min(m, limit_); ++n)
    partial += env[n] * std::exp(-sigma * std::log(static_cast<long double>(n)));
  // Slack for rounding in the product and the partial sum.
  return std::max(0.0, total - static_cast<double>(partial)) + 1e-12 * total;
}

double DirichletData::local_envelope_tail(SeriesKind kind, std::uint32_t p, unsigned depth, double x) const {
  long double partial = 0.0L, xp = 1.0L;
  for (unsigned j = 0; j <= depth; ++j) {
    partial += local_envelope(kind, p, j) * xp;
    xp *= x;
  }
  const long double total = local_total(kind, p, x);
  return static_cast<double>(std::max(0.0L, total - partial) + 1e-15L * total);
}

SeriesValue eval_series(const DirichletData& data, const SeriesSpec& spec, cplx s, double tolerance) {
  require_abscissa(s.real(), spec.delta);
  if (spec.terms == 0 || spec.terms > data.limit())
    throw Error(ErrorCode::OutOfRange, "series truncation must lie in [1, " + std::to_string(data.limit()) + "]");
  const double sigma = s.real();
  const PartialSums inner = dirichlet_partial(data.coefficients(spec.kind), spec.terms, s);
  const double inner_tail = data.envelope_tail(spec.kind, spec.terms, sigma);

  SeriesValue out;
  if (spec.kind == SeriesKind::ltilde) {
    out.value = inner.value;
    out.tail_bound = inner_tail;
  } else {
    const bool twisted = spec.kind != SeriesKind::f_f;
    const PartialSums pre = prefactor_partial(twisted, spec.terms, s);
    const double m = static_cast<double>(spec.terms);
    const double pre_tail = std::pow(m, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
    out.value = inner.value * pre.value;
    out.tail_bound = inner_tail * (pre.abs + pre_tail) + inner.abs * pre_tail;
  }
  if (out.tail_bound > tolerance)
    throw Error(ErrorCode::TruncationTooShort, "tail bound " + std::to_string(out.tail_bound) +
                                                   " exceeds tolerance " + std::to_string(tolerance));
  return out;
}

unsigned max_depth(const DirichletData& data, std::uint32_t p) {
  unsigned j = 0;
  for (std::uint64_t pk = p; pk <= data.limit(); pk *= p) ++j;
  return j;
}

EulerFactorCheck solve_local_factor(const DirichletData& data, std::uint32_t p, cplx s, unsigned depth,
                                    double delta) {
  require_abscissa(s.real(), delta);
  if (p < 2) throw Error(ErrorCode::OutOfRange, "p must be prime");
  for (std::uint32_t f = 2; f * f <= p; ++f)
    if (p % f == 0) throw Error(ErrorCode::OutOfRange, std::to_string(p) + " is not prime");
  if (depth > max_depth(data, p))
    throw Error(ErrorCode::DepthUnavailable, std::to_string(p) + "^" + std::to_string(depth) +
                                                 " exceeds table limit " + std::to_string(data.limit()));

  const unsigned J = depth;
  std::vector<double> lt(J + 1), f(J + 1), g(J + 1);
  std::uint64_t pk = 1;
  for (unsigned j = 0; j <= J; ++j, pk *= p) {
    const double a2 = data.A(pk) * data.A(pk);
    lt[j] = a2 * data.r2(pk) / 4.0;
    f[j] = a2;
    g[j] = chi4(pk) * a2;
  }
  // U = Ltilde / (F G) as power series mod x^{J+1}; (F G)_0 = 1.
  std::vector<double> fg(J + 1, 0.0);
  for (unsigned i = 0; i <= J; ++i)
    for (unsigned j = 0; i + j <= J; ++j) fg[i + j] += f[i] * g[j];
  std::vector<double> u(J + 1, 0.0);
  for (unsigned j = 0; j <= J; ++j) {
    double acc = lt[j];
    for (unsigned i = 1; i <= j; ++i) acc -= fg[i] * u[j - i];
    u[j] = acc;
  }

  const cplx x = std::exp(-s * std::log(static_cast<double>(p)));
  auto eval = [&](const std::vector<double>& c) {
    cplx acc = 0.0;
    for (unsigned j = c.size(); j-- > 0;) acc = acc * x + c[j];
    return acc;
  };
  EulerFactorCheck out;
  out.p = p;
  out.depth = J;
  out.s = s;
  out.ltilde = eval(lt);
  out.ff = eval(f);
  out.ffchi = eval(g);
  out.u = eval(u);
  out.u_coefficients = u;
  out.residual = std::abs(out.ltilde - out.ff * out.ffchi * out.u);

  // Majorant of the product F G U beyond x^J: |A(p^j)|^2 <= (j+1)^2.
  std::vector<double> env(J + 1);
  for (unsigned j = 0; j <= J; ++j) env[j] = (j + 1.0) * (j + 1.0);
  std::vector<double> maj(3 * J + 1, 0.0);
  for (unsigned i = 0; i <= J; ++i)
    for (unsigned j = 0; j <= J; ++j)
      for (unsigned k = 0; k <= J; ++k) maj[i + j + k] += env[i] * env[j] * std::fabs(u[k]);
  const double ax = std::abs(x);
  double bound = 0.0, xp = std::pow(ax, J + 1.0);
  for (unsigned j = J + 1; j < maj.size(); ++j, xp *= ax) bound += maj[j] * xp;
  const double scale = std::abs(out.ltilde) + std::abs(out.ff * out.ffchi * out.u);
  out.residual_bound = bound + 16.0 * std::numeric_limits<double>::epsilon() * scale;
  return out;
}

EulerProductCheck euler_product_check(const DirichletData& data, std::uint32_t prime_bound, double sigma) {
  require_abscissa(sigma, 1e-12);
  EulerProductCheck out;
  out.sigma = sigma;
  out.prime_bound = prime_bound;
  long double lower = 1.0L, upper = 1.0L;
  for (std::uint32_t p : primes_up_to(prime_bound)) {
    const unsigned J = max_depth(data, p);
    const EulerFactorCheck fc = solve_local_factor(data, p, cplx(sigma, 0.0), J, 1e-12);
    const double x = std::pow(static_cast<double>(p), -sigma);
    lower *= fc.ltilde.real();
    upper *= fc.ltilde.real() + data.local_envelope_tail(SeriesKind::ltilde, p, J, x);
  }
  const auto [c1, c2] = tail_log_constants(SeriesKind::ltilde);
  const double pb = static_cast<double>(prime_bound);
  const double s1 = std::pow(pb, 1.0 - sigma) / (sigma - 1.0);
  const double s2 = std::pow(pb, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
  out.product = static_cast<double>(lower);
  out.product_upper = static_cast<double>(upper) * std::exp(c1 * s1 + c2 * s2);
  const SeriesValue v = eval_series(data, {SeriesKind::ltilde, data.limit(), 1e-12}, cplx(sigma, 0.0));
  out.series = v.value.real();
  out.series_tail = v.tail_bound;
  return out;
}

PerronResult perron_integral(std::span<const double> coeffs, double x, double t, double sigma,
                             double panel_tolerance) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::AbscissaViolation, "sigma must be positive");
  if (!(t > 0.0) || !(x >= 1.0)) throw Error(ErrorCode::OutOfRange, "need T > 0 and X >= 1");
  const std::uint64_t m = coeffs.empty() ? 0 : coeffs.size() - 1;

  // Integrand on s = sigma + i t, folded onto t >= 0 by conjugate symmetry:
  //   (1/pi) int_0^T Re[ sum_n w_n e^{i t l_n} / (sigma + i t) ] dt,
  // with w_n = c_n (X/n)^sigma and l_n = log(X/n).
  std::vector<double> w, l;
  for (std::uint64_t n = 1; n <= m; ++n) {
    if (coeffs[n] == 0.0) continue;
    const double ln = std::log(x / static_cast<double>(n));
    w.push_back(coeffs[n] * std::exp(sigma * ln));
    l.push_back(ln);
  }
  double omega = 1.0;
  for (double v : l) omega = std::max(omega, std::fabs(v));
  const double width = 2.0 * std::numbers::pi / omega;
  const auto panels = static_cast<std::size_t>(std::ceil(t / width));

  auto integrand = [&](double tt) {
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      re += w[k] * std::cos(tt * l[k]);
      im += w[k] * std::sin(tt * l[k]);
    }
    // Re[(re + i im) / (sigma + i tt)]
    return (re * sigma + im * tt) / (sigma * sigma + tt * tt);
  };

  std::vector<double> value(panels, 0.0), error(panels, 0.0);
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 4) reduction(|| : failed)
  for (std::size_t k = 0; k < panels; ++k) {
    const double a = k * width;
    const double b = std::min(t, (k + 1) * width);
    double err = 0.0, l1 = 0.0;
    value[k] = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, b, 12, 1e-12,
                                                                              &err, &l1);
    error[k] = err;
    if (err > panel_tolerance && err > panel_tolerance * l1) failed = true;
  }
  if (failed) throw Error(ErrorCode::QuadratureFailure, "adaptive refinement stalled above panel tolerance");

  PerronResult r;
  r.x = x;
  r.t = t;
  r.sigma = sigma;
  r.terms = m;
  r.panels = panels;
  double total = 0.0, err = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    total += value[k];
    err += error[k];
  }
  r.contour = total / std::numbers::pi;
  r.quadrature_error = err / std::numbers::pi;
  const auto whole = static_cast<std::uint64_t>(std::floor(x));
  CompensatedSum direct;
  for (std::uint64_t n = 1; n <= std::min(whole, m); ++n) {
    const double c = coeffs[n];
    direct.add(n == whole && static_cast<double>(whole) == x ? c / 2.0 : c);
  }
  r.direct = direct.value();
  r.discrepancy = std::fabs(r.contour - r.direct);
  return r;
}

PerronResult perron_check(const DirichletData& data, SumKind kind, double x, double t, double sigma,
                          const PerronOptions& options) {
  require_abscissa(sigma, options.delta);
  std::uint64_t m = options.terms;
  if (m == 0) m = std::min<std::uint64_t>(data.limit(), std::max<std::uint64_t>(2000, 40 * x));
  if (m > data.limit() || static_cast<double>(m) < x)
    throw Error(ErrorCode::OutOfRange, "Perron truncation must cover X and stay within the tables");
  const auto c = data.coefficients(kind == SumKind::S1 ? SeriesKind::f_theta2 : SeriesKind::ltilde);
  std::vector<double> coeffs(c.begin(), c.begin() + m + 1);
  if (kind == SumKind::S2)
    for (auto& v : coeffs) v *= 4.0;
  return perron_integral(coeffs, x, t, sigma, options.panel_tolerance);
}

}  // namespace signflux
