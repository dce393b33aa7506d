// signflux command-line front end. JSON reports go to stdout, CSV to files.
// Exit codes: 0 success, 1 criterion failure, 2 usage or configuration error.
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "signflux/acceptance.hpp"
#include "signflux/arithmetic.hpp"
#include "signflux/dirichlet.hpp"
#include "signflux/eigenform.hpp"
#include "signflux/error.hpp"
#include "signflux/kernels.hpp"
#include "signflux/primes.hpp"
#include "signflux/rational.hpp"
#include "signflux/series.hpp"
#include "signflux/signscan.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace signflux;

namespace {

constexpr int kExitCriterion = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string limit_text = "1000000";
  std::uint64_t limit = 0;
  std::string cache;
  std::string out;
  std::string dump_arith;
  double ratio = std::exp2(0.125);
  int threads = 0;

  double x = 0.0;
  std::string r_text = "0.76";
  double t = 800.0;
  double sigma = 1.25;
  std::uint32_t p = 2;
  std::string s_text = "2,0";
  unsigned depth = 0;
  std::string kind = "both";
  std::string series = "ltilde";
  std::uint64_t terms = 0;

  std::string alpha = "0", beta = "0", gamma = "1", eta = "0";
  std::string beta_prime, eta_prime, eta_double_prime;
};

// "1000000", "1e6" and "10^6" are all accepted.
std::uint64_t parse_limit(const std::string& text) {
  auto bad = [&] { return Error(ErrorCode::InvalidLimit, "cannot parse limit '" + text + "'"); };
  const auto caret = text.find('^');
  long double value;
  try {
    std::size_t used = 0;
    if (caret != std::string::npos) {
      const long double base = std::stold(text.substr(0, caret), &used);
      if (used != caret) throw bad();
      const std::string exp_text = text.substr(caret + 1);
      const long double e = std::stold(exp_text, &used);
      if (used != exp_text.size()) throw bad();
      value = std::pow(base, e);
    } else {
      value = std::stold(text, &used);
      if (used != text.size()) throw bad();
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (!(value >= 1) || value != std::floor(value)) throw Error(ErrorCode::InvalidLimit, "limit must be a positive integer");
  if (value > 1e19L) throw Error(ErrorCode::OverflowRisk, "limit " + text + " exceeds the certified bound " +
                                                          std::to_string(certified_limit(12)));
  return static_cast<std::uint64_t>(value);
}

void validate_limit(RunConfig& cfg) {
  cfg.limit = parse_limit(cfg.limit_text);
  if (cfg.limit > certified_limit(12))
    throw Error(ErrorCode::OverflowRisk, "limit " + std::to_string(cfg.limit) + " exceeds the certified bound " +
                                             std::to_string(certified_limit(12)) + " for exact weight-12 arithmetic");
  if (!(cfg.ratio > 1.0)) throw CLI::ValidationError("--ratio", "must exceed 1");
}

std::complex<double> parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--s", "expected re or re,im");
  }
}

std::string cache_path(const RunConfig& cfg) {
  if (!cfg.cache.empty()) return cfg.cache;
  if (const char* env = std::getenv("SIGNFLUX_CACHE")) return env;
  return {};
}

// Coefficients from the cache when it covers the limit, otherwise computed.
EigenformTable load_eigenform(const RunConfig& cfg) {
  const std::string path = cache_path(cfg);
  if (!path.empty() && fs::exists(path)) {
    EigenformTable t = read_cache(path);
    if (t.weight != 12) throw Error(ErrorCode::LimitMismatch, "cache holds weight " + std::to_string(t.weight));
    if (t.limit >= cfg.limit) return t.limit == cfg.limit ? t : truncated(t, cfg.limit);
  }
  return build_delta_table(cfg.limit);
}

json checkpoint_json(const CheckpointSeries& s) {
  json rows = json::array();
  for (const auto& c : s.checkpoints) rows.push_back({c.x, c.value});
  return rows;
}

json estimate_json(const CheckpointSeries& s, FitMode mode, std::uint64_t lo, std::uint64_t hi) {
  try {
    const auto e = fit_exponent(s, mode, lo, hi);
    return {{"slope", e.slope}, {"intercept", e.intercept}, {"r_squared", e.r_squared}, {"x_min", e.x_min},
            {"x_max", e.x_max}, {"points", e.points}, {"dropped", e.dropped}};
  } catch (const Error& err) {
    return {{"error", std::string(to_string(err.code()))}, {"message", err.what()}};
  }
}

json report_json(const SignChangeReport& r) {
  json changes = json::array();
  for (const auto& [a, b] : r.changes) changes.push_back({a, b});
  return {{"x_begin", r.x_begin}, {"x_end", r.x_end}, {"count", r.count}, {"changes", changes}};
}

json base(const char* command, const RunConfig& cfg) {
  return {{"schema", 1}, {"command", command}, {"limit", cfg.limit}};
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::OutOfRange, "cannot write " + path);
  os.precision(17);
  return os;
}

// --- subcommands -----------------------------------------------------------

int cmd_build(const RunConfig& cfg) {
  const std::string path = cache_path(cfg).empty() ? std::string("signflux.cache") : cache_path(cfg);
  const EigenformTable eig = build_delta_table(cfg.limit);
  write_cache(eig, path);
  json j = base("build", cfg);
  j["weight"] = eig.weight;
  j["cache"] = path;
  j["bytes"] = fs::file_size(path);
  json head = json::array();
  for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(10, cfg.limit); ++n) head.push_back(to_string(eig.exact[n]));
  j["a_head"] = head;
  if (!cfg.dump_arith.empty()) {
    const ArithmeticTables arith = sieve_arithmetic(cfg.limit);
    auto os = open_out(cfg.dump_arith);
    write_arith_csv(os, arith, b_coefficients(eig, arith));
    j["arith_csv"] = cfg.dump_arith;
  }
  emit(j);
  return 0;
}

int cmd_sums(const RunConfig& cfg) {
  const EigenformTable eig = load_eigenform(cfg);
  const ArithmeticTables arith = sieve_arithmetic(cfg.limit);
  const StreamedSums sums = stream_sums(eig, arith, make_checkpoint_plan(1, cfg.limit, cfg.ratio));
  json j = base("sums", cfg);
  j["ratio"] = cfg.ratio;
  j["s1_sup_exponent"] = estimate_json(sums.s1, FitMode::sup_dyadic_abs, 1000, cfg.limit);
  try {
    j["c_f"] = estimate_cf(sums.s2).c_f;
  } catch (const Error& err) {
    j["c_f"] = nullptr;
    j["c_f_error"] = err.what();
  }
  j["s2_drift"] = sums.s2.drift;
  j["s2_residual_sup_exponent"] = estimate_json(sums.s2, FitMode::sup_dyadic_abs, 1000, cfg.limit);
  j["s1"] = checkpoint_json(sums.s1);
  j["s2"] = checkpoint_json(sums.s2);
  if (!cfg.out.empty()) {
    auto os = open_out(cfg.out);
    write_sums_csv(os, sums);
    j["csv"] = cfg.out;
  }
  emit(j);
  return 0;
}

int cmd_scan(const RunConfig& cfg) {
  const Rational r = parse_rational(cfg.r_text);
  const auto x = static_cast<std::uint64_t>(cfg.x);
  if (cfg.x != std::floor(cfg.x)) throw CLI::ValidationError("--X", "scan needs an integer X");
  if (x < 2 || x + window_length(x, r) > cfg.limit)
    throw Error(ErrorCode::OutOfRange, "window [X, X + X^r] must lie in [2, limit]");
  const EigenformTable eig = load_eigenform(cfg);
  const ArithmeticTables arith = sieve_arithmetic(cfg.limit);
  json j = base("scan", cfg);
  j["X"] = x;
  j["r"] = to_string(r);
  j["report"] = report_json(scan_window(eig, arith, x, r));
  emit(j);
  return 0;
}

int cmd_count(const RunConfig& cfg) {
  const auto x = static_cast<std::uint64_t>(cfg.x);
  if (cfg.x != std::floor(cfg.x)) throw CLI::ValidationError("--X", "count needs an integer X");
  if (x < 1 || 2 * x > cfg.limit) throw Error(ErrorCode::OutOfRange, "[X, 2X] must lie in [1, limit]");
  const EigenformTable eig = load_eigenform(cfg);
  const ArithmeticTables arith = sieve_arithmetic(cfg.limit);
  const auto report = count_dyadic(eig, arith, x);
  json j = base("count", cfg);
  j["X"] = x;
  j["count"] = report.count;
  j["x_quarter"] = std::pow(static_cast<double>(x), 0.25);
  j["count_over_sqrt_x"] = report.count / std::sqrt(static_cast<double>(x));
  j["meets_quarter_bound"] = static_cast<double>(report.count) >= std::pow(static_cast<double>(x), 0.25);
  emit(j);
  return 0;
}

int cmd_exponents(const RunConfig& cfg) {
  CriteriaParams params;
  params.alpha = parse_rational(cfg.alpha);
  params.beta = parse_rational(cfg.beta);
  params.gamma = parse_rational(cfg.gamma);
  params.eta = parse_rational(cfg.eta);
  json j = {{"schema", 1}, {"command", "exponents"}};
  const bool transfer = !cfg.beta_prime.empty() || !cfg.eta_prime.empty() || !cfg.eta_double_prime.empty();
  if (transfer) {
    if (cfg.beta_prime.empty() || cfg.eta_prime.empty() || cfg.eta_double_prime.empty())
      throw CLI::ValidationError("--beta-prime", "transfer needs --beta-prime, --eta-prime and --eta-double-prime");
    const auto t = transfer_exponents(parse_rational(cfg.beta_prime), parse_rational(cfg.eta_prime),
                                      parse_rational(cfg.eta_double_prime));
    params.beta = t.beta_bound;
    params.eta = t.eta_bound;
    j["transferred"] = {{"beta_bound", to_string(t.beta_bound)}, {"eta_bound", to_string(t.eta_bound)}};
  }
  j["params"] = {{"alpha", to_string(params.alpha)}, {"beta", to_string(params.beta)},
                 {"gamma", to_string(params.gamma)}, {"eta", to_string(params.eta)}};
  if (const auto r = admissible_r(params)) {
    j["r_min"] = to_string(r->r_min);
    j["r_min_value"] = to_double(r->r_min);
  } else {
    j["r_min"] = nullptr;
  }
  emit(j);
  return 0;
}

int cmd_euler(const RunConfig& cfg) {
  const std::complex<double> s = parse_complex(cfg.s_text);
  if (!is_prime(cfg.p)) throw CLI::ValidationError("--p", std::to_string(cfg.p) + " is not prime");
  if (cfg.p > cfg.limit) throw Error(ErrorCode::DepthUnavailable, "p exceeds the table limit");
  const EigenformTable eig = load_eigenform(cfg);
  const ArithmeticTables arith = sieve_arithmetic(cfg.limit);
  const DirichletData data(eig, arith);
  const unsigned depth = cfg.depth ? cfg.depth : max_depth(data, cfg.p);
  const auto fc = solve_local_factor(data, cfg.p, s, depth);
  auto cx = [](std::complex<double> z) { return json::array({z.real(), z.imag()}); };
  json j = base("euler", cfg);
  j["p"] = cfg.p;
  j["s"] = cx(s);
  j["depth"] = fc.depth;
  j["ltilde_p"] = cx(fc.ltilde);
  j["ff_p"] = cx(fc.ff);
  j["ffchi_p"] = cx(fc.ffchi);
  j["u_p"] = cx(fc.u);
  j["u_deviation"] = fc.u_deviation();
  j["u_deviation_times_p2"] = fc.u_deviation() * cfg.p * cfg.p;
  j["u_coefficients"] = fc.u_coefficients;
  j["residual"] = fc.residual;
  j["residual_bound"] = fc.residual_bound;
  if (s.imag() == 0.0) {
    const auto prod = euler_product_check(data, std::max<std::uint32_t>(cfg.p, 100), s.real());
    j["euler_product"] = {{"prime_bound", prod.prime_bound}, {"product", prod.product},
                          {"product_upper", prod.product_upper}, {"series", prod.series},
                          {"series_tail", prod.series_tail}, {"consistent", prod.consistent()}};
  }
  emit(j);
  return 0;
}

SeriesKind parse_series_kind(const std::string& name) {
  for (SeriesKind k : {SeriesKind::f_theta2, SeriesKind::f_f, SeriesKind::f_f_chi, SeriesKind::ltilde})
    if (name == to_string(k)) return k;
  throw CLI::ValidationError("--series", "unknown series " + name);
}

int cmd_eval(const RunConfig& cfg) {
  const std::complex<double> s = parse_complex(cfg.s_text);
  const SeriesKind kind = parse_series_kind(cfg.series);
  const EigenformTable eig = load_eigenform(cfg);
  const ArithmeticTables arith = sieve_arithmetic(cfg.limit);
  const DirichletData data(eig, arith);
  const auto v = eval_series(data, {kind, cfg.terms ? cfg.terms : cfg.limit}, s);
  json j = base("eval", cfg);
  j["series"] = cfg.series;
  j["s"] = {s.real(), s.imag()};
  j["value"] = {v.value.real(), v.value.imag()};
  j["tail_bound"] = v.tail_bound;
  emit(j);
  return 0;
}

int cmd_perron(const RunConfig& cfg) {
  if (!(cfg.x > 0) || !(cfg.t > 0)) throw CLI::ValidationError("--X/--T", "must be positive");
  if (cfg.kind != "s1" && cfg.kind != "s2" && cfg.kind != "both")
    throw CLI::ValidationError("--kind", "expected s1, s2 or both");
  const EigenformTable eig = load_eigenform(cfg);
  const ArithmeticTables arith = sieve_arithmetic(cfg.limit);
  const DirichletData data(eig, arith);
  PerronOptions opts;
  opts.terms = cfg.terms;
  json j = base("perron", cfg);
  for (SumKind kind : {SumKind::S1, SumKind::S2}) {
    const char* name = kind == SumKind::S1 ? "s1" : "s2";
    if (cfg.kind != "both" && cfg.kind != name) continue;
    const auto r = perron_check(data, kind, cfg.x, cfg.t, cfg.sigma, opts);
    j[name] = {{"X", r.x}, {"T", r.t}, {"sigma", r.sigma}, {"terms", r.terms}, {"contour", r.contour},
               {"direct", r.direct}, {"discrepancy", r.discrepancy}, {"quadrature_error", r.quadrature_error},
               {"panels", r.panels}};
  }
  emit(j);
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  AcceptanceContext ctx{cfg.limit, load_eigenform(cfg), sieve_arithmetic(cfg.limit)};
  const auto results = run_acceptance(ctx);
  const bool ok = print_results(std::cout, results);
  if (!cfg.out.empty()) {
    json rows = json::array();
    for (const auto& r : results)
      rows.push_back({{"id", r.id}, {"name", r.name}, {"outcome", to_string(r.outcome)}, {"detail", r.detail},
                      {"seconds", r.seconds}});
    auto os = open_out(cfg.out);
    os << json{{"schema", 1}, {"command", "verify"}, {"limit", cfg.limit}, {"results", rows}}.dump(2) << '\n';
  }
  return ok ? 0 : kExitCriterion;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"signflux: sign changes of Hecke eigenform coefficients on sums of two squares"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--limit", cfg.limit_text, "table limit N (e.g. 1000000, 1e6, 10^6)")->capture_default_str();
  app.add_option("--cache", cfg.cache, "coefficient cache path (default $SIGNFLUX_CACHE)");
  app.add_option("--threads", cfg.threads, "worker threads (0 = all available)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", cfg.out, "output file (CSV for sums, JSON for verify)");
  app.add_option("--ratio", cfg.ratio, "checkpoint ratio")->capture_default_str();

  auto* build = app.add_subcommand("build", "compute a(n) for n <= N and write the cache");
  build->add_option("--dump-arith", cfg.dump_arith, "also write n,r2,chi4,mu,b CSV here");

  auto* sums = app.add_subcommand("sums", "checkpointed S1, S2, c_f and growth exponents");
  sums->add_option("--dump-sums", cfg.out, "CSV output path (same as --out)");

  auto* scan = app.add_subcommand("scan", "sign changes in [X, X + X^r]");
  scan->add_option("--X", cfg.x)->required();
  scan->add_option("--r", cfg.r_text, "window exponent (rational or decimal)")->capture_default_str();

  auto* count = app.add_subcommand("count", "sign changes in [X, 2X]");
  count->add_option("--X", cfg.x)->required();

  auto* exponents = app.add_subcommand("exponents", "exact exponent bookkeeping");
  exponents->add_option("--alpha", cfg.alpha);
  exponents->add_option("--beta", cfg.beta);
  exponents->add_option("--gamma", cfg.gamma);
  exponents->add_option("--eta", cfg.eta);
  exponents->add_option("--beta-prime", cfg.beta_prime);
  exponents->add_option("--eta-prime", cfg.eta_prime);
  exponents->add_option("--eta-double-prime", cfg.eta_double_prime);

  auto* euler = app.add_subcommand("euler", "local factor U_p of the Ltilde decomposition");
  euler->add_option("--p", cfg.p)->required();
  euler->add_option("--s", cfg.s_text, "re or re,im")->capture_default_str();
  euler->add_option("--depth", cfg.depth, "local depth J (0 = deepest available)");

  auto* eval = app.add_subcommand("eval", "truncated Dirichlet series with a tail bound");
  eval->add_option("--series", cfg.series, "f_theta2, f_f, f_f_chi or ltilde")->capture_default_str();
  eval->add_option("--s", cfg.s_text, "re or re,im")->capture_default_str();
  eval->add_option("--terms", cfg.terms, "truncation M (0 = limit)");

  auto* perron = app.add_subcommand("perron", "truncated Perron integral against the direct sum");
  perron->add_option("--X", cfg.x)->required();
  perron->add_option("--T", cfg.t)->capture_default_str();
  perron->add_option("--sigma", cfg.sigma)->capture_default_str();
  perron->add_option("--kind", cfg.kind, "s1, s2 or both")->capture_default_str();
  perron->add_option("--terms", cfg.terms, "truncation M (0 = automatic)");

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    kernels::set_thread_count(cfg.threads);
    if (!exponents->parsed()) validate_limit(cfg);
    if (build->parsed()) return cmd_build(cfg);
    if (sums->parsed()) return cmd_sums(cfg);
    if (scan->parsed()) return cmd_scan(cfg);
    if (count->parsed()) return cmd_count(cfg);
    if (exponents->parsed()) return cmd_exponents(cfg);
    if (euler->parsed()) return cmd_euler(cfg);
    if (eval->parsed()) return cmd_eval(cfg);
    if (perron->parsed()) return cmd_perron(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "signflux: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "signflux: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
