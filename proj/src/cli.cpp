#include "altzeta/cli.hpp"

#include "altzeta/determinants.hpp"
#include "altzeta/ensembles.hpp"
#include "altzeta/error.hpp"
#include "altzeta/eta_core.hpp"
#include "altzeta/sampling.hpp"
#include "altzeta/suite.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <regex>

namespace altzeta::cli {

using json = nlohmann::ordered_json;

cplx parse_complex(const std::string& text) {
  static const std::regex full(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*(?:([+-]\s*(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*i)?\s*$)");
  static const std::regex pure_imag(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)\s*i\s*$)");
  std::smatch m;
  auto to_d = [](std::string t) {
    t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return std::stod(t);
  };
  if (std::regex_match(text, m, pure_imag) && text.find_first_not_of(" \t") != std::string::npos) {
    return {0.0, to_d(m[1].str())};
  }
  if (std::regex_match(text, m, full) && m[1].matched) {
    const double re = std::stod(m[1].str());
    const double im = m[2].matched ? to_d(m[2].str()) : 0.0;
    if (std::isfinite(re) && std::isfinite(im)) return {re, im};
  }
  throw Error(Errc::DomainError, "cannot parse complex number '" + text + "' (expected RE[+IMi])");
}

long parse_count(const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e15)
    throw Error(Errc::DomainError, "expected a positive integer count, got '" + text + "'");
  return static_cast<long>(v);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (item.empty() || pos != item.size()) throw Error(Errc::DomainError, "cannot parse number list '" + text + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

std::vector<int> parse_n_range(const std::string& text) {
  auto as_int = [&](double v) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e6)
      throw Error(Errc::DomainError, "N values must be positive integers, got '" + text + "'");
    return static_cast<int>(v);
  };
  std::vector<int> out;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    const int lo = as_int(parse_list(text.substr(0, colon)).at(0));
    const int hi = as_int(parse_list(text.substr(colon + 1)).at(0));
    if (hi < lo) throw Error(Errc::DomainError, "empty N range '" + text + "'");
    for (long n = lo; n <= hi; n *= 2) out.push_back(static_cast<int>(n));
  } else {
    for (double v : parse_list(text)) out.push_back(as_int(v));
  }
  return out;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ALTZETA_SEED")) {
    const std::string t(env);
    if (!t.empty() && t.find_first_not_of("0123456789") == std::string::npos) return std::stoull(t);
    throw Error(Errc::DomainError, "ALTZETA_SEED must be a nonnegative integer, got '" + t + "'");
  }
  return 42;
}

namespace {

struct RunConfig {
  std::string s_text;
  int N = 0;
  std::string n_range;
  std::string method = "series";
  std::string samples;
  std::optional<std::uint64_t> seed;
  int burn_in = 100;
  int thinning = 1;
  std::string format = "text";
  double tolerance = kDefaultGuard;
  double a = 3.0;
  double b = 2.0;
  double theta = 1.0;
  std::string ensemble = "jacobi";
  std::string u_text;
  std::string x_text;
  std::string scope = "all";

  std::uint64_t seed_value() const { return seed ? *seed : default_seed(); }
  long samples_or(long fallback) const { return samples.empty() ? fallback : parse_count(samples); }
  SamplerConfig sampler() const {
    SamplerConfig c;
    c.seed = seed_value();
    c.burn_in = burn_in;
    c.thinning = thinning;
    validate(c);
    return c;
  }
};

// Output document: rows share one key order, which becomes the CSV header.
struct Report {
  std::string command;
  json params = json::object();
  json rows = json::array();
  json diagnostics = json::object();
};

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string scalar_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return fmt::format("{:.17g}", v.get<double>());
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_field(const json& v) {
  std::string t = scalar_text(v);
  if (t.find_first_of(",\"\n") == std::string::npos) return t;
  std::string q = "\"";
  for (char c : t) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void render(const Report& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json doc;
    doc["command"] = r.command;
    doc["params"] = r.params;
    doc["results"] = r.rows;
    doc["diagnostics"] = r.diagnostics;
    out << doc.dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    if (r.rows.empty()) return;
    bool first = true;
    for (const auto& [key, _] : r.rows.front().items()) {
      out << (first ? "" : ",") << key;
      first = false;
    }
    out << '\n';
    for (const auto& row : r.rows) {
      first = true;
      for (const auto& [_, v] : row.items()) {
        out << (first ? "" : ",") << csv_field(v);
        first = false;
      }
      out << '\n';
    }
    return;
  }
  out << r.command;
  for (const auto& [k, v] : r.params.items()) out << ' ' << k << '=' << scalar_text(v);
  out << '\n';
  for (const auto& row : r.rows) {
    bool first = true;
    for (const auto& [k, v] : row.items()) {
      out << (first ? "  " : " ") << k << '=' << (v.is_null() ? "-" : scalar_text(v));
      first = false;
    }
    out << '\n';
  }
  for (const auto& [k, v] : r.diagnostics.items()) out << "  # " << k << ": " << scalar_text(v) << '\n';
}

std::string s_label(cplx s) { return fmt::format("{:.17g}{:+.17g}i", s.real(), s.imag()); }

double z_of(const MCEstimate& e, cplx target) {
  const double d = std::abs(e.mean - target);
  if (e.std_error == 0.0) return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return d / e.std_error;
}

void add_mc_params(Report& r, const SamplerConfig& c, long n) {
  r.params["samples"] = n;
  r.params["seed"] = c.seed;
  r.params["burn_in"] = c.burn_in;
  r.params["thinning"] = c.thinning;
}

int require_N(const RunConfig& c) {
  if (c.N < 1) throw Error(Errc::DomainError, "--N must be a positive integer");
  return c.N;
}

// ------------------------------------------------------------------ commands

Report cmd_eta(const RunConfig& c) {
  const cplx s = parse_complex(c.s_text);
  const int N = require_N(c);
  Report r{"eta"};
  r.params["s"] = s_label(s);
  r.params["N"] = N;
  r.params["method"] = c.method;
  std::vector<std::string> methods =
      c.method == "all" ? std::vector<std::string>{"series", "det", "tridiag", "contfrac"} : std::vector<std::string>{c.method};
  std::vector<cplx> values;
  for (const std::string& m : methods) {
    EvalResult e{0.0, Method::series, N, {}, {}};
    double se = 0.0;
    if (m == "series") e = eta_series(s, N);
    else if (m == "det") e = eta_det(s, N);
    else if (m == "tridiag") e = eta_tridiag(s, N, c.tolerance);
    else if (m == "contfrac") e = eta_contfrac(s, N, c.tolerance);
    else {
      const SamplerConfig cfg = c.sampler();
      const long n = c.samples_or(100000);
      add_mc_params(r, cfg, n);
      const MCEstimate est = eta_mc(s, N, cfg, n);
      e = EvalResult{est.mean, Method::mc, N, {}, {}};
      se = est.std_error;
    }
    std::string flags;
    for (const auto& f : e.flags) flags += (flags.empty() ? "" : ";") + f;
    json row;
    row["method"] = to_string(e.method);
    row["N"] = N;
    row["re"] = num(e.value.real());
    row["im"] = num(e.value.imag());
    row["std_error"] = num(se);
    row["flags"] = flags;
    r.rows.push_back(row);
    for (const auto& [k, v] : e.meta) r.diagnostics[to_string(e.method) + "." + k] = num(v);
    values.push_back(e.value);
  }
  if (values.size() > 1) {
    double worst = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        const double scale = std::max(std::abs(values[i]), std::abs(values[j]));
        if (scale > 0.0) worst = std::max(worst, std::abs(values[i] - values[j]) / scale);
      }
    r.diagnostics["max_pairwise_rel_diff"] = num(worst);
  }
  return r;
}

Report cmd_convergence(const RunConfig& c) {
  const cplx s = parse_complex(c.s_text);
  const std::vector<int> Ns = parse_n_range(c.n_range.empty() ? "4,8,16,32,64" : c.n_range);
  Report r{"convergence"};
  r.params["s"] = s_label(s);
  r.params["N_range"] = Ns;
  const cplx ref = eta_reference(s);
  double prev = std::numeric_limits<double>::infinity();
  bool all_decreasing = true;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    const int N = Ns[i];
    const cplx v = eta_series(s, N).value;
    const double err = std::abs(v - ref);
    const bool dec = err < prev;
    if (i > 0) all_decreasing &= dec;
    json row;
    row["N"] = N;
    row["re"] = num(v.real());
    row["im"] = num(v.imag());
    row["abs_error"] = num(err);
    row["decreasing"] = dec;
    r.rows.push_back(row);
    prev = err;
  }
  r.diagnostics["reference_re"] = num(ref.real());
  r.diagnostics["reference_im"] = num(ref.imag());
  r.diagnostics["monotone"] = all_decreasing;
  return r;
}

json mc_row(const MCEstimate& e, cplx target) {
  json row;
  row["re"] = num(e.mean.real());
  row["im"] = num(e.mean.imag());
  row["std_error"] = num(e.std_error);
  row["n_samples"] = e.n_samples;
  row["target_re"] = num(target.real());
  row["target_im"] = num(target.imag());
  row["z"] = num(z_of(e, target));
  return row;
}

Report cmd_mc(const RunConfig& c) {
  const cplx s = parse_complex(c.s_text);
  const int N = require_N(c);
  const SamplerConfig cfg = c.sampler();
  const long n = c.samples_or(100000);
  Report r{"mc"};
  r.params["s"] = s_label(s);
  r.params["N"] = N;
  add_mc_params(r, cfg, n);
  const MCEstimate e = eta_mc(s, N, cfg, n);
  json row;
  row["N"] = N;
  row.update(mc_row(e, eta_series(s, N).value));
  r.rows.push_back(row);
  return r;
}

Report cmd_psi(const RunConfig& c) {
  const cplx s = parse_complex(c.s_text);
  const int N = require_N(c);
  const SamplerConfig cfg = c.sampler();
  const long n = c.samples_or(100000);
  std::vector<int> xs;
  if (c.x_text.empty()) {
    for (int x = 0; x <= N; ++x) xs.push_back(x);
  } else {
    for (double v : parse_list(c.x_text)) {
      if (v != std::floor(v) || v < 0 || v > N) throw Error(Errc::DomainError, "--x values must be integers in [0, N]");
      xs.push_back(static_cast<int>(v));
    }
  }
  Report r{"psi"};
  r.params["s"] = s_label(s);
  r.params["N"] = N;
  add_mc_params(r, cfg, n);
  for (int x : xs) {
    const cplx target = x == 0 ? psi_zero_target(N, s) : psi_closed(x, N, s);
    json row;
    row["x"] = x;
    row["target_kind"] = x == 0 ? "eta_identity" : "closed_form";
    row.update(mc_row(psi_mc(x, N, s, cfg, n), target));
    r.rows.push_back(row);
  }
  return r;
}

Report cmd_ratio(const RunConfig& c) {
  const cplx s = parse_complex(c.s_text);
  const OrderedGrid u = c.u_text.empty() ? OrderedGrid::squares(require_N(c)) : OrderedGrid(parse_list(c.u_text));
  const SamplerConfig cfg = c.sampler();
  const long n = c.samples_or(100000);
  Report r{"ratio"};
  r.params["s"] = s_label(s);
  r.params["u"] = u.values();
  add_mc_params(r, cfg, n);
  const cplx alt = alternating_sum(s, u);
  auto exact_row = [&](const char* name, cplx v) {
    json row;
    row["quantity"] = name;
    row["re"] = num(v.real());
    row["im"] = num(v.imag());
    row["std_error"] = num(0.0);
    row["z"] = nullptr;
    r.rows.push_back(row);
  };
  exact_row("determinant_ratio", gen_vandermonde_ratio(s, u));
  exact_row("alternating_sum", alt);
  const MCEstimate e = ratio_mc(u, s, cfg, n);
  json row;
  row["quantity"] = "ratio_mc";
  row["re"] = num(e.mean.real());
  row["im"] = num(e.mean.imag());
  row["std_error"] = num(e.std_error);
  row["z"] = num(z_of(e, alt));
  r.rows.push_back(row);
  return r;
}

EnsembleSpec make_spec(const RunConfig& c, int N) {
  if (c.ensemble == "jacobi") return EnsembleSpec(Jacobi{c.a, c.b}, N);
  return EnsembleSpec(Laguerre{c.a, c.theta}, N);
}

void add_spec_params(Report& r, const RunConfig& c) {
  r.params["ensemble"] = c.ensemble;
  r.params["a"] = c.a;
  if (c.ensemble == "jacobi") r.params["b"] = c.b;
  else r.params["theta"] = c.theta;
}

Report cmd_ensemble(const RunConfig& c) {
  const cplx s = parse_complex(c.s_text);
  const int N = c.N > 0 ? c.N : 2;
  const EnsembleSpec spec = make_spec(c, N);
  const SamplerConfig cfg = c.sampler();
  const long n = c.samples_or(100000);
  Report r{"ensemble"};
  r.params["s"] = s_label(s);
  r.params["N"] = N;
  add_spec_params(r, c);
  add_mc_params(r, cfg, n);
  const cplx closed = avg_ratio_closed(spec, s);
  auto row_of = [&](const char* name, cplx v, std::optional<double> se) {
    json row;
    row["estimator"] = name;
    row["re"] = num(v.real());
    row["im"] = num(v.imag());
    row["std_error"] = se ? num(*se) : json(nullptr);
    row["z"] = se ? num(*se == 0.0 ? (v == closed ? 0.0 : INFINITY) : std::abs(v - closed) / *se) : json(nullptr);
    r.rows.push_back(row);
  };
  row_of("closed", closed, std::nullopt);
  row_of("closed_gamma_full_s", avg_ratio_closed(spec, s, GammaArgument::full_s), std::nullopt);
  if (N <= 2) row_of("quadrature", avg_ratio_quadrature(spec, s), std::nullopt);
  const AvgRatioEstimate e = avg_ratio_mc(spec, s, cfg, n);
  row_of("mc_alternating", e.alternating.mean, e.alternating.std_error);
  row_of("mc_joint", e.joint.mean, e.joint.std_error);
  r.diagnostics["ensemble_acceptance"] = num(e.ensemble_acceptance);
  r.diagnostics["joint_acceptance"] = num(e.joint_acceptance);
  r.diagnostics["autocorr_time"] = num(e.autocorr_time);
  return r;
}

Report cmd_selberg(const RunConfig& c) {
  const std::vector<int> Ns = parse_n_range(c.n_range.empty() ? "1,2" : c.n_range);
  Report r{"selberg-check"};
  add_spec_params(r, c);
  r.params["N_range"] = Ns;
  auto push = [&](const char* kind, int N, std::optional<double> L, double value, double reference) {
    json row;
    row["kind"] = kind;
    row["N"] = N;
    row["L"] = L ? num(*L) : json(nullptr);
    row["value"] = num(value);
    row["reference"] = num(reference);
    row["rel_diff"] = num(std::abs(value / reference - 1.0));
    r.rows.push_back(row);
  };
  for (int N : Ns) {
    if (N > 3) throw Error(Errc::DomainError, "selberg-check quadrature supports N <= 3");
    const EnsembleSpec spec = make_spec(c, N);
    const double q = normalization_quadrature(spec);
    push("normalization", N, std::nullopt, normalization(spec), q);
    if (!spec.is_jacobi()) {
      push("shifted_exponent", N, std::nullopt, laguerre_norm(N, c.a, c.theta, LaguerreExponent::shifted), q);
      const double target = laguerre_norm_log(N, c.a, c.theta);
      for (double L : {1e2, 1e3, 1e4, 1e5, 1e6}) {
        const double l = selberg_log(N, c.a, L / c.theta + 1.0) + (c.a + N - 1.0) * N * std::log(L);
        push("limit_gap", N, L, std::exp(l - target), 1.0);
      }
    }
  }
  return r;
}

int cmd_suite(const RunConfig& c, std::ostream& out) {
  SuiteOptions opt;
  opt.scope = c.scope;
  opt.seed = c.seed_value();
  opt.samples = c.samples_or(20000);
  opt.guard = c.tolerance;
  const SuiteReport rep = run_suite(opt);
  Report r{"suite"};
  r.params["scope"] = opt.scope;
  r.params["seed"] = opt.seed;
  r.params["samples"] = opt.samples;
  for (const auto& ch : rep.checks) {
    json row;
    row["scope"] = ch.scope;
    row["name"] = ch.name;
    row["passed"] = ch.passed;
    row["detail"] = ch.detail;
    r.rows.push_back(row);
  }
  r.diagnostics["checks"] = rep.checks.size();
  r.diagnostics["failures"] = rep.failures();
  if (c.format == "text") {
    out << "suite scope=" << opt.scope << " seed=" << opt.seed << " samples=" << opt.samples << '\n';
    for (const auto& ch : rep.checks)
      out << (ch.passed ? "[PASS] " : "[FAIL] ") << ch.scope << '/' << ch.name << ": " << ch.detail << '\n';
    out << rep.checks.size() << " checks, " << rep.failures() << " failures\n";
  } else {
    render(r, c.format, out);
  }
  return rep.all_passed() ? 0 : 1;
}

std::string one_line(std::string msg) {
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return msg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Dirichlet eta function: finite representations and their cross-checks", "altzeta"};
  app.require_subcommand(1);

  const std::vector<std::string> methods = {"series", "det", "tridiag", "contfrac", "mc", "all"};
  const std::vector<std::string> formats = {"text", "csv", "json"};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "text, csv or json")->check(CLI::IsMember(formats));
  };
  auto s_opt = [&](CLI::App* sub) { sub->add_option("--s", c.s_text, "complex argument RE[+IMi]")->required(); };
  auto n_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--N", c.N, "truncation order");
    if (required) o->required();
  };
  auto mc_opts = [&](CLI::App* sub) {
    sub->add_option("--samples", c.samples, "number of Monte Carlo samples (1e5 notation accepted)");
    sub->add_option("--seed", c.seed, "64-bit seed (default: ALTZETA_SEED or 42)");
    sub->add_option("--burn-in", c.burn_in, "burn-in sweeps per chain");
    sub->add_option("--thinning", c.thinning, "sweeps between retained samples");
  };
  auto spec_opts = [&](CLI::App* sub) {
    sub->add_option("--ensemble", c.ensemble, "jacobi or laguerre")->check(CLI::IsMember({"jacobi", "laguerre"}));
    sub->add_option("--a", c.a, "exponent a > 0");
    sub->add_option("--b", c.b, "Jacobi exponent b > 0");
    sub->add_option("--theta", c.theta, "Laguerre scale theta > 0");
  };

  auto* eta = app.add_subcommand("eta", "evaluate eta_N(s) by one or all representations");
  s_opt(eta);
  n_opt(eta, true);
  eta->add_option("--method", c.method, "series, det, tridiag, contfrac, mc or all")->check(CLI::IsMember(methods));
  eta->add_option("--tolerance", c.tolerance, "guard radius for degenerate points");
  mc_opts(eta);
  common(eta);

  auto* conv = app.add_subcommand("convergence", "error of eta_N(s) against the reference value over N");
  s_opt(conv);
  conv->add_option("--N-range", c.n_range, "comma list or lo:hi (doubling)");
  common(conv);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of eta_N(s)");
  s_opt(mc);
  n_opt(mc, true);
  mc_opts(mc);
  common(mc);

  auto* psi = app.add_subcommand("psi", "Monte Carlo psi_N(x; s) against its exact values");
  s_opt(psi);
  n_opt(psi, true);
  psi->add_option("--x", c.x_text, "comma list of x in {0..N} (default: all)");
  mc_opts(psi);
  common(psi);

  auto* ratio = app.add_subcommand("ratio", "generalized Vandermonde ratio: determinant, alternating sum, Monte Carlo");
  s_opt(ratio);
  n_opt(ratio, false);
  ratio->add_option("--u", c.u_text, "comma list of increasing positive nodes (default: squares 1..N^2)");
  mc_opts(ratio);
  common(ratio);

  auto* ens = app.add_subcommand("ensemble", "ensemble-averaged ratio: closed form, quadrature, Monte Carlo");
  s_opt(ens);
  n_opt(ens, false);
  spec_opts(ens);
  mc_opts(ens);
  common(ens);

  auto* sel = app.add_subcommand("selberg-check", "ensemble normalizations against quadrature");
  sel->add_option("--N-range", c.n_range, "comma list or lo:hi (default 1,2)");
  spec_opts(sel);
  common(sel);

  auto* suite = app.add_subcommand("suite", "run the identity batteries");
  suite->add_option("--scope", c.scope, "exact, series, determinants, sampling, ensembles or all")
      ->check(CLI::IsMember(suite_scopes()));
  suite->add_option("--samples", c.samples, "Monte Carlo samples per check");
  suite->add_option("--seed", c.seed, "64-bit seed (default: ALTZETA_SEED or 42)");
  suite->add_option("--tolerance", c.tolerance, "guard radius for degenerate points");
  common(suite);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    if (suite->parsed()) return cmd_suite(c, out);
    Report r;
    if (eta->parsed()) r = cmd_eta(c);
    else if (conv->parsed()) r = cmd_convergence(c);
    else if (mc->parsed()) r = cmd_mc(c);
    else if (psi->parsed()) r = cmd_psi(c);
    else if (ratio->parsed()) r = cmd_ratio(c);
    else if (ens->parsed()) r = cmd_ensemble(c);
    else r = cmd_selberg(c);
    render(r, c.format, out);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return 2;
  }
}

}  // namespace altzeta::cli
