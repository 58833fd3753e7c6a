#include "rudinlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "rudinlab/arith.hpp"
#include "rudinlab/circle.hpp"
#include "rudinlab/errors.hpp"
#include "rudinlab/gauss.hpp"
#include "rudinlab/lpcordoba.hpp"
#include "rudinlab/moments.hpp"
#include "rudinlab/parallel.hpp"

namespace rudinlab::cli {

// ------------------------------------------------------------------ output

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (const char ch : v) {
            if (ch == '"') q += '"';
            q += ch;
          }
          return q + "\"";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

}  // namespace

void Report::write_csv(std::ostream& os) const {
  os << "# schema=1\n";
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << "\n";
  }
}

void Report::write_json(std::ostream& os) const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) j["config"][k] = json_cell(v);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[columns[i]] = json_cell(row[i]);
    j["rows"].push_back(std::move(r));
  }
  if (has_fit) {
    j["fit"] = {{"exponent", fit_exponent},
                {"intercept", fit_intercept},
                {"max_residual", fit_max_residual},
                {"with_log_factor", fit_with_log}};
  }
  os << j.dump(2) << "\n";
}

// ---------------------------------------------------------------- commands

namespace {

struct CommandFailure {
  std::string reason;
};

std::string join_ints(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + format_double(v[i]);
  return s;
}

// --- gauss

struct GaussArgs {
  std::int64_t qmax = 20;
};

void cmd_gauss(const GaussArgs& g, Report& rep) {
  if (g.qmax < 1) throw precondition_error("qmax must be >= 1");
  rep.columns = {"q", "a", "b", "direct_abs", "closed_form", "abs_err"};
  rep.config = {{"qmax", g.qmax}};
  double worst = 0.0;
  for (std::int64_t q = 2; q <= g.qmax; ++q) {
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      for (std::int64_t b = 0; b < q; ++b) {
        const GaussSumParams p(a, b, q);
        const double direct = std::abs(gauss_sum_direct(p));
        const double closed = gauss_magnitude_closed_form(p);
        const double err = std::abs(direct - closed);
        worst = std::max(worst, err);
        rep.rows.push_back({q, a, b, direct, closed, err});
      }
    }
  }
  if (worst > 1e-9) throw CommandFailure{"gauss closed form deviates by " + format_double(worst)};
}

// --- moment / norm-scan

struct ModeArgs {
  std::string mode = "double";
  double x = 0.0;
  std::int64_t q = 3;
  std::int64_t a = 1;
  std::int64_t b = 0;
  double eps = 0.01;
  double xi = 0.0;
  std::size_t grid_t = 0;
  std::size_t grid_x = 0;
  bool unsafe = false;
};

NormMode make_mode(const ModeArgs& m, std::int64_t N) {
  if (m.mode == "double") return DoubleIntegral{};
  if (m.mode == "marginal") return MarginalAt{m.x};
  if (m.mode == "arc") {
    return ArcRestricted{MajorArc::make(FareyFraction(m.a, m.q), m.b, N, m.eps), m.xi};
  }
  throw precondition_error("unknown mode '" + m.mode + "'");
}

std::optional<QuadratureGrids> make_grids(const ModeArgs& m, std::int64_t N, const NormMode& mode) {
  if (m.grid_t == 0 && m.grid_x == 0) return std::nullopt;
  QuadratureGrids g = default_grids(N, mode);
  if (m.grid_t) g.t = GridSpec::midpoint(m.grid_t);
  if (m.grid_x) g.x = GridSpec::midpoint(m.grid_x);
  return g;
}

void add_mode_config(const ModeArgs& m, Report& rep) {
  rep.config.emplace_back("mode", m.mode);
  if (m.mode == "marginal") rep.config.emplace_back("x", m.x);
  if (m.mode == "arc") {
    rep.config.emplace_back("q", m.q);
    rep.config.emplace_back("a", m.a);
    rep.config.emplace_back("b", m.b);
    rep.config.emplace_back("eps", m.eps);
    rep.config.emplace_back("xi", m.xi);
  }
  if (m.grid_t) rep.config.emplace_back("grid_t", static_cast<std::int64_t>(m.grid_t));
  if (m.grid_x) rep.config.emplace_back("grid_x", static_cast<std::int64_t>(m.grid_x));
  if (m.unsafe) rep.config.emplace_back("unsafe", true);
}

const std::vector<std::string> kNormColumns = {"N", "alpha", "mode", "value", "t_step", "x_step"};

std::vector<Cell> norm_row(const NormSample& s) {
  return {s.N, s.alpha, mode_name(s.mode), s.value, s.t_step, s.x_step};
}

int exact_k_for(double alpha) {
  if (alpha == 4.0) return 2;
  if (alpha == 6.0) return 3;
  throw precondition_error("exact moments exist for alpha 4 and 6 only");
}

struct ScanArgs {
  std::vector<double> alphas{4.0};
  std::vector<std::int64_t> Ns{32};
  ModeArgs mode;
  bool exact = false;
  std::int64_t exact_cap = 512;
  bool fit = false;
  bool divide_log = false;
};

void cmd_norm_scan(const ScanArgs& s, const RunConfig& cfg, Report& rep, bool single) {
  rep.columns = kNormColumns;
  if (single) {
    rep.config = {{"alpha", s.alphas.front()}, {"N", s.Ns.front()}};
  } else {
    rep.config = {{"alpha", join_doubles(s.alphas)}, {"N", join_ints(s.Ns)}};
  }
  add_mode_config(s.mode, rep);
  if (s.exact) rep.config.emplace_back("exact", true);

  std::vector<NormSample> samples;
  if (s.exact) {
    if (s.mode.mode != "double") throw precondition_error("exact moments are double integrals");
    for (const double alpha : s.alphas) {
      const int k = exact_k_for(alpha);
      for (const auto N : s.Ns) samples.push_back(exact_even_sample(N, k, {s.exact_cap}));
    }
  } else {
    NormOptions opts;
    opts.unsafe = s.mode.unsafe;
    opts.work_budget = cfg.work_budget;
    std::vector<std::vector<NormSample>> per_n;
    for (const auto N : s.Ns) {
      const NormMode mode = make_mode(s.mode, N);
      per_n.push_back(moment_quadrature_multi(N, s.alphas, mode, make_grids(s.mode, N, mode), opts));
    }
    for (std::size_t j = 0; j < s.alphas.size(); ++j) {
      for (auto& row : per_n) samples.push_back(row[j]);
    }
  }
  for (const auto& smp : samples) rep.rows.push_back(norm_row(smp));

  if (s.fit) {
    if (s.alphas.size() != 1) throw precondition_error("fit needs a single alpha");
    std::vector<double> N;
    std::vector<double> v;
    for (const auto& smp : samples) {
      N.push_back(static_cast<double>(smp.N));
      v.push_back(smp.value);
    }
    const FitResult f = fit_power_law(N, v, s.divide_log);
    rep.has_fit = true;
    rep.fit_exponent = f.exponent;
    rep.fit_intercept = f.intercept;
    rep.fit_max_residual = f.max_residual;
    rep.fit_with_log = f.with_log_factor;
  }
}

// --- fit

struct FitArgs {
  std::string input;
  bool divide_log = false;
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

void cmd_fit(const FitArgs& f, Report& rep) {
  std::ifstream in(f.input);
  if (!in) throw precondition_error("cannot open input '" + f.input + "'");
  std::vector<std::string> header;
  std::vector<double> N;
  std::vector<double> v;
  std::string alpha0;
  std::string mode0;
  std::string line;
  int col_n = -1, col_v = -1, col_a = -1, col_m = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (header.empty()) {
      header = cells;
      for (int i = 0; i < static_cast<int>(header.size()); ++i) {
        if (header[i] == "N") col_n = i;
        if (header[i] == "value") col_v = i;
        if (header[i] == "alpha") col_a = i;
        if (header[i] == "mode") col_m = i;
      }
      if (col_n < 0 || col_v < 0) throw precondition_error("input needs columns N and value");
      continue;
    }
    if (cells.size() != header.size()) throw precondition_error("ragged row in '" + f.input + "'");
    if (col_a >= 0) {
      if (alpha0.empty()) alpha0 = cells[col_a];
      if (cells[col_a] != alpha0) throw precondition_error("fit: samples mix exponents");
    }
    if (col_m >= 0) {
      if (mode0.empty()) mode0 = cells[col_m];
      if (cells[col_m] != mode0) throw precondition_error("fit: samples mix modes");
    }
    try {
      N.push_back(std::stod(cells[col_n]));
      v.push_back(std::stod(cells[col_v]));
    } catch (const std::exception&) {
      throw precondition_error("non-numeric N or value in '" + f.input + "'");
    }
  }
  const FitResult r = fit_power_law(N, v, f.divide_log);
  rep.columns = {"exponent", "intercept", "max_residual", "with_log_factor", "samples"};
  rep.config = {{"input", f.input}, {"divide_log", f.divide_log}};
  rep.rows.push_back({r.exponent, r.intercept, r.max_residual, r.with_log_factor,
                      static_cast<std::int64_t>(N.size())});
  rep.has_fit = true;
  rep.fit_exponent = r.exponent;
  rep.fit_intercept = r.intercept;
  rep.fit_max_residual = r.max_residual;
  rep.fit_with_log = r.with_log_factor;
}

// --- arc-check

struct ArcArgs {
  std::int64_t N = 4096;
  std::int64_t qmax = 13;
  double eps = 0.01;
  double c = 4.0;
  bool odd_only = false;
};

void cmd_arc_check(const ArcArgs& a, Report& rep) {
  rep.columns = {"q", "a", "b", "measured", "predicted", "abs_diff", "bound", "within_bound"};
  rep.config = {{"N", a.N}, {"qmax", a.qmax}, {"eps", a.eps}, {"c", a.c}, {"odd_only", a.odd_only}};
  const auto all = enumerate_major_arcs(a.N, a.eps, a.qmax);
  const DisjointReport dj = check_disjoint(all);
  bool ok = true;
  ArcOptions filt;
  filt.parity_filter = true;
  for (const auto& arc : enumerate_major_arcs(a.N, a.eps, a.qmax, filt)) {
    if (a.odd_only && arc.q() % 2 == 0) continue;
    const ArcCenterCheck r = arc_center_sum_check(arc, a.c);
    ok = ok && r.within_bound;
    rep.rows.push_back({arc.q(), arc.a(), arc.b, r.measured, r.predicted, r.abs_diff, r.bound,
                        r.within_bound});
  }
  if (!dj.disjoint) throw CommandFailure{"major arcs overlap"};
  if (!ok) throw CommandFailure{"arc center sum outside the c*q band"};
}

// --- totient

struct TotientArgs {
  double beta = 2.0;
  std::vector<std::int64_t> Ns{1000000};
};

void cmd_totient(const TotientArgs& t, Report& rep) {
  rep.columns = {"N", "beta", "exact", "main_terms", "error_bound_scale", "ratio"};
  rep.config = {{"beta", t.beta}, {"N", join_ints(t.Ns)}};
  for (const auto& e : totient_sum_ladder(t.Ns, t.beta)) {
    rep.rows.push_back({e.N, e.beta, static_cast<double>(e.exact), static_cast<double>(e.main_terms),
                        static_cast<double>(e.error_bound_scale), static_cast<double>(e.ratio)});
  }
}

// --- lp-check

struct LpArgs {
  std::int64_t degree = 256;
  double alpha = 3.0;
  std::int64_t count = 100;
};

void cmd_lp_check(const LpArgs& l, const RunConfig& cfg, Report& rep) {
  if (l.degree < 1 || l.count < 1) throw precondition_error("degree and count must be >= 1");
  rep.columns = {"index", "degree", "square_function_norm", "lp_norm", "ratio", "reassembly_exact"};
  rep.config = {{"seed", static_cast<std::int64_t>(cfg.seed)}, {"degree", l.degree},
                {"alpha", l.alpha}, {"count", l.count}};
  const auto family = random_family(cfg.seed, static_cast<std::size_t>(l.count), l.degree, false);
  bool exact = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const TrigPoly& P = family[i];
    const bool same = dyadic_split(P).reassemble() == P;
    exact = exact && same;
    const GridSpec grid = family_grid(P.degree());
    const double sf = square_function_norm(P, l.alpha, grid);
    const double lp = lp_norm_on_grid(P, l.alpha, grid);
    rep.rows.push_back({static_cast<std::int64_t>(i), P.degree(), sf, lp, sf / lp, same});
  }
  if (!exact) throw CommandFailure{"dyadic reassembly differs from the source polynomial"};
}

// --- cordoba / rudin-ratio

struct CordobaArgs {
  double alpha = 3.0;
  std::vector<std::int64_t> Ns{64, 128, 256};
  int ell = 0;
  std::string coeffs = "one";
};

std::vector<double> coeff_sequence(const std::string& form, std::int64_t N) {
  double power = 0.0;
  if (form == "one") {
    power = 0.0;
  } else if (form == "inverse") {
    power = 1.0;
  } else if (form.rfind("power:", 0) == 0) {
    try {
      power = std::stod(form.substr(6));
    } catch (const std::exception&) {
      throw precondition_error("bad coefficient form '" + form + "'");
    }
    if (power < 0.0) throw precondition_error("coefficient power must be >= 0");
  } else {
    throw precondition_error("coefficients must be one, inverse or power:<p>");
  }
  std::vector<double> a(static_cast<std::size_t>(N));
  for (std::int64_t k = 1; k <= N; ++k) a[k - 1] = std::pow(static_cast<double>(k), -power);
  return a;
}

void cmd_cordoba(const CordobaArgs& c, Report& rep) {
  rep.columns = {"N", "ell", "alpha", "coeffs", "ratio"};
  rep.config = {{"alpha", c.alpha}, {"N", join_ints(c.Ns)}, {"ell", c.ell}, {"coeffs", c.coeffs}};
  for (const auto N : c.Ns) {
    if (N < 1) throw precondition_error("N must be >= 1");
    const auto a = coeff_sequence(c.coeffs, N);
    rep.rows.push_back({N, static_cast<std::int64_t>(c.ell), c.alpha, c.coeffs, cordoba_ratio(a, c.ell, c.alpha)});
  }
}

struct RudinArgs {
  double alpha = 3.9;
  std::vector<std::int64_t> Ns{128, 256, 512, 1024};
  std::string coeffs = "constant";
  double x = 0.0;
  std::int64_t qmax = 5;
};

void cmd_rudin_ratio(const RudinArgs& r, Report& rep) {
  rep.columns = {"N", "alpha", "coeffs", "ratio", "x"};
  rep.config = {{"alpha", r.alpha}, {"N", join_ints(r.Ns)}, {"coeffs", r.coeffs}};
  if (r.coeffs == "modulated") rep.config.emplace_back("x", r.x);
  if (r.coeffs == "modulated-sup") rep.config.emplace_back("qmax", r.qmax);
  for (const auto N : r.Ns) {
    if (r.coeffs == "constant") {
      rep.rows.push_back({N, r.alpha, r.coeffs, rudin_ratio(N, r.alpha, ConstantCoeffs{}), 0.0});
    } else if (r.coeffs == "modulated") {
      rep.rows.push_back({N, r.alpha, r.coeffs, rudin_ratio(N, r.alpha, ModulatedCoeffs{r.x}), r.x});
    } else if (r.coeffs == "modulated-sup") {
      const auto cands = default_x_candidates(N, r.qmax, false);
      const RatioSup s = rudin_ratio_sup(N, r.alpha, cands);
      rep.rows.push_back({N, r.alpha, r.coeffs, s.ratio, s.x.value()});
    } else {
      throw precondition_error("coefficient mode must be constant, modulated or modulated-sup");
    }
  }
}

// --- levelset

struct LevelArgs {
  std::int64_t N = 64;
  double a = 0.9;
  double b = 1.1;
  std::size_t grid_x = 256;
  std::size_t grid_t = 4096;
};

void cmd_levelset(const LevelArgs& l, const RunConfig& cfg, Report& rep) {
  rep.columns = {"N", "a", "b", "fraction", "grid_x", "grid_t"};
  rep.config = {{"N", l.N}, {"a", l.a}, {"b", l.b},
                {"grid_x", static_cast<std::int64_t>(l.grid_x)},
                {"grid_t", static_cast<std::int64_t>(l.grid_t)}};
  NormOptions opts;
  opts.work_budget = cfg.work_budget;
  const QuadratureGrids g{GridSpec::midpoint(l.grid_t), GridSpec::midpoint(l.grid_x)};
  const double f = level_set_fraction(l.N, l.a, l.b, g, opts);
  rep.rows.push_back({l.N, l.a, l.b, f, static_cast<std::int64_t>(l.grid_x),
                      static_cast<std::int64_t>(l.grid_t)});
}

std::string one_line(std::string s) {
  for (char& ch : s) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return s;
}

int fail(std::ostream& err, int code, const char* kind, const std::string& reason) {
  err << "error=" << kind << " reason=" << one_line(reason) << "\n";
  return code;
}

}  // namespace

// -------------------------------------------------------------------- run

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on quadratic Weyl sums and L^p norms", "rudinlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file");

  RunConfig cfg;
  cfg.work_budget = kDefaultWorkBudget;
  std::string format = "csv";
  app.add_option("--out", cfg.out_path, "Output path (default stdout)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->envname(kThreadsEnv);
  app.add_option("--seed", cfg.seed, "Seed for random families");
  app.add_option("--budget", cfg.work_budget, "Maximum grid-point evaluations per command");

  Report rep;
  std::function<void()> action;

  GaussArgs gauss;
  auto* sg = app.add_subcommand("gauss", "Gauss sums: direct vs closed-form magnitude");
  sg->add_option("--qmax", gauss.qmax);
  sg->callback([&] { action = [&] { cmd_gauss(gauss, rep); }; });

  auto add_mode_opts = [](CLI::App* sc, ModeArgs& m) {
    sc->add_option("--mode", m.mode)->check(CLI::IsMember({"double", "marginal", "arc"}));
    sc->add_option("--x", m.x, "x for marginal mode");
    sc->add_option("--q", m.q, "arc denominator");
    sc->add_option("--a", m.a, "arc numerator in t");
    sc->add_option("--b", m.b, "arc numerator in x");
    sc->add_option("--eps", m.eps, "arc width exponent");
    sc->add_option("--xi", m.xi, "x offset from b/q in arc mode");
    sc->add_option("--grid-t", m.grid_t, "t-nodes (default: resolution rule)");
    sc->add_option("--grid-x", m.grid_x, "x-nodes (default: resolution rule)");
    sc->add_flag("--unsafe", m.unsafe, "accept grids below the resolution rule");
  };

  ScanArgs moment;
  double moment_alpha = 4.0;
  std::int64_t moment_n = 32;
  auto* sm = app.add_subcommand("moment", "One L^alpha moment of S_N");
  sm->add_option("--alpha", moment_alpha);
  sm->add_option("--N", moment_n);
  add_mode_opts(sm, moment.mode);
  sm->add_flag("--exact", moment.exact, "Diophantine count (alpha 4 or 6)");
  sm->add_option("--exact-cap", moment.exact_cap, "largest N for alpha 6 counting");
  sm->callback([&] {
    action = [&] {
      moment.alphas = {moment_alpha};
      moment.Ns = {moment_n};
      cmd_norm_scan(moment, cfg, rep, true);
    };
  });

  ScanArgs scan;
  auto* sn = app.add_subcommand("norm-scan", "Moments over a ladder of N");
  sn->add_option("--alpha", scan.alphas)->delimiter(',');
  sn->add_option("--N", scan.Ns)->delimiter(',');
  add_mode_opts(sn, scan.mode);
  sn->add_flag("--exact", scan.exact, "Diophantine count (alpha 4 or 6)");
  sn->add_option("--exact-cap", scan.exact_cap, "largest N for alpha 6 counting");
  sn->add_flag("--fit", scan.fit, "append a log-log exponent fit");
  sn->add_flag("--divide-log", scan.divide_log, "fit value / log N");
  sn->callback([&] { action = [&] { cmd_norm_scan(scan, cfg, rep, false); }; });

  FitArgs fit;
  auto* sf = app.add_subcommand("fit", "Exponent fit of a norm-scan CSV");
  sf->add_option("--input", fit.input)->required();
  sf->add_flag("--divide-log", fit.divide_log);
  sf->callback([&] { action = [&] { cmd_fit(fit, rep); }; });

  ArcArgs arc;
  auto* sa = app.add_subcommand("arc-check", "S_N at major-arc centers vs Gauss sums");
  sa->add_option("--N", arc.N);
  sa->add_option("--qmax", arc.qmax);
  sa->add_option("--eps", arc.eps);
  sa->add_option("--c", arc.c, "allowed deviation is c*q");
  sa->add_flag("--odd-only", arc.odd_only, "report odd q only");
  sa->callback([&] { action = [&] { cmd_arc_check(arc, rep); }; });

  TotientArgs tot;
  auto* st = app.add_subcommand("totient", "Weighted totient sums vs main terms");
  st->add_option("--beta", tot.beta);
  st->add_option("--N", tot.Ns)->delimiter(',');
  st->callback([&] { action = [&] { cmd_totient(tot, rep); }; });

  LpArgs lp;
  auto* sl = app.add_subcommand("lp-check", "Square function vs L^alpha norm on a random family");
  sl->add_option("--degree", lp.degree, "maximum degree");
  sl->add_option("--alpha", lp.alpha);
  sl->add_option("--count", lp.count);
  sl->callback([&] { action = [&] { cmd_lp_check(lp, cfg, rep); }; });

  CordobaArgs cord;
  auto* sc = app.add_subcommand("cordoba", "Weighted quadratic-spectrum ratio");
  sc->add_option("--alpha", cord.alpha);
  sc->add_option("--N", cord.Ns)->delimiter(',');
  sc->add_option("--ell", cord.ell);
  sc->add_option("--coeffs", cord.coeffs, "one, inverse or power:<p>");
  sc->callback([&] { action = [&] { cmd_cordoba(cord, rep); }; });

  RudinArgs rud;
  auto* sr = app.add_subcommand("rudin-ratio", "L^alpha / L^2 ratio of sum a_k e(k^2 theta)");
  sr->add_option("--alpha", rud.alpha);
  sr->add_option("--N", rud.Ns)->delimiter(',');
  sr->add_option("--coeffs", rud.coeffs, "constant, modulated or modulated-sup");
  sr->add_option("--x", rud.x);
  sr->add_option("--qmax", rud.qmax);
  sr->callback([&] { action = [&] { cmd_rudin_ratio(rud, rep); }; });

  LevelArgs lev;
  auto* sv = app.add_subcommand("levelset", "Fraction of the torus where |S_N| ~ sqrt(N)");
  sv->add_option("--N", lev.N);
  sv->add_option("--a", lev.a);
  sv->add_option("--b", lev.b);
  sv->add_option("--grid-x", lev.grid_x);
  sv->add_option("--grid-t", lev.grid_t);
  sv->callback([&] { action = [&] { cmd_levelset(lev, cfg, rep); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, kUsage, "usage", e.what());
  }

  cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  set_thread_count(cfg.threads);
  rep.command = app.get_subcommands().front()->get_name();

  int code = kOk;
  std::string failure;
  try {
    action();
  } catch (const CommandFailure& f) {
    code = kInvariant;
    failure = f.reason;
  } catch (const invariant_error& e) {
    return fail(err, kInvariant, "invariant", e.what());
  } catch (const resource_error& e) {
    return fail(err, kBudget, "budget", e.what());
  } catch (const precondition_error& e) {
    return fail(err, kUsage, "precondition", e.what());
  } catch (const std::overflow_error& e) {
    return fail(err, kBudget, "overflow", e.what());
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!file) return fail(err, kUsage, "io", "cannot open '" + cfg.out_path + "' for writing");
    os = &file;
  }
  if (cfg.format == OutputFormat::Json) {
    rep.write_json(*os);
  } else {
    rep.write_csv(*os);
  }
  os->flush();
  if (!*os) return fail(err, kUsage, "io", "write failed for '" + cfg.out_path + "'");
  if (code != kOk) return fail(err, code, "invariant", failure);
  return kOk;
}

}  // namespace rudinlab::cli
