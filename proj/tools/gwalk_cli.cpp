// gwalk command-line front end. Everything goes through the C API in gwalk.h.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwalk/gwalk.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
  ApiError(gw_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  gw_status status;
};

void check(gw_status s, const char* call) {
  if (s == GW_OK) return;
  throw ApiError(s, std::string(call) + ": " + gw_status_name(s) + ": " + gw_last_error());
}

struct WindowDeleter {
  void operator()(gw_window* w) const { gw_window_destroy(w); }
};
struct MeasureDeleter {
  void operator()(gw_measure* m) const { gw_measure_destroy(m); }
};
using WindowPtr = std::unique_ptr<gw_window, WindowDeleter>;
using MeasurePtr = std::unique_ptr<gw_measure, MeasureDeleter>;

struct MeasureView {
  int64_t x_min = 0;
  std::vector<double> values;
  double at(int64_t x) const { return values.at(static_cast<std::size_t>(x - x_min)); }
  int64_t x_max() const { return x_min + static_cast<int64_t>(values.size()) - 1; }
};

MeasureView read_measure(const gw_measure* m) {
  MeasureView v;
  int64_t hi = 0;
  check(gw_measure_bounds(m, &v.x_min, &hi), "gw_measure_bounds");
  v.values.resize(static_cast<std::size_t>(hi - v.x_min + 1));
  check(gw_measure_values(m, v.values.data(), v.values.size()), "gw_measure_values");
  return v;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

gw_complex parse_complex(const std::string& text, const char* flag) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) throw UsageError(std::string(flag) + " expects \"re,im\", got \"" + text + "\"");
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      throw UsageError(std::string(flag) + " expects \"re,im\", got \"" + text + "\"");
  }
  std::string rest;
  if (in >> rest) throw UsageError(std::string(flag) + " has trailing text: \"" + text + "\"");
  return {re, im};
}

double abs2(gw_complex c) { return c.re * c.re + c.im * c.im; }
double cabs(gw_complex c) { return std::sqrt(abs2(c)); }

// ---------------------------------------------------------------------------

struct Options {
  double theta = 0.0;
  std::string which;
  std::string alpha = "1,0";
  std::string beta = "0,0";
  std::string gamma = "0,0";
  int64_t steps = 0;
  int64_t window = 64;
  int64_t every = 1;
  std::string format = "csv";
};

struct Invariant {
  std::string name;
  double value;
  double tolerance;
  bool passed;
};

// Rows are emitted as columns of strings in a fixed order; JSON gets the same
// cells with numeric parsing where applicable.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Invariant> invariants;
};

bool looks_numeric(const std::string& s) {
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return !s.empty() && end && *end == '\0';
}

bool looks_integer(const std::string& s) {
  char* end = nullptr;
  std::strtoll(s.c_str(), &end, 10);
  return !s.empty() && end && *end == '\0';
}

void emit(const Table& t, const std::string& command, const Options& opt, const json& spec_extra) {
  if (opt.format == "json") {
    json doc;
    json spec = {{"command", command}};
    for (auto it = spec_extra.begin(); it != spec_extra.end(); ++it) spec[it.key()] = it.value();
    doc["spec"] = spec;
    json rows = json::array();
    for (const auto& r : t.rows) {
      json row;
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (looks_integer(r[i])) {
          row[t.columns[i]] = std::strtoll(r[i].c_str(), nullptr, 10);
        } else if (looks_numeric(r[i])) {
          row[t.columns[i]] = std::strtod(r[i].c_str(), nullptr);
        } else if (r[i] == "true" || r[i] == "false") {
          row[t.columns[i]] = (r[i] == "true");
        } else {
          row[t.columns[i]] = r[i];
        }
      }
      rows.push_back(row);
    }
    doc["rows"] = rows;
    json inv = json::array();
    for (const auto& i : t.invariants)
      inv.push_back({{"name", i.name}, {"value", i.value}, {"tolerance", i.tolerance}, {"passed", i.passed}});
    doc["invariants_checked"] = inv;
    std::cout << doc.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < t.columns.size(); ++i) std::cout << (i ? "," : "") << t.columns[i];
    std::cout << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << r[i];
      std::cout << "\n";
    }
    for (const auto& i : t.invariants) {
      std::cerr << (i.passed ? "ok   " : "FAIL ") << i.name << " = " << num(i.value)
                << " (tolerance " << num(i.tolerance) << ")\n";
    }
  }
}

int finish(const Table& t) {
  for (const auto& i : t.invariants) {
    if (!i.passed) {
      std::cerr << "invariant failed: " << i.name << "\n";
      return kExitFailure;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_simulate(const Options& opt) {
  if (opt.steps < 0) throw UsageError("--steps must be nonnegative");
  if (opt.every < 1) throw UsageError("--every must be >= 1");
  if (opt.window < opt.steps + 1)
    throw UsageError("--window must be at least steps + 1 so the exact interior survives");

  gw_window* raw = nullptr;
  check(gw_window_create(-opt.window, opt.window, &raw), "gw_window_create");
  WindowPtr psi(raw);
  gw_amplitude a0{parse_complex(opt.alpha, "--alpha"), parse_complex(opt.beta, "--beta"),
                  parse_complex(opt.gamma, "--gamma")};
  check(gw_window_set(psi.get(), 0, a0), "gw_window_set");
  const double mass0 = abs2(a0.l) + abs2(a0.o) + abs2(a0.r);

  Table t;
  t.columns = {"n", "x", "value"};
  double worst_drift = 0.0;
  for (int64_t n = 0; n <= opt.steps; ++n) {
    if (n > 0) {
      gw_window* next = nullptr;
      check(gw_step(psi.get(), opt.theta, &next), "gw_step");
      psi.reset(next);
    }
    gw_measure* mraw = nullptr;
    check(gw_phi(psi.get(), &mraw), "gw_phi");
    MeasurePtr mu(mraw);
    const MeasureView v = read_measure(mu.get());
    int64_t lo = 0, hi = 0;
    check(gw_window_bounds(psi.get(), nullptr, nullptr, &lo, &hi), "gw_window_bounds");
    double mass = 0.0;
    for (int64_t x = lo; x <= hi; ++x) mass += v.at(x);
    worst_drift = std::max(worst_drift, std::abs(mass - mass0));
    if (n % opt.every != 0 && n != opt.steps) continue;
    for (int64_t x = lo; x <= hi; ++x) t.rows.push_back({std::to_string(n), std::to_string(x), num(v.at(x))});
  }
  t.invariants.push_back({"norm conservation on the exact interior", worst_drift, 1e-10, worst_drift <= 1e-10});
  emit(t, "simulate", opt,
       {{"theta", opt.theta}, {"alpha", opt.alpha}, {"beta", opt.beta}, {"gamma", opt.gamma},
        {"steps", opt.steps}, {"window", opt.window}});
  return finish(t);
}

struct EigenRow {
  std::string label;
  gw_complex lambda;
  std::optional<gw_complex> theta_s;
};

std::optional<gw_complex> common_ratio(gw_complex l, gw_complex a, gw_complex b, gw_complex g,
                                       double theta) {
  gw_complex r[6];
  int def[6];
  check(gw_lemma2_ratios(l, a, b, g, theta, r, def), "gw_lemma2_ratios");
  gw_complex sum{0.0, 0.0};
  for (int i = 0; i < 6; ++i) {
    if (!def[i]) return std::nullopt;
    sum.re += r[i].re / 6.0;
    sum.im += r[i].im / 6.0;
  }
  return sum;
}

gw_complex divide(gw_complex a, gw_complex b) {
  const double d = abs2(b);
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

int run_eigen(const Options& opt) {
  const gw_complex one{1.0, 0.0}, zero{0.0, 0.0}, minus_one{-1.0, 0.0};
  const gw_complex w{std::cos(opt.theta), std::sin(opt.theta)};
  std::vector<EigenRow> rows;
  Table t;
  bool unit_check = true;

  if (opt.which == "ii-a") {
    gw_complex lp{}, lm{};
    check(gw_lambda_case_iia(opt.theta, &lp, &lm), "gw_lambda_case_iia");
    for (auto [label, l] : {std::pair{"lambda(+)", lp}, std::pair{"lambda(-)", lm}, std::pair{"-1", minus_one}})
      rows.push_back({label, l, common_ratio(l, one, zero, minus_one, opt.theta)});
  } else if (opt.which == "i-a") {
    gw_complex roots[5];
    check(gw_case_ia_roots(opt.theta, roots), "gw_case_ia_roots");
    for (int i = 0; i < 5; ++i) {
      // alpha = gamma = 1, beta = 4 w / (3 lambda + w)
      const gw_complex den{3.0 * roots[i].re + w.re, 3.0 * roots[i].im + w.im};
      const gw_complex b = divide({4.0 * w.re, 4.0 * w.im}, den);
      rows.push_back({"root " + std::to_string(i + 1), roots[i], common_ratio(roots[i], one, b, one, opt.theta)});
    }
    unit_check = false;
  } else if (opt.which == "minus1") {
    rows.push_back({"-1", minus_one, common_ratio(minus_one, one, zero, minus_one, opt.theta)});
  } else {
    throw UsageError("--case for eigen must be one of: ii-a, i-a, minus1");
  }

  t.columns = {"label", "lambda_re", "lambda_im", "abs_lambda", "theta_s_re", "theta_s_im", "abs_theta_s",
               "decaying"};
  double worst_mod = 0.0;
  for (const auto& r : rows) {
    const double mod = cabs(r.lambda);
    worst_mod = std::max(worst_mod, std::abs(mod - 1.0));
    std::vector<std::string> cells{r.label, num(r.lambda.re), num(r.lambda.im), num(mod)};
    if (r.theta_s) {
      const double ts = cabs(*r.theta_s);
      cells.insert(cells.end(), {num(r.theta_s->re), num(r.theta_s->im), num(ts), ts <= 1.0 + 1e-12 ? "true" : "false"});
    } else {
      cells.insert(cells.end(), {"nan", "nan", "nan", "singular"});
    }
    t.rows.push_back(cells);
  }
  if (unit_check) {
    t.invariants.push_back({"max ||lambda| - 1|", worst_mod, 1e-12, worst_mod <= 1e-12});
  } else if (worst_mod > 1e-10) {
    std::cerr << "note: some quartic roots lie off the unit circle (formal solutions, not l2 eigenvalues)\n";
  }
  emit(t, "eigen", opt, {{"theta", opt.theta}, {"case", opt.which}});
  return finish(t);
}

int run_stationary(const Options& opt) {
  if (opt.window < 1) throw UsageError("--window must be >= 1");
  const gw_complex alpha = parse_complex(opt.alpha, "--alpha");
  const gw_complex gamma = parse_complex(opt.gamma, "--gamma");
  gw_window* praw = nullptr;
  gw_measure* mraw = nullptr;
  gw_complex lambda{-1.0, 0.0};
  bool decaying = true;

  if (opt.which == "thm1+" || opt.which == "thm1-") {
    const gw_sign s = opt.which == "thm1+" ? GW_PLUS : GW_MINUS;
    gw_complex ts{};
    int dec = 0;
    check(gw_thm1_eigenvector(opt.theta, s, alpha, opt.window, &praw, &lambda, &ts, &dec), "gw_thm1_eigenvector");
    WindowPtr guard(praw);
    check(gw_thm1_measure(opt.theta, s, alpha, opt.window, &mraw, nullptr), "gw_thm1_measure");
    guard.release();
    decaying = dec != 0;
  } else {
    gw_family fam;
    if (opt.which == "i") fam = GW_FAMILY_MINUS1_I;
    else if (opt.which == "ii-a") fam = GW_FAMILY_MINUS1_IIA;
    else if (opt.which == "ii-b") fam = GW_FAMILY_MINUS1_IIB;
    else throw UsageError("--case for stationary must be one of: thm1+, thm1-, i, ii-a, ii-b");
    check(gw_lambda_minus1_family(fam, opt.theta, alpha, gamma, opt.window, &praw, &mraw),
          "gw_lambda_minus1_family");
  }
  WindowPtr psi(praw);
  MeasurePtr closed(mraw);
  gw_measure* oraw = nullptr;
  check(gw_phi(psi.get(), &oraw), "gw_phi");
  MeasurePtr oracle(oraw);
  const MeasureView cv = read_measure(closed.get());
  const MeasureView ov = read_measure(oracle.get());

  Table t;
  t.columns = {"x", "value", "oracle", "absdiff"};
  double worst_rel = 0.0;
  for (int64_t x = cv.x_min; x <= cv.x_max(); ++x) {
    const double d = std::abs(cv.at(x) - ov.at(x));
    worst_rel = std::max(worst_rel, d / std::max(1.0, ov.at(x)));
    t.rows.push_back({std::to_string(x), num(cv.at(x)), num(ov.at(x)), num(d)});
  }
  t.invariants.push_back({"max |closed form - phi(eigenvector)| / max(1, phi)", worst_rel, 1e-9, worst_rel <= 1e-9});
  if (decaying) {
    double res = 0.0;
    check(gw_eigen_residual(psi.get(), lambda, opt.theta, &res), "gw_eigen_residual");
    t.invariants.push_back({"eigen residual", res, 1e-10, res <= 1e-10});
  } else {
    std::cerr << "warning: branch " << opt.which << " does not decay at theta = " << num(opt.theta)
              << " (|theta_s| > 1); the measure grows with |x|\n";
  }
  emit(t, "stationary", opt,
       {{"theta", opt.theta}, {"case", opt.which}, {"alpha", opt.alpha}, {"gamma", opt.gamma},
        {"window", opt.window}, {"lambda", {lambda.re, lambda.im}}});
  return finish(t);
}

int run_limits(const Options& opt) {
  if (opt.window < 0) throw UsageError("--window must be nonnegative");
  if (opt.steps < 0) throw UsageError("--steps must be nonnegative");
  const gw_complex a = parse_complex(opt.alpha, "--alpha");
  const gw_complex b = parse_complex(opt.beta, "--beta");
  const gw_complex c = parse_complex(opt.gamma, "--gamma");
  gw_measure* qraw = nullptr;
  check(gw_homogeneous_limit_measure(a, b, c, opt.window, &qraw), "gw_homogeneous_limit_measure");
  MeasurePtr quoted(qraw);
  const MeasureView qv = read_measure(quoted.get());

  Table t;
  std::optional<MeasureView> avg;
  if (opt.steps > 0) {
    gw_window* wraw = nullptr;
    const int64_t half = opt.window + opt.steps;
    check(gw_window_create(-half, half, &wraw), "gw_window_create");
    WindowPtr psi(wraw);
    check(gw_window_set(psi.get(), 0, {a, b, c}), "gw_window_set");
    gw_measure* araw = nullptr;
    check(gw_time_averaged_measure(psi.get(), opt.steps, 0.0, &araw, nullptr), "gw_time_averaged_measure");
    MeasurePtr am(araw);
    avg = read_measure(am.get());
    t.columns = {"x", "value", "oracle", "absdiff"};
  } else {
    t.columns = {"x", "value"};
  }
  double min_value = INFINITY;
  for (int64_t x = qv.x_min; x <= qv.x_max(); ++x) {
    min_value = std::min(min_value, qv.at(x));
    if (avg) {
      t.rows.push_back({std::to_string(x), num(qv.at(x)), num(avg->at(x)), num(std::abs(qv.at(x) - avg->at(x)))});
    } else {
      t.rows.push_back({std::to_string(x), num(qv.at(x))});
    }
  }
  t.invariants.push_back({"min value (nonnegative)", min_value, 0.0, min_value >= 0.0});
  emit(t, "limits", opt,
       {{"alpha", opt.alpha}, {"beta", opt.beta}, {"gamma", opt.gamma}, {"window", opt.window}, {"steps", opt.steps}});
  return finish(t);
}

int run_verify(const Options& opt) {
  struct Collected {
    std::vector<json> rows;
    bool text;
  } collected{{}, opt.format != "json"};
  auto cb = [](void* user, int id, const char* name, int passed, const char* detail) {
    auto* c = static_cast<Collected*>(user);
    if (c->text) {
      std::cout << (passed ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": " << detail << std::endl;
    }
    c->rows.push_back({{"id", id}, {"name", name}, {"passed", passed != 0}, {"detail", detail}});
  };
  int all = 0;
  check(gw_run_acceptance(cb, &collected, &all), "gw_run_acceptance");
  if (!collected.text) {
    json doc;
    doc["spec"] = {{"command", "verify"}};
    doc["rows"] = collected.rows;
    doc["invariants_checked"] = json::array({{{"name", "all acceptance criteria"}, {"passed", all != 0}}});
    std::cout << doc.dump(2) << "\n";
  }
  if (!all) {
    for (const auto& r : collected.rows)
      if (!r["passed"].get<bool>()) std::cerr << "criterion failed: " << r["id"] << ". " << r["name"].get<std::string>() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--output-format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_theta(CLI::App* sub, Options& opt) {
  sub->add_option("--theta", opt.theta, "defect phase in radians, [0, 2pi)")
      ->check(CLI::Range(0.0, 2.0 * std::numbers::pi));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-state Grover walk with a phase defect: simulation, closed-form stationary measures "
               "and verification"};
  app.require_subcommand(1);
  Options opt;

  auto* sim = app.add_subcommand("simulate", "evolve a state localized at the origin and emit mu_n(x)");
  add_theta(sim, opt);
  sim->add_option("--alpha", opt.alpha, "Psi_0(0) left amplitude as re,im");
  sim->add_option("--beta", opt.beta, "Psi_0(0) stay amplitude as re,im");
  sim->add_option("--gamma", opt.gamma, "Psi_0(0) right amplitude as re,im");
  sim->add_option("--steps", opt.steps, "number of steps")->required();
  sim->add_option("--window", opt.window, "window half-width (>= steps + 1)");
  sim->add_option("--every", opt.every, "emit every k-th step (the last step is always emitted)");
  add_common(sim, opt);

  auto* eig = app.add_subcommand("eigen", "eigenvalues and decay ratios per case");
  add_theta(eig, opt);
  eig->add_option("--case", opt.which, "ii-a, i-a or minus1")->required();
  add_common(eig, opt);

  auto* st = app.add_subcommand("stationary", "closed-form stationary measure against phi(eigenvector)");
  add_theta(st, opt);
  st->add_option("--case", opt.which, "thm1+, thm1-, i, ii-a or ii-b")->required();
  st->add_option("--alpha", opt.alpha, "amplitude scale alpha as re,im");
  st->add_option("--gamma", opt.gamma, "gamma as re,im (case ii-b)");
  st->add_option("--window", opt.window, "half-width of the emitted range");
  add_common(st, opt);

  auto* lim = app.add_subcommand("limits", "limit measure of the homogeneous walk");
  lim->add_option("--alpha", opt.alpha, "initial left amplitude as re,im");
  lim->add_option("--beta", opt.beta, "initial stay amplitude as re,im");
  lim->add_option("--gamma", opt.gamma, "initial right amplitude as re,im");
  lim->add_option("--window", opt.window, "half-width of the emitted range");
  lim->add_option("--steps", opt.steps, "also time-average a simulation over this many steps");
  add_common(lim, opt);

  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  add_common(ver, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sim) return run_simulate(opt);
    if (*eig) return run_eigen(opt);
    if (*st) return run_stationary(opt);
    if (*lim) return run_limits(opt);
    if (*ver) return run_verify(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage = e.status == GW_ERR_INVALID_ARGUMENT || e.status == GW_ERR_PARAMETER ||
                       e.status == GW_ERR_DEGENERATE_DEFECT;
    return usage ? kExitUsage : kExitFailure;
  }
  return kExitUsage;
}
