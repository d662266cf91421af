#include "scarce/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "scarce/io.hpp"

namespace scarce {

// ---------------------------------------------------------------- config

void Config::validate() const {
  if (precision_bits < 53) throw std::invalid_argument("precision_bits must be at least 53");
  if (N < 1) throw std::invalid_argument("N must be positive");
  if (!(residual_tol > 0)) throw std::invalid_argument("residual_tol must be positive");
  if (quadrature_nodes < 8) throw std::invalid_argument("quadrature_nodes must be at least 8");
  if (format != "json" && format != "csv" && format != "text")
    throw std::invalid_argument("format must be json, csv or text");
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config " + path + " must be a JSON object");
  Config c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "precision_bits") c.precision_bits = v.get<unsigned>();
      else if (key == "N") c.N = v.get<int>();
      else if (key == "residual_tol") c.residual_tol = v.get<double>();
      else if (key == "quadrature_nodes") c.quadrature_nodes = v.get<int>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else throw std::invalid_argument("config " + path + ": unknown key \"" + key + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  c.validate();
  return c;
}

Config default_config() {
  const char* path = std::getenv(kConfigEnv);
  return path && *path ? load_config(path) : Config{};
}

// ---------------------------------------------------------------- commands

namespace {

const char* const kOddNote = "l must be even for λ(f) < ∞";

struct Outcome {
  Json report;
  int code = kExitOk;
  // Header and rows for csv output; empty falls back to the flattened report.
  std::vector<std::string> csv_rows;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CNum parse_param(const std::string& name, const std::string& text) {
  try {
    return CNum(parse_rational(text));
  } catch (const std::exception&) {
    throw UsageError("--" + name + ": malformed rational \"" + text + "\"");
  }
}

EqSpec make_spec(int l, int s, const std::string& b2, const std::string& b3) {
  return EqSpec{l, s, parse_param("b2", b2), parse_param("b3", b3)};
}

void validate_spec(const EqSpec& spec) {
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Outcome odd_l(std::ostream& err) {
  err << kOddNote << "\n";
  return {Json{{"solutions", Json::array()}, {"note", kOddNote}}, kExitNoSolution, {}};
}

std::vector<SolutionForm> read_solutions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return solutions_from_json(Json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const FormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Outcome cmd_construct(const EqSpec& spec, const Config& cfg, std::ostream& err) {
  if (!spec.l_even()) return odd_l(err);
  validate_spec(spec);
  Json sols = Json::array();
  for (auto s : find_solutions(spec)) {
    s.verified = verify_solution(s, cfg.residual_tol).is_solution;
    sols.push_back(to_json(s));
  }
  if (sols.empty()) {
    const char* note = "no zero-scarce solution form for these parameters";
    err << note << "\n";
    return {Json{{"solutions", sols}, {"note", note}}, kExitNoSolution, {}};
  }
  return {sols, kExitOk, {}};
}

Outcome cmd_enumerate(const std::string& which, int k_max) {
  if (k_max < 0) throw UsageError("--k-max must be nonnegative");
  Json out = Json::array();
  if (which == "l2") {
    for (int k = 0; k <= k_max; ++k)
      for (int c0 : {1, -1}) out.push_back({{"k", k}, {"c0", c0}, {"closure", to_json(l2_constraints(k, c0))}});
  } else if (which == "l4s1") {
    for (int k = 1; k <= k_max; ++k)
      for (int c0 : {1, -1}) {
        Json e = to_json(build_l4_s1(k, c0));
        out.push_back({{"k", k}, {"c0", c0}, {"family", e}});
      }
  } else if (which == "l4s3") {
    for (int k = 1; k <= k_max; ++k) out.push_back({{"k", k}, {"family", to_json(build_l4_s3(k))}});
  } else if (which == "cor45") {
    for (int k1 = 1; k1 <= k_max; ++k1)
      for (int k2 = 0; k2 < k1; ++k2)
        for (int c0 : {1, -1})
          out.push_back({{"k1", k1}, {"k2", k2}, {"c0", c0}, {"pair", to_json(build_pair_cor45(k1, k2, c0))}});
  } else {
    throw UsageError("--case must be one of l2, l4s1, l4s3, cor45");
  }
  return {out, kExitOk, {}};
}

Outcome cmd_verify(const std::string& path, const Config& cfg) {
  const auto sols = read_solutions(path);
  Json reports = Json::array();
  bool all = true;
  for (const auto& s : sols) {
    VerifyReport rep = verify_solution(s, cfg.residual_tol);
    all = all && rep.is_solution;
    reports.push_back({{"branch", s.branch}, {"report", to_json(rep)}});
  }
  Json out{{"count", sols.size()}, {"all_verified", all}, {"reports", reports}};
  if (sols.size() == 2) {
    try {
      auto w = wronskian(sols[0], sols[1], cfg.residual_tol);
      out["wronskian"] = {{"value", to_json(w.value)}, {"independent", w.independent}};
    } catch (const WronskianError& e) {
      out["wronskian"] = {{"error", e.what()}};
    }
  }
  return {out, all ? kExitOk : kExitFailed, {}};
}

Outcome cmd_frobenius(const EqSpec& spec, int N, std::ostream& err) {
  if (!spec.l_even()) return odd_l(err);
  validate_spec(spec);
  const LommelMap lm = lommel_map(spec);
  Json h = Json::array();
  for (const auto& c : lm.h.coeffs()) h.push_back(to_json(c));
  FrobeniusPair fp;
  try {
    fp = frobenius_solve(lm.h, N);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json out{{"spec", to_json(spec)}, {"h", h}, {"pair", to_json(fp)}};
  // Cross-check against closed forms when the equation has two of them.
  const auto sols = find_solutions(spec);
  if (sols.size() >= 2) {
    try {
      out["series_match"] = to_json(series_match(sols[0], sols[1], fp, N));
    } catch (const std::exception& e) {
      out["series_match"] = {{"error", e.what()}};
    }
  }
  return {out, kExitOk, {}};
}

std::vector<double> lambda_radii() {
  std::vector<double> r;
  for (int i = 0; i < 24; ++i) r.push_back(10.0 * std::pow(1e3, i / 23.0));
  return r;
}

Outcome cmd_zeros(const std::string& path, std::vector<double> radii, bool argument, const Config& cfg) {
  if (radii.empty()) radii = {5, 10, 20, 100};
  for (double r : radii)
    if (!(r > 0)) throw UsageError("--r values must be positive");
  const auto sols = read_solutions(path);
  Outcome res;
  res.report = Json::array();
  res.csv_rows.push_back(argument ? "solution,r,n,argument_count" : "solution,r,n");
  int code = kExitOk;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const ZeroLattice lat = zeros_of(sols[i]);
    Json counts = Json::array();
    for (double r : radii) {
      const long n = count_zeros(lat, Real(r));
      Json row{{"r", r}, {"n", n}};
      std::string csv = std::to_string(i) + "," + fmt(r) + "," + std::to_string(n);
      if (argument) {
        try {
          ArgumentCount ac = argument_count(sols[i], r, cfg.quadrature_nodes);
          row["argument_count"] = to_json(ac);
          if (ac.count != n) code = kExitFailed;
          csv += "," + std::to_string(ac.count);
        } catch (const ArgumentCountError& e) {
          row["argument_count"] = {{"error", e.what()}};
          code = kExitFailed;
          csv += ",";
        }
      }
      counts.push_back(row);
      res.csv_rows.push_back(csv);
    }
    res.report.push_back({{"branch", sols[i].branch},
                          {"lattice", to_json(lat)},
                          {"counts", counts},
                          {"lambda_estimate", lambda_estimate(lat, lambda_radii())}});
  }
  res.code = code;
  return res;
}

Outcome cmd_ray(const std::string& path, std::size_t index, double theta, double r_max, const RayOptions& opts) {
  const auto sols = read_solutions(path);
  if (index >= sols.size()) throw UsageError("--index out of range");
  const SolutionForm& s = sols[index];
  const FloatC z0;
  Outcome res;
  RayResult ray;
  try {
    ray = ray_integrate(s.spec, theta, r_max, s.value(z0), s.derivative(z0), opts);
  } catch (const StepUnderflow& e) {
    return {Json{{"error", e.what()}}, kExitFailed, {}};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  res.csv_rows.push_back("r,abs_f,re_f,im_f,closed_form_abs,rel_error");
  Json samples = Json::array();
  for (const auto& smp : ray.samples) {
    Json j = to_json(smp);
    std::string extra;
    try {
      const std::complex<double> exact = s.value(FloatC(std::polar(smp.r, theta))).to_complex();
      const double rel = std::abs(smp.f - exact) / std::abs(exact);
      j["closed_form_abs"] = std::abs(exact);
      j["rel_error"] = rel;
      extra = fmt(std::abs(exact)) + "," + fmt(rel);
    } catch (const std::out_of_range&) {
      extra = ",";
    }
    res.csv_rows.push_back(fmt(smp.r) + "," + fmt(std::abs(smp.f)) + "," + fmt(smp.f.real()) + "," +
                           fmt(smp.f.imag()) + "," + extra);
    samples.push_back(j);
  }
  res.report = {{"branch", s.branch}, {"theta", theta},   {"r_max", r_max},
                {"method", to_string(ray.method)}, {"bits", ray.bits}, {"steps", ray.steps},
                {"samples", samples}};
  return res;
}

Outcome cmd_probe(int l, int s, int k_max, std::ostream& err) {
  if (l % 2 != 0) return odd_l(err);
  if (k_max < 0) throw UsageError("--k-max must be nonnegative");
  std::vector<ProbeBranch> branches;
  try {
    branches = general_probe(l, s, k_max);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json out = Json::array();
  for (const auto& b : branches) out.push_back(to_json(b));
  return {out, kExitOk, {}};
}

Outcome cmd_alpha(const std::string& text) {
  Rational a;
  try {
    a = parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError("--value: malformed rational \"" + text + "\"");
  }
  if (a <= 0 || a >= 1) throw UsageError("--value must lie strictly between 0 and 1");
  const AlphaResult r = alpha_admissible(a);
  return {Json{{"m", r.m}, {"admissible", r.admissible}}, kExitOk, {}};
}

// "path = value" lines (text) or "path,value" rows (csv) for any report.
void flatten(const Json& j, const std::string& path, const std::string& sep, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, sep, out);
  } else if (j.is_array()) {
    if (j.empty()) out << path << sep << "[]\n";
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", sep, out);
  } else {
    out << path << sep << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Outcome& o, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << render(o.report);
  } else if (format == "csv" && !o.csv_rows.empty()) {
    for (const auto& row : o.csv_rows) out << row << "\n";
  } else if (format == "csv") {
    out << "path,value\n";
    flatten(o.report, "", ",", out);
  } else {
    flatten(o.report, "", " = ", out);
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-scarce solutions of f'' = (e^{lz} + b2 e^{sz} + b3) f"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<unsigned> precision;
  std::optional<std::string> format;
  std::optional<double> residual_tol;
  std::optional<int> quad_nodes;
  app.add_option("--config", config_path, std::string("JSON config file (default: $") + kConfigEnv + ")");
  app.add_option("--precision-bits", precision, "float backend precision");
  app.add_option("--format", format, "json, csv or text");
  app.add_option("--residual-tol", residual_tol, "zero tolerance for float residuals");
  app.add_option("--quad-nodes", quad_nodes, "initial argument-principle node count");

  int l = 2, s = 1, k_max = 3, N = 0;
  std::string b2 = "1", b3 = "0", which, solution_path, alpha_text;
  std::vector<double> radii;
  double theta = 0, r_max = 1;
  bool argument = false;
  std::size_t index = 0;
  std::string method = "automatic";
  RayOptions ray_opts;

  auto add_equation = [&](CLI::App* sub) {
    sub->add_option("--l", l, "exponent of the leading term")->required();
    sub->add_option("--s", s, "exponent of the middle term")->required();
    sub->add_option("--b2", b2, "b2 as p/q or a decimal")->required();
    sub->add_option("--b3", b3, "b3 as p/q or a decimal")->required();
  };

  auto* construct = app.add_subcommand("construct", "all solution forms of one equation");
  add_equation(construct);

  auto* enumerate = app.add_subcommand("enumerate", "closure systems and solution families up to a degree");
  enumerate->add_option("--case", which, "l2, l4s1, l4s3 or cor45")->required();
  enumerate->add_option("--k-max", k_max, "largest degree of kappa");

  auto* verify = app.add_subcommand("verify", "exact residual check of solution files");
  verify->add_option("--solution", solution_path, "solution JSON (object or array)")->required();

  auto* frob = app.add_subcommand("frobenius", "Frobenius basis at the transformed singular point");
  add_equation(frob);
  frob->add_option("--N", N, "truncation order");

  auto* zeros = app.add_subcommand("zeros", "zero lattice, n(r) and lambda estimate");
  zeros->add_option("--solution", solution_path, "solution JSON")->required();
  zeros->add_option("--r", radii, "radii for n(r)");
  zeros->add_flag("--argument-check", argument, "cross-check n(r) by the argument principle");

  auto* ray = app.add_subcommand("ray", "numerical integration along a ray from the origin");
  ray->add_option("--solution", solution_path, "solution JSON")->required();
  ray->add_option("--index", index, "which solution of the file");
  ray->add_option("--theta", theta, "ray angle")->required();
  ray->add_option("--r-max", r_max, "end of the ray")->required();
  ray->add_option("--samples", ray_opts.samples, "sample intervals");
  ray->add_option("--rel-tol", ray_opts.rel_tol, "relative tolerance of the adaptive stepper");
  ray->add_option("--method", method, "automatic, dopri5 or taylor");

  auto* probe = app.add_subcommand("probe", "closure systems for general even l");
  probe->add_option("--l", l, "exponent of the leading term")->required();
  probe->add_option("--s", s, "exponent of the middle term")->required();
  probe->add_option("--k-max", k_max, "largest degree of kappa");

  auto* alpha = app.add_subcommand("alpha", "admissibility of alpha = s/l");
  alpha->add_option("--value", alpha_text, "alpha as p/q")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Config cfg;
  try {
    cfg = config_path.empty() ? default_config() : load_config(config_path);
    if (precision) cfg.precision_bits = *precision;
    if (format) cfg.format = *format;
    if (residual_tol) cfg.residual_tol = *residual_tol;
    if (quad_nodes) cfg.quadrature_nodes = *quad_nodes;
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const unsigned saved_bits = working_precision();
  set_working_precision(cfg.precision_bits);

  Outcome result;
  int code = kExitOk;
  try {
    if (construct->parsed()) {
      result = cmd_construct(make_spec(l, s, b2, b3), cfg, err);
    } else if (enumerate->parsed()) {
      result = cmd_enumerate(which, k_max);
    } else if (verify->parsed()) {
      result = cmd_verify(solution_path, cfg);
    } else if (frob->parsed()) {
      result = cmd_frobenius(make_spec(l, s, b2, b3), N > 0 ? N : cfg.N, err);
    } else if (zeros->parsed()) {
      result = cmd_zeros(solution_path, radii, argument, cfg);
    } else if (ray->parsed()) {
      if (method == "automatic") ray_opts.method = RayMethod::automatic;
      else if (method == "dopri5") ray_opts.method = RayMethod::dopri5;
      else if (method == "taylor") ray_opts.method = RayMethod::taylor;
      else throw UsageError("--method must be automatic, dopri5 or taylor");
      result = cmd_ray(solution_path, index, theta, r_max, ray_opts);
    } else if (probe->parsed()) {
      result = cmd_probe(l, s, k_max, err);
    } else if (alpha->parsed()) {
      result = cmd_alpha(alpha_text);
    }
    code = result.code;
    emit(result, cfg.format, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    code = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kExitFailed;
  }
  set_working_precision(saved_bits);
  if (code == kExitFailed && result.report.contains("error"))
    err << "error: " << result.report.at("error").get<std::string>() << "\n";
  return code;
}

}  // namespace scarce
