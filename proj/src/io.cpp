#include "scarce/io.hpp"

namespace scarce {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw FormatError(std::string("field \"") + key + "\" has the wrong type");
  }
}

Real real_from_json(const Json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number()) return Real(j.get<double>());
  throw FormatError("expected a decimal string or number");
}

Json cnum_list(const std::vector<CNum>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json complex_pair(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const CNum& x) {
  if (x.is_exact()) {
    return {{"exact", rational_string(x.exact().re)}, {"exact_im", rational_string(x.exact().im)}};
  }
  const FloatC f = x.to_float();
  return {{"float", Json::array({real_string(f.re), real_string(f.im)})}};
}

CNum cnum_from_json(const Json& j) {
  try {
    if (j.is_string()) return CNum(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return CNum(Rational(j.get<long long>()));
    if (j.is_object() && j.contains("exact")) {
      Rational im = j.contains("exact_im") ? parse_rational(j.at("exact_im").get<std::string>()) : Rational(0);
      return CNum(parse_rational(j.at("exact").get<std::string>()), im);
    }
    if (j.is_object() && j.contains("float")) {
      const Json& f = j.at("float");
      if (!f.is_array() || f.size() != 2) throw FormatError("\"float\" must be [re, im]");
      return CNum(FloatC(real_from_json(f[0]), real_from_json(f[1])));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed number: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("malformed number: " + j.dump());
}

Json to_json(const ExpPoly& a) {
  Json terms = Json::array();
  for (const auto& [j, c] : a.terms()) terms.push_back(Json::array({j, to_json(c)}));
  return {{"den", a.den()}, {"terms", terms}};
}

ExpPoly exppoly_from_json(const Json& j) {
  const int den = get_as<int>(j, "den");
  if (den < 1) throw FormatError("\"den\" must be positive");
  ExpPoly::Terms terms;
  for (const auto& t : field(j, "terms")) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) throw FormatError("terms must be [j, number]");
    CNum c = cnum_from_json(t[1]);
    terms[t[0].get<int>()] += c;
  }
  return ExpPoly(den, std::move(terms));
}

Json to_json(const EqSpec& spec) {
  return {{"l", spec.l}, {"s", spec.s}, {"b2", to_json(spec.b2)}, {"b3", to_json(spec.b3)}};
}

Json to_json(const SolutionForm& s) {
  Json j{{"schema", kSolutionSchema},
         {"l", s.spec.l},
         {"s", s.spec.s},
         {"b2", to_json(s.spec.b2)},
         {"b3", to_json(s.spec.b3)},
         {"k", s.k},
         {"c0", to_json(s.c0)},
         {"c", to_json(s.c)}};
  if (s.c1) j["c1"] = to_json(*s.c1);
  j["kappa"] = to_json(s.kappa);
  j["g"] = to_json(s.g);
  j["branch"] = s.branch;
  j["verified"] = s.verified;
  return j;
}

SolutionForm solution_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("a solution must be a JSON object");
  if (j.contains("schema") && j.at("schema") != kSolutionSchema)
    throw FormatError("unsupported solution schema " + j.at("schema").dump());
  SolutionForm s;
  s.spec.l = get_as<int>(j, "l");
  s.spec.s = get_as<int>(j, "s");
  s.spec.b2 = cnum_from_json(field(j, "b2"));
  s.spec.b3 = cnum_from_json(field(j, "b3"));
  s.k = j.contains("k") ? get_as<int>(j, "k") : 0;
  s.c0 = j.contains("c0") ? cnum_from_json(j.at("c0")) : CNum(1);
  s.c = j.contains("c") ? cnum_from_json(j.at("c")) : CNum(0);
  if (j.contains("c1")) s.c1 = cnum_from_json(j.at("c1"));
  s.kappa = exppoly_from_json(field(j, "kappa"));
  s.g = exppoly_from_json(field(j, "g"));
  if (j.contains("branch")) s.branch = get_as<std::string>(j, "branch");
  if (j.contains("verified")) s.verified = get_as<bool>(j, "verified");
  return s;
}

std::vector<SolutionForm> solutions_from_json(const Json& j) {
  std::vector<SolutionForm> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(solution_from_json(e));
  } else {
    out.push_back(solution_from_json(j));
  }
  return out;
}

Json to_json(const ClosureSystem& c) {
  Json coeffs = Json::array();
  for (const auto& x : c.closure.coeffs()) coeffs.push_back(x.to_string());
  Json eqs = Json::array();
  for (const auto& e : c.equations) eqs.push_back(e.to_string());
  return {{"unknown", c.unknown},      {"unknowns", c.unknowns},
          {"coeffs", coeffs},          {"roots", cnum_list(c.roots)},
          {"equations", eqs},          {"normalized", normalized_equation_set(c.equations)},
          {"side_constraints", c.side_constraints}, {"diagnostics", c.diagnostics}};
}

Json to_json(const VerifyReport& r) {
  Json j{{"is_solution", r.is_solution}, {"residual", to_json(r.residual)},
         {"residual_max_norm", real_string(r.residual.max_norm())}};
  if (r.wronskian_constant) j["wronskian"] = to_json(*r.wronskian_constant);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const FamilyResult& f) {
  Json sols = Json::array();
  for (const auto& s : f.solutions) sols.push_back(to_json(s));
  return {{"closure", to_json(f.closure)}, {"solutions", sols}};
}

Json to_json(const PairResult& p) {
  return {{"spec", to_json(p.spec)}, {"f1", to_json(p.f1)}, {"f2", to_json(p.f2)}, {"wronskian", to_json(p.wronskian)}};
}

Json to_json(const ProbeBranch& b) {
  Json sols = Json::array();
  for (const auto& s : b.verified) sols.push_back(to_json(s));
  return {{"k", b.k},           {"c0", b.c0},         {"mode", b.mode},          {"closure", to_json(b.system)},
          {"verified", sols},   {"candidates", b.candidates}, {"rejected", b.rejected}};
}

Json to_json(const PowerSeries& p) { return cnum_list(p.coeffs()); }

Json to_json(const FrobeniusPair& fp) {
  return {{"rho1", to_json(fp.rho1)}, {"rho2", to_json(fp.rho2)},   {"d", fp.d},
          {"kind", to_string(fp.kind)}, {"n0", fp.n0},              {"obstruction", to_json(fp.obstruction)},
          {"u1", to_json(fp.u1)},     {"u2", to_json(fp.u2)},       {"N", fp.N}};
}

Json to_json(const SeriesMatch& m) {
  return {{"n0", m.n0},
          {"D1", to_json(m.D1)},
          {"D2", to_json(m.D2)},
          {"D3", to_json(m.D3)},
          {"D4", to_json(m.D4)},
          {"E", to_json(m.E)},
          {"discrepancy", real_string(m.discrepancy)},
          {"exact_zero", m.exact_zero},
          {"rho_consistent", m.rho_consistent},
          {"w_order", m.w_order},
          {"fit1", Json::array({to_json(m.fit1_E1), to_json(m.fit1_E2)})},
          {"fit2", Json::array({to_json(m.fit2_E1), to_json(m.fit2_E2)})}};
}

Json to_json(const ZeroLattice& lat) {
  Json entries = Json::array();
  for (const auto& e : lat.entries)
    entries.push_back({{"base", Json::array({real_string(e.base.re), real_string(e.base.im)})},
                       {"multiplicity", e.multiplicity}});
  return {{"den", lat.den}, {"period", real_string(lat.period)}, {"entries", entries}};
}

Json to_json(const ArgumentCount& a) { return {{"count", a.count}, {"value", a.value}, {"nodes", a.nodes}}; }

Json to_json(const SectorDecomp& d) {
  return {{"a", d.a}, {"b", d.b}, {"k", d.k}, {"theta", d.theta}, {"sign", d.sign}};
}

Json to_json(const RaySample& s) {
  return {{"r", s.r}, {"f", complex_pair(s.f)}, {"fp", complex_pair(s.fp)}, {"abs_f", std::abs(s.f)}};
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace scarce
