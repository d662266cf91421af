#include "scarce/solution.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace scarce {

void EqSpec::validate() const {
  if (!(l > s && s >= 1)) throw std::invalid_argument("require l > s >= 1");
  if (std::gcd(l, s) != 1) throw std::invalid_argument("require gcd(l, s) = 1");
  if (b2.is_zero()) throw std::invalid_argument("require b2 != 0");
}

int smallest_admissible_index(const Rational& alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0, 1)");
  int m = 0;
  while (alpha > Rational(2 * m + 1, 2 * m + 2)) ++m;
  return m;
}

int EqSpec::q() const { return smallest_admissible_index(Rational(s, l)); }

ExpPoly EqSpec::coefficient() const {
  ExpPoly a = ExpPoly::monomial(l, CNum(1));
  a += ExpPoly::monomial(s, b2);
  a += ExpPoly(b3);
  return a;
}

FloatC SolutionForm::value(const FloatC& z) const {
  FloatC lin = g_constant().to_float() * z;
  return evaluate(kappa, z) * exp(lin + evaluate(h_exp_part(), z));
}

FloatC SolutionForm::derivative(const FloatC& z) const {
  // f' = (kappa' + kappa g) e^H
  FloatC lin = g_constant().to_float() * z;
  FloatC e = exp(lin + evaluate(h_exp_part(), z));
  return (evaluate(differentiate(kappa), z) + evaluate(kappa, z) * evaluate(g, z)) * e;
}

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Exps{0, 0, 0}, constant);
}

MPoly MPoly::var(Var v) {
  MPoly p;
  Exps e{0, 0, 0};
  e[v] = 1;
  p.terms_.emplace(e, Rational(1));
  return p;
}

MPoly MPoly::from_poly(const Poly& poly, Var v) {
  MPoly p;
  for (int i = 0; i <= poly.degree(); ++i) {
    const CNum& c = poly.coeffs()[static_cast<std::size_t>(i)];
    if (c.is_exact_zero()) continue;
    Exps e{0, 0, 0};
    e[v] = i;
    p.terms_.emplace(e, c.rational());
  }
  return p;
}

int MPoly::degree(Var v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

CNum MPoly::eval(const CNum& b2, const CNum& t, const CNum& c1) const {
  CNum out(0);
  for (const auto& [e, c] : terms_) out += CNum(c) * pow(b2, e[0]) * pow(t, e[1]) * pow(c1, e[2]);
  return out;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
  }
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto& slot = terms_[e];
    slot -= c;
    if (slot == 0) terms_.erase(e);
  }
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& o) {
  std::map<Exps, Rational> out;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      Exps e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  terms_ = std::move(out);
  return *this;
}

MPoly MPoly::normalized() const {
  if (terms_.empty()) return *this;
  const Rational lead = terms_.rbegin()->second;
  MPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, Rational(c / lead));
  return out;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[3] = {"b2", "t", "c1"};
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool unit = (e[0] + e[1] + e[2]) > 0;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (!unit || mag != 1) {
      os << rational_string(mag);
      wrote = true;
    }
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (wrote) os << "*";
      os << names[v];
      if (e[v] > 1) os << "^" << e[v];
      wrote = true;
    }
  }
  return os.str();
}

std::vector<std::string> normalized_equation_set(const std::vector<MPoly>& eqs) {
  std::vector<std::string> out;
  for (const auto& e : eqs)
    if (!e.is_zero()) out.push_back(e.normalized().to_string());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace scarce
