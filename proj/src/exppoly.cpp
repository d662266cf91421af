#include "scarce/exppoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace scarce {

namespace {

void check_den(int den) {
  if (den != 1 && den != 2) throw std::invalid_argument("exponent denominator must be 1 or 2");
}

}  // namespace

ExpPoly::ExpPoly(const CNum& constant) {
  if (!constant.is_exact_zero()) terms_.emplace(0, constant);
}

ExpPoly::ExpPoly(int den, Terms terms) : den_(den), terms_(std::move(terms)) {
  check_den(den);
  canonicalize();
}

ExpPoly ExpPoly::monomial(int j, const CNum& coeff, int den) { return ExpPoly(den, Terms{{j, coeff}}); }

void ExpPoly::canonicalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_literal_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  if (den_ == 2 && std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.first % 2 == 0; })) {
    Terms reduced;
    for (auto& [j, a] : terms_) reduced.emplace(j / 2, std::move(a));
    terms_ = std::move(reduced);
    den_ = 1;
  }
}

CNum ExpPoly::coeff(int j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? CNum(0) : it->second;
}

bool ExpPoly::is_exact() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_exact(); });
}

bool ExpPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

int ExpPoly::min_exponent() const {
  if (terms_.empty()) throw std::domain_error("zero exponential polynomial has no exponents");
  return terms_.begin()->first;
}

int ExpPoly::max_exponent() const {
  if (terms_.empty()) throw std::domain_error("zero exponential polynomial has no exponents");
  return terms_.rbegin()->first;
}

Real ExpPoly::max_norm() const {
  Real m = 0;
  for (const auto& [j, a] : terms_) {
    Real v = a.modulus();
    if (v > m) m = v;
  }
  return m;
}

bool ExpPoly::is_negligible(double tol) const {
  if (is_exact()) return terms_.empty();
  return max_norm() < tol;
}

ExpPoly::Terms ExpPoly::terms_over(int new_den) const {
  if (new_den % den_ != 0) throw std::invalid_argument("incompatible exponent denominators");
  const int scale = new_den / den_;
  if (scale == 1) return terms_;
  Terms out;
  for (const auto& [j, a] : terms_) out.emplace(j * scale, a);
  return out;
}

ExpPoly ExpPoly::shifted(int j) const {
  Terms out;
  for (const auto& [e, a] : terms_) out.emplace(e + j, a);
  return ExpPoly(den_, std::move(out));
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) { return *this = combine(*this, o, RingOp::add); }
ExpPoly& ExpPoly::operator-=(const ExpPoly& o) { return *this = combine(*this, o, RingOp::sub); }
ExpPoly& ExpPoly::operator*=(const ExpPoly& o) { return *this = combine(*this, o, RingOp::mul); }

ExpPoly& ExpPoly::operator*=(const CNum& s) {
  for (auto& [j, a] : terms_) a *= s;
  canonicalize();
  return *this;
}

ExpPoly operator-(const ExpPoly& a) { return a * CNum(-1); }

bool operator==(const ExpPoly& a, const ExpPoly& b) {
  if (a.den_ != b.den_ || a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [j, c] : a.terms_) {
    if (it->first != j || !c.same_as(it->second)) return false;
    ++it;
  }
  return true;
}

std::string ExpPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second.to_string() << ")";
    if (it->first != 0) {
      os << "*e^(" << it->first;
      if (den_ != 1) os << "/" << den_;
      os << "z)";
    }
  }
  return os.str();
}

ExpPoly combine(const ExpPoly& a, const ExpPoly& b, RingOp op) {
  const int den = std::lcm(a.den(), b.den());
  ExpPoly::Terms ta = a.terms_over(den);
  ExpPoly::Terms tb = b.terms_over(den);
  ExpPoly::Terms out;
  switch (op) {
    case RingOp::add:
    case RingOp::sub:
      out = std::move(ta);
      for (auto& [j, c] : tb) {
        auto [it, inserted] = out.try_emplace(j, CNum(0));
        if (op == RingOp::add)
          it->second += c;
        else
          it->second -= c;
      }
      break;
    case RingOp::mul:
      for (const auto& [i, x] : ta)
        for (const auto& [j, y] : tb) {
          auto [it, inserted] = out.try_emplace(i + j, CNum(0));
          it->second += x * y;
        }
      break;
  }
  return ExpPoly(den, std::move(out));
}

ExpPoly differentiate(const ExpPoly& a) {
  ExpPoly::Terms out;
  for (const auto& [j, c] : a.terms())
    if (j != 0) out.emplace(j, c * CNum(Rational(j, a.den())));
  return ExpPoly(a.den(), std::move(out));
}

ExpPoly antiderivative_exp_part(const ExpPoly& a) {
  ExpPoly::Terms out;
  for (const auto& [j, c] : a.terms())
    if (j != 0) out.emplace(j, c * CNum(Rational(a.den()) / j));
  return ExpPoly(a.den(), std::move(out));
}

FloatC evaluate(const ExpPoly& a, const FloatC& z) {
  FloatC sum;
  for (const auto& [j, c] : a.terms()) {
    FloatC w = z * FloatC(Real(j) / a.den());
    if (boost::multiprecision::abs(w.re) > Real(1e7)) throw std::out_of_range("exponent out of range");
    sum += c.to_float() * exp(w);
  }
  return sum;
}

std::complex<double> evaluate(const ExpPoly& a, std::complex<double> z) {
  std::complex<double> sum = 0.0;
  for (const auto& [j, c] : a.terms()) {
    std::complex<double> w = z * (static_cast<double>(j) / a.den());
    if (w.real() > 700.0) throw std::out_of_range("exponent out of range");
    sum += c.to_complex() * std::exp(w);
  }
  return sum;
}

Poly laurent_shifted_poly(const ExpPoly& a) {
  if (a.is_zero()) throw std::domain_error("roots of the zero exponential polynomial are undefined");
  const int lo = a.min_exponent();
  std::vector<CNum> c(static_cast<std::size_t>(a.max_exponent() - lo + 1));
  for (const auto& [j, v] : a.terms()) c[static_cast<std::size_t>(j - lo)] = v;
  return Poly(std::move(c));
}

std::vector<LaurentRoot> laurent_roots(const ExpPoly& a) {
  Poly p = laurent_shifted_poly(a);
  std::vector<LaurentRoot> out;
  for (auto& r : find_roots(p)) out.push_back({std::move(r.value), r.multiplicity});
  return out;
}

}  // namespace scarce
