#include "scarce/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace scarce {

Poly::Poly(std::vector<CNum> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(const CNum& constant) {
  if (!constant.is_exact_zero()) c_.push_back(constant);
}

Poly Poly::monomial(int degree, const CNum& coeff) {
  std::vector<CNum> c(static_cast<std::size_t>(degree) + 1);
  c.back() = coeff;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

bool Poly::is_exact() const {
  return std::all_of(c_.begin(), c_.end(), [](const CNum& c) { return c.is_exact(); });
}

bool Poly::is_rational() const {
  return std::all_of(c_.begin(), c_.end(), [](const CNum& c) { return c.is_exact_rational(); });
}

CNum Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return CNum(0);
  return c_[static_cast<std::size_t>(i)];
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<CNum> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const CNum& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return false;
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (!a.c_[i].same_as(b.c_[i])) return false;
  return true;
}

CNum Poly::operator()(const CNum& x) const {
  CNum acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

FloatC Poly::operator()(const FloatC& x) const {
  FloatC acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_float();
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<CNum> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * CNum(static_cast<long>(i));
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (CNum(1) / leading());
}

Poly Poly::compose(const Poly& q) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + Poly(*it);
  return acc;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const CNum& c = c_[static_cast<std::size_t>(i)];
    if (c.is_exact_zero()) continue;
    std::string cs = c.to_string();
    bool wrap = cs.find_first_of("+*", 1) != std::string::npos || (cs.find('-', 1) != std::string::npos);
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << (wrap ? "(" + cs + ")" : cs);
      continue;
    }
    if (!(c.is_exact_rational() && c.rational() == 1)) os << (wrap ? "(" + cs + ")" : cs) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<CNum> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<CNum> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const CNum inv_lead = CNum(1) / b.leading();
  for (int i = a.degree() - db; i >= 0; --i) {
    CNum q = rem[static_cast<std::size_t>(i + db)] * inv_lead;
    quo[static_cast<std::size_t>(i)] = q;
    if (q.is_exact_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
  if (!a.is_exact() || !b.is_exact()) throw std::domain_error("gcd requires exact coefficients");
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly squarefree_part(const Poly& p) {
  if (p.degree() <= 0) return p.monic();
  return divmod(p, gcd(p, p.derivative())).first.monic();
}

std::vector<Poly> squarefree_decomposition(const Poly& p) {
  std::vector<Poly> out;
  if (p.degree() <= 0) return out;
  Poly a = p.monic();
  Poly b = gcd(a, a.derivative());
  Poly c = divmod(a, b).first;
  Poly d = divmod(a.derivative(), b).first - c.derivative();
  while (c.degree() > 0) {
    Poly f = gcd(c, d);
    out.push_back(f);
    c = divmod(c, f).first;
    d = divmod(d, f).first - c.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

namespace {

// Aberth-Ehrlich simultaneous iteration at working precision.
std::vector<FloatC> aberth(const Poly& p) {
  const int n = p.degree();
  std::vector<FloatC> z;
  if (n <= 0) return z;
  const Poly dp = p.derivative();
  // Starting circle from the geometric mean of root moduli.
  Real lead = abs(p.leading().to_float());
  Real c0 = abs(p.coeffs().front().to_float());
  Real radius = c0 == 0 ? Real(1) : boost::multiprecision::pow(c0 / lead, Real(1) / n);
  if (radius == 0) radius = 1;
  const Real pi = boost::multiprecision::acos(Real(-1));
  for (int k = 0; k < n; ++k) {
    Real theta = 2 * pi * k / n + Real("0.4");
    z.emplace_back(radius * boost::multiprecision::cos(theta), radius * boost::multiprecision::sin(theta));
  }
  const Real eps = boost::multiprecision::pow(Real(2), -static_cast<int>(working_precision()) + 8);
  for (int iter = 0; iter < 2000; ++iter) {
    Real worst = 0;
    for (int k = 0; k < n; ++k) {
      FloatC pv = p(z[k]);
      if (pv.re == 0 && pv.im == 0) continue;
      FloatC w = pv / dp(z[k]);
      FloatC s;
      for (int j = 0; j < n; ++j)
        if (j != k) s += FloatC(Real(1)) / (z[k] - z[j]);
      FloatC step = w / (FloatC(Real(1)) - w * s);
      z[k] -= step;
      Real rel = abs(step) / (1 + abs(z[k]));
      if (rel > worst) worst = rel;
    }
    if (worst < eps) break;
  }
  return z;
}

FloatC newton_polish(const Poly& p, FloatC z) {
  const Poly dp = p.derivative();
  for (int i = 0; i < 8; ++i) {
    FloatC d = dp(z);
    if (d.re == 0 && d.im == 0) break;
    FloatC step = p(z) / d;
    z -= step;
    if (abs(step) <= abs(z) * boost::multiprecision::pow(Real(2), -static_cast<int>(working_precision())))
      break;
  }
  return z;
}

std::optional<CNum> recognise_exact(const Poly& p, const FloatC& z) {
  const long max_den = 1000000;
  Rational re = rationalize(z.re, max_den);
  Rational im = rationalize(z.im, max_den);
  CNum cand(re, im);
  if (p(cand).is_exact_zero()) return cand;
  return std::nullopt;
}

bool root_less(const PolyRoot& a, const PolyRoot& b) {
  auto za = a.value.to_float();
  auto zb = b.value.to_float();
  Real tol("1e-20");
  if (boost::multiprecision::abs(za.re - zb.re) > tol) return za.re < zb.re;
  return za.im < zb.im;
}

}  // namespace

std::vector<PolyRoot> find_roots(const Poly& p) {
  std::vector<PolyRoot> out;
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial are undefined");
  if (p.degree() == 0) return out;

  if (p.is_exact()) {
    auto factors = squarefree_decomposition(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const Poly& f = factors[i];
      if (f.degree() <= 0) continue;
      for (const auto& z : aberth(f)) {
        FloatC polished = newton_polish(f, z);
        if (auto exact = recognise_exact(f, polished)) {
          out.push_back({*exact, static_cast<int>(i + 1)});
        } else {
          out.push_back({CNum(polished), static_cast<int>(i + 1)});
        }
      }
    }
  } else {
    auto zs = aberth(p);
    std::vector<bool> used(zs.size(), false);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      if (used[i]) continue;
      FloatC sum = zs[i];
      int mult = 1;
      for (std::size_t j = i + 1; j < zs.size(); ++j) {
        if (used[j]) continue;
        if (abs(zs[i] - zs[j]) <= Real("1e-8") * (1 + abs(zs[i]))) {
          used[j] = true;
          sum += zs[j];
          ++mult;
        }
      }
      FloatC mean = sum / FloatC(Real(mult));
      out.push_back({CNum(mult == 1 ? newton_polish(p, mean) : mean), mult});
    }
  }
  std::sort(out.begin(), out.end(), root_less);
  return out;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  CNum lead = den_.leading();
  if (!(lead.is_exact_rational() && lead.rational() == 1)) {
    CNum inv = CNum(1) / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
  }
  reduce();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
  }
  reduce();
  return *this;
}

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  reduce();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw std::domain_error("rational function division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  reduce();
  return *this;
}

CNum RatFunc::operator()(const CNum& x, double tol) const {
  CNum d = den_(x);
  if (d.is_zero(tol)) throw std::domain_error("rational function pole at " + x.to_string());
  return num_(x) / d;
}

}  // namespace scarce
