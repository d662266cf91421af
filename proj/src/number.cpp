#include "scarce/number.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace scarce {

namespace {

unsigned g_precision_bits = 113;

unsigned digits10_for(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521)) + 1;
}

struct PrecisionInit {
  PrecisionInit() {
    Real::default_precision(digits10_for(g_precision_bits));
  }
} g_precision_init;

}  // namespace

void set_working_precision(unsigned bits) {
  if (bits < 53) throw std::invalid_argument("precision must be at least 53 bits");
  g_precision_bits = bits;
  Real::default_precision(digits10_for(bits));
}

unsigned working_precision() { return g_precision_bits; }

// ---------------------------------------------------------------- FloatC

FloatC& FloatC::operator+=(const FloatC& o) {
  re += o.re;
  im += o.im;
  return *this;
}

FloatC& FloatC::operator-=(const FloatC& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

FloatC& FloatC::operator*=(const FloatC& o) {
  Real r = re * o.re - im * o.im;
  Real i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

FloatC& FloatC::operator/=(const FloatC& o) {
  Real d = o.re * o.re + o.im * o.im;
  if (d == 0) throw std::domain_error("complex division by zero");
  Real r = (re * o.re + im * o.im) / d;
  Real i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

FloatC operator+(FloatC a, const FloatC& b) { return a += b; }
FloatC operator-(FloatC a, const FloatC& b) { return a -= b; }
FloatC operator*(FloatC a, const FloatC& b) { return a *= b; }
FloatC operator/(FloatC a, const FloatC& b) { return a /= b; }
FloatC operator-(const FloatC& a) { return FloatC(-a.re, -a.im); }

Real norm(const FloatC& z) { return z.re * z.re + z.im * z.im; }
Real abs(const FloatC& z) { return boost::multiprecision::hypot(z.re, z.im); }
Real arg(const FloatC& z) { return boost::multiprecision::atan2(z.im, z.re); }

FloatC exp(const FloatC& z) {
  Real m = boost::multiprecision::exp(z.re);
  return FloatC(m * boost::multiprecision::cos(z.im), m * boost::multiprecision::sin(z.im));
}

FloatC log(const FloatC& z) {
  if (z.re == 0 && z.im == 0) throw std::domain_error("log of zero");
  return FloatC(boost::multiprecision::log(abs(z)), arg(z));
}

FloatC sqrt(const FloatC& z) {
  if (z.re == 0 && z.im == 0) return FloatC();
  Real r = abs(z);
  Real a = boost::multiprecision::sqrt((r + z.re) / 2);
  Real b = boost::multiprecision::sqrt((r - z.re) / 2);
  if (z.im < 0) b = -b;
  return FloatC(a, b);
}

FloatC pow(const FloatC& z, const FloatC& w) {
  if (z.re == 0 && z.im == 0) return FloatC();
  return exp(w * log(z));
}

// ---------------------------------------------------------------- exact sqrt

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer n = boost::multiprecision::numerator(q);
  Integer d = boost::multiprecision::denominator(q);
  Integer rn = boost::multiprecision::sqrt(n);
  Integer rd = boost::multiprecision::sqrt(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

std::optional<GaussRat> exact_sqrt(const GaussRat& z) {
  if (z.im == 0) {
    if (z.re >= 0) {
      auto r = exact_sqrt(z.re);
      if (!r) return std::nullopt;
      return GaussRat{*r, Rational(0)};
    }
    auto r = exact_sqrt(Rational(-z.re));
    if (!r) return std::nullopt;
    return GaussRat{Rational(0), *r};
  }
  auto n = exact_sqrt(Rational(z.re * z.re + z.im * z.im));
  if (!n) return std::nullopt;
  auto x = exact_sqrt(Rational((*n + z.re) / 2));
  if (!x || *x == 0) return std::nullopt;
  return GaussRat{*x, Rational(z.im / (2 * *x))};
}

// ---------------------------------------------------------------- CNum

CNum CNum::from_double(double re, double im) { return CNum(FloatC(Real(re), Real(im))); }

FloatC CNum::to_float() const {
  if (const auto* g = std::get_if<GaussRat>(&v_)) return FloatC(Real(g->re), Real(g->im));
  return std::get<FloatC>(v_);
}

std::complex<double> CNum::to_complex() const {
  if (const auto* g = std::get_if<GaussRat>(&v_))
    return {g->re.convert_to<double>(), g->im.convert_to<double>()};
  return std::get<FloatC>(v_).to_complex();
}

bool CNum::is_zero(double tol) const {
  if (const auto* g = std::get_if<GaussRat>(&v_)) return g->is_zero();
  return abs(std::get<FloatC>(v_)) < tol;
}

bool CNum::is_literal_zero() const {
  if (const auto* g = std::get_if<GaussRat>(&v_)) return g->is_zero();
  const auto& f = std::get<FloatC>(v_);
  return f.re == 0 && f.im == 0;
}

bool CNum::is_real(double tol) const {
  if (const auto* g = std::get_if<GaussRat>(&v_)) return g->im == 0;
  return boost::multiprecision::abs(std::get<FloatC>(v_).im) < tol;
}

const Rational& CNum::rational() const {
  if (!is_exact_rational()) throw std::domain_error("value is not an exact rational: " + to_string());
  return exact().re;
}

Real CNum::modulus() const { return abs(to_float()); }

CNum CNum::conj() const {
  if (const auto* g = std::get_if<GaussRat>(&v_)) return CNum(g->re, Rational(-g->im));
  const auto& f = std::get<FloatC>(v_);
  return CNum(FloatC(f.re, -f.im));
}

CNum& CNum::operator+=(const CNum& o) {
  if (is_exact() && o.is_exact()) {
    auto& g = std::get<GaussRat>(v_);
    g.re += o.exact().re;
    g.im += o.exact().im;
  } else {
    v_ = to_float() + o.to_float();
  }
  return *this;
}

CNum& CNum::operator-=(const CNum& o) {
  if (is_exact() && o.is_exact()) {
    auto& g = std::get<GaussRat>(v_);
    g.re -= o.exact().re;
    g.im -= o.exact().im;
  } else {
    v_ = to_float() - o.to_float();
  }
  return *this;
}

CNum& CNum::operator*=(const CNum& o) {
  if (is_exact() && o.is_exact()) {
    const auto& a = exact();
    const auto& b = o.exact();
    if (a.im == 0 && b.im == 0) {
      v_ = GaussRat{Rational(a.re * b.re), Rational(0)};
    } else {
      v_ = GaussRat{Rational(a.re * b.re - a.im * b.im), Rational(a.re * b.im + a.im * b.re)};
    }
  } else {
    v_ = to_float() * o.to_float();
  }
  return *this;
}

CNum& CNum::operator/=(const CNum& o) {
  if (is_exact() && o.is_exact()) {
    const auto& a = exact();
    const auto& b = o.exact();
    if (b.is_zero()) throw std::domain_error("division by exact zero");
    if (a.im == 0 && b.im == 0) {
      v_ = GaussRat{Rational(a.re / b.re), Rational(0)};
    } else {
      Rational d = b.re * b.re + b.im * b.im;
      v_ = GaussRat{Rational((a.re * b.re + a.im * b.im) / d), Rational((a.im * b.re - a.re * b.im) / d)};
    }
  } else {
    v_ = to_float() / o.to_float();
  }
  return *this;
}

CNum operator-(const CNum& a) {
  if (a.is_exact()) return CNum(Rational(-a.exact().re), Rational(-a.exact().im));
  return CNum(-std::get<FloatC>(a.v_));
}

bool CNum::same_as(const CNum& o, double tol) const {
  if (is_exact() && o.is_exact()) return exact() == o.exact();
  return (*this - o).is_zero(tol);
}

std::string CNum::to_string() const {
  if (const auto* g = std::get_if<GaussRat>(&v_)) {
    if (g->im == 0) return rational_string(g->re);
    std::string s = g->re == 0 ? std::string() : rational_string(g->re);
    std::string im = rational_string(g->im);
    if (!s.empty() && g->im > 0) s += "+";
    return s + im + "*i";
  }
  const auto& f = std::get<FloatC>(v_);
  if (f.im == 0) return real_string(f.re);
  std::string s = real_string(f.re);
  if (f.im >= 0) s += "+";
  return s + real_string(f.im) + "*i";
}

CNum sqrt(const CNum& z) {
  if (z.is_exact()) {
    if (auto r = exact_sqrt(z.exact())) return CNum(*r);
  }
  return CNum(sqrt(z.to_float()));
}

CNum pow(const CNum& z, int n) {
  if (n < 0) return CNum(1) / pow(z, -n);
  CNum result(1);
  CNum base = z;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

// ---------------------------------------------------------------- text

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (text.empty()) throw std::invalid_argument("empty rational");
  auto check_int = [&](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start >= s.size()) throw std::invalid_argument("malformed rational: " + raw);
    for (std::size_t i = start; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("malformed rational: " + raw);
  };
  auto to_int = [&](std::string s) {
    check_int(s);
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    Integer p = to_int(text.substr(0, slash));
    Integer q = to_int(text.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator: " + raw);
    return Rational(p, q);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) frac = "0";
    check_int(whole);
    check_int(frac);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational value = Rational(Integer(whole)) + Rational(Integer(frac), scale);
    return negative ? Rational(-value) : value;
  }
  return Rational(to_int(text));
}

std::string rational_string(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
  return os.str();
}

std::string real_string(const Real& x) {
  if (x == 0) return "0";
  return x.str(static_cast<std::streamsize>(digits10_for(g_precision_bits) - 1), std::ios_base::scientific);
}

Real real_pi() { return boost::math::constants::pi<Real>(); }

Real parse_real(const std::string& text) {
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed real: " + text);
  }
}

Rational rationalize(const Real& x, long max_den) {
  // Continued-fraction convergents p/q until q exceeds max_den.
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Real r = x;
  for (int iter = 0; iter < 64; ++iter) {
    Real fl = boost::multiprecision::floor(r);
    Integer a = fl.convert_to<Integer>();
    Integer p2 = a * p1 + p0;
    Integer q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Real frac = r - fl;
    if (boost::multiprecision::abs(frac) < Real("1e-40")) break;
    r = 1 / frac;
  }
  if (q1 == 0) return Rational(Real(boost::multiprecision::round(x)).convert_to<Integer>());
  return Rational(p1, q1);
}

}  // namespace scarce
