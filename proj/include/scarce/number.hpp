#ifndef SCARCE_NUMBER_HPP
#define SCARCE_NUMBER_HPP

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace scarce {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

// Working precision of the float backend, in bits. Affects every Real
// created afterwards.
void set_working_precision(unsigned bits);
unsigned working_precision();

// Raises the working precision for its lifetime and restores it afterwards.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits) : saved_(working_precision()) { set_working_precision(bits); }
  ~PrecisionGuard() { set_working_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

// Coefficient modulus below which a float-backend value counts as zero.
inline constexpr double kZeroTol = 1e-25;

/// Complex number over the multiprecision float backend.
struct FloatC {
  Real re{0};
  Real im{0};

  FloatC() = default;
  FloatC(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}
  explicit FloatC(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  FloatC& operator+=(const FloatC& o);
  FloatC& operator-=(const FloatC& o);
  FloatC& operator*=(const FloatC& o);
  FloatC& operator/=(const FloatC& o);

  std::complex<double> to_complex() const {
    return {re.convert_to<double>(), im.convert_to<double>()};
  }
};

FloatC operator+(FloatC a, const FloatC& b);
FloatC operator-(FloatC a, const FloatC& b);
FloatC operator*(FloatC a, const FloatC& b);
FloatC operator/(FloatC a, const FloatC& b);
FloatC operator-(const FloatC& a);

Real abs(const FloatC& z);
Real norm(const FloatC& z);
Real arg(const FloatC& z);
FloatC exp(const FloatC& z);
FloatC log(const FloatC& z);  // principal branch
FloatC sqrt(const FloatC& z);  // principal branch
FloatC pow(const FloatC& z, const FloatC& w);  // exp(w log z)

/// Gaussian rational re + i*im.
struct GaussRat {
  Rational re{0};
  Rational im{0};

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  friend bool operator==(const GaussRat&, const GaussRat&) = default;
};

// Square root when it exists in Q(i), principal branch.
std::optional<GaussRat> exact_sqrt(const GaussRat& z);
std::optional<Rational> exact_sqrt(const Rational& q);

/// Scalar used by every symbolic computation: an exact Gaussian rational
/// or a multiprecision complex float. Mixed operations promote to float.
class CNum {
 public:
  CNum() : v_(GaussRat{}) {}
  CNum(int n) : v_(GaussRat{Rational(n), Rational(0)}) {}
  CNum(long n) : v_(GaussRat{Rational(n), Rational(0)}) {}
  CNum(const Integer& n) : v_(GaussRat{Rational(n), Rational(0)}) {}
  CNum(Rational re) : v_(GaussRat{std::move(re), Rational(0)}) {}
  CNum(Rational re, Rational im) : v_(GaussRat{std::move(re), std::move(im)}) {}
  CNum(GaussRat g) : v_(std::move(g)) {}
  CNum(FloatC f) : v_(std::move(f)) {}

  static CNum from_double(double re, double im = 0.0);
  static CNum i() { return CNum(Rational(0), Rational(1)); }

  bool is_exact() const { return std::holds_alternative<GaussRat>(v_); }
  const GaussRat& exact() const { return std::get<GaussRat>(v_); }
  FloatC to_float() const;
  std::complex<double> to_complex() const;

  // Structural zero for exact values, |x| < tol otherwise.
  bool is_zero(double tol = kZeroTol) const;
  bool is_exact_zero() const { return is_exact() && exact().is_zero(); }
  // Exact zero, or a float whose value is exactly 0.
  bool is_literal_zero() const;
  bool is_real(double tol = kZeroTol) const;
  bool is_exact_rational() const { return is_exact() && exact().is_real(); }
  // Rational value; throws std::domain_error unless is_exact_rational().
  const Rational& rational() const;

  Real modulus() const;
  CNum conj() const;

  CNum& operator+=(const CNum& o);
  CNum& operator-=(const CNum& o);
  CNum& operator*=(const CNum& o);
  CNum& operator/=(const CNum& o);  // throws std::domain_error on exact zero

  friend CNum operator+(CNum a, const CNum& b) { return a += b; }
  friend CNum operator-(CNum a, const CNum& b) { return a -= b; }
  friend CNum operator*(CNum a, const CNum& b) { return a *= b; }
  friend CNum operator/(CNum a, const CNum& b) { return a /= b; }
  friend CNum operator-(const CNum& a);

  // Exact structural equality; float values compare by |a - b| < tol.
  bool same_as(const CNum& o, double tol = kZeroTol) const;

  // Human-readable form: "p/q", "p/q+r/s*i", or a decimal string.
  std::string to_string() const;

 private:
  std::variant<GaussRat, FloatC> v_;
};

CNum sqrt(const CNum& z);  // exact when the root lies in Q(i)
CNum pow(const CNum& z, int n);

// Rational parsing: "p/q", "-3", "0.25" (decimal parsed exactly).
Rational parse_rational(const std::string& text);
std::string rational_string(const Rational& q);

// Decimal rendering of a Real at the current working precision.
std::string real_string(const Real& x);
Real parse_real(const std::string& text);

// pi at the working precision.
Real real_pi();

// Best rational approximation with denominator <= max_den (continued
// fractions). Used to recognise exact roots from numeric ones.
Rational rationalize(const Real& x, long max_den);

}  // namespace scarce

#endif  // SCARCE_NUMBER_HPP
