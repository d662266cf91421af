#ifndef SCARCE_POLY_HPP
#define SCARCE_POLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "scarce/number.hpp"

namespace scarce {

/// Dense univariate polynomial with CNum coefficients, ascending degree.
/// Trailing exact zeros are trimmed; the empty vector is the zero polynomial.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<CNum> coeffs);
  Poly(const CNum& constant);
  Poly(int constant) : Poly(CNum(constant)) {}

  static Poly x() { return Poly(std::vector<CNum>{CNum(0), CNum(1)}); }
  static Poly monomial(int degree, const CNum& coeff = CNum(1));

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_exact() const;
  bool is_rational() const;  // exact with real coefficients
  const std::vector<CNum>& coeffs() const { return c_; }
  CNum coeff(int i) const;
  const CNum& leading() const { return c_.back(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const CNum& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const CNum& s) { return a *= s; }
  friend Poly operator*(const CNum& s, Poly a) { return a *= s; }
  friend Poly operator-(const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b);

  CNum operator()(const CNum& x) const;
  FloatC operator()(const FloatC& x) const;

  Poly derivative() const;
  Poly monic() const;
  // p(q(x))
  Poly compose(const Poly& q) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<CNum> c_;
};

// Euclidean division over the coefficient field; throws on zero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic; exact inputs only
Poly squarefree_part(const Poly& p);
// Yun's algorithm: factors f_1, f_2, ... with p = lc * prod f_i^i.
std::vector<Poly> squarefree_decomposition(const Poly& p);

struct PolyRoot {
  CNum value;  // exact when the root was recognised as a Gaussian rational
  int multiplicity = 1;
};

/// All complex roots with multiplicity. Exact inputs are split by Yun's
/// algorithm first, so multiplicities are exact; float inputs are clustered
/// at relative distance 1e-8. Numeric roots are polished by Newton steps
/// at working precision.
std::vector<PolyRoot> find_roots(const Poly& p);

/// Univariate rational function num/den over the exact field, kept reduced
/// with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(Poly num) : num_(std::move(num)), den_(1) {}
  RatFunc(const CNum& c) : num_(c), den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}
  RatFunc(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  // Throws std::domain_error when the denominator vanishes at x.
  CNum operator()(const CNum& x, double tol = kZeroTol) const;

 private:
  void reduce();
  Poly num_;
  Poly den_;
};

}  // namespace scarce

#endif  // SCARCE_POLY_HPP
