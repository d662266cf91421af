#ifndef SCARCE_EXPPOLY_HPP
#define SCARCE_EXPPOLY_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "scarce/number.hpp"
#include "scarce/poly.hpp"

namespace scarce {

/// Exponential polynomial sum_j a_j e^{j z / den} with den in {1, 2};
/// equivalently a Laurent polynomial in zeta = e^{z/den}.
///
/// Values are canonical: no exact-zero coefficient is stored and a den = 2
/// polynomial whose exponents are all even is reduced to den = 1.
class ExpPoly {
 public:
  using Terms = std::map<int, CNum>;

  ExpPoly() = default;
  ExpPoly(const CNum& constant);
  ExpPoly(int constant) : ExpPoly(CNum(constant)) {}
  // Throws std::invalid_argument unless den is 1 or 2.
  ExpPoly(int den, Terms terms);

  static ExpPoly monomial(int j, const CNum& coeff, int den = 1);

  int den() const { return den_; }
  const Terms& terms() const { return terms_; }
  CNum coeff(int j) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_exact() const;
  bool is_constant() const;
  int min_exponent() const;  // requires !is_zero()
  int max_exponent() const;

  // max |a_j|; zero for the zero element
  Real max_norm() const;
  // Structural zero for exact coefficients, max_norm < tol otherwise.
  bool is_negligible(double tol = kZeroTol) const;

  // Same value written over a finer exponent lattice (den must divide new_den).
  Terms terms_over(int new_den) const;
  // Multiply by e^{j z / den}.
  ExpPoly shifted(int j) const;

  ExpPoly& operator+=(const ExpPoly& o);
  ExpPoly& operator-=(const ExpPoly& o);
  ExpPoly& operator*=(const ExpPoly& o);
  ExpPoly& operator*=(const CNum& s);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
  friend ExpPoly operator*(ExpPoly a, const ExpPoly& b) { return a *= b; }
  friend ExpPoly operator*(ExpPoly a, const CNum& s) { return a *= s; }
  friend ExpPoly operator*(const CNum& s, ExpPoly a) { return a *= s; }
  friend ExpPoly operator-(const ExpPoly& a);
  friend bool operator==(const ExpPoly& a, const ExpPoly& b);

  std::string to_string() const;

 private:
  void canonicalize();
  int den_ = 1;
  Terms terms_;
};

enum class RingOp { add, sub, mul };

ExpPoly combine(const ExpPoly& a, const ExpPoly& b, RingOp op);

ExpPoly differentiate(const ExpPoly& a);

// Term-wise antiderivative of the non-constant part: a_j e^{jz/den} maps to
// (den a_j / j) e^{jz/den}. The constant term is dropped.
ExpPoly antiderivative_exp_part(const ExpPoly& a);

// Evaluation at the working precision. Throws std::out_of_range when some
// Re(j z / den) is too large to exponentiate.
FloatC evaluate(const ExpPoly& a, const FloatC& z);
std::complex<double> evaluate(const ExpPoly& a, std::complex<double> z);

// The ordinary polynomial sum_j a_j zeta^{j - min_exponent}.
Poly laurent_shifted_poly(const ExpPoly& a);

struct LaurentRoot {
  CNum zeta;
  int multiplicity = 1;
};

// Nonzero roots of sum_j a_j zeta^j; multiplicities sum to max_j - min_j.
// Throws std::domain_error for the zero element.
std::vector<LaurentRoot> laurent_roots(const ExpPoly& a);

}  // namespace scarce

#endif  // SCARCE_EXPPOLY_HPP
