#ifndef SCARCE_SOLUTION_HPP
#define SCARCE_SOLUTION_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scarce/exppoly.hpp"
#include "scarce/number.hpp"
#include "scarce/poly.hpp"

namespace scarce {

/// Parameters of f'' - (e^{lz} + b2 e^{sz} + b3) f = 0.
struct EqSpec {
  int l = 2;
  int s = 1;
  CNum b2 = 1;
  CNum b3 = 0;

  // Throws std::invalid_argument unless l > s >= 1, gcd(l, s) = 1, b2 != 0.
  void validate() const;

  bool l_even() const { return l % 2 == 0; }
  // m + 1 = l / 2 (l even)
  int m() const { return l / 2 - 1; }
  // l - s
  int gap() const { return l - s; }
  // smallest q >= 0 with s/l <= (2q + 1) / (2q + 2)
  int q() const;

  // e^{lz} + b2 e^{sz} + b3
  ExpPoly coefficient() const;
};

// Smallest integer m >= 0 with alpha <= (2m + 1) / (2m + 2); alpha in (0, 1).
int smallest_admissible_index(const Rational& alpha);

/// Candidate zero-scarce solution f = kappa * exp(H) where H' = g and H is
/// the antiderivative with no additive constant (c z plus the term-wise
/// antiderivative of the exponential part).
struct SolutionForm {
  EqSpec spec;
  int k = 0;
  CNum c0 = 1;
  CNum c = 0;
  std::optional<CNum> c1;
  ExpPoly kappa;
  ExpPoly g;
  std::string branch;
  bool verified = false;

  // H without its linear part; f = kappa * e^{c z} * e^{exp_part}.
  ExpPoly h_exp_part() const { return antiderivative_exp_part(g); }
  CNum g_constant() const { return g.coeff(0); }

  // Numeric f and f' at z.
  FloatC value(const FloatC& z) const;
  FloatC derivative(const FloatC& z) const;
};

/// Sparse polynomial with exact rational coefficients in the closure
/// unknowns b2, t = 2c and c1.
class MPoly {
 public:
  enum Var { b2 = 0, t = 1, c1 = 2 };
  using Exps = std::array<int, 3>;

  MPoly() = default;
  MPoly(const Rational& constant);
  static MPoly var(Var v);
  // Univariate embedding; coefficients must be exact rationals.
  static MPoly from_poly(const Poly& p, Var v);

  const std::map<Exps, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree(Var v) const;
  CNum eval(const CNum& b2, const CNum& t, const CNum& c1) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(MPoly a, const MPoly& b) { return a *= b; }
  friend bool operator==(const MPoly&, const MPoly&) = default;

  // Divided by the coefficient of its lexicographically largest monomial.
  MPoly normalized() const;
  std::string to_string() const;

 private:
  std::map<Exps, Rational> terms_;
};

// Canonical form of a set of equations: each normalized, sorted, deduplicated.
std::vector<std::string> normalized_equation_set(const std::vector<MPoly>& eqs);

/// Polynomial constraints forced on the free parameters of a solution family,
/// with the univariate closure polynomial that is actually solved.
struct ClosureSystem {
  std::string unknown;                // "b2", "t" or "c1"
  std::vector<std::string> unknowns;  // every unknown appearing in equations
  std::vector<MPoly> equations;
  Poly closure;                       // in `unknown`, monic; zero when the family is free
  std::vector<CNum> roots;
  std::vector<std::string> side_constraints;
  std::vector<std::string> diagnostics;
};

}  // namespace scarce

#endif  // SCARCE_SOLUTION_HPP
