#ifndef SCARCE_FROBENIUS_HPP
#define SCARCE_FROBENIUS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "scarce/solution.hpp"

namespace scarce {

/// Power series sum_{i <= N} c_i x^i known exactly through order N.
/// Binary operations truncate to the smaller order.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(int order);
  PowerSeries(std::vector<CNum> coeffs, int order);
  static PowerSeries from_poly(const Poly& p, int order);

  int order() const { return order_; }
  const std::vector<CNum>& coeffs() const { return c_; }
  const CNum& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  CNum& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  PowerSeries& operator+=(const PowerSeries& o);
  PowerSeries& operator-=(const PowerSeries& o);
  PowerSeries& operator*=(const PowerSeries& o);
  PowerSeries& operator*=(const CNum& s);
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, const PowerSeries& b) { return a *= b; }
  friend PowerSeries operator*(PowerSeries a, const CNum& s) { return a *= s; }
  friend PowerSeries operator*(const CNum& s, PowerSeries a) { return a *= s; }

  // Known through order N - 1.
  PowerSeries derivative() const;
  // Index of the first coefficient that is not zero (tol for floats); order() + 1 if none.
  int valuation(double tol = kZeroTol) const;

 private:
  int order_ = 0;
  std::vector<CNum> c_{CNum(0)};
};

// exp of a series with zero constant term.
PowerSeries exp(const PowerSeries& a);
// log of a series with constant term 1.
PowerSeries log(const PowerSeries& a);

/// Change of variables x = alpha e^{beta z}, f = x^{-1/2} u turning the
/// exponential ODE into x^2 u'' + h(x) u = 0 with a regular singular point at 0.
struct LommelMap {
  Poly h;  // -(x^l + b2 x^s + b3 - 1/4)
  Rational alpha = 1, beta = 1, gamma = 0, p = 1;
  CNum d1 = 1, d2, d3;  // y-equation coefficients
};

LommelMap lommel_map(const EqSpec& spec);

struct IndicialRoots {
  CNum rho1;  // Re rho1 >= Re rho2
  CNum rho2;
};

// Roots of rho^2 - rho + h0 = 0.
IndicialRoots indicial(const CNum& h0);

enum class FrobeniusCase { non_integer, integer_difference, equal };
std::string to_string(FrobeniusCase c);

/// u1 = x^rho1 sum a_i x^i, u2 = d u1 log x + x^rho2 sum b_i x^i.
struct FrobeniusPair {
  CNum rho1, rho2;
  int d = 0;
  PowerSeries u1, u2;
  FrobeniusCase kind = FrobeniusCase::non_integer;
  int n0 = 0;           // rho1 - rho2 when it is a nonnegative integer
  CNum obstruction;     // sum_j h_j b_{n0 - j} before normalisation
  int N = 0;
};

// Throws std::invalid_argument when N < rho1 - rho2 in the integer case.
FrobeniusPair frobenius_solve(const Poly& h, int N);

class SeriesMatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Expansion of two closed-form solutions x^c kappa_i(x) e^{G_i(x)} of one
/// equation in the Frobenius basis: with v1 = sum a_i x^i, v2 = sum b_i x^i,
///   kappa_1 e^{G_1} / kappa_1(0) = D2 v2 + D1 x^{n0} v1,
///   kappa_2 e^{G_2} / kappa_2(0) = D4 v2 + D3 x^{n0} v1.
struct SeriesMatch {
  int n0 = 0;
  CNum D1, D2, D3, D4;
  CNum E;  // D1 D4 - D2 D3
  Real discrepancy{0};
  bool exact_zero = false;  // every discrepancy coefficient is an exact zero
  bool rho_consistent = false;  // rho2 = 1/2 + c
  int w_order = -1;  // order of D4 kappa_1 e^{G1 - G2} - D2 kappa_2 at x = 0
  // Coefficients (E1, E2) of f_i = x^{-1/2} (E1 u1 + E2 u2).
  CNum fit1_E1, fit1_E2, fit2_E1, fit2_E2;
};

// Requires -2c to be a positive integer shared by both solutions.
// Throws SeriesMatchError when the fitted 2x2 system is singular.
SeriesMatch series_match(const SolutionForm& f1, const SolutionForm& f2, const FrobeniusPair& fp, int N);

// Truncated kappa e^{G} / kappa(0) in powers of x = e^z; g must have den = 1
// and only nonnegative exponents.
PowerSeries solution_series(const SolutionForm& f, int N);

/// x^{-1/2} [E1 u1(x) + E2 u2(x)] at x = e^z, using log x = z so the
/// fractional powers follow z continuously (the principal branch for
/// |Im z| < pi). Throws std::domain_error when the last retained terms
/// exceed 1e-12 relative to the sum.
FloatC general_solution_eval(const FrobeniusPair& fp, const CNum& E1, const CNum& E2, const FloatC& z);

}  // namespace scarce

#endif  // SCARCE_FROBENIUS_HPP
