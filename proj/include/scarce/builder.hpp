#ifndef SCARCE_BUILDER_HPP
#define SCARCE_BUILDER_HPP

#include <optional>
#include <string>
#include <vector>

#include "scarce/solution.hpp"

namespace scarce {

// ------------------------------------------------------------------ l = 2, s = 1

// All solution forms of f'' = (e^{2z} + b2 e^z + b3) f with
// kappa of degree k normalised to a_k = 1. Empty when no branch
// (c0 = +-1, c = +-sqrt(b3)) gives an integer k >= 0 with a_0 != 0.
std::vector<SolutionForm> build_l2(const CNum& b2, const CNum& b3);

// The constraint b2 = c0 (t + 2k + 1), t = 2c, that every degree-k
// solution of the l = 2 equation satisfies.
ClosureSystem l2_constraints(int k, int c0);

// ------------------------------------------------------------------ l = 4

struct FamilyResult {
  ClosureSystem closure;
  std::vector<SolutionForm> solutions;
};

// s = 1: c = -(k + 1), b3 = (k + 1)^2, b2 a root of the closure polynomial
// P(b2) = 2 c0 a_{k-1}(b2) + b2 a_k(b2). Requires k >= 1 and c0 = +-1.
FamilyResult build_l4_s1(int k, int c0);

// s = 3: closure polynomial P(t) in t = 2c obtained after eliminating
// c1^2 = -(2 + t + 2k) c0; one solution per (root, c0, sign of c1).
FamilyResult build_l4_s3(int k);

// Concrete-parameter variants used by `construct`.
std::vector<SolutionForm> solve_l4_s1(const CNum& b2, const CNum& b3);
std::vector<SolutionForm> solve_l4_s3(const CNum& b2, const CNum& b3);

// ------------------------------------------------------------------ pairs

struct PairResult {
  EqSpec spec;
  SolutionForm f1;
  SolutionForm f2;
  CNum wronskian;
};

// Two independent zero-scarce solutions of the l = 2 equation with
// b2 = c0 (k1 - k2), 4 b3 = (k1 + k2 + 1)^2. Requires k1 != k2, both >= 0.
PairResult build_pair_cor45(int k1, int k2, int c0);

// ------------------------------------------------------------------ general l

struct ProbeBranch {
  int k = 0;
  int c0 = 1;
  std::string mode;  // "free-t", "b2", "c1" or "t"
  ClosureSystem system;
  std::vector<SolutionForm> verified;
  int candidates = 0;
  int rejected = 0;
};

// Derives, for every k <= k_max and c0 = +-1, the closure system of the
// full residual with the exponential part of g fixed by the leading
// coefficient relations, solves it and gates every candidate through the
// residual verifier. Requires l even, 1 <= s < l, gcd(l, s) = 1.
std::vector<ProbeBranch> general_probe(int l, int s, int k_max);

// Concrete search for solution forms of an arbitrary even-l equation.
std::vector<SolutionForm> solve_generic(const EqSpec& spec);

// Dispatch on (l, s): dedicated builders for l = 2 and l = 4, the generic
// search otherwise. Odd l yields nothing.
std::vector<SolutionForm> find_solutions(const EqSpec& spec);

// ------------------------------------------------------------------ coefficient relations

// C_{k0}: coefficient of x^{k0} in (sum_j c_j x^j)^n, by multinomial sum.
CNum multinomial_coefficient(int n, int k0, const std::vector<CNum>& c);

struct CjSequence {
  int n = 2;
  int m = 0;
  // c_j = ratio[j] * c1^j / c0^{j-1}, j = 0..m (ratio[0] = ratio[1] = 1)
  std::vector<Rational> ratio;
  // t_j with c_j = t_j c1^j / (-2 c0)^{j-1}
  std::vector<Rational> t;
  std::vector<std::string> constraints;

  // c_0..c_m at concrete c0, c1.
  std::vector<CNum> values(const CNum& c0, const CNum& c1) const;
};

// Solves C_{k0} = 0, k0 = 2..m, successively for c_2..c_m.
CjSequence cj_sequence(int n, int m);

struct AlphaResult {
  int m = 0;
  bool admissible = false;
};

// m is the smallest integer with alpha <= (2m+1)/(2m+2); admissible iff equal.
AlphaResult alpha_admissible(const Rational& alpha);

// c^2 + c P(0) + Q(0) = 0
bool subnormal_exponent_check(const CNum& P0, const CNum& Q0, const CNum& c, double tol = kZeroTol);

// Integer value of an exact rational or a float within tol of one.
std::optional<long> as_integer(const CNum& x, double tol = 1e-20);

}  // namespace scarce

#endif  // SCARCE_BUILDER_HPP
