#ifndef SCARCE_VERIFY_HPP
#define SCARCE_VERIFY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scarce/solution.hpp"

namespace scarce {

// kappa (g^2 + g') + 2 kappa' g + kappa'' - A kappa, with A the equation's
// coefficient. Zero exactly when kappa * e^H solves f'' = A f.
ExpPoly residual(const EqSpec& spec, const SolutionForm& sol);
ExpPoly residual(const ExpPoly& coefficient, const ExpPoly& kappa, const ExpPoly& g);

struct VerifyReport {
  ExpPoly residual;
  bool is_solution = false;
  std::optional<CNum> wronskian_constant;
  std::vector<std::string> notes;
};

VerifyReport verify_solution(const SolutionForm& sol, double tol = kZeroTol);

// Thrown when f1' f2 - f1 f2' is not a constant multiple of an integer
// power of e^{z/den}, or not constant at all.
class WronskianError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WronskianResult {
  CNum value;
  bool independent = false;
};

// W = f1' f2 - f1 f2' for two solution forms of the same equation.
WronskianResult wronskian(const SolutionForm& f1, const SolutionForm& f2, double tol = kZeroTol);

}  // namespace scarce

#endif  // SCARCE_VERIFY_HPP
