#include "scarce/verify.hpp"

namespace scarce {

ExpPoly residual(const ExpPoly& coefficient, const ExpPoly& kappa, const ExpPoly& g) {
  const ExpPoly dk = differentiate(kappa);
  const ExpPoly ddk = differentiate(dk);
  ExpPoly r = kappa * (g * g + differentiate(g));
  r += CNum(2) * dk * g;
  r += ddk;
  r -= coefficient * kappa;
  return r;
}

ExpPoly residual(const EqSpec& spec, const SolutionForm& sol) {
  if (sol.kappa.is_zero()) throw std::invalid_argument("kappa must be nonzero");
  return residual(spec.coefficient(), sol.kappa, sol.g);
}

VerifyReport verify_solution(const SolutionForm& sol, double tol) {
  VerifyReport rep;
  rep.residual = residual(sol.spec, sol);
  rep.is_solution = rep.residual.is_negligible(tol);
  if (rep.residual.is_exact()) {
    rep.notes.push_back(rep.is_solution ? "residual vanishes exactly" : "exact residual is nonzero");
  } else {
    rep.notes.push_back("float residual max-norm " + real_string(rep.residual.max_norm()));
  }
  return rep;
}

WronskianResult wronskian(const SolutionForm& f1, const SolutionForm& f2, double tol) {
  // f_i = kappa_i e^{H_i}, so W = [k1' k2 - k1 k2' + (g1 - g2) k1 k2] e^{H1 + H2}.
  const ExpPoly& k1 = f1.kappa;
  const ExpPoly& k2 = f2.kappa;
  ExpPoly bracket = differentiate(k1) * k2 - k1 * differentiate(k2) + (f1.g - f2.g) * k1 * k2;
  if (bracket.is_negligible(tol)) return {CNum(0), false};

  ExpPoly exp_sum = f1.h_exp_part() + f2.h_exp_part();
  if (!exp_sum.is_negligible(tol))
    throw WronskianError("e^{H1+H2} is not a power of e^z; exponential parts do not cancel: " + exp_sum.to_string());

  const int den = bracket.den();
  CNum shift = (f1.g_constant() + f2.g_constant()) * CNum(den);
  long n = 0;
  if (shift.is_exact_rational() && boost::multiprecision::denominator(shift.rational()) == 1) {
    n = boost::multiprecision::numerator(shift.rational()).convert_to<long>();
  } else {
    Real re = shift.to_float().re;
    Real nearest = boost::multiprecision::round(re);
    if (!shift.is_real(tol) || boost::multiprecision::abs(re - nearest) > tol)
      throw WronskianError("constant parts c1 + c2 = " + shift.to_string() + " do not give an integer power of e^z");
    n = nearest.convert_to<long>();
  }
  ExpPoly w = bracket.shifted(static_cast<int>(n));
  // Every non-constant coefficient must vanish.
  ExpPoly nonconstant = w - ExpPoly(w.coeff(0));
  if (!nonconstant.is_negligible(tol))
    throw WronskianError("Wronskian is not constant: " + w.to_string());
  CNum value = w.coeff(0);
  return {value, !value.is_zero(tol)};
}

}  // namespace scarce
