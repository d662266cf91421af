#include "scarce/frobenius.hpp"

#include <algorithm>

#include "scarce/builder.hpp"

namespace scarce {

// ------------------------------------------------------------------ PowerSeries

PowerSeries::PowerSeries(int order) : order_(order), c_(static_cast<std::size_t>(order) + 1, CNum(0)) {
  if (order < 0) throw std::invalid_argument("series order must be nonnegative");
}

PowerSeries::PowerSeries(std::vector<CNum> coeffs, int order) : PowerSeries(order) {
  for (std::size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = std::move(coeffs[i]);
}

PowerSeries PowerSeries::from_poly(const Poly& p, int order) { return PowerSeries(p.coeffs(), order); }

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
  order_ = std::min(order_, o.order_);
  c_.resize(static_cast<std::size_t>(order_) + 1);
  for (int i = 0; i <= order_; ++i) (*this)[i] += o[i];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
  order_ = std::min(order_, o.order_);
  c_.resize(static_cast<std::size_t>(order_) + 1);
  for (int i = 0; i <= order_; ++i) (*this)[i] -= o[i];
  return *this;
}

PowerSeries& PowerSeries::operator*=(const PowerSeries& o) {
  const int n = std::min(order_, o.order_);
  PowerSeries out(n);
  for (int i = 0; i <= n; ++i) {
    if ((*this)[i].is_exact_zero()) continue;
    for (int j = 0; i + j <= n; ++j) out[i + j] += (*this)[i] * o[j];
  }
  return *this = std::move(out);
}

PowerSeries& PowerSeries::operator*=(const CNum& s) {
  for (auto& x : c_) x *= s;
  return *this;
}

PowerSeries PowerSeries::derivative() const {
  PowerSeries out(std::max(order_ - 1, 0));
  for (int i = 1; i <= order_; ++i) out[i - 1] = CNum(i) * (*this)[i];
  return out;
}

int PowerSeries::valuation(double tol) const {
  for (int i = 0; i <= order_; ++i)
    if (!(*this)[i].is_zero(tol)) return i;
  return order_ + 1;
}

PowerSeries exp(const PowerSeries& a) {
  if (!a[0].is_zero()) throw std::invalid_argument("exp needs a series with zero constant term");
  // E' = A' E  =>  n e_n = sum_{k=1}^n k a_k e_{n-k}
  const int N = a.order();
  PowerSeries e(N);
  e[0] = CNum(1);
  for (int n = 1; n <= N; ++n) {
    CNum acc(0);
    for (int k = 1; k <= n; ++k)
      if (!a[k].is_exact_zero()) acc += CNum(k) * a[k] * e[n - k];
    e[n] = acc / CNum(n);
  }
  return e;
}

PowerSeries log(const PowerSeries& a) {
  if (!(a[0] - CNum(1)).is_zero()) throw std::invalid_argument("log needs a series with constant term 1");
  // A' = L' A  =>  n a_n = sum_{k=1}^n k l_k a_{n-k}
  const int N = a.order();
  PowerSeries l(N);
  for (int n = 1; n <= N; ++n) {
    CNum acc = CNum(n) * a[n];
    for (int k = 1; k < n; ++k) acc -= CNum(k) * l[k] * a[n - k];
    l[n] = acc / CNum(n);
  }
  return l;
}

// ------------------------------------------------------------------ Lommel map and indicial roots

LommelMap lommel_map(const EqSpec& spec) {
  LommelMap m;
  m.h = -(Poly::monomial(spec.l) + Poly::monomial(spec.s, spec.b2) + Poly(spec.b3 - CNum(Rational(1, 4))));
  m.d1 = CNum(1);
  m.d2 = spec.b2;
  m.d3 = spec.b3;
  return m;
}

IndicialRoots indicial(const CNum& h0) {
  const CNum half(Rational(1, 2));
  const CNum r = sqrt(CNum(Rational(1, 4)) - h0);
  CNum a = half + r, b = half - r;
  const FloatC fa = a.to_float(), fb = b.to_float();
  if (fa.re < fb.re || (fa.re == fb.re && fa.im < fb.im)) std::swap(a, b);
  return {a, b};
}

std::string to_string(FrobeniusCase c) {
  switch (c) {
    case FrobeniusCase::non_integer:
      return "non-integer";
    case FrobeniusCase::integer_difference:
      return "integer-difference";
    case FrobeniusCase::equal:
      return "equal";
  }
  return "unknown";
}

// ------------------------------------------------------------------ Frobenius solutions

namespace {

// sum_{j=1}^{min(i, L)} h_j c_{i-j}
CNum convolve_tail(const Poly& h, const PowerSeries& c, int i) {
  CNum acc(0);
  for (int j = 1; j <= std::min(i, h.degree()); ++j) {
    const CNum hj = h.coeff(j);
    if (!hj.is_exact_zero()) acc += hj * c[i - j];
  }
  return acc;
}

}  // namespace

FrobeniusPair frobenius_solve(const Poly& h, int N) {
  if (N < 0) throw std::invalid_argument("truncation order must be nonnegative");
  FrobeniusPair fp;
  fp.N = N;
  const CNum h0 = h.coeff(0);
  const auto roots = indicial(h0);
  fp.rho1 = roots.rho1;
  fp.rho2 = roots.rho2;
  auto F = [&](const CNum& rho) { return rho * (rho - CNum(1)) + h0; };

  fp.u1 = PowerSeries(N);
  fp.u1[0] = CNum(1);
  for (int i = 1; i <= N; ++i) fp.u1[i] = -convolve_tail(h, fp.u1, i) / F(fp.rho1 + CNum(i));

  const auto diff = as_integer(fp.rho1 - fp.rho2);
  fp.u2 = PowerSeries(N);
  if (diff && *diff == 0) {
    fp.kind = FrobeniusCase::equal;
    fp.d = 1;
    // b_0 = 0; F(rho + i) b_i = -sum h_j b_{i-j} - (2(rho + i) - 1) a_i
    for (int i = 1; i <= N; ++i) {
      const CNum rho = fp.rho1 + CNum(i);
      fp.u2[i] = -(convolve_tail(h, fp.u2, i) + (CNum(2) * rho - CNum(1)) * fp.u1[i]) / F(rho);
    }
    return fp;
  }
  if (!diff) {
    fp.kind = FrobeniusCase::non_integer;
    fp.u2[0] = CNum(1);
    for (int i = 1; i <= N; ++i) fp.u2[i] = -convolve_tail(h, fp.u2, i) / F(fp.rho2 + CNum(i));
    return fp;
  }

  fp.kind = FrobeniusCase::integer_difference;
  const int n0 = static_cast<int>(*diff);
  fp.n0 = n0;
  if (N < n0) throw std::invalid_argument("truncation order must reach rho1 - rho2 = " + std::to_string(n0));
  fp.u2[0] = CNum(1);
  for (int i = 1; i < n0; ++i) fp.u2[i] = -convolve_tail(h, fp.u2, i) / F(fp.rho2 + CNum(i));
  fp.obstruction = convolve_tail(h, fp.u2, n0);
  if (fp.obstruction.is_zero()) {
    fp.d = 0;
  } else {
    // 0 * b_{n0} = -S - d (2 rho1 - 1) a_0 with 2 rho1 - 1 = n0; rescale so d = 1.
    const CNum d_raw = -fp.obstruction / CNum(n0);
    for (int i = 0; i < n0; ++i) fp.u2[i] /= d_raw;
    fp.d = 1;
  }
  fp.u2[n0] = CNum(0);
  for (int i = n0 + 1; i <= N; ++i) {
    const CNum rho = fp.rho2 + CNum(i);
    CNum rhs = convolve_tail(h, fp.u2, i);
    if (fp.d == 1) rhs += (CNum(2) * rho - CNum(1)) * fp.u1[i - n0];
    fp.u2[i] = -rhs / F(rho);
  }
  return fp;
}

// ------------------------------------------------------------------ series matching

PowerSeries solution_series(const SolutionForm& f, int N) {
  if (f.g.den() != 1 || f.kappa.den() != 1) throw std::invalid_argument("series expansion needs integer exponents");
  if (!f.g.is_zero() && f.g.min_exponent() < 0) throw std::invalid_argument("g has negative exponents");
  if (!f.kappa.is_zero() && f.kappa.min_exponent() < 0) throw std::invalid_argument("kappa has negative exponents");
  const CNum k0 = f.kappa.coeff(0);
  if (k0.is_zero()) throw std::invalid_argument("kappa(0) must be nonzero");

  PowerSeries kappa(N), G(N);
  for (const auto& [j, a] : f.kappa.terms())
    if (j <= N) kappa[j] = a / k0;
  for (const auto& [j, a] : f.g.terms())
    if (j > 0 && j <= N) G[j] = a / CNum(j);
  return kappa * exp(G);
}

SeriesMatch series_match(const SolutionForm& f1, const SolutionForm& f2, const FrobeniusPair& fp, int N) {
  if (!f1.c.same_as(f2.c)) throw std::invalid_argument("both solutions must share the exponent c");
  const auto n0 = as_integer(CNum(-2) * f1.c);
  if (!n0 || *n0 <= 0) throw std::invalid_argument("-2c must be a positive integer");
  if (fp.kind != FrobeniusCase::integer_difference || fp.n0 != *n0)
    throw std::invalid_argument("Frobenius pair does not have rho1 - rho2 = -2c");
  if (N > fp.N) throw std::invalid_argument("Frobenius pair is truncated below N");

  SeriesMatch m;
  m.n0 = static_cast<int>(*n0);
  m.rho_consistent = fp.rho2.same_as(CNum(Rational(1, 2)) + f1.c);

  const PowerSeries S1 = solution_series(f1, N);
  const PowerSeries S2 = solution_series(f2, N);
  const PowerSeries& v1 = fp.u1;
  const PowerSeries& v2 = fp.u2;
  const int n = m.n0;
  if (N < n) throw std::invalid_argument("N must reach -2c");

  // Leading coefficients determine D's: index 0 gives the v2 weight, index n0 the v1 weight.
  auto fit = [&](const PowerSeries& S, CNum& Dv1, CNum& Dv2) {
    Dv2 = S[0] / v2[0];
    Dv1 = (S[n] - Dv2 * v2[n]) / v1[0];
  };
  fit(S1, m.D1, m.D2);
  fit(S2, m.D3, m.D4);
  m.E = m.D1 * m.D4 - m.D2 * m.D3;
  if (m.E.is_zero()) throw SeriesMatchError("fitted system is singular: the solutions are not independent");

  m.exact_zero = true;
  for (int i = 0; i <= N; ++i) {
    auto lhs_rhs = [&](const PowerSeries& S, const CNum& Dv1, const CNum& Dv2) {
      CNum r = S[i] - Dv2 * v2[i];
      if (i >= n) r -= Dv1 * v1[i - n];
      return r;
    };
    for (const CNum& r : {lhs_rhs(S1, m.D1, m.D2), lhs_rhs(S2, m.D3, m.D4)}) {
      if (!r.is_exact_zero()) m.exact_zero = false;
      Real mod = r.modulus();
      if (mod > m.discrepancy) m.discrepancy = mod;
    }
  }

  // w = D4 kappa_1 e^{G1 - G2} - D2 kappa_2, with kappa_i(0) = 1.
  PowerSeries k1(N), k2(N), dG(N);
  for (const auto& [j, a] : f1.kappa.terms())
    if (j <= N) k1[j] = a / f1.kappa.coeff(0);
  for (const auto& [j, a] : f2.kappa.terms())
    if (j <= N) k2[j] = a / f2.kappa.coeff(0);
  for (int j = 1; j <= N; ++j) dG[j] = (f1.g.coeff(j) - f2.g.coeff(j)) / CNum(j);
  PowerSeries w = m.D4 * (k1 * exp(dG)) - m.D2 * k2;
  m.w_order = w.valuation();

  const CNum s1 = f1.kappa.coeff(0), s2 = f2.kappa.coeff(0);
  m.fit1_E1 = m.D1 * s1;
  m.fit1_E2 = m.D2 * s1;
  m.fit2_E1 = m.D3 * s2;
  m.fit2_E2 = m.D4 * s2;
  return m;
}

// ------------------------------------------------------------------ evaluation

FloatC general_solution_eval(const FrobeniusPair& fp, const CNum& E1, const CNum& E2, const FloatC& z) {
  if (E1.is_exact_zero() && E2.is_exact_zero()) return FloatC();
  const FloatC x = exp(z);
  const Real ax = abs(x);

  auto sum = [&](const PowerSeries& s, Real& tail) {
    FloatC acc;
    FloatC xp(Real(1));
    tail = 0;
    for (int i = 0; i <= s.order(); ++i) {
      FloatC term = s[i].to_float() * xp;
      acc += term;
      if (i >= s.order() - 1) tail = std::max(tail, abs(term));
      xp *= x;
    }
    return acc;
  };
  Real tail1 = 0, tail2 = 0;
  const FloatC s1 = sum(fp.u1, tail1);
  const FloatC s2 = sum(fp.u2, tail2);

  const FloatC half(Real(1) / 2);
  // x^{rho - 1/2} = e^{(rho - 1/2) z}
  const FloatC u1 = exp((fp.rho1.to_float() - half) * z) * s1;
  FloatC u2 = exp((fp.rho2.to_float() - half) * z) * s2;
  if (fp.d == 1) u2 += FloatC(Real(fp.d)) * u1 * z;

  const FloatC value = E1.to_float() * u1 + E2.to_float() * u2;
  const Real scale = std::max(Real(1), std::max(abs(s1), abs(s2)));
  if (std::max(tail1, tail2) > Real(1e-12) * scale)
    throw std::domain_error("|e^z| = " + real_string(ax) + " is beyond the validated radius of the truncated series");
  return value;
}

}  // namespace scarce
