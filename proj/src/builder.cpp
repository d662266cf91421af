#include "scarce/builder.hpp"

#include <functional>
#include <stdexcept>

#include "scarce/verify.hpp"

namespace scarce {

namespace {

void require_unit(int c0) {
  if (c0 != 1 && c0 != -1) throw std::invalid_argument("c0 must satisfy c0^2 = 1");
}

// +sqrt(b3) before -sqrt(b3); a single root when b3 = 0.
std::vector<CNum> square_roots(const CNum& v) {
  CNum r = sqrt(v);
  if (r.is_zero()) return {r};
  return {r, -r};
}

ExpPoly kappa_from(const std::vector<CNum>& a) {
  ExpPoly::Terms t;
  for (std::size_t i = 0; i < a.size(); ++i) t.emplace(static_cast<int>(i), a[i]);
  return ExpPoly(1, std::move(t));
}

SolutionForm make_solution(EqSpec spec, int k, int c0, CNum c, std::optional<CNum> c1, std::vector<CNum> a,
                           std::string branch) {
  SolutionForm sol;
  sol.spec = std::move(spec);
  sol.k = k;
  sol.c0 = CNum(c0);
  sol.c = c;
  sol.c1 = c1;
  sol.kappa = kappa_from(a);
  ExpPoly::Terms g{{sol.spec.l / 2, CNum(c0)}, {0, c}};
  if (c1) g[1] += *c1;
  sol.g = ExpPoly(1, std::move(g));
  sol.branch = std::move(branch);
  sol.verified = verify_solution(sol).is_solution;
  return sol;
}

// a_k = 1, then a_{i-1} = (2ic + i^2) a_i / (2 c0 (k + 1 - i)), i = k..1.
std::vector<CNum> downward_l2(int k, const CNum& c, const CNum& c0) {
  std::vector<CNum> a(static_cast<std::size_t>(k) + 1);
  a[static_cast<std::size_t>(k)] = CNum(1);
  for (int i = k; i >= 1; --i) {
    CNum factor = CNum(2 * i) * c + CNum(i * i);
    a[static_cast<std::size_t>(i - 1)] = factor * a[static_cast<std::size_t>(i)] / (CNum(2 * (k + 1 - i)) * c0);
  }
  return a;
}

std::string branch_label(const std::string& family, int k, int c0) {
  return family + ":k=" + std::to_string(k) + ":c0=" + (c0 > 0 ? "+1" : "-1");
}

}  // namespace

std::optional<long> as_integer(const CNum& x, double tol) {
  if (x.is_exact()) {
    if (!x.is_exact_rational()) return std::nullopt;
    const Rational& q = x.rational();
    if (boost::multiprecision::denominator(q) != 1) return std::nullopt;
    return boost::multiprecision::numerator(q).convert_to<long>();
  }
  FloatC f = x.to_float();
  if (boost::multiprecision::abs(f.im) > tol) return std::nullopt;
  Real nearest = boost::multiprecision::round(f.re);
  if (boost::multiprecision::abs(f.re - nearest) > tol) return std::nullopt;
  return nearest.convert_to<long>();
}

// ------------------------------------------------------------------ l = 2

std::vector<SolutionForm> build_l2(const CNum& b2, const CNum& b3) {
  EqSpec spec{2, 1, b2, b3};
  spec.validate();
  std::vector<SolutionForm> out;
  for (int c0 : {1, -1}) {
    for (const CNum& c : square_roots(b3)) {
      // 2 c0 (c + k) + c0 = b2
      auto k = as_integer((CNum(c0) * b2 - CNum(1)) / CNum(2) - c);
      if (!k || *k < 0) continue;
      auto a = downward_l2(static_cast<int>(*k), c, CNum(c0));
      if (a.front().is_zero()) continue;
      auto sol = make_solution(spec, static_cast<int>(*k), c0, c, std::nullopt, std::move(a),
                               branch_label("l2", static_cast<int>(*k), c0));
      if (sol.verified) out.push_back(std::move(sol));
    }
  }
  return out;
}

ClosureSystem l2_constraints(int k, int c0) {
  require_unit(c0);
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  ClosureSystem sys;
  sys.unknown = "t";
  sys.unknowns = {"b2", "t"};
  sys.equations.push_back(MPoly::var(MPoly::b2) -
                          MPoly(Rational(c0)) * (MPoly::var(MPoly::t) + MPoly(Rational(2 * k + 1))));
  sys.side_constraints = {"b3 = t^2/4", "a_0 != 0"};
  sys.diagnostics.push_back("one-parameter family in t; no closure polynomial");
  return sys;
}

// ------------------------------------------------------------------ l = 4, s = 1

FamilyResult build_l4_s1(int k, int c0) {
  require_unit(c0);
  if (k < 1) throw std::invalid_argument("build_l4_s1 requires k >= 1");
  const CNum c(-(k + 1));
  const CNum b3((k + 1) * (k + 1));

  // a_i as polynomials in b2, upward from a_0 = 1:
  // i (i - 2k - 2) a_i = 2 c0 (k - i + 2) a_{i-2} + b2 a_{i-1}
  std::vector<Poly> a(static_cast<std::size_t>(k) + 1);
  a[0] = Poly(1);
  auto at = [&](int i) { return i < 0 ? Poly() : a[static_cast<std::size_t>(i)]; };
  for (int i = 1; i <= k; ++i) {
    Poly rhs = Poly(CNum(2 * c0 * (k - i + 2))) * at(i - 2) + Poly::x() * at(i - 1);
    a[static_cast<std::size_t>(i)] = rhs * (CNum(1) / CNum(i * (i - 2 * k - 2)));
  }
  Poly closure = (Poly(CNum(2 * c0)) * at(k - 1) + Poly::x() * at(k)).monic();

  FamilyResult res;
  auto& sys = res.closure;
  sys.unknown = "b2";
  sys.unknowns = {"b2", "t"};
  sys.closure = closure;
  sys.equations = {MPoly::var(MPoly::t) + MPoly(Rational(2 * k + 2)), MPoly::from_poly(closure, MPoly::b2)};
  sys.side_constraints = {"b3 = (k+1)^2", "a_k != 0", "b2 != 0"};

  for (const auto& root : find_roots(closure)) {
    const CNum& b2 = root.value;
    sys.roots.push_back(b2);
    if (b2.is_zero()) {
      sys.diagnostics.push_back("root b2 = 0 excluded");
      continue;
    }
    std::vector<CNum> coeffs;
    for (const auto& p : a) coeffs.push_back(p(b2));
    if (coeffs.back().is_zero()) {
      sys.diagnostics.push_back("root b2 = " + b2.to_string() + " gives a_k = 0");
      continue;
    }
    auto sol = make_solution(EqSpec{4, 1, b2, b3}, k, c0, c, std::nullopt, std::move(coeffs),
                             branch_label("l4s1", k, c0));
    if (!sol.verified) {
      sys.diagnostics.push_back("root b2 = " + b2.to_string() + " failed residual verification");
      continue;
    }
    res.solutions.push_back(std::move(sol));
  }
  return res;
}

std::vector<SolutionForm> solve_l4_s1(const CNum& b2, const CNum& b3) {
  EqSpec spec{4, 1, b2, b3};
  spec.validate();
  std::vector<SolutionForm> out;
  for (int c0 : {1, -1}) {
    for (const CNum& c : square_roots(b3)) {
      // 2c + 2k + 2 = 0
      auto k = as_integer(-c - CNum(1));
      if (!k || *k < 1) continue;
      const int kk = static_cast<int>(*k);
      std::vector<CNum> a(static_cast<std::size_t>(kk) + 1);
      a[0] = CNum(1);
      auto at = [&](int i) { return i < 0 ? CNum(0) : a[static_cast<std::size_t>(i)]; };
      for (int i = 1; i <= kk; ++i)
        a[static_cast<std::size_t>(i)] =
            (CNum(2 * c0 * (kk - i + 2)) * at(i - 2) + b2 * at(i - 1)) / (CNum(2 * i) * c + CNum(i * i));
      if (!(CNum(2 * c0) * at(kk - 1) + b2 * at(kk)).is_zero() || a.back().is_zero()) continue;
      auto sol = make_solution(spec, kk, c0, c, std::nullopt, std::move(a), branch_label("l4s1", kk, c0));
      if (sol.verified) out.push_back(std::move(sol));
    }
  }
  return out;
}

// ------------------------------------------------------------------ l = 4, s = 3

namespace {

// a_i = c1^{i mod 2} R_i(t) for (4.39)-type recursion with c1^2 = -(2 + t + 2k) c0.
struct L4S3Chain {
  std::vector<RatFunc> r;
  Poly closure;
};

L4S3Chain l4s3_chain(int k, int c0) {
  const Poly t = Poly::x();
  const RatFunc c1sq(Poly(CNum(-c0)) * (t + Poly(2 + 2 * k)));
  auto mu = [&](int i) { return i % 2 == 0 ? c1sq : RatFunc(1); };
  L4S3Chain ch;
  ch.r.assign(static_cast<std::size_t>(k) + 1, RatFunc());
  ch.r[0] = RatFunc(1);
  auto at = [&](int i) { return i < 0 ? RatFunc() : ch.r[static_cast<std::size_t>(i)]; };
  for (int i = 1; i <= k; ++i) {
    // i (t + i) a_i = (2k - 2i + 4) c0 a_{i-2} - (t + 2i - 1) c1 a_{i-1}
    RatFunc rhs = RatFunc(CNum((2 * k - 2 * i + 4) * c0)) * at(i - 2) -
                  RatFunc(t + Poly(2 * i - 1)) * mu(i) * at(i - 1);
    ch.r[static_cast<std::size_t>(i)] = rhs / RatFunc(Poly(CNum(i)) * (t + Poly(i)));
  }
  // i = k + 1 with a_{k+1} = 0: 2 c0 a_{k-1} = (t + 2k + 1) c1 a_k
  RatFunc f = RatFunc(CNum(2 * c0)) * at(k - 1) - RatFunc(t + Poly(2 * k + 1)) * mu(k + 1) * at(k);
  ch.closure = f.num().monic();
  return ch;
}

}  // namespace

FamilyResult build_l4_s3(int k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  const L4S3Chain plus = l4s3_chain(k, 1);
  const L4S3Chain minus = l4s3_chain(k, -1);

  FamilyResult res;
  auto& sys = res.closure;
  sys.unknown = "t";
  sys.unknowns = {"t"};
  sys.closure = plus.closure;
  sys.equations = {MPoly::from_poly(plus.closure, MPoly::t)};
  sys.side_constraints = {"c1^2 + (2 + t + 2k) c0 = 0", "b2 = 2 c0 c1", "b3 = t^2/4", "a_k != 0"};
  if (!(plus.closure == minus.closure))
    sys.diagnostics.push_back("closure polynomials differ between c0 = +1 and c0 = -1");

  for (const auto& root : find_roots(plus.closure)) {
    const CNum& t = root.value;
    sys.roots.push_back(t);
    bool degenerate = false;
    for (int i = 1; i <= k; ++i)
      if ((t + CNum(i)).is_zero()) degenerate = true;
    if (degenerate) {
      sys.diagnostics.push_back("root t = " + t.to_string() + " makes a recursion denominator i(t + i) vanish; excluded");
      continue;
    }
    const CNum c = t / CNum(2);
    for (int c0 : {1, -1}) {
      const L4S3Chain& ch = c0 == 1 ? plus : minus;
      CNum c1sq = CNum(-c0) * (CNum(2 + 2 * k) + t);
      if (c1sq.is_zero()) {
        sys.diagnostics.push_back("root t = " + t.to_string() + " forces c1 = 0 (b2 = 0)");
        continue;
      }
      for (const CNum& c1 : square_roots(c1sq)) {
        std::vector<CNum> a;
        for (int i = 0; i <= k; ++i) {
          CNum v = ch.r[static_cast<std::size_t>(i)](t);
          a.push_back(i % 2 ? c1 * v : v);
        }
        if (a.back().is_zero()) continue;
        auto sol = make_solution(EqSpec{4, 3, CNum(2 * c0) * c1, c * c}, k, c0, c, c1, std::move(a),
                                 branch_label("l4s3", k, c0));
        if (!sol.verified) {
          sys.diagnostics.push_back("candidate t = " + t.to_string() + " failed residual verification");
          continue;
        }
        res.solutions.push_back(std::move(sol));
      }
    }
  }
  return res;
}

std::vector<SolutionForm> solve_l4_s3(const CNum& b2, const CNum& b3) {
  EqSpec spec{4, 3, b2, b3};
  spec.validate();
  std::vector<SolutionForm> out;
  for (int c0 : {1, -1}) {
    const CNum c1 = b2 / CNum(2 * c0);
    for (const CNum& c : square_roots(b3)) {
      // c1^2 + (2 + 2c + 2k) c0 = 0
      auto k = as_integer((-(c1 * c1) * CNum(c0) - CNum(2) - CNum(2) * c) / CNum(2));
      if (!k || *k < 0) continue;
      const int kk = static_cast<int>(*k);
      std::vector<CNum> a(static_cast<std::size_t>(kk) + 1);
      a[0] = CNum(1);
      auto at = [&](int i) { return i < 0 ? CNum(0) : a[static_cast<std::size_t>(i)]; };
      bool degenerate = false;
      for (int i = 1; i <= kk && !degenerate; ++i) {
        CNum den = CNum(2 * i) * c + CNum(i * i);
        if (den.is_zero()) {
          degenerate = true;
          break;
        }
        a[static_cast<std::size_t>(i)] =
            (CNum((2 * kk - 2 * i + 4) * c0) * at(i - 2) - (CNum(2) * c + CNum(2 * i - 1)) * c1 * at(i - 1)) / den;
      }
      if (degenerate || a.back().is_zero()) continue;
      if (!(CNum(2 * c0) * at(kk - 1) - (CNum(2) * c + CNum(2 * kk + 1)) * c1 * at(kk)).is_zero()) continue;
      auto sol = make_solution(spec, kk, c0, c, c1, std::move(a), branch_label("l4s3", kk, c0));
      if (sol.verified) out.push_back(std::move(sol));
    }
  }
  return out;
}

// ------------------------------------------------------------------ pairs

PairResult build_pair_cor45(int k1, int k2, int c0) {
  require_unit(c0);
  if (k1 < 0 || k2 < 0) throw std::invalid_argument("k1, k2 must be nonnegative");
  if (k1 == k2) throw std::invalid_argument("k1 and k2 must be two distinct nonnegative integers");
  const CNum c(Rational(-(k1 + k2 + 1), 2));
  PairResult res;
  res.spec = EqSpec{2, 1, CNum(c0 * (k1 - k2)), c * c};

  auto a1 = downward_l2(k1, c, CNum(c0));
  auto a2 = downward_l2(k2, c, CNum(-c0));
  // 2ic + i^2 = i (i - (k1 + k2 + 1)) never vanishes for i <= max(k1, k2).
  if (a1.front().is_zero() || a2.front().is_zero()) throw std::logic_error("a_0 vanished in a pair recursion");

  res.f1 = make_solution(res.spec, k1, c0, c, std::nullopt, std::move(a1), branch_label("cor45:f1", k1, c0));
  res.f2 = make_solution(res.spec, k2, -c0, c, std::nullopt, std::move(a2), branch_label("cor45:f2", k2, -c0));
  res.wronskian = wronskian(res.f1, res.f2).value;
  return res;
}

// ------------------------------------------------------------------ dispatch

std::vector<SolutionForm> find_solutions(const EqSpec& spec) {
  if (!spec.l_even()) return {};
  if (spec.l == 2) return build_l2(spec.b2, spec.b3);
  if (spec.l == 4 && spec.s == 1) return solve_l4_s1(spec.b2, spec.b3);
  if (spec.l == 4 && spec.s == 3) return solve_l4_s3(spec.b2, spec.b3);
  return solve_generic(spec);
}

// ------------------------------------------------------------------ coefficient relations

CNum multinomial_coefficient(int n, int k0, const std::vector<CNum>& c) {
  const int m = static_cast<int>(c.size()) - 1;
  CNum total(0);
  std::vector<int> js(c.size(), 0);
  // Enumerate (j_0..j_m) with sum j_i = n and sum i j_i = k0.
  std::function<void(int, int, int)> rec = [&](int idx, int left, int weight) {
    if (idx > m) {
      if (left != 0 || weight != k0) return;
      Integer coeff = 1;
      for (int i = 2; i <= n; ++i) coeff *= i;
      CNum term(1);
      for (int i = 0; i <= m; ++i) {
        Integer f = 1;
        for (int j = 2; j <= js[static_cast<std::size_t>(i)]; ++j) f *= j;
        coeff /= f;
        term *= pow(c[static_cast<std::size_t>(i)], js[static_cast<std::size_t>(i)]);
      }
      total += CNum(coeff) * term;
      return;
    }
    for (int j = 0; j <= left && weight + idx * j <= k0; ++j) {
      js[static_cast<std::size_t>(idx)] = j;
      rec(idx + 1, left - j, weight + idx * j);
    }
    js[static_cast<std::size_t>(idx)] = 0;
  };
  rec(0, n, 0);
  return total;
}

std::vector<CNum> CjSequence::values(const CNum& c0, const CNum& c1) const {
  std::vector<CNum> out;
  for (int j = 0; j <= m; ++j) {
    if (j == 0) {
      out.push_back(c0);
      continue;
    }
    out.push_back(CNum(ratio[static_cast<std::size_t>(j)]) * pow(c1, j) / pow(c0, j - 1));
  }
  return out;
}

CjSequence cj_sequence(int n, int m) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (m < 0) throw std::invalid_argument("m must be nonnegative");
  CjSequence seq;
  seq.n = n;
  seq.m = m;
  // Weighted homogeneity: c_j is ratio_j c1^j c0^{1-j}, so c0 = c1 = 1 fixes the ratios.
  std::vector<CNum> c{CNum(1)};
  if (m >= 1) c.push_back(CNum(1));
  for (int k0 = 2; k0 <= m; ++k0) {
    c.push_back(CNum(0));
    // C_{k0} = n c0^{n-1} c_{k0} + (terms in c_1..c_{k0-1})
    CNum rest = multinomial_coefficient(n, k0, c);
    c.back() = -rest / CNum(n);
  }
  for (const auto& v : c) seq.ratio.push_back(v.rational());
  Rational scale = 1;
  for (int j = 0; j <= m; ++j) {
    if (j == 0) {
      seq.t.push_back(Rational(1));
      continue;
    }
    seq.t.push_back(seq.ratio[static_cast<std::size_t>(j)] * scale);
    scale *= -2;
  }
  seq.constraints.push_back("c0^" + std::to_string(n) + " = 1");
  if (m >= 1) seq.constraints.push_back(std::to_string(n) + "*c0^" + std::to_string(n - 1) + "*c1 = 1");
  if (n == 2) seq.constraints.push_back("2*c0*c1 = b2 (equation setting)");
  for (int k0 = 2; k0 <= m; ++k0) seq.constraints.push_back("C_" + std::to_string(k0) + " = 0");
  return seq;
}

AlphaResult alpha_admissible(const Rational& alpha) {
  AlphaResult r;
  r.m = smallest_admissible_index(alpha);
  r.admissible = alpha == Rational(2 * r.m + 1, 2 * r.m + 2);
  return r;
}

bool subnormal_exponent_check(const CNum& P0, const CNum& Q0, const CNum& c, double tol) {
  return (c * c + c * P0 + Q0).is_zero(tol);
}

}  // namespace scarce
