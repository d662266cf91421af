#include <map>
#include <numeric>
#include <stdexcept>

#include "scarce/builder.hpp"
#include "scarce/verify.hpp"

namespace scarce {

namespace {

using Coeffs = std::map<int, MPoly>;

MPoly mconst(long v) { return MPoly(Rational(v)); }

Coeffs multiply(const Coeffs& a, const Coeffs& b) {
  Coeffs out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out[i + j] += x * y;
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

// Symbolic data of the residual for one (l, s, c0): g, and the row
// coefficients L_d(i) = 2 i g_d + G_d + i^2 [d = 0] with G = g^2 + g' - A.
// b3 is eliminated through b3 = c^2, so G_0 = 0.
struct Setup {
  int l = 0, s = 0, c0 = 1, m1 = 0, q = 0;
  Coeffs g;  // exponent -> coefficient in (b2, t, c1)
  Coeffs G;  // exponents 0..m1

  MPoly row(int d, int i) const {
    MPoly out;
    if (auto it = g.find(d); it != g.end()) out += mconst(2 * i) * it->second;
    if (auto it = G.find(d); it != G.end()) out += it->second;
    if (d == 0) out += mconst(static_cast<long>(i) * i);
    return out;
  }
  // Coefficient of a_k at the top exponent k + m1; must vanish.
  MPoly top(int k) const { return row(m1, k); }
};

Setup make_setup(int l, int s, int c0) {
  Setup st;
  st.l = l;
  st.s = s;
  st.c0 = c0;
  st.m1 = l / 2;
  st.q = smallest_admissible_index(Rational(s, l));
  const int gap = l - s;

  const MPoly c = MPoly(Rational(1, 2)) * MPoly::var(MPoly::t);
  const CjSequence seq = cj_sequence(2, st.q);
  for (int j = 0; j <= st.q; ++j) {
    const int e = st.m1 - j * gap;
    if (e <= 0) throw std::logic_error("nonpositive exponent in g");
    // c_j = ratio_j c1^j c0^{1-j}
    MPoly cj(seq.ratio[static_cast<std::size_t>(j)] * ((j - 1) % 2 == 0 ? 1 : c0));
    for (int p = 0; p < j; ++p) cj *= MPoly::var(MPoly::c1);
    st.g[e] += cj;
  }
  st.g[0] += c;

  Coeffs G = multiply(st.g, st.g);
  for (const auto& [e, x] : st.g)
    if (e != 0) G[e] += mconst(e) * x;
  G[l] -= mconst(1);
  G[s] -= st.q >= 1 ? mconst(2 * c0) * MPoly::var(MPoly::c1) : MPoly::var(MPoly::b2);
  G[0] -= c * c;
  std::erase_if(G, [](const auto& kv) { return kv.second.is_zero(); });
  for (const auto& [e, x] : G)
    if (e > st.m1) throw std::logic_error("leading coefficient relations leave e^{" + std::to_string(e) + "z} in g^2 + g' - A");
  st.G = std::move(G);
  return st;
}

// ------------------------------------------------------------------ coefficient algebra

// Elements of K[c1]/(rel) with K = Q(x); d = 1 means no algebraic generator.
struct Algebra {
  int d = 1;
  std::vector<RatFunc> rel;  // c1^d = sum_{j<d} rel[j] c1^j
};

using Elem = std::vector<RatFunc>;

Elem zero_elem(const Algebra& A) { return Elem(static_cast<std::size_t>(A.d), RatFunc()); }

Elem scalar_elem(const Algebra& A, const RatFunc& r) {
  Elem e = zero_elem(A);
  e[0] = r;
  return e;
}

bool is_zero(const Elem& e) {
  for (const auto& x : e)
    if (!x.is_zero()) return false;
  return true;
}

Elem add(Elem a, const Elem& b, bool subtract = false) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = subtract ? a[i] - b[i] : a[i] + b[i];
  return a;
}

Elem mul(const Algebra& A, const Elem& a, const Elem& b) {
  const int d = A.d;
  std::vector<RatFunc> full(static_cast<std::size_t>(2 * d - 1), RatFunc());
  for (int i = 0; i < d; ++i) {
    if (a[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < d; ++j)
      full[static_cast<std::size_t>(i + j)] += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
  }
  for (int p = 2 * d - 2; p >= d; --p) {
    const RatFunc x = full[static_cast<std::size_t>(p)];
    if (x.is_zero()) continue;
    for (int j = 0; j < d; ++j) full[static_cast<std::size_t>(p - d + j)] += x * A.rel[static_cast<std::size_t>(j)];
  }
  full.resize(static_cast<std::size_t>(d));
  return full;
}

Elem divide(Elem a, const RatFunc& r) {
  for (auto& x : a) x = x / r;
  return a;
}

// Determinant of multiplication by e, i.e. the norm down to Q(x).
RatFunc norm(const Algebra& A, const Elem& e) {
  const int d = A.d;
  std::vector<Elem> cols;
  Elem basis = scalar_elem(A, RatFunc(1));
  Elem gen = zero_elem(A);
  if (d > 1) gen[1] = RatFunc(1);
  for (int j = 0; j < d; ++j) {
    cols.push_back(mul(A, e, basis));
    if (d > 1) basis = mul(A, basis, gen);
  }
  // M[r][c] = cols[c][r]; Gaussian elimination over Q(x).
  std::vector<std::vector<RatFunc>> M(static_cast<std::size_t>(d), std::vector<RatFunc>(static_cast<std::size_t>(d)));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
  RatFunc det(1);
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int r = col; r < d; ++r)
      if (!M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return RatFunc();
    if (pivot != col) {
      std::swap(M[static_cast<std::size_t>(pivot)], M[static_cast<std::size_t>(col)]);
      det = -det;
    }
    const RatFunc p = M[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    det *= p;
    for (int r = col + 1; r < d; ++r) {
      const RatFunc f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / p;
      if (f.is_zero()) continue;
      for (int c = col; c < d; ++c)
        M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -= f * M[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
    }
  }
  return det;
}

// ------------------------------------------------------------------ MPoly conversions

// Univariate in `var` after fixing t = t0; other variables must be absent.
Poly to_poly(const MPoly& p, MPoly::Var var, const Rational& t0) {
  Poly out;
  for (const auto& [e, c] : p.terms()) {
    for (int v = 0; v < 3; ++v)
      if (v != var && v != MPoly::t && e[static_cast<std::size_t>(v)] != 0)
        throw std::logic_error("unexpected unknown in probe equation");
    CNum coeff = CNum(c) * pow(CNum(t0), e[MPoly::t]);
    out += Poly::monomial(var == MPoly::t ? 0 : e[static_cast<std::size_t>(var)], coeff);
  }
  return out;
}

// Polynomials in t, indexed by the power of c1.
std::vector<Poly> split_c1(const MPoly& p) {
  std::vector<Poly> out(static_cast<std::size_t>(p.degree(MPoly::c1)) + 1);
  for (const auto& [e, c] : p.terms()) {
    if (e[MPoly::b2] != 0) throw std::logic_error("unexpected b2 in t-mode equation");
    out[static_cast<std::size_t>(e[MPoly::c1])] += Poly::monomial(e[MPoly::t], CNum(c));
  }
  return out;
}

Elem to_elem_t_mode(const Algebra& A, const MPoly& p) {
  auto parts = split_c1(p);
  Elem out = zero_elem(A);
  Elem gen_pow = scalar_elem(A, RatFunc(1));
  // With d = 1 the relation expresses c1 itself as an element of Q(t).
  Elem gen = A.d > 1 ? zero_elem(A) : scalar_elem(A, A.rel[0]);
  if (A.d > 1) gen[1] = RatFunc(1);
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (j > 0) gen_pow = mul(A, gen_pow, gen);
    if (!parts[j].is_zero()) out = add(out, mul(A, gen_pow, scalar_elem(A, RatFunc(parts[j]))));
  }
  return out;
}

// ------------------------------------------------------------------ concrete solutions

std::optional<SolutionForm> concrete_solution(const Setup& st, int k, const CNum& b2, const CNum& t,
                                              const std::optional<CNum>& c1, const std::string& branch) {
  const CNum c1v = c1.value_or(CNum(0));
  auto at = [&](const MPoly& p) { return p.eval(b2, t, c1v); };

  std::vector<CNum> a(static_cast<std::size_t>(k) + 1);
  a[0] = CNum(1);
  for (int e = 1; e <= k; ++e) {
    CNum rhs(0);
    for (int i = std::max(0, e - st.m1); i < e; ++i) rhs += a[static_cast<std::size_t>(i)] * at(st.row(e - i, i));
    CNum pivot = at(st.row(0, e));
    if (pivot.is_zero()) return std::nullopt;
    a[static_cast<std::size_t>(e)] = -rhs / pivot;
  }
  if (a.back().is_zero()) return std::nullopt;

  ExpPoly::Terms kt;
  for (int i = 0; i <= k; ++i) kt.emplace(i, a[static_cast<std::size_t>(i)]);
  ExpPoly::Terms gt;
  for (const auto& [e, x] : st.g) gt.emplace(e, at(x));

  SolutionForm sol;
  const CNum c = t / CNum(2);
  sol.spec = EqSpec{st.l, st.s, b2, c * c};
  sol.k = k;
  sol.c0 = CNum(st.c0);
  sol.c = c;
  if (st.q >= 1) sol.c1 = c1v;
  sol.kappa = ExpPoly(1, std::move(kt));
  sol.g = ExpPoly(1, std::move(gt));
  sol.branch = branch;
  sol.verified = verify_solution(sol).is_solution;
  return sol;
}

std::string probe_label(int l, int s, int k, int c0) {
  return "probe:l=" + std::to_string(l) + ":s=" + std::to_string(s) + ":k=" + std::to_string(k) + ":c0=" +
         (c0 > 0 ? "+1" : "-1");
}

void push_unique(std::vector<CNum>& out, const CNum& v) {
  for (const auto& w : out)
    if (w.same_as(v, 1e-20)) return;
  out.push_back(v);
}

ProbeBranch probe_branch(const Setup& st, int k) {
  ProbeBranch br;
  br.k = k;
  br.c0 = st.c0;
  auto& sys = br.system;
  const std::string label = probe_label(st.l, st.s, k, st.c0);
  const MPoly T = st.top(k);

  // Free family: the top relation fixes b2 in terms of t and nothing else remains.
  if (T.degree(MPoly::b2) > 0 && st.m1 == 1) {
    br.mode = "free-t";
    sys.unknown = "t";
    sys.unknowns = {"b2", "t"};
    sys.equations = {T};
    sys.side_constraints = {"b3 = t^2/4", "a_0 != 0"};
    sys.diagnostics.push_back("one-parameter family in t; no closure polynomial");
    return br;
  }
  if (T.degree(MPoly::b2) > 0) throw std::logic_error("b2 in the top relation with m + 1 > 1");

  const bool t_mode = T.degree(MPoly::c1) > 0;
  Algebra A;
  Rational t0 = 0;
  MPoly::Var var = MPoly::t;
  std::vector<Poly> rel_parts;
  if (t_mode) {
    br.mode = "t";
    rel_parts = split_c1(T);
    A.d = static_cast<int>(rel_parts.size()) - 1;
    const RatFunc lead(rel_parts.back());
    for (int j = 0; j < A.d; ++j) A.rel.push_back(-(RatFunc(rel_parts[static_cast<std::size_t>(j)]) / lead));
    sys.unknown = "t";
    sys.unknowns = {"t"};
    sys.side_constraints = {"c1 relation: " + T.normalized().to_string() + " = 0", "b2 = 2 c0 c1", "b3 = t^2/4",
                            "a_k != 0"};
  } else {
    if (T.degree(MPoly::t) != 1) throw std::logic_error("top relation is not linear in t");
    // T = alpha t + beta
    Rational alpha = 0, beta = 0;
    for (const auto& [e, c] : T.terms()) (e[MPoly::t] == 1 ? alpha : beta) += c;
    t0 = -beta / alpha;
    var = st.q >= 1 ? MPoly::c1 : MPoly::b2;
    br.mode = st.q >= 1 ? "c1" : "b2";
    sys.unknown = br.mode;
    sys.unknowns = {br.mode, "t"};
    sys.equations.push_back(T);
    sys.side_constraints = {"b3 = t^2/4", "a_k != 0", st.q >= 1 ? "c1 != 0" : "b2 != 0"};
    if (st.q >= 1) sys.side_constraints.push_back("b2 = 2 c0 c1");
  }

  auto to_elem = [&](const MPoly& p) {
    return t_mode ? to_elem_t_mode(A, p) : scalar_elem(A, RatFunc(to_poly(p, var, t0)));
  };

  // Upward elimination from a_0 = 1: the row at exponent e is solved for a_e.
  std::vector<Elem> a{scalar_elem(A, RatFunc(1))};
  for (int e = 1; e <= k; ++e) {
    Elem rhs = zero_elem(A);
    for (int i = std::max(0, e - st.m1); i < e; ++i)
      rhs = add(rhs, mul(A, a[static_cast<std::size_t>(i)], to_elem(st.row(e - i, i))));
    Elem pivot = to_elem(st.row(0, e));
    for (int j = 1; j < A.d; ++j)
      if (!pivot[static_cast<std::size_t>(j)].is_zero()) throw std::logic_error("pivot depends on c1");
    if (pivot[0].is_zero()) {
      sys.diagnostics.push_back("recursion pivot vanishes identically at i = " + std::to_string(e) + "; branch skipped");
      return br;
    }
    a.push_back(divide(rhs, pivot[0]) );
    for (auto& x : a.back()) x = -x;
  }

  // Remaining rows e = k + 1 .. k + m1 - 1 are the closure equations.
  std::vector<Poly> closures;
  for (int e = k + 1; e < k + st.m1; ++e) {
    Elem E = zero_elem(A);
    for (int i = std::max(0, e - st.m1); i <= k; ++i) E = add(E, mul(A, a[static_cast<std::size_t>(i)], to_elem(st.row(e - i, i))));
    if (is_zero(E)) continue;
    int nonzero = 0;
    int which = 0;
    for (int j = 0; j < A.d; ++j)
      if (!E[static_cast<std::size_t>(j)].is_zero()) {
        ++nonzero;
        which = j;
      }
    // c1 != 0, so a single c1^j E_j reduces to E_j.
    Poly p = nonzero == 1 ? E[static_cast<std::size_t>(which)].num() : norm(A, E).num();
    if (p.degree() <= 0) {
      sys.diagnostics.push_back("closure row at exponent " + std::to_string(e) + " is a nonzero constant; branch empty");
      sys.equations.push_back(MPoly(Rational(1)));
      sys.closure = Poly(1);
      return br;
    }
    closures.push_back(p.monic());
    sys.equations.push_back(MPoly::from_poly(closures.back(), t_mode ? MPoly::t : var));
  }
  if (closures.empty()) {
    sys.diagnostics.push_back("no closure rows; family free in " + sys.unknown);
    return br;
  }
  Poly common = closures.front();
  for (std::size_t i = 1; i < closures.size(); ++i) common = gcd(common, closures[i]);
  sys.closure = common;
  for (const auto& r : find_roots(common)) sys.roots.push_back(r.value);

  // Candidates: roots of every closure row, each gated by the residual verifier.
  std::vector<CNum> cand;
  for (const auto& p : closures)
    for (const auto& r : find_roots(p)) push_unique(cand, r.value);

  auto try_candidate = [&](const CNum& b2, const CNum& t, const std::optional<CNum>& c1) {
    ++br.candidates;
    auto sol = concrete_solution(st, k, b2, t, c1, label);
    if (sol && sol->verified) {
      br.verified.push_back(std::move(*sol));
    } else {
      ++br.rejected;
    }
  };

  for (const CNum& v : cand) {
    if (!t_mode) {
      if (v.is_zero()) {
        sys.diagnostics.push_back("root " + sys.unknown + " = 0 excluded");
        continue;
      }
      if (var == MPoly::b2)
        try_candidate(v, CNum(t0), std::nullopt);
      else
        try_candidate(CNum(2 * st.c0) * v, CNum(t0), v);
      continue;
    }
    bool degenerate = false;
    for (int e = 1; e <= k; ++e)
      if ((v + CNum(e)).is_zero()) degenerate = true;
    if (degenerate) {
      sys.diagnostics.push_back("root t = " + v.to_string() + " makes a recursion pivot vanish; excluded");
      continue;
    }
    std::vector<CNum> rel;
    for (const auto& part : rel_parts) rel.push_back(part(v));
    for (const auto& r : find_roots(Poly(rel))) {
      if (r.value.is_zero()) continue;
      try_candidate(CNum(2 * st.c0) * r.value, v, r.value);
    }
  }
  return br;
}

void require_probe_shape(int l, int s) {
  if (l % 2 != 0) throw std::invalid_argument("l must be even");
  if (!(1 <= s && s < l)) throw std::invalid_argument("require 1 <= s < l");
  if (std::gcd(l, s) != 1) throw std::invalid_argument("require gcd(l, s) = 1");
}

}  // namespace

std::vector<ProbeBranch> general_probe(int l, int s, int k_max) {
  require_probe_shape(l, s);
  if (k_max < 0) throw std::invalid_argument("k_max must be nonnegative");
  std::vector<ProbeBranch> out;
  const Setup plus = make_setup(l, s, 1);
  const Setup minus = make_setup(l, s, -1);
  for (int k = 0; k <= k_max; ++k) {
    out.push_back(probe_branch(plus, k));
    out.push_back(probe_branch(minus, k));
  }
  return out;
}

std::vector<SolutionForm> solve_generic(const EqSpec& spec) {
  spec.validate();
  if (!spec.l_even()) return {};
  std::vector<SolutionForm> out;
  for (int c0 : {1, -1}) {
    const Setup st = make_setup(spec.l, spec.s, c0);
    CNum r = sqrt(spec.b3);
    std::vector<CNum> cs{r};
    if (!r.is_zero()) cs.push_back(-r);
    for (const CNum& c : cs) {
      const CNum t = CNum(2) * c;
      std::optional<CNum> c1;
      if (st.q >= 1) c1 = spec.b2 / CNum(2 * c0);
      // top(k) = top(0) + 2 k c0
      CNum T0 = st.top(0).eval(spec.b2, t, c1.value_or(CNum(0)));
      auto k = as_integer(-T0 / CNum(2 * c0));
      if (!k || *k < 0) continue;
      auto sol = concrete_solution(st, static_cast<int>(*k), spec.b2, t, c1, probe_label(spec.l, spec.s, static_cast<int>(*k), c0));
      if (sol && sol->verified) out.push_back(std::move(*sol));
    }
  }
  return out;
}

}  // namespace scarce
