#include "scarce/oscillation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/numeric/odeint.hpp>

namespace scarce {

namespace {

using boost::multiprecision::ceil;
using boost::multiprecision::floor;
using boost::multiprecision::sqrt;

Real circle_gap(const FloatC& base, const Real& period, long m, const Real& r) {
  FloatC z(base.re, base.im + period * m);
  return boost::multiprecision::abs(abs(z) - r);
}

// Dense Laurent form sum_j c_j zeta^j over a common exponent denominator,
// evaluated by Horner so each node costs one exponential.
struct LaurentForm {
  int lo = 0;
  std::vector<FloatC> c;

  LaurentForm(const ExpPoly& a, int den) {
    const auto t = a.terms_over(den);
    if (t.empty()) return;
    lo = t.begin()->first;
    c.resize(static_cast<std::size_t>(t.rbegin()->first - lo + 1));
    for (const auto& [j, v] : t) c[static_cast<std::size_t>(j - lo)] = v.to_float();
  }

  FloatC operator()(const FloatC& zeta, const FloatC& zeta_inv) const {
    FloatC sum;
    for (auto it = c.rbegin(); it != c.rend(); ++it) sum = sum * zeta + *it;
    const FloatC& step = lo < 0 ? zeta_inv : zeta;
    for (int i = 0; i < std::abs(lo); ++i) sum *= step;
    return sum;
  }
};

}  // namespace

// ---------------------------------------------------------------- lattice

int ZeroLattice::strip_count() const {
  int n = 0;
  for (const auto& e : entries) n += e.multiplicity;
  return n;
}

Real ZeroLattice::distance_to_circle(const Real& r) const {
  Real best = -1;
  for (const auto& e : entries) {
    // Candidates: the lattice points nearest to the two crossings of the
    // line Re z = base.re with the circle, and the one nearest its midpoint.
    std::vector<Real> anchors{-e.base.im / period};
    const Real s2 = r * r - e.base.re * e.base.re;
    if (s2 > 0) {
      const Real s = sqrt(s2);
      anchors.push_back((-e.base.im - s) / period);
      anchors.push_back((-e.base.im + s) / period);
    }
    for (const Real& a : anchors)
      for (const Real& m : {Real(floor(a)), Real(ceil(a))}) {
        Real d = circle_gap(e.base, period, m.convert_to<long>(), r);
        if (best < 0 || d < best) best = d;
      }
  }
  return best;
}

ZeroLattice zeros_of(const ExpPoly& kappa) {
  if (kappa.is_zero()) throw std::domain_error("the zero function has no zero lattice");
  ZeroLattice lat;
  lat.den = kappa.den();
  lat.period = 2 * real_pi() * lat.den;
  if (kappa.is_constant()) return lat;
  for (const auto& root : laurent_roots(kappa)) {
    FloatC base = log(root.zeta.to_float());
    base.re *= lat.den;
    base.im *= lat.den;
    lat.entries.push_back({std::move(base), root.multiplicity});
  }
  return lat;
}

ZeroLattice zeros_of(const SolutionForm& sol) { return zeros_of(sol.kappa); }

long count_zeros(const ZeroLattice& lat, const Real& r_in) {
  if (r_in <= 0) throw std::invalid_argument("count_zeros needs r > 0");
  Real r = r_in;
  if (!lat.empty() && lat.distance_to_circle(r) < Real(1e-30)) r -= Real(1e-9);

  long total = 0;
  for (const auto& e : lat.entries) {
    const Real s2 = r * r - e.base.re * e.base.re;
    if (s2 <= 0) continue;
    const Real s = sqrt(s2);
    const Real lo = (-e.base.im - s) / lat.period;
    const Real hi = (-e.base.im + s) / lat.period;
    // integers m with lo < m < hi
    long n = ceil(hi).convert_to<long>() - floor(lo).convert_to<long>() - 1;
    if (n > 0) total += n * e.multiplicity;
  }
  return total;
}

double lambda_estimate(const ZeroLattice& lat, const std::vector<double>& r_values) {
  if (r_values.size() < 4) throw std::invalid_argument("lambda_estimate needs at least 4 radii");
  if (!std::is_sorted(r_values.begin(), r_values.end()) || r_values.front() <= 0)
    throw std::invalid_argument("radii must be positive and increasing");
  if (lat.empty()) return 0.0;

  std::vector<double> xs, ys;
  for (std::size_t i = r_values.size() / 2; i < r_values.size(); ++i) {
    long n = count_zeros(lat, Real(r_values[i]));
    if (n == 0) continue;
    xs.push_back(std::log(r_values[i]));
    ys.push_back(std::log(static_cast<double>(n)));
  }
  if (xs.size() < 2) return 0.0;
  const double nx = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= nx;
  my /= nx;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx == 0 ? 0.0 : sxy / sxx;
}

// ---------------------------------------------------------------- argument principle

ArgumentCount argument_count(const SolutionForm& sol, double r, int n_quad, int max_nodes) {
  if (r <= 0) throw std::invalid_argument("argument_count needs r > 0");
  if (n_quad < 8) throw std::invalid_argument("argument_count needs at least 8 nodes");
  const ZeroLattice lat = zeros_of(sol);
  if (!lat.empty() && lat.distance_to_circle(Real(r)) < Real(1e-6))
    throw ArgumentCountError("a zero lies within 1e-6 of the contour |z| = " + std::to_string(r));

  // |kappa| can be far below its largest term on the contour; extra bits
  // absorb the cancellation.
  int max_rate = 0;
  for (const auto* p : {&sol.kappa, &sol.g})
    for (const auto& [j, c] : p->terms()) max_rate = std::max(max_rate, std::abs(j));
  const double rate = static_cast<double>(max_rate) / std::min(sol.kappa.den(), sol.g.den());
  PrecisionGuard guard(working_precision() + static_cast<unsigned>(std::ceil(r * rate * std::numbers::log2e)) + 32);

  const int den = std::lcm(sol.kappa.den(), sol.g.den());
  const LaurentForm kappa(sol.kappa, den), dkappa(differentiate(sol.kappa), den), g(sol.g, den);
  const Real two_pi = 2 * real_pi();
  auto node_sum = [&](int n, int first, int stride) {
    FloatC sum;
    for (int k = first; k < n; k += stride) {
      const Real phi = two_pi * k / n;
      const FloatC z(r * boost::multiprecision::cos(phi), r * boost::multiprecision::sin(phi));
      const FloatC zeta = exp(z / FloatC(Real(den)));
      const FloatC zeta_inv = FloatC(Real(1)) / zeta;
      sum += (dkappa(zeta, zeta_inv) / kappa(zeta, zeta_inv) + g(zeta, zeta_inv)) * z;
    }
    return sum;
  };

  int n = n_quad;
  FloatC sum = node_sum(n, 0, 1);
  auto value_of = [&](int nodes) { return (sum / FloatC(Real(nodes))).to_complex(); };
  std::complex<double> prev = value_of(n);
  while (true) {
    if (2L * n > max_nodes)
      throw ArgumentCountError("quadrature did not settle within " + std::to_string(max_nodes) + " nodes");
    sum += node_sum(2 * n, 1, 2);
    n *= 2;
    const std::complex<double> cur = value_of(n);
    if (std::lround(cur.real()) == std::lround(prev.real())) {
      const double off = std::abs(cur - std::complex<double>(std::round(cur.real()), 0.0));
      if (off > 0.1)
        throw ArgumentCountError("quadrature value " + std::to_string(cur.real()) + " is not near an integer");
      return {std::lround(cur.real()), cur.real(), n};
    }
    prev = cur;
  }
}

// ---------------------------------------------------------------- sectors

double SectorDecomp::delta(double angle) const { return a * std::cos(k * angle) - b * std::sin(k * angle); }

SectorDecomp delta_sectors(double a, double b, int k, std::optional<double> theta1) {
  if (a == 0 && b == 0) throw std::invalid_argument("delta_sectors needs (a, b) != (0, 0)");
  if (k < 1) throw std::invalid_argument("delta_sectors needs k >= 1");
  SectorDecomp out;
  out.a = a;
  out.b = b;
  out.k = k;
  const double pi = std::numbers::pi;
  const double t1 = theta1 ? *theta1 : (-pi / 2 - std::atan2(b, a)) / k;
  if (theta1 && std::abs(out.delta(t1)) > 1e-12 * std::hypot(a, b))
    throw std::invalid_argument("theta1 is not a zero of delta");
  for (int j = 0; j < 2 * k; ++j) {
    const double t = t1 + j * pi / k;
    out.theta.push_back(t);
    out.sign.push_back(out.delta(t + pi / (2 * k)) > 0 ? 1 : -1);
  }
  return out;
}

// ---------------------------------------------------------------- rays

std::string to_string(RayMethod m) {
  switch (m) {
    case RayMethod::automatic: return "automatic";
    case RayMethod::dopri5: return "dopri5";
    case RayMethod::taylor: return "taylor";
  }
  return "?";
}

namespace {

std::vector<double> sample_grid(double r_max, int intervals) {
  std::vector<double> g;
  for (int i = 0; i <= intervals; ++i) g.push_back(r_max * i / intervals);
  g.back() = r_max;
  return g;
}

// Upper bound of |A(r u)| from the coefficient moduli.
double coefficient_bound(const ExpPoly& A, std::complex<double> u, double r) {
  double m = 0;
  for (const auto& [j, c] : A.terms())
    m += std::abs(c.to_complex()) * std::exp((static_cast<double>(j) / A.den() * u).real() * r);
  return m;
}

RayResult integrate_dopri5(const ExpPoly& A, double theta, double r_max, const FloatC& f0, const FloatC& f0p,
                           const RayOptions& opts) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 4>;  // Re f, Im f, Re df/dr, Im df/dr

  const std::complex<double> u = std::polar(1.0, theta);
  const std::complex<double> u2 = u * u;
  auto system = [&](const State& x, State& dxdt, double r) {
    const std::complex<double> f(x[0], x[1]);
    const std::complex<double> rhs = u2 * evaluate(A, r * u) * f;
    dxdt = {x[2], x[3], rhs.real(), rhs.imag()};
  };

  const std::complex<double> a0 = f0.to_complex(), a1 = u * f0p.to_complex();
  State x{a0.real(), a0.imag(), a1.real(), a1.imag()};

  RayResult out;
  out.method = RayMethod::dopri5;
  // Local control at a tenth of the request keeps the accumulated error near it.
  auto stepper =
      odeint::make_dense_output(opts.abs_tol / 10, opts.rel_tol / 10, odeint::runge_kutta_dopri5<State>());
  const double dt0 = std::min(1e-3, r_max / 10);
  stepper.initialize(x, 0.0, dt0);
  try {
    for (double r : sample_grid(r_max, opts.samples)) {
      while (stepper.current_time() < r) {
        stepper.do_step(system);
        ++out.steps;
        const double t = stepper.current_time();
        if (stepper.current_time_step() < 1e-14 * std::max(1.0, t))
          throw StepUnderflow("step size underflow at r = " + std::to_string(t));
        if (out.steps > opts.max_steps) throw StepUnderflow("step limit reached at r = " + std::to_string(t));
      }
      State y;
      if (r == 0)
        y = x;
      else
        stepper.calc_state(r, y);
      for (double v : y)
        if (!std::isfinite(v)) throw StepUnderflow("solution left double range at r = " + std::to_string(r));
      out.samples.push_back({r, {y[0], y[1]}, std::complex<double>(y[2], y[3]) / u});
    }
  } catch (const odeint::odeint_error& e) {
    throw StepUnderflow(std::string("error control failed: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw StepUnderflow(std::string("coefficient overflow: ") + e.what());
  }
  return out;
}

unsigned taylor_precision(const ExpPoly& A, std::complex<double> u, double r_max) {
  // Errors in the dominant direction grow like exp(2 int sqrt|A| dr).
  const int n = 400;
  double integral = 0;
  for (int i = 1; i <= n; ++i) integral += std::sqrt(coefficient_bound(A, u, r_max * i / n)) * r_max / n;
  const double bits = working_precision() + 32 + 2 * integral * std::numbers::log2e;
  if (bits > 65536) throw std::domain_error("ray too long for multiprecision tracking");
  return static_cast<unsigned>(std::ceil(bits));
}

RayResult integrate_taylor(const ExpPoly& A, double theta, double r_max, const FloatC& f0_in, const FloatC& f0p_in,
                           const RayOptions& opts) {
  const std::complex<double> ud = std::polar(1.0, theta);
  RayResult out;
  out.method = RayMethod::taylor;
  out.bits = opts.taylor_bits ? opts.taylor_bits : taylor_precision(A, ud, r_max);
  PrecisionGuard guard(out.bits);

  const Real th(theta);
  const FloatC u(boost::multiprecision::cos(th), boost::multiprecision::sin(th));
  const FloatC u2 = u * u;
  struct Term {
    FloatC coeff;
    Real q;       // j / den
    FloatC rate;  // q u
  };
  std::vector<Term> terms;
  double max_rate = 0;
  for (const auto& [j, c] : A.terms()) {
    const Real q = Real(j) / A.den();
    const FloatC ru = u * FloatC(q);
    terms.push_back({c.to_float(), q, ru});
    max_rate = std::max(max_rate, std::abs(static_cast<double>(j) / A.den()));
  }
  const Real eps = boost::multiprecision::pow(Real(2), -static_cast<int>(out.bits));
  const int n_max = 4000;

  FloatC f(f0_in.re, f0_in.im), fr = u * FloatC(f0p_in.re, f0p_in.im);  // f and df/dr
  double r = 0;
  const std::vector<double> grid = sample_grid(r_max, opts.samples);
  std::size_t next = 0;
  auto record = [&]() {
    out.samples.push_back({r, f.to_complex(), (fr / u).to_complex()});
    ++next;
  };
  record();

  std::vector<FloatC> Acoef, F;
  while (next < grid.size()) {
    const double h_cap = 0.25;
    const double bound = std::max(coefficient_bound(A, ud, r), coefficient_bound(A, ud, r + h_cap));
    const double h = std::min({h_cap, 0.5 / (std::sqrt(bound) + max_rate), grid[next] - r});
    if (!(h > 1e-14 * std::max(1.0, r))) throw StepUnderflow("taylor step underflow at r = " + std::to_string(r));

    // Taylor data at the current point in tau = r' - r.
    const FloatC z = u * FloatC(Real(r));
    std::vector<FloatC> powers;
    for (const auto& t : terms) powers.push_back(t.coeff * exp(FloatC(t.q) * z));
    Acoef.clear();
    F.assign({f, fr});
    const FloatC H{Real(h)};
    FloatC sum = f + fr * H, dsum = fr, hp = H;  // hp = h^{n+1}
    for (int n = 0;; ++n) {
      // A_n = sum_j e_j (rate_j)^n / n!
      FloatC An;
      for (std::size_t j = 0; j < terms.size(); ++j) {
        An += powers[j];
        powers[j] = powers[j] * terms[j].rate / FloatC(Real(n + 1));
      }
      Acoef.push_back(An);
      FloatC conv;
      for (int i = 0; i <= n; ++i) conv += Acoef[static_cast<std::size_t>(i)] * F[static_cast<std::size_t>(n - i)];
      F.push_back(u2 * conv / FloatC(Real((n + 2) * (n + 1))));
      // F has indices 0..n+2; add the n+2 term.
      const FloatC& Fn2 = F.back();
      const FloatC dterm = FloatC(Real(n + 2)) * Fn2 * hp;
      hp = hp * H;
      const FloatC term = Fn2 * hp;
      sum += term;
      dsum += dterm;
      if (n >= 6) {
        const Real scale = abs(sum) + abs(dsum) * h;
        const Real last = abs(term) + abs(dterm) * h;
        const Real prev = abs(F[F.size() - 2]) * (hp / H).re;
        if (last + prev <= eps * scale) break;
      }
      if (n > n_max) throw StepUnderflow("taylor series failed to converge at r = " + std::to_string(r));
    }
    f = sum;
    fr = dsum;
    r = (grid[next] - r - h <= 0) ? grid[next] : r + h;
    ++out.steps;
    if (out.steps > opts.max_steps) throw StepUnderflow("step limit reached at r = " + std::to_string(r));
    if (r == grid[next]) record();
  }
  return out;
}

}  // namespace

RayResult ray_integrate(const ExpPoly& A, double theta, double r_max, const FloatC& f0, const FloatC& f0p,
                        const RayOptions& opts) {
  if (!(r_max > 0)) throw std::invalid_argument("ray_integrate needs r_max > 0");
  if (opts.samples < 1) throw std::invalid_argument("ray_integrate needs at least one sample interval");
  if (!(opts.rel_tol > 0) || opts.abs_tol < 0) throw std::invalid_argument("tolerances must be positive");
  RayMethod m = opts.method;
  if (m == RayMethod::automatic) {
    int top = 0;
    for (const auto& [j, c] : A.terms()) top = std::max(top, j);
    m = (top > 0 && std::cos(theta) > 1e-12) ? RayMethod::taylor : RayMethod::dopri5;
  }
  return m == RayMethod::taylor ? integrate_taylor(A, theta, r_max, f0, f0p, opts)
                                : integrate_dopri5(A, theta, r_max, f0, f0p, opts);
}

RayResult ray_integrate(const EqSpec& spec, double theta, double r_max, const FloatC& f0, const FloatC& f0p,
                        const RayOptions& opts) {
  return ray_integrate(spec.coefficient(), theta, r_max, f0, f0p, opts);
}

}  // namespace scarce
