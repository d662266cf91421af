#ifndef SCARCE_OSCILLATION_HPP
#define SCARCE_OSCILLATION_HPP

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scarce/solution.hpp"

namespace scarce {

/// Zeros of f = kappa e^H: for each entry the points base + i * period * m,
/// m in Z, each with the entry's multiplicity.
struct ZeroLattice {
  struct Entry {
    FloatC base;  // den * Log(zeta0)
    int multiplicity = 1;
  };
  std::vector<Entry> entries;
  int den = 1;
  Real period{0};  // 2 pi den

  bool empty() const { return entries.empty(); }
  // Zeros per period strip.
  int strip_count() const;
  // Smallest distance from a lattice point to the circle |z| = r.
  Real distance_to_circle(const Real& r) const;
};

ZeroLattice zeros_of(const SolutionForm& sol);
ZeroLattice zeros_of(const ExpPoly& kappa);

// n(r): zeros with |z| < r, counted with multiplicity. When a lattice point
// lies on |z| = r (to 1e-30) the radius is moved inward by 1e-9.
long count_zeros(const ZeroLattice& lat, const Real& r);

// Least-squares slope of log n(r) against log r over the larger half of
// r_values, skipping radii with n(r) = 0. Zero for an empty lattice.
// Requires at least 4 increasing radii.
double lambda_estimate(const ZeroLattice& lat, const std::vector<double>& r_values);

class ArgumentCountError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ArgumentCount {
  long count = 0;
  double value = 0;  // the quadrature before rounding
  int nodes = 0;     // node count at which two successive values agreed
};

// (1 / 2 pi i) of the contour integral of f'/f over |z| = r by the
// trapezoidal rule, starting at n_quad nodes and doubling until two
// successive rounded counts agree. Throws ArgumentCountError when a zero
// lies within 1e-6 of the contour, when the value is more than 0.1 from an
// integer, or when max_nodes is reached.
ArgumentCount argument_count(const SolutionForm& sol, double r, int n_quad = 4096, int max_nodes = 1 << 20);

/// Sign pattern of delta(theta) = a cos(k theta) - b sin(k theta), the
/// growth indicator of exp(p) for p with leading term (a + i b) z^k.
struct SectorDecomp {
  double a = 1, b = 0;
  int k = 1;
  std::vector<double> theta;  // 2k boundaries theta_1 < ... < theta_2k
  std::vector<int> sign;      // sign of delta on (theta_j, theta_{j+1})

  double delta(double angle) const;
};

// Without theta1 the first boundary is (-pi/2 - atan2(b, a)) / k, which is
// -pi/(2k) for p = z^k. A supplied theta1 must be a zero of delta.
SectorDecomp delta_sectors(double a, double b, int k, std::optional<double> theta1 = std::nullopt);

/// Step size collapsed or the error controller gave up.
class StepUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RayMethod {
  automatic,  // taylor when the ray enters the growth region of e^{lz}, dopri5 otherwise
  dopri5,     // adaptive Dormand-Prince in double precision
  taylor      // Taylor series in multiprecision, for solutions that are subdominant along the ray
};
std::string to_string(RayMethod m);

struct RayOptions {
  RayMethod method = RayMethod::automatic;
  double rel_tol = 1e-10;
  double abs_tol = 1e-16;
  int samples = 100;         // intervals of the uniform sample grid on [0, r_max]
  unsigned taylor_bits = 0;  // 0 picks from the growth of |A| along the ray
  long max_steps = 10'000'000;
};

struct RaySample {
  double r = 0;
  std::complex<double> f;
  std::complex<double> fp;  // df/dz
};

struct RayResult {
  std::vector<RaySample> samples;
  RayMethod method = RayMethod::dopri5;
  unsigned bits = 53;
  long steps = 0;
};

// Integrates f'' = A f along z = r e^{i theta}, 0 <= r <= r_max, from
// f(0) = f0, f'(0) = f0p.
RayResult ray_integrate(const ExpPoly& A, double theta, double r_max, const FloatC& f0, const FloatC& f0p,
                        const RayOptions& opts = {});
RayResult ray_integrate(const EqSpec& spec, double theta, double r_max, const FloatC& f0, const FloatC& f0p,
                        const RayOptions& opts = {});

}  // namespace scarce

#endif  // SCARCE_OSCILLATION_HPP
