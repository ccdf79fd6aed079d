#pragma once

// Classical tomography: optical and symplectic tomograms of phase-space
// densities, filtered-backprojection inversion, tomographic moments and
// parameter-weighted (modified) tomograms.

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/states.hpp"

namespace tomo {

/// w(X, theta) on an (X grid x angle grid), theta-major:
/// values[k * x.size() + i] = w(X_i, theta_k). Every slice integrates to 1.
class OpticalTomogram {
public:
  static constexpr double kSliceTol = 1e-6;
  static constexpr double kMaxDeficit = 1e-2;

  /// Validates nonnegativity, then renormalizes each slice. A slice whose
  /// trapezoidal mass is off by more than max_deficit is a NumericGuard error.
  OpticalTomogram(Grid1D x, AngleGrid angles, std::vector<double> values,
                  double max_deficit = kMaxDeficit);

  const Grid1D& x() const { return x_; }
  const AngleGrid& angles() const { return angles_; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> slice(std::size_t k) const {
    return {values_.data() + k * x_.size(), x_.size()};
  }
  double at(std::size_t i, std::size_t k) const { return values_[k * x_.size() + i]; }

  /// Largest |1 - mass| seen over the slices before renormalization.
  double max_input_deficit() const { return max_input_deficit_; }

private:
  Grid1D x_;
  AngleGrid angles_;
  std::vector<double> values_;
  double max_input_deficit_ = 0.0;
};

/// w(X, theta) = int f(q,p) delta(X - q cos(theta) - p sin(theta)) dq dp by
/// arc-length line quadrature with bilinear sampling of f.
OpticalTomogram optical_tomogram_classical(const PhaseSpaceDensity& f, const Grid1D& x,
                                           const AngleGrid& angles);

/// Exact slice at an axis angle, sampled on the tomogram X grid.
struct AxisSlice {
  double theta = 0.0;
  std::vector<double> values;
};

/// M(X, mu, nu) = r^-1 w(X / r, atan2(nu, mu)), r = hypot(mu, nu), with
/// linear interpolation in X and periodic linear interpolation in theta over
/// the grid angles merged with any supplied axis slices.
class SymplecticEvaluator {
public:
  explicit SymplecticEvaluator(OpticalTomogram w, std::vector<AxisSlice> axis_slices = {});

  double optical(double X, double theta) const;
  double operator()(double X, double mu, double nu) const;

  const OpticalTomogram& tomogram() const { return w_; }

private:
  struct Node {
    double theta;
    const double* values;
  };
  double slice_value(const double* values, double X) const;

  OpticalTomogram w_;
  std::vector<AxisSlice> axis_;
  std::vector<Node> nodes_;
};

/// Evaluator whose axis angles {0, pi/2, pi, 3pi/2} come from the marginals of f.
SymplecticEvaluator classical_evaluator(const PhaseSpaceDensity& f, OpticalTomogram w);

double symplectic_from_optical(const SymplecticEvaluator& m, double X, double mu, double nu);

struct Moments {
  double q = 0.0;
  double p = 0.0;
};

/// <q^n> = int M(X,1,0) X^n dX and <p^n> = int M(X,0,1) X^n dX, n <= 4.
Moments tomogram_moments(const SymplecticEvaluator& m, int n);

// Parameter weights

/// R(theta_k) on an angle grid, sum_k R_k * dtheta = 1.
struct CircleWeight {
  AngleGrid angles;
  std::vector<double> density;
};
/// R(mu_i, nu_j), mu-major, trapezoidal double integral 1.
struct PlaneWeight {
  Grid1D mu;
  Grid1D nu;
  std::vector<double> density;
};
/// Point masses summing to 1.
struct DiscreteWeight {
  std::vector<double> mass;
};
using ParameterWeight = std::variant<CircleWeight, PlaneWeight, DiscreteWeight>;

inline constexpr double kWeightTol = 1e-6;

/// Throws InvalidInput on negative entries or normalization off by > tol.
void validate_weight(const ParameterWeight& r, double tol = kWeightTol);

CircleWeight uniform_circle(const AngleGrid& angles);
/// exp(kappa cos(theta - center)), normalized on the grid.
CircleWeight von_mises_circle(const AngleGrid& angles, double center, double kappa);
/// exp(-mu^2 - nu^2) / pi, normalized on the grid.
PlaneWeight gaussian_plane(const Grid1D& mu, const Grid1D& nu);
DiscreteWeight uniform_discrete(std::size_t count);

/// W(X, theta) = w(X, theta) R(theta): a joint density of X and theta.
struct ModifiedOpticalTomogram {
  Grid1D x;
  AngleGrid angles;
  std::vector<double> values;  // theta-major like OpticalTomogram

  double total() const;
  std::vector<double> x_marginal() const;
  std::vector<double> theta_marginal() const;
};

ModifiedOpticalTomogram modify_optical(const OpticalTomogram& w, const CircleWeight& r);

// Reconstruction

struct ReconstructOptions {
  bool clamp = true;          // classical densities; false keeps Wigner negativity
  double taper_fraction = 0.2;  // cosine roll-off width as a fraction of the band
};

struct Reconstruction {
  PhaseSpaceField field;
  double clamp_mass = 0.0;  // mass removed by clamping, relative to the raw integral
  double min_value = 0.0;   // before clamping
  double raw_integral = 0.0;
};

/// Filtered backprojection: ramp filter |r| with a cosine taper at the band
/// edge r_max = pi / dX, backprojected over the full circle.
Reconstruction inverse_radon(const OpticalTomogram& w, const Grid1D& q, const Grid1D& p,
                             const ReconstructOptions& options = {});

/// Samples of the ramp-filter kernel h[n], n = 0..count-1 (h is even).
std::vector<double> ramp_kernel(std::size_t count, double dx, double taper_fraction);

// Gaussian-modified symplectic tomogram

/// values[(a * nu.size() + b) * x.size() + i] = Mg(X_i, mu_a, nu_b).
struct ModifiedSymplecticSamples {
  Grid1D x;
  Grid1D mu;
  Grid1D nu;
  std::vector<double> values;
  double total = 0.0;  // trapezoidal integral over (X, mu, nu)
};

inline constexpr double kGaussianParamExtent = 4.0;

/// Mg(X,mu,nu) = pi^-1 M(X,mu,nu) exp(-mu^2 - nu^2). The (mu, nu) grids must
/// reach |mu|, |nu| = 4 and avoid the origin.
ModifiedSymplecticSamples gaussian_modified_symplectic(const PhaseSpaceDensity& f, const Grid1D& x,
                                                       const Grid1D& mu, const Grid1D& nu,
                                                       std::size_t n_angles = 720);

struct GaussianInversionOptions {
  std::optional<Grid1D> x;   // tomogram X grid; default sqrt(2) * max(Lq, Lp)
  AngleGrid angles{180};
};

/// De-weights to M = pi Mg exp(mu^2 + nu^2), resamples the unit circle into an
/// optical tomogram and runs inverse_radon with clamping.
Reconstruction invert_gaussian_modified(const ModifiedSymplecticSamples& mg, const Grid1D& q,
                                        const Grid1D& p, const GaussianInversionOptions& options = {});

/// The optical tomogram used internally by invert_gaussian_modified.
OpticalTomogram optical_from_gaussian_modified(const ModifiedSymplecticSamples& mg, const Grid1D& x,
                                               const AngleGrid& angles);

} // namespace tomo
