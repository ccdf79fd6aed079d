#pragma once

// Quantum optical tomograms of pure states through the fractional Fourier
// transform, and Wigner-level reconstruction.

#include <optional>
#include <vector>

#include "tomokit/radon.hpp"
#include "tomokit/states.hpp"

namespace tomo {

/// Below this |sin(theta)| the transform switches to its limit forms.
inline constexpr double kSingularAngleEps = 1e-3;
inline constexpr double kFrftNormGuard = 1e-3;

struct FrFTResult {
  Grid1D grid;
  std::vector<cplx> amplitudes;
  double angle = 0.0;
  double norm_deficit = 0.0;  // |1 - norm| before renormalization

  std::vector<double> density() const;
};

/// psi(X, theta) = (2 pi i sin)^-1/2 int exp[(i/2)(cot (y^2 + X^2) - 2 X y / sin)] psi(y) dy,
/// by direct quadrature on psi's grid. Angles whose kernel phase advances by
/// more than pi per sample are split as (theta - pi/2) then pi/2, which agrees
/// up to a global phase. Near sin(theta) = 0 the limits
/// psi(X) (theta ~ 0) and psi(-X) (theta ~ pi) are used; both hold up to a
/// global phase. Output is renormalized; a norm deficit beyond 1e-3 is a
/// NumericGuard error (aliasing or a grid that misses the support).
FrFTResult fractional_fourier(const WaveFunction& psi, double theta,
                              std::optional<Grid1D> out = std::nullopt);

/// I(X) = int psi(y) exp(i cot y^2 / 2 - i X y / sin) dy without any prefactor.
/// Requires |sin(theta)| >= kSingularAngleEps.
std::vector<cplx> raw_kernel_integral(const WaveFunction& psi, double theta, const Grid1D& out);

/// w(X_i, theta_k) = |psi(X_i, theta_k)|^2.
OpticalTomogram optical_tomogram_quantum(const WaveFunction& psi, const Grid1D& x,
                                         const AngleGrid& angles);

/// Evaluator with exact axis slices |psi(+-X)|^2 and |psi~(+-X)|^2.
SymplecticEvaluator quantum_evaluator(const WaveFunction& psi, OpticalTomogram w);

/// W(q,p)/2pi by unclamped filtered backprojection; may be negative.
Reconstruction wigner_from_tomogram(const OpticalTomogram& w, const Grid1D& q, const Grid1D& p);

} // namespace tomo
