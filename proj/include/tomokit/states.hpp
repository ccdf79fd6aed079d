#pragma once

// State catalogue: wave functions on a grid, classical phase-space densities
// and qudit density matrices built from declarative descriptions.
//
// Quadrature convention q = (a + a^dag)/sqrt(2) with hbar = 1, so the vacuum
// has position variance 1/2. Spin bases run m = +j .. -j (index 0 is m = +j).

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "tomokit/grid.hpp"

namespace tomo {

using cplx = std::complex<double>;

struct FockParams {
  int n = 0;
};
struct CoherentParams {
  cplx alpha{0.0, 0.0};
};
struct CatParams {
  cplx alpha{0.0, 0.0};
  int sign = +1;
};
struct Gaussian2dParams {
  double q0 = 0.0;
  double p0 = 0.0;
  double sq = 1.0;
  double sp = 1.0;
};
struct MixedParams {
  int d = 2;
};
struct BasisParams {
  int d = 2;
  int index = 0;
};
struct RandomParams {
  int d = 2;
  std::uint64_t seed = 0;
};
struct Random2Params {
  int d1 = 2;
  int d2 = 2;
  std::uint64_t seed = 0;
};
struct BellParams {};

using StateParams = std::variant<FockParams, CoherentParams, CatParams, Gaussian2dParams, MixedParams,
                               BasisParams, RandomParams, Random2Params, BellParams>;

enum class StateKind { wave, phase_density, density_matrix };

StateKind kind_of(const StateParams& params);

/// Parses the state description JSON object; throws InvalidInput naming the problem.
StateParams parse_state_params(const nlohmann::json& j);
nlohmann::json to_json(const StateParams& params);

// Wave functions

class WaveFunction {
public:
  static constexpr double kNormTol = 1e-8;
  static constexpr double kTailTol = 1e-10;

  /// Validates the unit norm and tail containment invariants.
  WaveFunction(Grid1D grid, std::vector<cplx> amplitudes);

  const Grid1D& grid() const { return grid_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<double> density() const;

private:
  Grid1D grid_;
  std::vector<cplx> amp_;
};

/// Default grid for the catalogue: N = 1024, L = 8.
Grid1D default_wave_grid();

/// Normalized oscillator eigenfunctions psi_0 .. psi_nmax sampled at x,
/// by the normalized three-term recurrence.
std::vector<std::vector<double>> hermite_functions(int nmax, std::span<const double> x);

WaveFunction build_wavefunction(const StateParams& params, const Grid1D& grid);

// Phase-space fields

/// Samples on a (q, p) grid, q-major: values[i * p.size() + j] = f(q_i, p_j).
struct PhaseSpaceField {
  Grid1D q;
  Grid1D p;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * p.size() + j]; }
  double integral() const;
  double min() const;
};

/// Nonnegative field with unit integral.
class PhaseSpaceDensity {
public:
  static constexpr double kNormTol = 1e-6;

  explicit PhaseSpaceDensity(PhaseSpaceField field);

  const PhaseSpaceField& field() const { return field_; }
  const Grid1D& q() const { return field_.q; }
  const Grid1D& p() const { return field_.p; }
  double at(std::size_t i, std::size_t j) const { return field_.at(i, j); }

  /// Marginals int f dp (over q) and int f dq (over p).
  std::vector<double> q_marginal() const;
  std::vector<double> p_marginal() const;

private:
  PhaseSpaceField field_;
};

PhaseSpaceDensity build_phase_density(const Gaussian2dParams& params, const Grid1D& q,
                                      const Grid1D& p);

// Density matrices

using CMatrix = Eigen::MatrixXcd;

class DensityMatrix {
public:
  static constexpr double kTol = 1e-12;

  /// Validates Hermiticity, positivity and unit trace.
  explicit DensityMatrix(CMatrix rho);

  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const CMatrix& matrix() const { return rho_; }
  Eigen::VectorXd eigenvalues() const;

private:
  CMatrix rho_;
};

/// Ginibre-induced random state rho = G G^dag / tr(G G^dag).
DensityMatrix random_density_matrix(std::size_t d, std::uint64_t seed);

DensityMatrix build_density_matrix(const StateParams& params);

} // namespace tomo
