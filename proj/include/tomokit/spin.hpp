#pragma once

// Unitary spin tomography of qudits: w(m, u) = <m| u rho u^dag |m>, sampled
// over finite weighted sets of unitaries, and the Shannon (strong)
// subadditivity checks on the resulting modified tomograms.

#include <array>
#include <cstdint>
#include <vector>

#include "tomokit/entropy.hpp"
#include "tomokit/probkit.hpp"
#include "tomokit/states.hpp"

namespace tomo::spin {

enum class Provenance { haar, su2, explicit_matrix };

struct UnitarySample {
  CMatrix u;
  Provenance provenance = Provenance::explicit_matrix;
  std::uint64_t seed = 0;             // haar
  std::array<double, 3> axis{0, 0, 1};  // su2
};

inline constexpr double kUnitaryTol = 1e-12;

/// Wraps a caller-supplied matrix; throws unless u^dag u = I within 1e-12.
UnitarySample explicit_unitary(CMatrix u);

/// Diagonal of u rho u^dag. Throws on dimension mismatch or an imaginary part
/// beyond 1e-10.
std::vector<double> spin_tomogram(const DensityMatrix& rho, const UnitarySample& u);

/// Wigner small-d element d^j_{m1 m2}(beta); spins passed doubled (2j, 2m).
double wigner_small_d(int two_j, int two_m1, int two_m2, double beta);

/// u = D^j(phi, beta, 0)^dag where D rotates z to n (z-y-z Euler angles), so
/// w(m, u) is the distribution of the spin projection along n. Basis m = +j..-j.
UnitarySample su2_unitary(const std::array<double, 3>& n, int two_j);

/// QR of a complex Ginibre matrix with the R-diagonal phases divided out.
UnitarySample haar_unitary(std::size_t d, std::uint64_t seed);

/// Stable per-sample seed: splitmix64 of (seed, k).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k);

struct WeightedUnitarySet {
  std::vector<UnitarySample> samples;
  std::vector<double> weights;

  std::size_t size() const { return samples.size(); }
  /// Nonnegative weights summing to 1 within 1e-12, matching dimensions.
  void validate() const;
};

/// K Haar unitaries with seeds derive_seed(seed, k) and weights 1/K.
WeightedUnitarySet haar_set(std::size_t d, std::size_t count, std::uint64_t seed);

/// K directions on a Fibonacci sphere lattice with weights 1/K.
WeightedUnitarySet sphere_set(int two_j, std::size_t count);

/// rows[k][m] = w(m, u_k).
std::vector<std::vector<double>> spin_tomogram_rows(const DensityMatrix& rho,
                                                    const WeightedUnitarySet& set);

/// joint[m, k] = w(m, u_k) R(u_k).
probkit::JointDistribution modified_spin_tomogram(const std::vector<std::vector<double>>& rows,
                                                  const WeightedUnitarySet& r);

/// joint[m1, m2, k] = <m1 m2| u_k rho12 u_k^dag |m1 m2> R(u_k).
probkit::JointDistribution two_qudit_tomogram(const DensityMatrix& rho12, std::size_t d1,
                                              std::size_t d2, const WeightedUnitarySet& r);

inline constexpr double kSlackTol = 1e-12;

/// S(m) + S(k) >= S(m, k) on a joint over (m, k).
entropy::InequalityVerdict spin_subadditivity_check(const probkit::JointDistribution& joint);

/// S(m1, k) + S(m2, k) >= S(m1, m2, k) + S(k) on a joint over (m1, m2, k).
entropy::InequalityVerdict spin_ssa_check(const probkit::JointDistribution& joint);

} // namespace tomo::spin
