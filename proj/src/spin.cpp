#include "tomokit/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "tomokit/error.hpp"

namespace tomo::spin {
namespace {

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

void require_unitary(const CMatrix& u, const char* who) {
  if (u.rows() != u.cols() || u.rows() < 1) throw InvalidInput(std::string(who) + ": matrix must be square");
  const auto n = u.rows();
  const double dev = (u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (dev > kUnitaryTol) {
    std::ostringstream msg;
    msg << who << ": not unitary, |u^dag u - I| = " << dev;
    throw InvalidInput(msg.str());
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::vector<double> diagonal_probabilities(const CMatrix& m) {
  std::vector<double> w(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const cplx v = m(i, i);
    if (std::abs(v.imag()) > 1e-10) {
      throw NumericGuard("spin_tomogram: diagonal entry has imaginary part " +
                         std::to_string(v.imag()) + " (input not Hermitian)");
    }
    if (v.real() < -1e-12) throw NumericGuard("spin_tomogram: negative probability " + std::to_string(v.real()));
    w[static_cast<std::size_t>(i)] = std::max(v.real(), 0.0);
  }
  return w;
}

} // namespace

UnitarySample explicit_unitary(CMatrix u) {
  require_unitary(u, "explicit_unitary");
  return {std::move(u), Provenance::explicit_matrix};
}

std::vector<double> spin_tomogram(const DensityMatrix& rho, const UnitarySample& u) {
  if (static_cast<std::size_t>(u.u.rows()) != rho.dim()) {
    throw InvalidInput("spin_tomogram: unitary dimension " + std::to_string(u.u.rows()) +
                       " does not match state dimension " + std::to_string(rho.dim()));
  }
  return diagonal_probabilities(u.u * rho.matrix() * u.u.adjoint());
}

double wigner_small_d(int two_j, int two_m1, int two_m2, double beta) {
  // Integer quantities j+m1, j-m1, j+m2, j-m2.
  const int jp1 = (two_j + two_m1) / 2;
  const int jm1 = (two_j - two_m1) / 2;
  const int jp2 = (two_j + two_m2) / 2;
  const int jm2 = (two_j - two_m2) / 2;
  const int dm = (two_m1 - two_m2) / 2;  // m1 - m2
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double root = std::sqrt(factorial(jp1) * factorial(jm1) * factorial(jp2) * factorial(jm2));
  double sum = 0.0;
  for (int k = std::max(0, -dm); k <= std::min(jp2, jm1); ++k) {
    const double denom = factorial(jp2 - k) * factorial(k) * factorial(jm1 - k) * factorial(k + dm);
    const double sign = ((k + dm) % 2 == 0) ? 1.0 : -1.0;
    sum += sign / denom * std::pow(c, two_j - dm - 2 * k) *
           std::pow(s, 2 * k + dm);
  }
  return root * sum;
}

UnitarySample su2_unitary(const std::array<double, 3>& n, int two_j) {
  if (two_j < 1) throw InvalidInput("su2_unitary: spin must be at least 1/2");
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (std::abs(len - 1.0) > 1e-10) throw InvalidInput("su2_unitary: direction must be a unit vector");
  const double beta = std::acos(std::clamp(n[2], -1.0, 1.0));
  const double phi = std::atan2(n[1], n[0]);
  const int d = two_j + 1;
  CMatrix rot(d, d);
  for (int a = 0; a < d; ++a) {
    const int two_m1 = two_j - 2 * a;
    for (int b = 0; b < d; ++b) {
      const int two_m2 = two_j - 2 * b;
      rot(a, b) = std::polar(1.0, -0.5 * two_m1 * phi) * wigner_small_d(two_j, two_m1, two_m2, beta);
    }
  }
  UnitarySample out{rot.adjoint(), Provenance::su2, 0, n};
  const double dev = (out.u.adjoint() * out.u - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) throw NumericGuard("su2_unitary: rotation matrix lost unitarity");
  return out;
}

UnitarySample haar_unitary(std::size_t d, std::uint64_t seed) {
  if (d < 2) throw InvalidInput("haar_unitary: dimension must be at least 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(d);
  CMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = cplx{re, im};
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx rjj = r(j, j);
    q.col(j) *= rjj / std::abs(rjj);
  }
  return {std::move(q), Provenance::haar, seed};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  return splitmix64(splitmix64(seed) ^ (k + 0x632BE59BD9B4E019ull));
}

void WeightedUnitarySet::validate() const {
  if (samples.empty() || samples.size() != weights.size()) {
    throw InvalidInput("WeightedUnitarySet: samples and weights must be nonempty and of equal length");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidInput("WeightedUnitarySet: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidInput("WeightedUnitarySet: weights do not sum to 1");
  const auto d = samples.front().u.rows();
  for (const auto& s : samples) {
    if (s.u.rows() != d) throw InvalidInput("WeightedUnitarySet: mixed unitary dimensions");
  }
}

WeightedUnitarySet haar_set(std::size_t d, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw InvalidInput("haar_set: need at least one unitary");
  WeightedUnitarySet set;
  set.samples.reserve(count);
  for (std::size_t k = 0; k < count; ++k) set.samples.push_back(haar_unitary(d, derive_seed(seed, k)));
  set.weights.assign(count, 1.0 / static_cast<double>(count));
  return set;
}

WeightedUnitarySet sphere_set(int two_j, std::size_t count) {
  if (count == 0) throw InvalidInput("sphere_set: need at least one direction");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  WeightedUnitarySet set;
  for (std::size_t k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(count);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(k);
    set.samples.push_back(su2_unitary({rho * std::cos(phi), rho * std::sin(phi), z}, two_j));
  }
  set.weights.assign(count, 1.0 / static_cast<double>(count));
  return set;
}

std::vector<std::vector<double>> spin_tomogram_rows(const DensityMatrix& rho,
                                                    const WeightedUnitarySet& set) {
  std::vector<std::vector<double>> rows;
  rows.reserve(set.size());
  for (const auto& u : set.samples) rows.push_back(spin_tomogram(rho, u));
  return rows;
}

probkit::JointDistribution modified_spin_tomogram(const std::vector<std::vector<double>>& rows,
                                                  const WeightedUnitarySet& r) {
  r.validate();
  if (rows.size() != r.size()) throw InvalidInput("modified_spin_tomogram: rows do not match the unitary set");
  const std::size_t d = rows.front().size();
  std::vector<double> joint(d * rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != d) throw InvalidInput("modified_spin_tomogram: ragged tomogram rows");
    for (std::size_t m = 0; m < d; ++m) joint[m * rows.size() + k] = rows[k][m] * r.weights[k];
  }
  return probkit::JointDistribution({d, rows.size()}, std::move(joint), 1e-10);
}

probkit::JointDistribution two_qudit_tomogram(const DensityMatrix& rho12, std::size_t d1,
                                              std::size_t d2, const WeightedUnitarySet& r) {
  r.validate();
  if (d1 < 2 || d2 < 2 || d1 * d2 != rho12.dim()) {
    throw InvalidInput("two_qudit_tomogram: d1 * d2 must equal the state dimension");
  }
  const std::size_t k_count = r.size();
  std::vector<double> joint(d1 * d2 * k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    auto w = spin_tomogram(rho12, r.samples[k]);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (std::size_t m1 = 0; m1 < d1; ++m1) {
      for (std::size_t m2 = 0; m2 < d2; ++m2) {
        joint[(m1 * d2 + m2) * k_count + k] = w[m1 * d2 + m2] / total * r.weights[k];
      }
    }
  }
  return probkit::JointDistribution({d1, d2, k_count}, std::move(joint), 1e-10);
}

entropy::InequalityVerdict spin_subadditivity_check(const probkit::JointDistribution& joint) {
  const double rhs = joint.entropy();
  return entropy::make_verdict("subadditivity", rhs + probkit::subadditivity_slack(joint), rhs, kSlackTol);
}

entropy::InequalityVerdict spin_ssa_check(const probkit::JointDistribution& joint) {
  if (joint.rank() != 3) throw InvalidInput("spin_ssa_check: need a joint over (m1, m2, k)");
  // (m1, m2, k) -> (m1, k, m2): k becomes the shared middle axis.
  const std::array<std::size_t, 3> order{0, 2, 1};
  const auto f = joint.permuted(order);
  const double slack = probkit::strong_subadditivity_slack(f);
  const double rhs = f.entropy() + f.marginal({1}).entropy();
  return entropy::make_verdict("strong-subadditivity", rhs + slack, rhs, kSlackTol);
}

} // namespace tomo::spin
