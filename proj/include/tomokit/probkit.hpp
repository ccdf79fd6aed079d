#pragma once

// Discrete probability core: conditional families P(a,b) that are normalized
// over a for every parameter value b ("no signaling"), joint distributions
// over up to three axes, marginals and (strong) subadditivity slacks.

#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace tomo::probkit {

inline constexpr double kNormTol = 1e-12;

/// Nonnegative table indexed by (a, b), row-major in a; every column sums to 1.
class ConditionalFamily {
public:
  /// Validates nonnegativity and column normalization within tol.
  ConditionalFamily(std::size_t n_a, std::size_t n_b, std::vector<double> values,
                    double tol = kNormTol);

  std::size_t n_a() const { return n_a_; }
  std::size_t n_b() const { return n_b_; }
  double operator()(std::size_t a, std::size_t b) const { return values_[a * n_b_ + b]; }
  std::span<const double> values() const { return values_; }

private:
  std::size_t n_a_;
  std::size_t n_b_;
  std::vector<double> values_;
};

/// The 2x2 family with columns (x, 1-x) and (y, 1-y).
ConditionalFamily two_by_two_family(double x, double y);

/// Normalized nonnegative table over 1..3 axes, row-major.
class JointDistribution {
public:
  JointDistribution(std::vector<std::size_t> shape, std::vector<double> values,
                    double tol = kNormTol);

  std::size_t rank() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::span<const double> values() const { return values_; }

  double operator()(std::size_t a, std::size_t b) const { return values_[a * shape_[1] + b]; }
  double operator()(std::size_t a, std::size_t b, std::size_t c) const {
    return values_[(a * shape_[1] + b) * shape_[2] + c];
  }

  /// Marginal over the listed axes (kept in the given order).
  JointDistribution marginal(std::initializer_list<std::size_t> keep) const;
  JointDistribution marginal(std::span<const std::size_t> keep) const;

  /// Axes reordered so that new axis i is old axis order[i].
  JointDistribution permuted(std::span<const std::size_t> order) const;

  /// Shannon entropy in nats, 0 ln 0 = 0.
  double entropy() const;

private:
  std::vector<std::size_t> shape_;
  std::vector<double> values_;
};

/// W[a,b] = P[a,b] w[b].
JointDistribution conditional_to_joint(const ConditionalFamily& family, std::span<const double> w);

struct ConditionalSplit {
  ConditionalFamily family;              // columns restricted to kept_columns
  std::vector<double> marginal;          // K[b] over all columns
  std::vector<std::size_t> kept_columns;
  std::vector<std::size_t> excluded_columns;  // K[b] == 0
};

/// P[a,b] = f[a,b] / K[b] with K[b] = sum_a f[a,b]; zero-mass columns are
/// excluded from the family and listed in excluded_columns.
ConditionalSplit joint_to_conditional(const JointDistribution& f);

/// (Pi1 over a, Pi2 over b).
std::pair<std::vector<double>, std::vector<double>> marginals(const JointDistribution& f);

struct NoSignalingReport {
  bool ok = false;
  std::size_t worst_column = 0;
  double worst_deficit = 0.0;  // 1 - column sum at the worst column
};

/// Checks max_b |sum_a P[a,b] - 1| <= tol on a raw row-major table.
NoSignalingReport verify_no_signaling(std::size_t n_a, std::size_t n_b,
                                      std::span<const double> table, double tol);

/// S(Pi1) + S(Pi2) - S(f) for a two-axis joint (the mutual information).
double subadditivity_slack(const JointDistribution& f);

/// S(f_ab) + S(f_bc) - S(f) - S(f_b) for a three-axis joint over (a, b, c).
double strong_subadditivity_slack(const JointDistribution& f);

/// Flat-Dirichlet draw over the simplex of the given shape.
JointDistribution random_joint(std::vector<std::size_t> shape, std::mt19937_64& rng);

/// -sum p ln p with 0 ln 0 = 0; no normalization check.
double plogp_sum(std::span<const double> p);

} // namespace tomo::probkit
