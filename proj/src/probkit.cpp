#include "tomokit/probkit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "tomokit/error.hpp"

namespace tomo::probkit {
namespace {

std::size_t product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

void require_nonnegative(std::span<const double> values, const char* who) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0)) {
      std::ostringstream msg;
      msg << who << ": negative or NaN entry " << values[i] << " at flat index " << i;
      throw InvalidInput(msg.str());
    }
  }
}

} // namespace

double plogp_sum(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) {
    if (v > 0.0) s -= v * std::log(v);
  }
  return s;
}

ConditionalFamily::ConditionalFamily(std::size_t n_a, std::size_t n_b, std::vector<double> values,
                                     double tol)
    : n_a_(n_a), n_b_(n_b), values_(std::move(values)) {
  if (n_a == 0 || n_b == 0 || values_.size() != n_a * n_b) {
    throw InvalidInput("ConditionalFamily: table size does not match " + std::to_string(n_a) +
                       "x" + std::to_string(n_b));
  }
  const auto report = verify_no_signaling(n_a, n_b, values_, tol);
  if (!report.ok) {
    std::ostringstream msg;
    msg << "ConditionalFamily: column " << report.worst_column << " violates no-signaling, deficit "
        << report.worst_deficit;
    throw InvalidInput(msg.str());
  }
}

ConditionalFamily two_by_two_family(double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw InvalidInput("two_by_two_family: x and y must lie in [0, 1]");
  }
  // rows a = 1, 2; columns b = 1, 2
  return ConditionalFamily(2, 2, {x, y, 1.0 - x, 1.0 - y});
}

JointDistribution::JointDistribution(std::vector<std::size_t> shape, std::vector<double> values,
                                     double tol)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (shape_.empty() || shape_.size() > 3) {
    throw InvalidInput("JointDistribution: rank must be 1, 2 or 3");
  }
  if (std::find(shape_.begin(), shape_.end(), std::size_t{0}) != shape_.end() ||
      product(shape_) != values_.size()) {
    throw InvalidInput("JointDistribution: shape does not match value count");
  }
  require_nonnegative(values_, "JointDistribution");
  const double total = std::accumulate(values_.begin(), values_.end(), 0.0);
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream msg;
    msg << "JointDistribution: total mass " << total << " deviates from 1 by " << total - 1.0;
    throw InvalidInput(msg.str());
  }
}

JointDistribution JointDistribution::marginal(std::initializer_list<std::size_t> keep) const {
  return marginal(std::span<const std::size_t>(keep.begin(), keep.size()));
}

JointDistribution JointDistribution::marginal(std::span<const std::size_t> keep) const {
  if (keep.empty() || keep.size() > rank()) throw InvalidInput("marginal: bad axis list");
  std::vector<std::size_t> out_shape;
  for (std::size_t ax : keep) {
    if (ax >= rank()) throw InvalidInput("marginal: axis out of range");
    out_shape.push_back(shape_[ax]);
  }
  std::vector<double> out(product(out_shape), 0.0);
  std::vector<std::size_t> idx(rank(), 0);
  for (double v : values_) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) flat = flat * out_shape[i] + idx[keep[i]];
    out[flat] += v;
    for (std::size_t ax = rank(); ax-- > 0;) {
      if (++idx[ax] < shape_[ax]) break;
      idx[ax] = 0;
    }
  }
  return JointDistribution(std::move(out_shape), std::move(out), 1e-9);
}

JointDistribution JointDistribution::permuted(std::span<const std::size_t> order) const {
  if (order.size() != rank()) throw InvalidInput("permuted: order must list every axis");
  std::vector<std::size_t> seen(rank(), 0);
  for (std::size_t ax : order) {
    if (ax >= rank() || seen[ax]++) throw InvalidInput("permuted: not a permutation");
  }
  return marginal(order);
}

double JointDistribution::entropy() const { return plogp_sum(values_); }

JointDistribution conditional_to_joint(const ConditionalFamily& family, std::span<const double> w) {
  if (w.size() != family.n_b()) {
    throw InvalidInput("conditional_to_joint: weight length " + std::to_string(w.size()) +
                       " does not match parameter axis " + std::to_string(family.n_b()));
  }
  require_nonnegative(w, "conditional_to_joint weight");
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(total - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "conditional_to_joint: weight not normalized, deficit " << 1.0 - total;
    throw InvalidInput(msg.str());
  }
  std::vector<double> out(family.n_a() * family.n_b());
  for (std::size_t a = 0; a < family.n_a(); ++a) {
    for (std::size_t b = 0; b < family.n_b(); ++b) out[a * family.n_b() + b] = family(a, b) * w[b];
  }
  return JointDistribution({family.n_a(), family.n_b()}, std::move(out), 1e-10);
}

ConditionalSplit joint_to_conditional(const JointDistribution& f) {
  if (f.rank() != 2) throw InvalidInput("joint_to_conditional: need a two-axis joint");
  const std::size_t na = f.shape()[0];
  const std::size_t nb = f.shape()[1];
  std::vector<double> k(nb, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) k[b] += f(a, b);
  }
  std::vector<std::size_t> kept;
  std::vector<std::size_t> excluded;
  for (std::size_t b = 0; b < nb; ++b) (k[b] > 0.0 ? kept : excluded).push_back(b);
  if (kept.empty()) throw InvalidInput("joint_to_conditional: every column has zero mass");

  std::vector<double> p(na * kept.size());
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t c = 0; c < kept.size(); ++c) p[a * kept.size() + c] = f(a, kept[c]) / k[kept[c]];
  }
  return ConditionalSplit{ConditionalFamily(na, kept.size(), std::move(p), 1e-10), std::move(k),
                          std::move(kept), std::move(excluded)};
}

std::pair<std::vector<double>, std::vector<double>> marginals(const JointDistribution& f) {
  if (f.rank() != 2) throw InvalidInput("marginals: need a two-axis joint");
  const auto pi1 = f.marginal({0});
  const auto pi2 = f.marginal({1});
  return {std::vector<double>(pi1.values().begin(), pi1.values().end()),
          std::vector<double>(pi2.values().begin(), pi2.values().end())};
}

NoSignalingReport verify_no_signaling(std::size_t n_a, std::size_t n_b,
                                      std::span<const double> table, double tol) {
  if (table.size() != n_a * n_b || n_a == 0 || n_b == 0) {
    throw InvalidInput("verify_no_signaling: table size mismatch");
  }
  require_nonnegative(table, "verify_no_signaling");
  NoSignalingReport report;
  double worst = -1.0;
  for (std::size_t b = 0; b < n_b; ++b) {
    double sum = 0.0;
    for (std::size_t a = 0; a < n_a; ++a) sum += table[a * n_b + b];
    const double deficit = 1.0 - sum;
    if (std::abs(deficit) > worst) {
      worst = std::abs(deficit);
      report.worst_column = b;
      report.worst_deficit = deficit;
    }
  }
  report.ok = worst <= tol;
  return report;
}

double subadditivity_slack(const JointDistribution& f) {
  if (f.rank() != 2) throw InvalidInput("subadditivity_slack: need a two-axis joint");
  return f.marginal({0}).entropy() + f.marginal({1}).entropy() - f.entropy();
}

double strong_subadditivity_slack(const JointDistribution& f) {
  if (f.rank() != 3) throw InvalidInput("strong_subadditivity_slack: need a three-axis joint");
  return f.marginal({0, 1}).entropy() + f.marginal({1, 2}).entropy() - f.entropy() -
         f.marginal({1}).entropy();
}

JointDistribution random_joint(std::vector<std::size_t> shape, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> v(product(shape));
  double total = 0.0;
  for (double& x : v) total += (x = expo(rng));
  for (double& x : v) x /= total;
  return JointDistribution(std::move(shape), std::move(v), 1e-10);
}

} // namespace tomo::probkit
