#include "tomokit/entropy.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "tomokit/error.hpp"
#include "tomokit/probkit.hpp"

namespace tomo::entropy {
namespace {

constexpr double kPi = std::numbers::pi;

void check_order(double q) {
  if (!(q > 0.0)) throw InvalidInput("Renyi entropy: order q must be positive");
  if (std::abs(q - 1.0) <= 1e-9) {
    throw InvalidInput("Renyi entropy: q = 1 is the Shannon limit; use the Shannon entropy");
  }
}

void check_discrete(std::span<const double> p, double tol) {
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw InvalidInput("discrete entropy: negative or NaN probability");
    total += v;
  }
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream msg;
    msg << "discrete entropy: probabilities sum to " << total;
    throw InvalidInput(msg.str());
  }
}

void check_density(std::span<const double> density, double dx, double tol) {
  std::vector<double> pos(density.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = std::max(density[i], 0.0);
  const double total = trapezoid(pos, dx);
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream msg;
    msg << "continuous entropy: density integrates to " << total;
    throw InvalidInput(msg.str());
  }
}

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

} // namespace

std::string to_string(EntropyKind kind) {
  switch (kind) {
    case EntropyKind::shannon_discrete: return "shannon-discrete";
    case EntropyKind::shannon_continuous: return "shannon-continuous";
    case EntropyKind::renyi: return "renyi";
    case EntropyKind::von_neumann: return "von-neumann";
    case EntropyKind::quantum_renyi: return "quantum-renyi";
    case EntropyKind::symplectic: return "symplectic";
    case EntropyKind::optical: return "optical";
    case EntropyKind::modified: return "modified";
  }
  return "unknown";
}

InequalityVerdict make_verdict(std::string name, double lhs, double rhs, double tol) {
  const double slack = lhs - rhs;
  return {std::move(name), lhs, rhs, slack, tol, slack >= -tol};
}

nlohmann::json to_json(const InequalityVerdict& v) {
  return {{"inequality", v.inequality}, {"lhs", v.lhs},   {"rhs", v.rhs},
          {"slack", v.slack},           {"holds", v.holds}, {"tol", v.tol}};
}

double hirschman_bound() { return std::log(kPi * std::numbers::e); }

double shannon_discrete(std::span<const double> p, double tol) {
  check_discrete(p, tol);
  return probkit::plogp_sum(p);
}

double renyi_discrete(std::span<const double> p, double q, double tol) {
  check_order(q);
  check_discrete(p, tol);
  double s = 0.0;
  for (double v : p) {
    if (v > 0.0) s += std::pow(v, q);
  }
  return std::log(s) / (1.0 - q);
}

double shannon_continuous(std::span<const double> density, double dx, double tol) {
  check_density(density, dx, tol);
  std::vector<double> integrand(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) integrand[i] = -xlogx(density[i]);
  return trapezoid(integrand, dx);
}

double renyi_continuous(std::span<const double> density, double dx, double q, double tol) {
  check_order(q);
  check_density(density, dx, tol);
  std::vector<double> integrand(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) {
    integrand[i] = density[i] > 0.0 ? std::pow(density[i], q) : 0.0;
  }
  return std::log(trapezoid(integrand, dx)) / (1.0 - q);
}

double von_neumann(const DensityMatrix& rho) {
  double s = 0.0;
  for (double l : rho.eigenvalues()) {
    if (l < -1e-10) throw InvalidInput("von_neumann: eigenvalue " + std::to_string(l) + " below -1e-10");
    s -= xlogx(l);
  }
  return s;
}

double quantum_renyi(const DensityMatrix& rho, double q) {
  check_order(q);
  double tr = 0.0;
  for (double l : rho.eigenvalues()) {
    if (l < -1e-10) throw InvalidInput("quantum_renyi: eigenvalue " + std::to_string(l) + " below -1e-10");
    if (l > 0.0) tr += std::pow(l, q);
  }
  return std::log(tr) / (1.0 - q);
}

double symplectic_entropy(const SymplecticEvaluator& m, double mu, double nu) {
  const double r = std::hypot(mu, nu);
  if (r == 0.0) throw InvalidInput("symplectic_entropy: (mu, nu) = (0, 0) is singular");
  // The slice spreads over r * [-L, L]; sample it on a doubled grid there.
  const Grid1D& base = m.tomogram().x();
  const Grid1D x(r * base.half_width(), 2 * base.size() - 1);
  std::vector<double> slice(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) slice[i] = m(x.at(i), mu, nu);
  return shannon_continuous(slice, x.step());
}

std::vector<double> optical_entropy_profile(const OpticalTomogram& w) {
  std::vector<double> s(w.angles().size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = shannon_continuous(w.slice(k), w.x().step());
  return s;
}

ModifiedEntropy modified_entropy(std::span<const double> profile, const ParameterWeight& r) {
  validate_weight(r);
  ModifiedEntropy out;
  auto support_check = [&](std::size_t n) {
    if (profile.size() != n) {
      throw InvalidInput("modified_entropy: profile has " + std::to_string(profile.size()) +
                         " entries but the weight support has " + std::to_string(n));
    }
  };
  if (const auto* c = std::get_if<CircleWeight>(&r)) {
    support_check(c->density.size());
    const double dt = c->angles.step();
    for (std::size_t k = 0; k < profile.size(); ++k) {
      out.mean_conditional += c->density[k] * profile[k] * dt;
      out.weight_entropy -= xlogx(c->density[k]) * dt;
    }
  } else if (const auto* p = std::get_if<PlaneWeight>(&r)) {
    support_check(p->density.size());
    PhaseSpaceField rs{p->mu, p->nu, std::vector<double>(profile.size())};
    PhaseSpaceField rlr = rs;
    for (std::size_t n = 0; n < profile.size(); ++n) {
      rs.values[n] = p->density[n] * profile[n];
      rlr.values[n] = -xlogx(p->density[n]);
    }
    out.mean_conditional = rs.integral();
    out.weight_entropy = rlr.integral();
  } else {
    const auto& d = std::get<DiscreteWeight>(r);
    support_check(d.mass.size());
    for (std::size_t k = 0; k < profile.size(); ++k) {
      out.mean_conditional += d.mass[k] * profile[k];
      out.weight_entropy -= xlogx(d.mass[k]);
    }
  }
  out.total = out.mean_conditional + out.weight_entropy;
  return out;
}

double joint_entropy(const ModifiedOpticalTomogram& w) {
  const std::size_t nx = w.x.size();
  std::vector<double> integrand(nx);
  double s = 0.0;
  for (std::size_t k = 0; k < w.angles.size(); ++k) {
    for (std::size_t i = 0; i < nx; ++i) integrand[i] = -xlogx(w.values[k * nx + i]);
    s += trapezoid(integrand, w.x.step());
  }
  return s * w.angles.step();
}

InequalityVerdict check_theta_pair(const OpticalTomogram& w, double theta, double tol) {
  const std::size_t a = w.angles().nearest(theta);
  const std::size_t b = w.angles().nearest(theta + 0.5 * kPi);
  const double dx = w.x().step();
  const double lhs = shannon_continuous(w.slice(a), dx) + shannon_continuous(w.slice(b), dx);
  return make_verdict("theta-pair", lhs, hirschman_bound(), tol);
}

InequalityVerdict check_hirschman(const WaveFunction& psi, double tol) {
  const double dx = psi.grid().step();
  const double sx = shannon_continuous(psi.density(), dx);
  const auto mom = fractional_fourier(psi, 0.5 * kPi);
  const double sp = shannon_continuous(mom.density(), mom.grid.step());
  return make_verdict("hirschman", sx + sp, hirschman_bound(), tol);
}

InequalityVerdict check_universal(const OpticalTomogram& w, double rel_tol) {
  const auto profile = optical_entropy_profile(w);
  const double integral = std::accumulate(profile.begin(), profile.end(), 0.0) * w.angles().step();
  const double rhs = 2.0 * kPi * kPi * hirschman_bound();
  return make_verdict("universal", 2.0 * kPi * integral, rhs, rel_tol * rhs);
}

InequalityVerdict check_universal(const WaveFunction& psi, const Grid1D& x, const AngleGrid& angles,
                                  double rel_tol) {
  return check_universal(optical_tomogram_quantum(psi, x, angles), rel_tol);
}

double universal_integrand_literal(const WaveFunction& psi, double theta, const Grid1D& x) {
  const double s = std::abs(std::sin(theta));
  const auto I = raw_kernel_integral(psi, theta, x);
  std::vector<double> integrand(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mag = std::norm(I[i]);
    integrand[i] = mag > 0.0 ? -(mag / s) * std::log(mag / (2.0 * kPi * s)) : 0.0;
  }
  return trapezoid(integrand, x.step());
}

} // namespace tomo::entropy
