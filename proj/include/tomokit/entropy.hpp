#pragma once

// Entropies (nats) of discrete, continuous and quantum distributions, and the
// tomographic entropic inequalities checked against them.

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tomokit/qtomo.hpp"
#include "tomokit/radon.hpp"
#include "tomokit/states.hpp"

namespace tomo::entropy {

enum class EntropyKind {
  shannon_discrete,
  shannon_continuous,
  renyi,
  von_neumann,
  quantum_renyi,
  symplectic,
  optical,
  modified
};

std::string to_string(EntropyKind kind);

struct EntropyReport {
  double value = 0.0;
  EntropyKind kind = EntropyKind::shannon_discrete;
  nlohmann::json metadata = nlohmann::json::object();
};

/// holds <=> slack = lhs - rhs >= -tol
struct InequalityVerdict {
  std::string inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double tol = 0.0;
  bool holds = false;
};

InequalityVerdict make_verdict(std::string name, double lhs, double rhs, double tol);
nlohmann::json to_json(const InequalityVerdict& v);

inline constexpr double kPairTol = 5e-3;
inline constexpr double kUniversalRelTol = 5e-3;

/// ln(pi e), the Hirschman bound.
double hirschman_bound();

double shannon_discrete(std::span<const double> p, double tol = 1e-10);
/// (1 - q)^-1 ln sum p^q; q > 0 and |q - 1| > 1e-9.
double renyi_discrete(std::span<const double> p, double q, double tol = 1e-10);

/// -int p ln p dx by the trapezoidal rule, using max(p, 0).
double shannon_continuous(std::span<const double> density, double dx, double tol = 1e-6);
/// (1 - q)^-1 ln int p^q dx.
double renyi_continuous(std::span<const double> density, double dx, double q, double tol = 1e-6);

double von_neumann(const DensityMatrix& rho);
double quantum_renyi(const DensityMatrix& rho, double q);

/// Differential entropy of the (mu, nu) slice of the symplectic tomogram.
double symplectic_entropy(const SymplecticEvaluator& m, double mu, double nu);

/// S(theta_k) for every slice.
std::vector<double> optical_entropy_profile(const OpticalTomogram& w);

struct ModifiedEntropy {
  double total = 0.0;
  double mean_conditional = 0.0;  // int R S
  double weight_entropy = 0.0;    // -int R ln R
};

/// Profile must be sampled on the weight's support (angles, (mu, nu) grid or
/// point masses).
ModifiedEntropy modified_entropy(std::span<const double> profile, const ParameterWeight& r);

/// Joint differential entropy of W(X, theta) over both variables.
double joint_entropy(const ModifiedOpticalTomogram& w);

/// S(theta) + S(theta + pi/2) >= ln(pi e), nearest grid nodes.
InequalityVerdict check_theta_pair(const OpticalTomogram& w, double theta, double tol = kPairTol);

/// S[|psi|^2] + S[|psi~|^2] >= ln(pi e).
InequalityVerdict check_hirschman(const WaveFunction& psi, double tol = kPairTol);

/// 2 pi int_0^2pi S(theta) dtheta >= 2 pi^2 ln(pi e); tolerance relative to the bound.
InequalityVerdict check_universal(const OpticalTomogram& w, double rel_tol = kUniversalRelTol);
InequalityVerdict check_universal(const WaveFunction& psi, const Grid1D& x, const AngleGrid& angles,
                                  double rel_tol = kUniversalRelTol);

/// The universal-inequality integrand at one angle written with the raw kernel
/// integral I(X): -int |I|^2 / |sin| ln(|I|^2 / (2 pi |sin|)) dX. Equals
/// 2 pi S(theta) for normalized psi.
double universal_integrand_literal(const WaveFunction& psi, double theta, const Grid1D& x);

} // namespace tomo::entropy
