#include "tomokit/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "tomokit/error.hpp"

namespace tomo {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InvalidInput(std::string("state description: missing field '") + key + "'");
  return j.at(key);
}

int int_field(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("state description: '") + key + "' must be an integer");
  return v.get<int>();
}

double real_field(const nlohmann::json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) throw InvalidInput(std::string("state description: '") + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t seed_field(const nlohmann::json& j) {
  const auto& v = field(j, "seed");
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InvalidInput("state description: 'seed' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

cplx alpha_field(const nlohmann::json& j) {
  const auto& v = field(j, "alpha");
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw InvalidInput("state description: 'alpha' must be [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

int dim_field(const nlohmann::json& j, const char* key) {
  const int d = int_field(j, key);
  if (d < 2) throw InvalidInput(std::string("state description: '") + key + "' must be at least 2");
  return d;
}

// Exact position representation including the global phase -i Re(a) Im(a);
// with it <psi_{-a}|psi_a> = exp(-2|a|^2).
std::vector<cplx> coherent_samples(cplx alpha, std::span<const double> x) {
  const double q0 = std::numbers::sqrt2 * alpha.real();
  const double p0 = std::numbers::sqrt2 * alpha.imag();
  const double pref = std::pow(std::numbers::pi, -0.25);
  std::vector<cplx> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - q0;
    out[k] = pref * std::exp(cplx{-0.5 * dx * dx, p0 * x[k] - 0.5 * q0 * p0});
  }
  return out;
}

} // namespace

StateKind kind_of(const StateParams& params) {
  return std::visit(overloaded{
                        [](const FockParams&) { return StateKind::wave; },
                        [](const CoherentParams&) { return StateKind::wave; },
                        [](const CatParams&) { return StateKind::wave; },
                        [](const Gaussian2dParams&) { return StateKind::phase_density; },
                        [](const auto&) { return StateKind::density_matrix; },
                    },
                    params);
}

StateParams parse_state_params(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidInput("state description: expected a JSON object");
  const auto& t = field(j, "type");
  if (!t.is_string()) throw InvalidInput("state description: 'type' must be a string");
  const std::string type = t.get<std::string>();
  if (type == "fock") {
    const int n = int_field(j, "n");
    if (n < 0) throw InvalidInput("state description: fock 'n' must be nonnegative");
    return FockParams{n};
  }
  if (type == "coherent") return CoherentParams{alpha_field(j)};
  if (type == "cat") {
    const auto& s = field(j, "sign");
    if (!s.is_string() || (s != "+" && s != "-")) {
      throw InvalidInput("state description: cat 'sign' must be \"+\" or \"-\"");
    }
    return CatParams{alpha_field(j), s == "+" ? +1 : -1};
  }
  if (type == "gaussian2d") {
    Gaussian2dParams g{real_field(j, "q0"), real_field(j, "p0"), real_field(j, "sq"),
                     real_field(j, "sp")};
    if (!(g.sq > 0.0 && g.sp > 0.0)) throw InvalidInput("state description: gaussian2d widths must be positive");
    return g;
  }
  if (type == "mixed") return MixedParams{dim_field(j, "d")};
  if (type == "basis") {
    BasisParams b{dim_field(j, "d"), int_field(j, "index")};
    if (b.index < 0 || b.index >= b.d) throw InvalidInput("state description: basis 'index' out of range");
    return b;
  }
  if (type == "random") return RandomParams{dim_field(j, "d"), seed_field(j)};
  if (type == "random2") return Random2Params{dim_field(j, "d1"), dim_field(j, "d2"), seed_field(j)};
  if (type == "bell") return BellParams{};
  throw InvalidInput("state description: unknown type '" + type + "'");
}

nlohmann::json to_json(const StateParams& params) {
  using nlohmann::json;
  return std::visit(
      overloaded{
          [](const FockParams& s) { return json{{"type", "fock"}, {"n", s.n}}; },
          [](const CoherentParams& s) {
            return json{{"type", "coherent"}, {"alpha", {s.alpha.real(), s.alpha.imag()}}};
          },
          [](const CatParams& s) {
            return json{{"type", "cat"},
                        {"alpha", {s.alpha.real(), s.alpha.imag()}},
                        {"sign", s.sign > 0 ? "+" : "-"}};
          },
          [](const Gaussian2dParams& s) {
            return json{{"type", "gaussian2d"}, {"q0", s.q0}, {"p0", s.p0}, {"sq", s.sq}, {"sp", s.sp}};
          },
          [](const MixedParams& s) { return json{{"type", "mixed"}, {"d", s.d}}; },
          [](const BasisParams& s) { return json{{"type", "basis"}, {"d", s.d}, {"index", s.index}}; },
          [](const RandomParams& s) { return json{{"type", "random"}, {"d", s.d}, {"seed", s.seed}}; },
          [](const Random2Params& s) {
            return json{{"type", "random2"}, {"d1", s.d1}, {"d2", s.d2}, {"seed", s.seed}};
          },
          [](const BellParams&) { return json{{"type", "bell"}}; },
      },
      params);
}

// ---------------------------------------------------------------------------

WaveFunction::WaveFunction(Grid1D grid, std::vector<cplx> amplitudes)
    : grid_(grid), amp_(std::move(amplitudes)) {
  if (amp_.size() != grid_.size()) throw InvalidInput("WaveFunction: sample count does not match grid");
  const auto dens = density();
  const double norm = trapezoid(dens, grid_.step());
  if (std::abs(norm - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "WaveFunction: norm " << norm << " deviates from 1 beyond " << kNormTol;
    throw NumericGuard(msg.str());
  }
  if (dens.front() >= kTailTol || dens.back() >= kTailTol) {
    std::ostringstream msg;
    msg << "WaveFunction: tail containment violated, |psi(+-L)|^2 = " << dens.front() << ", "
        << dens.back() << " (increase the grid half width)";
    throw NumericGuard(msg.str());
  }
}

std::vector<double> WaveFunction::density() const {
  std::vector<double> d(amp_.size());
  for (std::size_t k = 0; k < amp_.size(); ++k) d[k] = std::norm(amp_[k]);
  return d;
}

Grid1D default_wave_grid() { return Grid1D(8.0, 1024); }

std::vector<std::vector<double>> hermite_functions(int nmax, std::span<const double> x) {
  std::vector<std::vector<double>> psi(static_cast<std::size_t>(nmax) + 1,
                                       std::vector<double>(x.size()));
  const double pref = std::pow(std::numbers::pi, -0.25);
  for (std::size_t k = 0; k < x.size(); ++k) psi[0][k] = pref * std::exp(-0.5 * x[k] * x[k]);
  if (nmax >= 1) {
    for (std::size_t k = 0; k < x.size(); ++k) psi[1][k] = std::numbers::sqrt2 * x[k] * psi[0][k];
  }
  for (int n = 1; n < nmax; ++n) {
    const double a = std::sqrt(2.0 / (n + 1));
    const double b = std::sqrt(static_cast<double>(n) / (n + 1));
    auto& next = psi[static_cast<std::size_t>(n) + 1];
    const auto& cur = psi[static_cast<std::size_t>(n)];
    const auto& prev = psi[static_cast<std::size_t>(n) - 1];
    for (std::size_t k = 0; k < x.size(); ++k) next[k] = a * x[k] * cur[k] - b * prev[k];
  }
  return psi;
}

WaveFunction build_wavefunction(const StateParams& params, const Grid1D& grid) {
  const auto x = grid.points();
  std::vector<cplx> amp;
  std::visit(overloaded{
                 [&](const FockParams& s) {
                   const auto psi = hermite_functions(s.n, x);
                   amp.assign(psi.back().begin(), psi.back().end());
                 },
                 [&](const CoherentParams& s) { amp = coherent_samples(s.alpha, x); },
                 [&](const CatParams& s) {
                   const double overlap = std::exp(-2.0 * std::norm(s.alpha));
                   const double norm2 = 2.0 * (1.0 + s.sign * overlap);
                   if (norm2 < 1e-12) throw InvalidInput("cat state: odd cat with alpha = 0 is null");
                   const auto plus = coherent_samples(s.alpha, x);
                   const auto minus = coherent_samples(-s.alpha, x);
                   const double c = 1.0 / std::sqrt(norm2);
                   amp.resize(x.size());
                   for (std::size_t k = 0; k < x.size(); ++k) {
                     amp[k] = c * (plus[k] + static_cast<double>(s.sign) * minus[k]);
                   }
                 },
                 [&](const auto&) {
                   throw InvalidInput("build_wavefunction: params does not describe a wave function");
                 },
             },
             params);
  return WaveFunction(grid, std::move(amp));
}

// ---------------------------------------------------------------------------

double PhaseSpaceField::integral() const {
  const std::size_t np = p.size();
  std::vector<double> rows(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    rows[i] = trapezoid(std::span<const double>(values.data() + i * np, np), p.step());
  }
  return trapezoid(rows, q.step());
}

double PhaseSpaceField::min() const { return *std::min_element(values.begin(), values.end()); }

PhaseSpaceDensity::PhaseSpaceDensity(PhaseSpaceField field) : field_(std::move(field)) {
  if (field_.values.size() != field_.q.size() * field_.p.size()) {
    throw InvalidInput("PhaseSpaceDensity: sample count does not match grids");
  }
  for (double v : field_.values) {
    if (!(v >= 0.0)) throw InvalidInput("PhaseSpaceDensity: negative or NaN sample");
  }
  const double total = field_.integral();
  if (std::abs(total - 1.0) > kNormTol) {
    std::ostringstream msg;
    msg << "PhaseSpaceDensity: integral " << total << " deviates from 1 beyond " << kNormTol;
    throw NumericGuard(msg.str());
  }
}

std::vector<double> PhaseSpaceDensity::q_marginal() const {
  const std::size_t np = p().size();
  std::vector<double> out(q().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = trapezoid(std::span<const double>(field_.values.data() + i * np, np), p().step());
  }
  return out;
}

std::vector<double> PhaseSpaceDensity::p_marginal() const {
  const std::size_t nq = q().size();
  const std::size_t np = p().size();
  std::vector<double> out(np);
  std::vector<double> col(nq);
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < nq; ++i) col[i] = field_.values[i * np + j];
    out[j] = trapezoid(col, q().step());
  }
  return out;
}

PhaseSpaceDensity build_phase_density(const Gaussian2dParams& params, const Grid1D& q,
                                      const Grid1D& p) {
  if (!(params.sq > 0.0 && params.sp > 0.0)) throw InvalidInput("gaussian2d: widths must be positive");
  auto covers = [](const Grid1D& g, double c, double s) {
    return g.front() <= c - 5.0 * s && -g.front() >= c + 5.0 * s;
  };
  if (!covers(q, params.q0, params.sq) || !covers(p, params.p0, params.sp)) {
    throw NumericGuard("gaussian2d: grids must contain +-5 sigma around the center");
  }
  PhaseSpaceField f{q, p, std::vector<double>(q.size() * p.size())};
  const double norm = 1.0 / (2.0 * std::numbers::pi * params.sq * params.sp);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double a = (q.at(i) - params.q0) / params.sq;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double b = (p.at(j) - params.p0) / params.sp;
      f.values[i * p.size() + j] = norm * std::exp(-0.5 * (a * a + b * b));
    }
  }
  const double total = f.integral();
  for (double& v : f.values) v /= total;
  return PhaseSpaceDensity(std::move(f));
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(CMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 2) {
    throw InvalidInput("DensityMatrix: need a square matrix of dimension >= 2");
  }
  const double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kTol) throw InvalidInput("DensityMatrix: not Hermitian (deviation " + std::to_string(herm) + ")");
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kTol) throw InvalidInput("DensityMatrix: trace deviates from 1");
  const double lo = eigenvalues().minCoeff();
  if (lo < -kTol) throw InvalidInput("DensityMatrix: negative eigenvalue " + std::to_string(lo));
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(rho_, Eigen::EigenvaluesOnly).eigenvalues();
}

DensityMatrix random_density_matrix(std::size_t d, std::uint64_t seed) {
  if (d < 2) throw InvalidInput("random_density_matrix: dimension must be at least 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = cplx{re, im};
    }
  }
  CMatrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

DensityMatrix build_density_matrix(const StateParams& params) {
  return std::visit(
      overloaded{
          [](const MixedParams& s) {
            const auto d = static_cast<Eigen::Index>(s.d);
            return DensityMatrix(CMatrix::Identity(d, d) / static_cast<double>(s.d));
          },
          [](const BasisParams& s) {
            const auto d = static_cast<Eigen::Index>(s.d);
            CMatrix rho = CMatrix::Zero(d, d);
            rho(s.index, s.index) = 1.0;
            return DensityMatrix(std::move(rho));
          },
          [](const RandomParams& s) { return random_density_matrix(static_cast<std::size_t>(s.d), s.seed); },
          [](const Random2Params& s) {
            return random_density_matrix(static_cast<std::size_t>(s.d1 * s.d2), s.seed);
          },
          [](const BellParams&) {
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
            v(0) = v(3) = 1.0 / std::numbers::sqrt2;
            return DensityMatrix(v * v.adjoint());
          },
          [](const auto&) -> DensityMatrix {
            throw InvalidInput("build_density_matrix: params does not describe a density matrix");
          },
      },
      params);
}

} // namespace tomo
