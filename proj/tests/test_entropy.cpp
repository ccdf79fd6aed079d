#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tomokit/entropy.hpp"
#include "tomokit/error.hpp"
#include "tomokit/probkit.hpp"

using namespace tomo;
using namespace tomo::entropy;
using oracle::kPi;

namespace {

OpticalTomogram quantum_w(const StateParams& s, std::size_t n_angles = 64, double phase = 0.5) {
  const Grid1D g = default_wave_grid();
  return optical_tomogram_quantum(build_wavefunction(s, g), g, AngleGrid(n_angles, phase));
}

std::vector<double> gaussian_samples(const Grid1D& g, double var) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    v[i] = std::exp(-g.at(i) * g.at(i) / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
  }
  return v;
}

} // namespace

TEST_CASE("Shannon discrete examples") {
  CHECK(shannon_discrete(std::vector<double>{0.5, 0.5}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(shannon_discrete(std::vector<double>{1.0, 0.0, 0.0}) == 0.0);
  CHECK(shannon_discrete(std::vector<double>(7, 1.0 / 7.0)) == doctest::Approx(std::log(7.0)).epsilon(1e-14));
  CHECK_THROWS_AS(shannon_discrete(std::vector<double>{0.5, 0.6}), InvalidInput);
  CHECK_THROWS_AS(shannon_discrete(std::vector<double>{1.2, -0.2}), InvalidInput);
}

TEST_CASE("Renyi discrete examples and properties") {
  for (double q : {0.3, 2.0, 7.5}) {
    CHECK(renyi_discrete(std::vector<double>(5, 0.2), q) == doctest::Approx(std::log(5.0)).epsilon(1e-14));
  }
  CHECK(renyi_discrete(std::vector<double>{0.75, 0.25}, 2.0) == doctest::Approx(std::log(8.0 / 5.0)).epsilon(1e-14));
  CHECK_THROWS_AS(renyi_discrete(std::vector<double>{0.5, 0.5}, 1.0), InvalidInput);
  CHECK_THROWS_AS(renyi_discrete(std::vector<double>{0.5, 0.5}, 0.0), InvalidInput);
  CHECK_THROWS_AS(renyi_discrete(std::vector<double>{0.5, 0.5}, -1.0), InvalidInput);

  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    const auto f = probkit::random_joint({6}, rng);
    const std::vector<double> p(f.values().begin(), f.values().end());
    const double s = shannon_discrete(p);
    double prev = 1e300;
    for (double q : {0.5, 0.9, 1.1, 2.0, 5.0}) {
      const double r = renyi_discrete(p, q);
      CHECK(r <= prev + 1e-12);
      prev = r;
    }
    const double lo = std::abs(renyi_discrete(p, 1.0 - 1e-4) - s);
    const double hi = std::abs(renyi_discrete(p, 1.0 + 1e-4) - s);
    CHECK(lo < 1e-3);
    CHECK(hi < 1e-3);
    // O(|q - 1|) convergence: a ten-times smaller offset shrinks the error about tenfold
    const double hi2 = std::abs(renyi_discrete(p, 1.0 + 1e-3) - s);
    CHECK(hi2 / hi == doctest::Approx(10.0).epsilon(0.05));
  }
}

TEST_CASE("continuous Shannon entropy") {
  const Grid1D g(12.0, 4001);
  CHECK(shannon_continuous(gaussian_samples(g, 0.5), g.step()) == doctest::Approx(oracle::half_ln_pi_e()).epsilon(1e-10));
  CHECK(shannon_continuous(gaussian_samples(g, 2.0), g.step()) ==
        doctest::Approx(0.5 * std::log(4.0 * kPi * std::numbers::e)).epsilon(1e-10));
  const Grid1D unit(0.5, 101);
  CHECK(std::abs(shannon_continuous(std::vector<double>(101, 1.0), unit.step())) < 1e-15);
  CHECK_THROWS_AS(shannon_continuous(std::vector<double>(101, 0.5), unit.step()), InvalidInput);
}

TEST_CASE("continuous Renyi entropy of a Gaussian") {
  const Grid1D g(12.0, 4001);
  const double var = 0.5;
  for (double q : {0.5, 2.0, 3.0}) {
    // Closed form: 1/2 ln(2 pi var) + ln(q) / (2 (q - 1))
    const double expect = 0.5 * std::log(2.0 * kPi * var) + std::log(q) / (2.0 * (q - 1.0));
    CHECK(renyi_continuous(gaussian_samples(g, var), g.step(), q) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("von Neumann and quantum Renyi entropies") {
  for (int d : {2, 3, 5}) {
    const auto rho = build_density_matrix(MixedParams{d});
    CHECK(von_neumann(rho) == doctest::Approx(std::log(d)).epsilon(1e-14));
    for (double q : {0.5, 2.0, 4.0}) CHECK(quantum_renyi(rho, q) == doctest::Approx(std::log(d)).epsilon(1e-13));
  }
  const auto pure = build_density_matrix(BasisParams{3, 1});
  CHECK(std::abs(von_neumann(pure)) < 1e-14);
  CHECK(std::abs(quantum_renyi(pure, 2.0)) < 1e-14);
  CMatrix diag = CMatrix::Zero(2, 2);
  diag(0, 0) = 0.75;
  diag(1, 1) = 0.25;
  CHECK(von_neumann(DensityMatrix(diag)) == doctest::Approx(shannon_discrete(std::vector<double>{0.75, 0.25})).epsilon(1e-14));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density_matrix(4, seed);
    const double s = von_neumann(rho);
    CHECK(std::abs(quantum_renyi(rho, 1.0 - 1e-4) - s) < 1e-3);
    CHECK(std::abs(quantum_renyi(rho, 1.0 + 1e-4) - s) < 1e-3);
  }
  CHECK_THROWS_AS(quantum_renyi(pure, 1.0), InvalidInput);
}

TEST_CASE("optical entropy profiles") {
  SUBCASE("vacuum and coherent are flat at 1/2 ln(pi e)") {
    for (const auto& s : {StateParams{FockParams{0}}, StateParams{CoherentParams{{1, 0.5}}}}) {
      for (double v : optical_entropy_profile(quantum_w(s))) {
        CHECK(std::abs(v - oracle::half_ln_pi_e()) < 5e-3);
      }
    }
  }
  SUBCASE("Fock 1 is flat at the quadrature oracle S1 > 1/2 ln(pi e)") {
    const double s1 = oracle::fock1_entropy();
    CHECK(s1 > oracle::half_ln_pi_e());
    for (double v : optical_entropy_profile(quantum_w(FockParams{1}))) CHECK(v == doctest::Approx(s1).epsilon(1e-4));
  }
  SUBCASE("parity S(theta) = S(theta + pi)") {
    const auto p = optical_entropy_profile(quantum_w(CatParams{{2, 0}, +1}));
    for (std::size_t k = 0; k < 32; ++k) CHECK(std::abs(p[k] - p[k + 32]) < 1e-6);
  }
}

TEST_CASE("symplectic entropy and additivity") {
  const Grid1D g = default_wave_grid();
  SUBCASE("ground state") {
    const auto psi = build_wavefunction(FockParams{0}, g);
    const auto m = quantum_evaluator(psi, optical_tomogram_quantum(psi, g, AngleGrid(64)));
    CHECK(symplectic_entropy(m, 1.0, 0.0) == doctest::Approx(oracle::half_ln_pi_e()).epsilon(1e-4));
    CHECK(symplectic_entropy(m, 3.0, 4.0) == doctest::Approx(oracle::half_ln_pi_e() + std::log(5.0)).epsilon(1e-4));
    CHECK(symplectic_entropy(m, 2.0, 0.0) - symplectic_entropy(m, 1.0, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-4));
    CHECK_THROWS_AS(symplectic_entropy(m, 0.0, 0.0), InvalidInput);
  }
  SUBCASE("cat and classical Gaussian obey S(l mu, l nu) = S(mu, nu) + ln|l|") {
    const auto cat = build_wavefunction(CatParams{{2, 0}, +1}, g);
    const auto mq = quantum_evaluator(cat, optical_tomogram_quantum(cat, g, AngleGrid(64)));
    const Grid1D pg(6.0, 256);
    const auto f = build_phase_density(Gaussian2dParams{0.5, -0.5, 0.8, 0.6}, pg, pg);
    const auto mc = classical_evaluator(f, optical_tomogram_classical(f, Grid1D(6.0 * std::numbers::sqrt2, 256), AngleGrid(64)));
    for (const auto* m : {&mq, &mc}) {
      for (auto [mu, nu] : {std::pair{1.0, 0.0}, std::pair{0.3, 0.8}, std::pair{-0.6, 0.5}}) {
        const double base = symplectic_entropy(*m, mu, nu);
        for (double lam : {0.5, 2.0, 3.0}) {
          CHECK(std::abs(symplectic_entropy(*m, lam * mu, lam * nu) - base - std::log(lam)) < 1e-3);
        }
      }
    }
  }
}

TEST_CASE("modified entropies and the chain rule") {
  SUBCASE("ground state with uniform R") {
    const auto w = quantum_w(FockParams{0});
    const auto r = uniform_circle(w.angles());
    const auto me = modified_entropy(optical_entropy_profile(w), r);
    const double expect = oracle::half_ln_pi_e() + std::log(2.0 * kPi);
    CHECK(me.total == doctest::Approx(expect).epsilon(1e-6));
    CHECK(me.weight_entropy == doctest::Approx(std::log(2.0 * kPi)).epsilon(1e-12));
    CHECK(joint_entropy(modify_optical(w, r)) == doctest::Approx(expect).epsilon(1e-6));
  }
  SUBCASE("discrete uniform weight over 4 angles") {
    const auto me = modified_entropy(std::vector<double>{1.0, 1.2, 0.9, 1.1}, uniform_discrete(4));
    CHECK(me.weight_entropy == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(me.mean_conditional == doctest::Approx(1.05).epsilon(1e-15));
  }
  SUBCASE("narrowing R lowers the weight entropy monotonically") {
    const auto w = quantum_w(CatParams{{2, 0}, -1}, 256);
    const auto profile = optical_entropy_profile(w);
    double prev = 1e300;
    for (double kappa : {1.0, 10.0, 100.0, 1000.0}) {
      const auto me = modified_entropy(profile, von_mises_circle(w.angles(), 0.7, kappa));
      CHECK(me.weight_entropy < prev);
      prev = me.weight_entropy;
    }
  }
  SUBCASE("joint entropy equals <S> + S_R for several states and weights") {
    for (const auto& s : {StateParams{FockParams{1}}, StateParams{CatParams{{2, 0}, +1}}}) {
      const auto w = quantum_w(s);
      const auto profile = optical_entropy_profile(w);
      for (const auto& r : {uniform_circle(w.angles()), von_mises_circle(w.angles(), 1.3, 3.0)}) {
        CHECK(std::abs(joint_entropy(modify_optical(w, r)) - modified_entropy(profile, r).total) < 1e-3);
      }
    }
  }
  SUBCASE("support mismatch") {
    CHECK_THROWS_AS(modified_entropy(std::vector<double>{1.0, 2.0}, uniform_discrete(3)), InvalidInput);
  }
}

TEST_CASE("Hirschman inequality") {
  const Grid1D g = default_wave_grid();
  CHECK(std::abs(check_hirschman(build_wavefunction(FockParams{0}, g)).slack) < 5e-3);
  CHECK(std::abs(check_hirschman(build_wavefunction(CoherentParams{{1, 0}}, g)).slack) < 5e-3);
  for (int n : {1, 2}) CHECK(check_hirschman(build_wavefunction(FockParams{n}, g)).slack > 1e-2);
  const auto cat = check_hirschman(build_wavefunction(CatParams{{2, 0}, +1}, g));
  const double sx = oracle::entropy_richardson([](double x) { return oracle::cat_position_density(2, +1, x); });
  const double sp = oracle::entropy_richardson([](double p) { return oracle::cat_momentum_density(2, +1, p); });
  CHECK(cat.holds);
  CHECK(cat.slack > 1e-2);
  CHECK(cat.lhs == doctest::Approx(sx + sp).epsilon(1e-5));
}

TEST_CASE("theta-pair relation") {
  const double s1 = oracle::fock1_entropy();
  const auto w0 = quantum_w(FockParams{0});
  const auto w1 = quantum_w(FockParams{1});
  for (double th : {0.0, 0.4, 2.2, 5.0}) {
    CHECK(std::abs(check_theta_pair(w0, th).slack) < 5e-3);
    CHECK(check_theta_pair(w1, th).slack == doctest::Approx(2.0 * s1 - std::log(kPi * std::numbers::e)).epsilon(1e-4));
  }
  // On an unshifted grid theta = 0 reduces to the Hirschman relation.
  const auto cat = build_wavefunction(CatParams{{2, 0}, +1}, default_wave_grid());
  const auto wc = optical_tomogram_quantum(cat, default_wave_grid(), AngleGrid(64, 0.0));
  CHECK(check_theta_pair(wc, 0.0).lhs == doctest::Approx(check_hirschman(cat).lhs).epsilon(1e-10));
}

TEST_CASE("universal integral inequality") {
  const double rhs = 2.0 * kPi * kPi * std::log(kPi * std::numbers::e);
  const auto v0 = check_universal(quantum_w(FockParams{0}));
  CHECK(v0.rhs == doctest::Approx(rhs).epsilon(1e-15));
  CHECK(std::abs(v0.lhs - rhs) < 5e-3 * rhs);
  const auto v1 = check_universal(quantum_w(FockParams{1}));
  CHECK(v1.lhs / v1.rhs == doctest::Approx(oracle::fock1_entropy() / oracle::half_ln_pi_e()).epsilon(1e-4));
  const auto vc = check_universal(build_wavefunction(CatParams{{2, 0}, +1}, default_wave_grid()), default_wave_grid(), AngleGrid(64));
  CHECK(vc.holds);
  CHECK(vc.slack > 0.0);
}

TEST_CASE("literal universal integrand equals 2 pi S(theta)") {
  const Grid1D g = default_wave_grid();
  const auto psi = build_wavefunction(CatParams{{2, 0}, -1}, g);
  for (double th : {0.6, 1.0, 2.4, 4.0}) {
    const auto slice = fractional_fourier(psi, th).density();
    const double s = shannon_continuous(slice, g.step());
    CHECK(universal_integrand_literal(psi, th, g) == doctest::Approx(2.0 * kPi * s).epsilon(1e-6));
  }
}

TEST_CASE("verdict semantics") {
  const auto v = make_verdict("x", 1.0, 1.004, 5e-3);
  CHECK(v.holds);
  CHECK(v.slack == doctest::Approx(-0.004));
  CHECK_FALSE(make_verdict("x", 1.0, 1.006, 5e-3).holds);
  const auto j = to_json(v);
  CHECK(j.at("holds") == true);
  CHECK(j.at("inequality") == "x");
  CHECK(to_string(EntropyKind::quantum_renyi) == "quantum-renyi");
}
