#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tomokit/error.hpp"
#include "tomokit/radon.hpp"

using namespace tomo;

namespace {

constexpr double kPi = std::numbers::pi;
const double kS = 1.0 / std::numbers::sqrt2;

PhaseSpaceDensity gaussian(double q0, double p0, double sq, double sp, double half = 6.0,
                           std::size_t n = 256) {
  const Grid1D g(half, n);
  return build_phase_density(Gaussian2dParams{q0, p0, sq, sp}, g, g);
}

Grid1D x_grid_for(const PhaseSpaceDensity& f, std::size_t n = 256) {
  return Grid1D(std::numbers::sqrt2 * f.q().half_width(), n);
}

double slice_mean(const OpticalTomogram& w, std::size_t k, int power = 1) {
  double m = 0.0;
  const auto s = w.slice(k);
  std::vector<double> integrand(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) integrand[i] = s[i] * std::pow(w.x().at(i), power);
  m = trapezoid(integrand, w.x().step());
  return m;
}

// Analytic Gaussian density evaluated at a node.
double gauss2(double q, double p, double q0, double p0, double sq, double sp) {
  const double a = (q - q0) / sq;
  const double b = (p - p0) / sp;
  return std::exp(-0.5 * (a * a + b * b)) / (2.0 * kPi * sq * sp);
}

} // namespace

TEST_CASE("isotropic Gaussian has the rotation-invariant tomogram e^{-X^2}/sqrt(pi)") {
  const auto f = gaussian(0, 0, kS, kS);
  const auto w = optical_tomogram_classical(f, x_grid_for(f), AngleGrid(64));
  double worst = 0.0;
  for (std::size_t k = 0; k < 64; ++k) {
    for (std::size_t i = 0; i < w.x().size(); ++i) {
      const double X = w.x().at(i);
      worst = std::max(worst, std::abs(w.at(i, k) - std::exp(-X * X) / std::sqrt(kPi)));
    }
    CHECK(trapezoid(w.slice(k), w.x().step()) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(worst < 5e-4);
  CHECK(w.max_input_deficit() < 1e-3);
}

TEST_CASE("shifted Gaussian slice mean follows 2 cos(theta)") {
  const auto f = gaussian(2, 0, kS, kS, 7.0, 256);
  const AngleGrid ag(32);
  const auto w = optical_tomogram_classical(f, x_grid_for(f), ag);
  for (std::size_t k = 0; k < ag.size(); ++k) {
    CHECK(slice_mean(w, k) == doctest::Approx(2.0 * std::cos(ag.at(k))).scale(1.0).epsilon(1e-4));
  }
}

TEST_CASE("the slice nearest theta = 0 approximates the q marginal") {
  const auto f = gaussian(0.5, -0.3, 1.0, 0.6, 6.0, 256);
  const AngleGrid ag(720);
  const auto w = optical_tomogram_classical(f, x_grid_for(f, 512), ag);
  const double s = std::sin(ag.at(0));
  for (std::size_t i = 0; i < w.x().size(); i += 9) {
    const double X = w.x().at(i);
    const double expect = std::exp(-0.5 * (X - 0.5) * (X - 0.5)) / std::sqrt(2.0 * kPi);
    CHECK(w.at(i, 0) == doctest::Approx(expect).scale(1.0).epsilon(2e-3 + 2.0 * s));
  }
}

TEST_CASE("coverage violation is a hard error") {
  const auto f = gaussian(0, 0, 1.0, 1.0, 6.0, 128);
  CHECK_THROWS_AS(optical_tomogram_classical(f, Grid1D(2.0, 128), AngleGrid(16)), NumericGuard);
}

TEST_CASE("OpticalTomogram validates input") {
  const Grid1D x(4.0, 64);
  const AngleGrid ag(16);
  std::vector<double> v(64 * 16, 1.0 / 8.0);
  CHECK_NOTHROW(OpticalTomogram(x, ag, v));
  v[5] = -1e-3;
  CHECK_THROWS_AS(OpticalTomogram(x, ag, v), InvalidInput);
  std::vector<double> half(64 * 16, 0.5 / 8.0);
  CHECK_THROWS_AS(OpticalTomogram(x, ag, half), NumericGuard);
  CHECK_THROWS_AS(OpticalTomogram(x, ag, std::vector<double>(10, 0.0)), InvalidInput);
}

TEST_CASE("symplectic evaluator: reduction, homogeneity and closed form") {
  const auto f = gaussian(0.4, -0.2, kS, 0.9);
  const auto m = classical_evaluator(f, optical_tomogram_classical(f, x_grid_for(f), AngleGrid(128)));
  const auto& w = m.tomogram();

  SUBCASE("mu = cos, nu = sin reproduces the optical nodes") {
    for (std::size_t k = 0; k < 128; k += 7) {
      const double th = w.angles().at(k);
      for (std::size_t i = 0; i < w.x().size(); i += 13) {
        CHECK(m(w.x().at(i), std::cos(th), std::sin(th)) == doctest::Approx(w.at(i, k)).epsilon(1e-10).scale(1e-12));
      }
    }
  }
  SUBCASE("homogeneity M(lX, lmu, lnu) = M / |l|") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int t = 0; t < 200; ++t) {
      const double X = u(rng);
      const double mu = u(rng);
      const double nu = u(rng);
      if (std::hypot(mu, nu) < 0.2) continue;
      for (double lam : {0.5, 2.0, 3.0, -2.0}) {
        CHECK(std::abs(m(lam * X, lam * mu, lam * nu) - m(X, mu, nu) / std::abs(lam)) < 1e-3);
      }
    }
  }
  SUBCASE("singular parameters") {
    CHECK_THROWS_AS(m(0.1, 0.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(symplectic_from_optical(m, 0.1, 0.0, 0.0), InvalidInput);
  }
}

TEST_CASE("isotropic Gaussian at mu = nu = 1") {
  const auto f = gaussian(0, 0, kS, kS);
  const auto m = classical_evaluator(f, optical_tomogram_classical(f, x_grid_for(f), AngleGrid(64)));
  for (double X : {-2.0, -0.7, 0.0, 0.3, 1.9}) {
    const double expect = std::exp(-X * X / 2.0) / std::sqrt(kPi) / std::numbers::sqrt2;
    CHECK(symplectic_from_optical(m, X, 1.0, 1.0) == doctest::Approx(expect).epsilon(1e-3).scale(1.0));
  }
}

TEST_CASE("tomogram moments") {
  SUBCASE("isotropic second moments") {
    const auto f = gaussian(0, 0, kS, kS);
    const auto m = classical_evaluator(f, optical_tomogram_classical(f, x_grid_for(f), AngleGrid(64)));
    const auto m0 = tomogram_moments(m, 0);
    CHECK(m0.q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m0.p == doctest::Approx(1.0).epsilon(1e-12));
    const auto m2 = tomogram_moments(m, 2);
    CHECK(m2.q == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(m2.p == doctest::Approx(0.5).epsilon(2e-3));
    CHECK_THROWS_AS(tomogram_moments(m, 5), InvalidInput);
    CHECK_THROWS_AS(tomogram_moments(m, -1), InvalidInput);
  }
  SUBCASE("shifted Gaussian first moments") {
    const auto f = gaussian(2, 0, kS, kS, 7.0, 256);
    const auto m = classical_evaluator(f, optical_tomogram_classical(f, x_grid_for(f), AngleGrid(64)));
    const auto m1 = tomogram_moments(m, 1);
    CHECK(m1.q == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(m1.p) < 1e-9);
  }
  SUBCASE("anisotropic widths sq = 1, sp = 2") {
    const Grid1D g(10.5, 256);
    const auto f = build_phase_density(Gaussian2dParams{0, 0, 1.0, 2.0}, g, g);
    const auto m = classical_evaluator(f, optical_tomogram_classical(f, x_grid_for(f), AngleGrid(64)));
    const auto m2 = tomogram_moments(m, 2);
    CHECK(m2.q == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(m2.p == doctest::Approx(4.0).epsilon(2e-3));
  }
}

TEST_CASE("parameter weights") {
  const AngleGrid ag(64);
  CHECK_NOTHROW(validate_weight(uniform_circle(ag)));
  CHECK_NOTHROW(validate_weight(von_mises_circle(ag, 1.0, 5.0)));
  CHECK_NOTHROW(validate_weight(uniform_discrete(4)));
  const Grid1D pl(4.0, 64);
  CHECK_NOTHROW(validate_weight(gaussian_plane(pl, pl)));
  CircleWeight bad = uniform_circle(ag);
  bad.density[3] *= 1.5;
  CHECK_THROWS_AS(validate_weight(bad), InvalidInput);
  CHECK_THROWS_AS(validate_weight(DiscreteWeight{{0.5, 0.6}}), InvalidInput);
  CHECK_THROWS_AS(validate_weight(DiscreteWeight{{1.5, -0.5}}), InvalidInput);
}

TEST_CASE("modified optical tomogram") {
  const auto f = gaussian(1.0, 0.5, kS, kS, 7.0, 256);
  const auto w = optical_tomogram_classical(f, x_grid_for(f), AngleGrid(128));

  SUBCASE("uniform R gives a unit joint with uniform theta marginal") {
    const auto W = modify_optical(w, uniform_circle(w.angles()));
    CHECK(W.total() == doctest::Approx(1.0).epsilon(1e-9));
    for (double v : W.theta_marginal()) CHECK(v == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-9));
    for (double v : W.values) CHECK(v >= 0.0);
  }
  SUBCASE("concentrated R conditions on theta_0") {
    const std::size_t k0 = 20;
    const auto W = modify_optical(w, von_mises_circle(w.angles(), w.angles().at(k0), 4000.0));
    const auto xm = W.x_marginal();
    double worst = 0.0;
    for (std::size_t i = 0; i < xm.size(); ++i) worst = std::max(worst, std::abs(xm[i] - w.at(i, k0)));
    CHECK(worst < 0.02);
  }
  SUBCASE("mismatched weight grid is rejected") {
    CHECK_THROWS_AS(modify_optical(w, uniform_circle(AngleGrid(64))), InvalidInput);
  }
}

TEST_CASE("ramp kernel basics") {
  const auto h = ramp_kernel(64, 0.1, 0.0);
  // Untapered ramp: h[0] = R^2 / (2 pi), h[odd] = -2 R^2 / (pi^3 n^2) with R = pi/dx.
  const double R = kPi / 0.1;
  CHECK(h[0] == doctest::Approx(R * R / (2.0 * kPi)).epsilon(1e-12));
  CHECK(h[1] == doctest::Approx(-2.0 * R * R / (kPi * kPi * kPi)).epsilon(1e-12));
  CHECK(std::abs(h[2]) < 1e-9 * h[0]);
  const auto ht = ramp_kernel(64, 0.1, 0.2);
  CHECK(ht[0] < h[0]);
}

TEST_CASE("inverse Radon round trips") {
  SUBCASE("isotropic Gaussian, relative L2 on |q|,|p| <= 3") {
    const auto f = gaussian(0, 0, kS, kS);
    const auto w = optical_tomogram_classical(f, x_grid_for(f), AngleGrid(180));
    const auto r = inverse_radon(w, f.q(), f.p());
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < f.q().size(); ++i) {
      for (std::size_t j = 0; j < f.p().size(); ++j) {
        const double q = f.q().at(i);
        const double p = f.p().at(j);
        if (std::abs(q) > 3.0 || std::abs(p) > 3.0) continue;
        const double e = std::exp(-q * q - p * p) / kPi;
        num += (r.field.at(i, j) - e) * (r.field.at(i, j) - e);
        den += e * e;
      }
    }
    CHECK(std::sqrt(num / den) < 0.02);
    CHECK(r.clamp_mass < 0.01);
    CHECK(r.field.integral() == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("shifted Gaussian peaks within one cell of (2, 0)") {
    const auto f = gaussian(2, 0, kS, kS, 7.0, 192);
    const auto w = optical_tomogram_classical(f, x_grid_for(f), AngleGrid(180));
    const auto r = inverse_radon(w, f.q(), f.p());
    const auto it = std::max_element(r.field.values.begin(), r.field.values.end());
    const auto idx = static_cast<std::size_t>(it - r.field.values.begin());
    CHECK(std::abs(f.q().at(idx / f.p().size()) - 2.0) <= f.q().step());
    CHECK(std::abs(f.p().at(idx % f.p().size())) <= f.p().step());
  }
  SUBCASE("anisotropic sq = 1, sp = 1/2: L-infinity below 2e-2") {
    const auto f = gaussian(0, 0, 1.0, 0.5, 6.0, 256);
    const auto w = optical_tomogram_classical(f, x_grid_for(f), AngleGrid(180));
    const auto r = inverse_radon(w, f.q(), f.p());
    double worst = 0.0;
    for (std::size_t i = 0; i < f.q().size(); ++i) {
      for (std::size_t j = 0; j < f.p().size(); ++j) {
        worst = std::max(worst, std::abs(r.field.at(i, j) - gauss2(f.q().at(i), f.p().at(j), 0, 0, 1.0, 0.5)));
      }
    }
    CHECK(worst < 2e-2);
  }
  SUBCASE("too few angles") {
    const auto f = gaussian(0, 0, kS, kS, 6.0, 64);
    const auto w = optical_tomogram_classical(f, x_grid_for(f, 64), AngleGrid(8));
    CHECK_THROWS_AS(inverse_radon(w, f.q(), f.p()), NumericGuard);
  }
}

TEST_CASE("Gaussian-modified symplectic tomogram") {
  const auto f = gaussian(0, 0, kS, kS, 6.0, 192);
  const Grid1D x(20.0, 1024);
  const Grid1D mu(4.0, 64);
  const auto mg = gaussian_modified_symplectic(f, x, mu, mu);

  SUBCASE("total integral is one") { CHECK(mg.total == doctest::Approx(1.0).epsilon(1e-3)); }

  SUBCASE("closed form for the isotropic Gaussian") {
    double worst = 0.0;
    for (std::size_t a = 0; a < mu.size(); a += 5) {
      for (std::size_t b = 0; b < mu.size(); b += 3) {
        const double r2 = mu.at(a) * mu.at(a) + mu.at(b) * mu.at(b);
        for (std::size_t i = 0; i < x.size(); i += 17) {
          const double X = x.at(i);
          const double expect = std::exp(-r2) / kPi * std::exp(-X * X / r2) / std::sqrt(kPi * r2);
          const double got = mg.values[(a * mu.size() + b) * x.size() + i];
          worst = std::max(worst, std::abs(got - expect) / (std::exp(-r2) / kPi / std::sqrt(kPi * r2)));
        }
      }
    }
    CHECK(worst < 5e-3);
  }

  SUBCASE("de-weighting near the origin recovers M") {
    const auto m = classical_evaluator(f, optical_tomogram_classical(f, Grid1D(std::hypot(6.0, 6.0), 384), AngleGrid(720)));
    const std::size_t a = 31;  // adjacent to the origin
    const std::size_t b = 32;
    const double r2 = mu.at(a) * mu.at(a) + mu.at(b) * mu.at(b);
    for (std::size_t i = 500; i < 524; ++i) {
      const double got = kPi * std::exp(r2) * mg.values[(a * mu.size() + b) * x.size() + i];
      CHECK(got == doctest::Approx(m(x.at(i), mu.at(a), mu.at(b))).epsilon(1e-6).scale(1e-9));
    }
  }

  SUBCASE("round trip L-infinity below 3e-2") {
    const Grid1D out(4.0, 97);
    const auto r = invert_gaussian_modified(mg, out, out);
    double worst = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < out.size(); ++j) {
        const double q = out.at(i);
        const double p = out.at(j);
        worst = std::max(worst, std::abs(r.field.at(i, j) - std::exp(-q * q - p * p) / kPi));
      }
    }
    CHECK(worst < 3e-2);
  }

  SUBCASE("grid guards") {
    CHECK_THROWS_AS(gaussian_modified_symplectic(f, x, Grid1D(3.0, 64), mu), NumericGuard);
    CHECK_THROWS_AS(gaussian_modified_symplectic(f, x, Grid1D(4.0, 65), Grid1D(4.0, 65)), InvalidInput);
    ModifiedSymplecticSamples wide = mg;
    wide.mu = Grid1D(5.0, 64);
    CHECK_THROWS_AS(optical_from_gaussian_modified(wide, Grid1D(6.0, 128), AngleGrid(32)), NumericGuard);
  }
}

TEST_CASE("Gaussian-modified round trip keeps a shifted peak in place") {
  const Grid1D g(6.0, 192);
  const auto f = build_phase_density(Gaussian2dParams{1.0, -0.5, kS, kS}, g, g);
  const auto mg = gaussian_modified_symplectic(f, Grid1D(24.0, 1024), Grid1D(4.0, 64), Grid1D(4.0, 64));
  const Grid1D out(4.0, 97);
  const auto r = invert_gaussian_modified(mg, out, out);
  const auto it = std::max_element(r.field.values.begin(), r.field.values.end());
  const auto idx = static_cast<std::size_t>(it - r.field.values.begin());
  CHECK(std::abs(out.at(idx / out.size()) - 1.0) <= out.step());
  CHECK(std::abs(out.at(idx % out.size()) + 0.5) <= out.step());
}

TEST_CASE("forward tomography is deterministic across runs") {
  const auto f = gaussian(0.3, 0.1, 0.8, 0.6, 6.0, 128);
  const auto a = optical_tomogram_classical(f, x_grid_for(f, 128), AngleGrid(32));
  const auto b = optical_tomogram_classical(f, x_grid_for(f, 128), AngleGrid(32));
  CHECK(a.values() == b.values());
}
