#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ptwell/errors.hpp"
#include "ptwell/model.hpp"

using namespace ptwell;
using doctest::Approx;

TEST_CASE("model params reject negative or non-finite input") {
  CHECK_THROWS_AS(ModelParams(-1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ModelParams(1.0, NAN), DomainError);
  CHECK_THROWS_AS(ModelParams(INFINITY, 0.0), DomainError);
  const ModelParams p(1.0, 1.0);
  CHECK(p.phi() == Approx(kPi / 4));
}

TEST_CASE("kappa and energy from (s, t)") {
  CHECK(kappa_from_st({1, 2}) == cplx(1, -2));
  CHECK(kappa_from_st({0, kPi / 2}) == cplx(0, -kPi / 2));
  CHECK(kappa_from_st({3, 0}) == cplx(3, 0));
  CHECK(energy_from_st({0, kPi / 2}) == Approx(2.4674011));
  CHECK(energy_from_st({1, 1}) == 0.0);
  CHECK(energy_from_st({1, 2}) == 3.0);
}

TEST_CASE("rotation examples") {
  auto r = sigma_tau_from_st({1, 2}, ModelParams(0, 0));
  CHECK(r.sigma == 2.0);
  CHECK(r.tau == 4.0);
  r = sigma_tau_from_st({1, 2}, ModelParams(0, 1));
  CHECK(r.sigma == -2.0);
  CHECK(r.tau == 6.0);
  r = sigma_tau_from_st({0, 1}, ModelParams(0, 0.5));
  CHECK(r.sigma == -1.0);
  CHECK(r.tau == 2.0);

  auto w = st_from_sigma_tau({2, 4}, ModelParams(0, 0));
  CHECK(w.in_quadrant);
  CHECK(w.wave.s == Approx(1));
  CHECK(w.wave.t == Approx(2));
  w = st_from_sigma_tau({-2, 6}, ModelParams(0, 1));
  CHECK(w.wave.s == Approx(1));
  CHECK(w.wave.t == Approx(2));
  w = st_from_sigma_tau({0, 2}, ModelParams(0, 0));
  CHECK(w.wave.s == 0.0);
  CHECK(w.wave.t == Approx(1));
  CHECK_FALSE(st_from_sigma_tau({-2, 1}, ModelParams(0, 0)).in_quadrant);

  CHECK(energy_from_sigma_tau({2, 4}, ModelParams(0, 0)) == Approx(3));
  CHECK(energy_from_sigma_tau({-2, 6}, ModelParams(0, 1)) == Approx(3));
  CHECK(energy_from_sigma_tau({0, 0}, ModelParams(0, 0.7)) == 0.0);
}

TEST_CASE("lattice examples") {
  CHECK(lattice_compose({0, 1, 1, 0.5}) == Approx(7 * kPi / 4));
  CHECK(lattice_compose({0, 1, 1, 0.0}) == Approx(3 * kPi / 2));
  CHECK(lattice_compose({2, -1, 1, 0.2}) == Approx(4.6 * kPi));

  auto idx = lattice_decompose(7 * kPi / 4);
  CHECK(idx.k == 0);
  CHECK(idx.p == 1);
  CHECK(idx.q == 1);
  CHECK(idx.xi == Approx(0.5));
  idx = lattice_decompose(3 * kPi / 2);
  CHECK(idx.k == 0);
  CHECK(idx.p == 1);
  CHECK(idx.q == -1);
  CHECK(idx.xi == 0.0);
  idx = lattice_decompose(4.6 * kPi);
  CHECK(idx.k == 2);
  CHECK(idx.p == -1);
  CHECK(idx.q == 1);
  CHECK(idx.xi == Approx(0.2));

  CHECK(omega_factor(1, 0) == 1.0);
  CHECK(omega_factor(-1, 2.0 / 3.0) == Approx(-2));
  CHECK(omega_factor(1, 0.5) == Approx(std::sqrt(2.0)));
}

TEST_CASE("st_from_energy lands on the hyperbola") {
  for (double Z : {0.0, 1e-8, 1.0, 50.0}) {
    for (double E : {-1e4, -3.0, -1e-9, 0.0, 2.5, 1e6}) {
      const WaveVector w = st_from_energy(E, Z);
      CHECK(w.s >= 0.0);
      CHECK(w.t >= 0.0);
      CHECK(energy_from_st(w) == Approx(E).epsilon(1e-12).scale(1.0));
      CHECK(2 * w.s * w.t == Approx(Z).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: rotation round trip and energy consistency") {
  for (int i = 0; i < 2000; ++i) {
    const WaveVector w{oracle::uniform(0, 20), oracle::uniform(0, 20)};
    const ModelParams p(1.0, oracle::uniform(-2, 2));
    const RotatedPoint r = sigma_tau_from_st(w, p);
    const QuadrantMapped back = st_from_sigma_tau(r, p);
    REQUIRE(std::abs(back.wave.s - w.s) <= 1e-12 * std::max(1.0, w.s + w.t));
    REQUIRE(std::abs(back.wave.t - w.t) <= 1e-12 * std::max(1.0, w.s + w.t));
    const double E = energy_from_st(w);
    const double scale = std::max(1.0, w.s * w.s + w.t * w.t);
    REQUIRE(std::abs(energy_from_sigma_tau(r, p) - E) <= 1e-12 * scale);
  }
}

TEST_CASE("property: lattice round trip") {
  for (int i = 0; i < 5000; ++i) {
    const double tau = oracle::uniform(-300, 300);
    const LatticeIndex idx = lattice_decompose(tau);
    REQUIRE(idx.xi >= 0.0);
    REQUIRE(idx.xi < 1.0 + 1e-12);
    REQUIRE(std::abs(lattice_compose(idx) - tau) <= 1e-12 * std::max(1.0, std::abs(tau)));
  }
}

TEST_CASE("property: Omega equals -1/sin(tau) on the lattice") {
  int cases = 0;
  for (long k = -5; k <= 50; ++k) {
    for (int p : {-1, 1}) {
      for (int q : {-1, 1}) {
        for (int j = 0; j < 10; ++j) {
          const double xi = oracle::uniform(0.0, 0.999);
          const double big_omega = omega_factor(p, xi);
          // Reference value of tau and its sine in extended precision.
          const oracle::ld tau = (2.0L * k + 1.0L) * oracle::kPiL + p * oracle::kPiL / 2.0L +
                                 q * oracle::kPiL * static_cast<oracle::ld>(xi) / 2.0L;
          const oracle::ld reference = -1.0L / std::sin(tau);
          REQUIRE(std::abs(big_omega - static_cast<double>(reference)) <= 1e-12 * std::abs(big_omega));
          REQUIRE(std::abs(lattice_compose({k, p, q, xi}) - static_cast<double>(tau)) <=
                  1e-12 * std::max(1.0, std::abs(static_cast<double>(tau))));
          REQUIRE(std::abs(big_omega) >= 1.0);
          ++cases;
        }
      }
    }
  }
  CHECK(cases >= 1000);
}
