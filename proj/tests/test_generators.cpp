#include <cmath>
#include <random>

#include <doctest.h>

#include "fano/generators.hpp"
#include "support.hpp"

using namespace fano;

namespace {

double trace_row_defect(const Matrix& a) {
  double worst = 0.0;
  for (std::size_t j = 0; j < 5; ++j) {
    worst = std::max(worst, std::abs(a(0, j) + a(1, j) + a(2, j)));
  }
  return worst;
}

}  // namespace

TEST_CASE("population generator: pure decay at n_bar = 0") {
  SystemParams p;  // symmetric, gamma = 1, polarized, p = 0, delta = 0
  const GeneratorA a = build_population_generator(p);
  CHECK(a.m(0, 0) == -1.0);
  CHECK(a.m(2, 0) == 1.0);
  CHECK(a.m(1, 1) == -1.0);
  CHECK(a.m(2, 1) == 1.0);
  CHECK(a.m(3, 3) == -1.0);
  CHECK(a.m(4, 4) == -1.0);
  // No pump, no cross terms, no rotation.
  CHECK(a.m(0, 2) == 0.0);
  CHECK(a.m(1, 2) == 0.0);
  CHECK(a.m(2, 2) == 0.0);
  CHECK(a.m(3, 2) == 0.0);
  CHECK(a.m(0, 3) == 0.0);
  CHECK(a.m(3, 4) == 0.0);
  CHECK(a.m(4, 3) == 0.0);
}

TEST_CASE("population generator: weak-pump underdamped entries") {
  SystemParams p;
  p.n_bar = 0.06;
  p.delta = 10.0;
  const GeneratorA a = build_population_generator(p);
  CHECK(a.m(0, 2) == doctest::Approx(3.5809862195676450e-3).epsilon(1e-12));
  CHECK(a.m(0, 2) == doctest::Approx(0.06 * polarized_rate_ratio).epsilon(1e-15));
  CHECK(a.m(3, 4) == 10.0);
  CHECK(a.m(4, 3) == -10.0);
  CHECK(a.m(3, 3) == a.m(4, 4));
}

TEST_CASE("population generator: trace conservation over random parameters") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const GeneratorA a = build_population_generator(test::random_params(rng));
    CHECK(trace_row_defect(a.m) <= 1e-14 * a.m.max_abs());
  }
}

TEST_CASE("population generator: a<->b exchange symmetry for symmetric rates") {
  SystemParams p;
  p.n_bar = 3.0;
  p.p = 0.4;
  p.delta = 2.0;
  const GeneratorA a = build_population_generator(p);
  const std::size_t perm[5] = {1, 0, 2, 3, 4};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(a.m(i, j) == doctest::Approx(a.m(perm[i], perm[j])).epsilon(1e-15));
    }
  }
}

TEST_CASE("population generator: modes coincide when the pump is off") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    SystemParams p = test::random_params(rng);
    p.n_bar = 0.0;
    SystemParams q = p;
    p.field_mode = FieldMode::PolarizedAnisotropic;
    q.field_mode = FieldMode::Isotropic;
    const GeneratorA ap = build_population_generator(p);
    const GeneratorA ai = build_population_generator(q);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) CHECK(ap.m(i, j) == ai.m(i, j));
    }
  }
}

TEST_CASE("population generator: isotropic p=0 decouples the coherence block") {
  SystemParams p;
  p.n_bar = 7.0;
  p.p = 0.0;
  p.delta = 0.5;
  p.field_mode = FieldMode::Isotropic;
  const GeneratorA a = build_population_generator(p);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.m(i, 3) == 0.0);
    CHECK(a.m(i, 4) == 0.0);
    CHECK(a.m(3, i) == 0.0);
    CHECK(a.m(4, i) == 0.0);
  }
}

TEST_CASE("optical generator: pure isotropic damping") {
  SystemParams p;  // n_bar = 0, omega = 0, gamma = 1
  const GeneratorC c = build_optical_generator(p);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(c.m(i, j) == (i == j ? -0.5 : 0.0));
    }
  }
}

TEST_CASE("optical generator: printed element values") {
  SystemParams p;
  p.n_bar = 1.0;
  p.delta = 0.0;
  p.omega_ac = 5.0;
  p.omega_bc = 5.0;
  const GeneratorC c = build_optical_generator(p);
  CHECK(c.m(0, 0) == doctest::Approx(-(1.5 * polarized_rate_ratio + 0.5)).epsilon(1e-15));
  CHECK(c.m(0, 0) == doctest::Approx(-0.58952465548919112).epsilon(1e-12));
  CHECK(c.m(1, 0) == -5.0);
  CHECK(c.m(0, 1) == 5.0);
  CHECK(c.m(3, 2) == 5.0);
  CHECK(c.m(2, 3) == -5.0);
  CHECK(c.m(0, 0) == c.m(1, 1));
  CHECK(c.m(2, 2) == c.m(3, 3));
  // Cross couplings sit on (0,2), (1,3), (2,0), (3,1) only.
  CHECK(c.m(0, 3) == 0.0);
  CHECK(c.m(1, 2) == 0.0);
  CHECK(c.m(2, 1) == 0.0);
  CHECK(c.m(3, 0) == 0.0);
}

TEST_CASE("optical generator: asymmetric damping entries") {
  SystemParams p;
  p.gamma_a_iso = 2.0;
  p.gamma_b_iso = 0.5;
  p.delta = 0.0;
  p.n_bar = 4.0;
  p.p = -0.3;
  const DerivedRates r = derive_rates(p);
  const GeneratorC c = build_optical_generator(p, r);
  CHECK(c.m(0, 0) ==
        doctest::Approx(-(4.0 * (r.gamma_a_pol + 0.5 * r.gamma_b_pol) + 1.0)).epsilon(1e-15));
  CHECK(c.m(2, 2) ==
        doctest::Approx(-(4.0 * (r.gamma_b_pol + 0.5 * r.gamma_a_pol) + 0.25)).epsilon(1e-15));
  CHECK(c.m(0, 2) == doctest::Approx(-0.5 * r.cross_total()).epsilon(1e-15));
  CHECK(c.m(0, 2) == c.m(1, 3));
  CHECK(c.m(0, 2) == c.m(2, 0));
  CHECK(c.m(0, 2) == c.m(3, 1));
}
