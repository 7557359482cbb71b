#include <doctest.h>

#include <cmath>
#include <random>

#include "opuc/families.hpp"
#include "opuc/ladder.hpp"
#include "opuc/opuc_system.hpp"
#include "opuc/report.hpp"
#include "opuc/ladder.hpp"

using namespace opuc;

TEST_CASE("Lebesgue system from zero reflections") {
  std::vector<cplx> zeros(10, cplx(0.0));
  OPUCSystem s = build_from_phi0(zeros);
  for (int n = 0; n <= 10; ++n) {
    CHECK(s.kappa[n] == 1.0);
    CHECK(s.phi[n].degree() == n);
    CHECK(std::abs(s.phi[n].leading() - cplx(1.0)) == 0.0);
    for (int k = 0; k < n; ++k) CHECK(s.phi[n].coeff(k) == cplx(0.0));
  }
}

TEST_CASE("phi_1(0) = 1/sqrt(3) reproduces the circular Jacobi a=1 front") {
  std::vector<cplx> p0 = {cplx(1.0 / std::sqrt(3.0), 0.0)};
  OPUCSystem s = build_from_phi0(p0);
  CHECK(s.kappa[1] == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(s.phi[1].coeff(0).real() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(s.phi[1].coeff(1).real() == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("both recurrence forms hold on recurrence-built systems") {
  OPUCSystem s = random_reflection_system(2024, 30, 0.9);
  for (int n = 0; n + 1 <= s.N; ++n) {
    CHECK(rec1_residual(s, n) < 1e-12);
    CHECK(rec2_residual(s, n) < 1e-12);
  }
}

TEST_CASE("invalid reflection data is rejected") {
  std::vector<cplx> bad = {cplx(std::numeric_limits<double>::quiet_NaN(), 0.0)};
  CHECK_THROWS_AS((void)build_from_phi0(bad), InvalidReflectionData);
  CHECK_THROWS_AS((void)build_from_phi0(std::vector<cplx>{cplx(0.5)}, WeightSpec::lebesgue(), -1.0),
                  InvalidReflectionData);
}

TEST_CASE("three-term recurrence") {
  auto zs = sample_contour(16);
  OPUCSystem cj = cj_system(1.0, 4);
  CHECK(three_term_residual(cj, 1, zs) < 1e-12);

  OPUCSystem rnd = random_reflection_system(5, 30, 0.9);
  for (int n = 1; n <= 29; ++n) CHECK(three_term_residual(rnd, n, zs) < 1e-11);

  std::vector<cplx> zeros(5, cplx(0.0));
  OPUCSystem leb = build_from_phi0(zeros);
  CHECK_THROWS_AS((void)three_term_residual(leb, 2, zs), DegenerateReflection);
}

TEST_CASE("subleading coefficient from the reflection sum") {
  std::vector<cplx> zeros(5, cplx(0.0));
  OPUCSystem leb = build_from_phi0(zeros);
  CHECK(std::abs(subleading_from_sum(leb, 1)) == 0.0);

  OPUCSystem cj = cj_system(1.0, 5);
  const cplx expect = 2.0 * 1.0 / (2.0 + 1.0) * cj.kappa[2];  // n a/(n+a) kappa_n at n=2
  CHECK(std::abs(subleading_from_sum(cj, 2) - expect) < 1e-14 * std::abs(expect));
  CHECK(std::abs(cj.ell[2] - expect) < 1e-14 * std::abs(expect));

  OPUCSystem rnd = random_reflection_system(6, 8, 0.9);
  for (int n = 0; n + 1 <= 5; ++n) CHECK(kl_residual(rnd, n) < 1e-13);
  for (int n = 1; n <= 8; ++n) {
    const cplx via = subleading_from_sum(rnd, n);
    CHECK(std::abs(via - rnd.ell[n]) < 1e-12 * std::max(std::abs(rnd.ell[n]), rnd.kappa[n]));
  }
}

TEST_CASE("Christoffel-Darboux kernel") {
  std::vector<cplx> zeros(5, cplx(0.0));
  OPUCSystem leb = build_from_phi0(zeros);
  // at a = z = 0 the kernel collapses to |phi_0(0)|^2 = kappa_0^2 = 1 for
  // the Lebesgue system; the advertised "sum of ones" (n+1 = 4) appears at
  // coincident unimodular arguments
  CHECK(std::abs(cd_kernel(leb, 3, 0.0, 0.0) - cplx(1.0)) == 0.0);
  CHECK(std::abs(cd_kernel(leb, 3, 1.0, 1.0) - cplx(4.0)) == 0.0);

  OPUCSystem rnd = random_reflection_system(7, 13, 0.85);
  for (int n : {4, 8, 12}) {
    const cplx k2 = cd_kernel(rnd, n, 0.0, 0.0);
    CHECK(std::abs(k2 - rnd.kappa[n] * rnd.kappa[n]) <
          1e-12 * rnd.kappa[n] * rnd.kappa[n]);
  }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const cplx a = std::polar(0.9 * u(rng), 2.0 * M_PI * u(rng));
    const cplx z = std::polar(0.9 * u(rng), 2.0 * M_PI * u(rng));
    CHECK(cd_residual(rnd, 12, a, z) < 1e-11);
  }
  CHECK_THROWS_AS((void)cd_rhs(rnd, 3, cplx(1.0, 0.0), cplx(1.0, 0.0)),
                  PoleAtUnimodularProduct);
}

TEST_CASE("kappa is monotone and reflections stay inside the disk") {
  OPUCSystem rnd = random_reflection_system(8, 25, 0.9);
  for (int n = 0; n + 1 <= 25; ++n) CHECK(rnd.kappa[n + 1] >= rnd.kappa[n]);
  for (int n = 1; n <= 25; ++n) CHECK(std::abs(rnd.reflection(n)) < 1.0);
  for (int n = 0; n <= 25; ++n) CHECK(kappa_sum_residual(rnd, n) < 1e-12);
}

TEST_CASE("route equivalence for circular Jacobi a=1") {
  OPUCSystem closed = make_system("cj", {{"a", 1.0}}, 12, "closed");
  OPUCSystem rec = make_system("cj", {{"a", 1.0}}, 12, "recurrence");
  OPUCSystem mom = make_system("cj", {{"a", 1.0}}, 12, "moments");
  for (int n = 0; n <= 12; ++n) {
    const double scale = closed.phi[n].max_abs_coeff();
    CHECK((rec.phi[n] - closed.phi[n]).max_abs_coeff() / scale < 1e-10);
    CHECK((mom.phi[n] - closed.phi[n]).max_abs_coeff() / scale < 1e-10);
  }
}

TEST_CASE("closed-form families pass the engine invariants") {
  std::vector<OPUCSystem> systems;
  systems.push_back(cj_system(1.0, 10));
  systems.push_back(sz_system(1.0, 0.5, 10));
  systems.push_back(mb_system_toeplitz(1.0, 10).sys);
  systems.push_back(rs_system(QReal(0.5), 10));
  for (const auto& s : systems) {
    for (int n = 0; n + 1 <= s.N; ++n) {
      CHECK(rec1_residual(s, n) < 1e-11);
      CHECK(rec2_residual(s, n) < 1e-11);
      CHECK(kl_residual(s, n) < 1e-11);
    }
    for (int n = 0; n <= s.N; ++n) CHECK(kappa_sum_residual(s, n) < 1e-11);
    for (int n = 0; n <= s.N; ++n) {
      CHECK(std::abs(s.phi[n].leading() - cplx(s.kappa[n])) <= 1e-12 * s.kappa[n]);
      if (n >= 1)
        CHECK(std::abs(s.phi[n].coeff(n - 1) - s.ell[n]) <=
              1e-12 * std::max(std::abs(s.ell[n]), s.kappa[n]));
      CHECK(std::abs(s.phi[n].coeff(0) - s.phi0[n]) <= 1e-12 * s.kappa[n]);
    }
    auto zs = sample_contour(8);
    for (int n = 1; n + 1 <= s.N; ++n)
      if (!s.degenerate_at(n) && !s.degenerate_at(n + 1))
        CHECK(three_term_residual(s, n, zs) < 1e-11);
  }
}
