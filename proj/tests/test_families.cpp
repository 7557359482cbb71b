#include <doctest.h>

#include <cmath>

#include "opuc/families.hpp"
#include "opuc/ladder.hpp"
#include "opuc/moments.hpp"
#include "opuc/special_functions.hpp"

using namespace opuc;

// ---------------------------------------------------------------- circular Jacobi

TEST_CASE("circular Jacobi closed form, a = 1") {
  OPUCSystem s = cj_system(1.0, 10);
  CHECK(s.phi[1].coeff(0).real() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(s.phi[1].coeff(1).real() == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(s.kappa[1] == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-15));
  // phi_n(0)/kappa_n = a/(n+a): 1/2 at (a,n) = (1,1)
  CHECK(std::abs(s.reflection(1) - cplx(0.5)) < 1e-15);
  CHECK_THROWS_AS((void)cj_system(-0.5, 3), DomainError);
}

TEST_CASE("circular Jacobi differential recurrence (1-z) phi_n' = -n phi_n + sqrt(n(n+2a)) phi_{n-1}") {
  const double a = 1.0;
  OPUCSystem s = cj_system(a, 10);
  auto zs = sample_contour(16);
  for (int n = 1; n <= 10; ++n) {
    ComplexPoly d = derivative(s.phi[n]);
    for (cplx z : zs) {
      const cplx lhs = (1.0 - z) * d(z);
      const cplx rhs =
          -double(n) * s.phi[n](z) + std::sqrt(n * (n + 2.0 * a)) * s.phi[n - 1](z);
      CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("circular Jacobi reciprocal polynomials match the hypergeometric display") {
  const double a = 1.5;
  OPUCSystem s = cj_system(a, 8);
  for (int n = 1; n <= 8; ++n) {
    const double pref =
        pochhammer(a + 1.0, n) / std::sqrt(pochhammer(1.0, n) * pochhammer(2.0 * a + 1.0, n));
    for (cplx z : sample_contour(8)) {
      const cplx expect = pref * hyp2f1_terminating(n, a, -double(n) - a, z);
      CHECK(std::abs(s.phistar[n](z) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("circular Jacobi ladder and second-order equation") {
  const double a = 1.0;
  OPUCSystem s = cj_system(a, 10);
  auto zs = sample_contour(16);
  // A_1 = sqrt(3)/(1-z) at a = 1
  LadderPair p1 = cj_ladder(a, 1);
  for (cplx z : zs)
    CHECK(std::abs(p1.A(z) - std::sqrt(3.0) / (1.0 - z)) < 1e-14);
  for (int n = 1; n <= 10; ++n)
    CHECK(lowering_residual(s, cj_ladder(a, n), n, zs) < 1e-11);
  // phi_n'' + [(1-n-a)/z - (2a+1)/(1-z)] phi_n' + n(a+1)/(z(1-z)) phi_n = 0
  for (int n = 1; n <= 8; ++n) {
    ComplexPoly d1 = derivative(s.phi[n]);
    ComplexPoly d2 = derivative(d1);
    for (cplx z : zs) {
      const cplx t1 = d2(z);
      const cplx t2 = ((1.0 - n - a) / z - (2.0 * a + 1.0) / (1.0 - z)) * d1(z);
      const cplx t3 = n * (a + 1.0) / (z * (1.0 - z)) * s.phi[n](z);
      const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
      CHECK(std::abs(t1 + t2 + t3) <= 1e-10 * std::max(1.0, scale));
    }
  }
}

// ---------------------------------------------------------------- Szego

TEST_CASE("Szego map coefficients") {
  for (int n = 1; n <= 6; ++n) {
    const SzegoMapCoeffs m = sz_map_coeffs(1.0, 0.5, n);
    CHECK(std::abs(m.B - 0.5 * m.A) <= 1e-14 * m.A);
    CHECK(std::abs(m.D - (n + 1.5) / (2.0 * n) * m.C) <= 1e-14 * std::abs(m.C));
  }
}

TEST_CASE("Szego system closed form") {
  const double a = 1.0, b = 0.5;
  OPUCSystem s = sz_system(a, b, 9);
  // kappa_{2n} display vs constructed leading coefficient at (1, 0.5, 3)
  const int n = 3;
  const double expect = std::pow(2.0, -2.0 * n) * pochhammer(a + b + 1.0, 2 * n) /
                        std::sqrt(pochhammer(1.0, n) * pochhammer(a + b + 1.0, n) *
                                  pochhammer(a + 0.5, n) * pochhammer(b + 0.5, n));
  CHECK(s.kappa[2 * n] == doctest::Approx(expect).epsilon(1e-12));
  // remaining coefficient displays
  for (int m = 1; 2 * m <= 9; ++m) {
    const double k2m = s.kappa[2 * m];
    CHECK(std::abs(s.phi0[2 * m] - (a + b) / (2.0 * m + a + b) * k2m) < 1e-12 * k2m);
    CHECK(std::abs(s.ell[2 * m] - 2.0 * m * (a - b) / (2.0 * m + a + b) * k2m) < 1e-12 * k2m);
  }
  for (int m = 1; 2 * m - 1 <= 9; ++m) {
    const double ko = s.kappa[2 * m - 1];
    const double expect_ko =
        std::pow(2.0, 1.0 - 2.0 * m) * pochhammer(a + b + 1.0, 2 * m - 1) /
        std::sqrt(pochhammer(1.0, m - 1) * pochhammer(a + b + 1.0, m - 1) *
                  pochhammer(a + 0.5, m) * pochhammer(b + 0.5, m));
    CHECK(ko == doctest::Approx(expect_ko).epsilon(1e-12));
    CHECK(std::abs(s.phi0[2 * m - 1] - (a - b) / (2.0 * m + a + b - 1.0) * ko) < 1e-12 * ko);
    CHECK(std::abs(s.ell[2 * m - 1] - (2.0 * m - 1.0) * (a - b) / (2.0 * m + a + b - 1.0) * ko) <
          1e-12 * ko);
  }
}

TEST_CASE("Szego degenerate case a = b collapses odd polynomials") {
  OPUCSystem s = sz_system(0.75, 0.75, 8);
  for (int m = 1; 2 * m - 1 <= 8; ++m) {
    ComplexPoly shifted = shift_up(s.phi[2 * m - 2], 1);
    CHECK((s.phi[2 * m - 1] - shifted).max_abs_coeff() <=
          1e-13 * s.phi[2 * m - 1].max_abs_coeff());
  }
}

TEST_CASE("Szego three-term recurrences between parities") {
  const double a = 1.0, b = 0.5;
  OPUCSystem s = sz_system(a, b, 8);
  auto zs = sample_contour(12);
  for (int n = 2; 2 * n <= 8; ++n) {
    for (cplx z : zs) {
      const cplx lhs1 = 2.0 * (a - b) * std::sqrt(n * (n + a + b)) * s.phi[2 * n](z) +
                        2.0 * (a + b) * std::sqrt((n + a - 0.5) * (n + b - 0.5)) * z *
                            s.phi[2 * n - 2](z);
      const cplx rhs1 =
          ((a + b) * (2.0 * n + a + b - 1.0) + (a - b) * (2.0 * n + a + b) * z) *
          s.phi[2 * n - 1](z);
      CHECK(std::abs(lhs1 - rhs1) <= 1e-12 * std::max(1.0, std::abs(rhs1)));
      const cplx lhs2 =
          2.0 * (a + b) * std::sqrt((n + a - 0.5) * (n + b - 0.5)) * s.phi[2 * n - 1](z) +
          2.0 * (a - b) * std::sqrt((n - 1.0) * (n + a + b - 1.0)) * z * s.phi[2 * n - 3](z);
      const cplx rhs2 =
          ((a - b) * (2.0 * n + a + b - 2.0) + (a + b) * (2.0 * n + a + b - 1.0) * z) *
          s.phi[2 * n - 2](z);
      CHECK(std::abs(lhs2 - rhs2) <= 1e-12 * std::max(1.0, std::abs(rhs2)));
    }
  }
}

TEST_CASE("Szego reciprocal displays match reciprocal()") {
  const double a = 1.0, b = 0.5;
  OPUCSystem s = sz_system(a, b, 7);
  // evaluate the displays on the circle, where x = (z + 1/z)/2 = cos(theta)
  for (int k = 0; k < 16; ++k) {
    const double theta = 2.0 * M_PI * (k + 0.31) / 16.0;
    const cplx z = std::polar(1.0, theta);
    const double x = std::cos(theta);
    for (int m = 1; 2 * m <= 7; ++m) {
      const SzegoMapCoeffs co = sz_map_coeffs(a, b, m);
      const cplx lhs = std::pow(z, -m) * reciprocal(s.phi[2 * m])(z);
      const cplx rhs = co.A * jacobi_p(m, a - 0.5, b - 0.5, x) -
                       0.5 * co.B * (z - 1.0 / z) * jacobi_p(m - 1, a + 0.5, b + 0.5, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
    for (int m = 1; 2 * m - 1 <= 7; ++m) {
      const SzegoMapCoeffs co = sz_map_coeffs(a, b, m);
      const cplx lhs = std::pow(z, 1 - m) * reciprocal(s.phi[2 * m - 1])(z);
      const cplx rhs = co.C * z * jacobi_p(m, a - 0.5, b - 0.5, x) -
                       0.5 * co.D * (z - 1.0 / z) * z * jacobi_p(m - 1, a + 0.5, b + 0.5, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("Szego orthonormality under the weight quadrature") {
  OPUCSystem s = sz_system(1.0, 0.5, 8);
  QuadContext ctx = QuadContext::make(s.weight, 20);
  std::vector<std::vector<cplx>> vals(9);
  for (int n = 0; n <= 8; ++n) {
    vals[n].resize(ctx.grid.M);
    for (int m = 0; m < ctx.grid.M; ++m) vals[n][m] = s.phi[n](ctx.grid.zeta[m]);
  }
  for (int mi = 0; mi <= 8; ++mi)
    for (int ni = mi; ni <= 8; ++ni) {
      KahanSum<cplx> acc;
      for (int m = 0; m < ctx.grid.M; ++m)
        acc.add(vals[mi][m] * std::conj(vals[ni][m]) * ctx.grid.w[m]);
      const cplx ip = acc.value() * (2.0 * M_PI / ctx.grid.M);
      CHECK(std::abs(ip - cplx(mi == ni ? 1.0 : 0.0)) < 1e-9);
    }
}

TEST_CASE("Szego ladder") {
  const double a = 1.0, b = 0.5;
  OPUCSystem s = sz_system(a, b, 6);
  auto zs = sample_contour(16);
  // even-index A_{2n} formula value at z = i, (a,b,n) = (1,0.5,2)
  LadderPair p4 = sz_ladder(a, b, 4);
  const cplx zi(0.0, 1.0);
  const cplx expect = 2.0 * std::sqrt(2.0 * (2.0 + a + b)) *
                      (a + b + (a - b) * zi) / ((a + b) * (1.0 - zi * zi));
  CHECK(std::abs(p4.A(zi) - expect) < 1e-14 * std::abs(expect));
  CHECK(lowering_residual(s, p4, 4, zs) < 1e-10);
  for (int n = 1; n <= 6; ++n)
    CHECK(lowering_residual(s, sz_ladder(a, b, n), n, zs) < 1e-10);
  CHECK_THROWS_AS((void)sz_ladder(0.75, 0.75, 3), DegenerateParameters);
}

// ---------------------------------------------------------------- modified Bessel

TEST_CASE("modified Bessel Toeplitz route first members") {
  const double t = 1.0;
  MbSystem mb = mb_system_toeplitz(t, 8);
  const double i0 = bessel_i(0, t), i1 = bessel_i(1, t), i2 = bessel_i(2, t);
  CHECK(mb.refl.r[1] == doctest::Approx(-i1 / i0).epsilon(1e-14));
  const double r2 = (i0 * i2 - i1 * i1) / (i1 * i1 - i0 * i0);
  CHECK(mb.refl.r[2] == doctest::Approx(r2).epsilon(1e-10));
  const double k1sq = i0 * i0 / (i0 * i0 - i1 * i1);
  CHECK(mb.sys.kappa[1] * mb.sys.kappa[1] == doctest::Approx(k1sq).epsilon(1e-12));
  const double k2sq = i0 * (i0 * i0 - i1 * i1) /
                      ((i0 - i2) * (i0 * (i0 + i2) - 2.0 * i1 * i1));
  CHECK(mb.sys.kappa[2] * mb.sys.kappa[2] == doctest::Approx(k2sq).epsilon(1e-11));
}

TEST_CASE("small-t reflection law r_n ~ (-t/2)^n / n!") {
  MbSystem mb = mb_system_toeplitz(0.1, 5);
  for (int n = 1; n <= 4; ++n) {
    double expect = 1.0;
    for (int k = 1; k <= n; ++k) expect *= -0.05 / k;
    CHECK(std::abs(mb.refl.r[n] - expect) <= 1e-2 * std::abs(expect));
  }
}

TEST_CASE("discrete Painleve II recurrence") {
  const double t = 1.0;
  MbSystem mb = mb_system_toeplitz(t, 11);
  ReflectionSequence dp = mb_dpii_extend(t, 10);
  CHECK(dp.r[0] == 1.0);
  // one explicit step: r_2 = -(2/t) r_1/(1-r_1^2) - r_0
  const double r1 = dp.r[1];
  const double r2 = -(2.0 / t) * r1 / (1.0 - r1 * r1) - 1.0;
  CHECK(std::abs(r2 - mb.refl.r[2]) <= 1e-8 * std::abs(mb.refl.r[2]));
  for (int n = 0; n <= 10; ++n) CHECK(std::abs(dp.r[n] - mb.refl.r[n]) < 1e-8);
  CHECK_THROWS_AS((void)mb_dpii_extend(0.0, 5), DomainError);
}

TEST_CASE("plain binary64 forward iteration loses the documented accuracy") {
  // the growing solution amplifies seed roundoff by ~prod(2k/t); at t = 1/2
  // the plain iteration is ~10 digits worse than the compensated one by n = 10
  const double t = 0.5;
  MbSystem mb = mb_system_toeplitz(t, 11);
  ReflectionSequence plain = mb_dpii_extend(t, 10, false);
  ReflectionSequence comp = mb_dpii_extend(t, 10, true);
  double err_plain = 0, err_comp = 0;
  for (int n = 0; n <= 10; ++n) {
    err_plain = std::max(err_plain, std::abs(plain.r[n] - mb.refl.r[n]));
    err_comp = std::max(err_comp, std::abs(comp.r[n] - mb.refl.r[n]));
  }
  CHECK(err_plain > 1e-9);
  CHECK(err_plain < 1e-3);
  CHECK(err_comp < 1e-10);
  CHECK(err_plain > 1e3 * err_comp);
}

TEST_CASE("triple-route agreement for the reflection coefficients") {
  for (double t : {0.5, 1.0, 2.0}) {
    MbSystem mb = mb_system_toeplitz(t, 11);
    ReflectionSequence dp = mb_dpii_extend(t, 10);
    for (int n = 0; n <= 10; ++n) CHECK(std::abs(dp.r[n] - mb.refl.r[n]) < 1e-8);
    for (int n = 1; n <= 10; ++n) {
      const MbOdeResult ode = mb_rn_ode_integrate(n, t, 1e-3);
      CHECK(std::abs(ode.r_end - mb.refl.r[n]) < 1e-6);
    }
  }
}

TEST_CASE("r_n ODE route details") {
  const double t = 1.0;
  MbSystem mb = mb_system_toeplitz(t, 6);
  const MbOdeResult r5 = mb_rn_ode_integrate(5, t, 1e-3);
  CHECK(std::abs(r5.r_end - mb.refl.r[5]) <= 1e-6 * std::abs(mb.refl.r[5]));
  const MbOdeResult r1 = mb_rn_ode_integrate(1, t, 1e-3);
  const double i0 = bessel_i(0, t), i1 = bessel_i(1, t);
  const double k1sq = i0 * i0 / (i0 * i0 - i1 * i1);
  CHECK(std::abs(r1.kappa_sq_quad - k1sq) <= 1e-6 * k1sq);
  CHECK_THROWS_AS((void)mb_rn_ode_integrate(1, 6.0, 1e-3), DomainError);
  CHECK_THROWS_AS((void)mb_rn_ode_integrate(1, 1.0, 1e-2), DomainError);
}

TEST_CASE("variable change z = (r+1)/(r-1) is an involution") {
  for (double r : {-0.9, -0.3, 0.2, 0.7}) {
    const double z = mb_xfm(r);
    CHECK(std::abs(mb_xfm(z) - r) < 1e-14);
  }
}

TEST_CASE("coefficient dynamics residuals are finite-difference small") {
  auto checks = mb_coefficient_odes(1.0, 3);
  CHECK(!checks.empty());
  for (const auto& c : checks) {
    CHECK(c.pass);
    CHECK(c.residual < 1e-6);
  }
}

// ---------------------------------------------------------------- Rogers-Szego

TEST_CASE("Rogers-Szego system") {
  QReal q(0.25);
  OPUCSystem s = rs_system(q, 8);
  CHECK(std::abs(s.phi0[1] - cplx(1.0 / std::sqrt(3.0))) < 1e-15);
  for (int n = 0; n <= 8; ++n) {
    const double qq = q_pochhammer(q.q, q, n);
    CHECK(s.kappa[n] == doctest::Approx(1.0 / std::sqrt(qq)).epsilon(1e-13));
    CHECK(std::abs(s.phi0[n] - std::pow(q.q, 0.5 * n) / std::sqrt(qq)) < 1e-13);
  }
}

TEST_CASE("Rogers-Szego q-lowering identity, coefficientwise") {
  for (double qv : {0.2, 0.5, 0.8}) {
    QReal q(qv);
    OPUCSystem s = rs_system(q, 10);
    for (int n = 1; n <= 10; ++n) {
      const double an = std::sqrt(1.0 - std::pow(qv, n)) / (1.0 - qv);
      ComplexPoly resid = q_difference(s.phi[n], q) - s.phi[n - 1] * cplx(an);
      CHECK(resid.max_abs_coeff() <= 1e-13 * an);
    }
  }
}

TEST_CASE("H_n(z|q) tends to (1+z)^n as q -> 1") {
  QReal q(1.0 - 1e-6);
  ComplexPoly h3 = rs_hn(q, 3);
  const double binom[4] = {1.0, 3.0, 3.0, 1.0};
  for (int k = 0; k <= 3; ++k)
    CHECK(std::abs(h3.coeff(k) - binom[k]) <= 1e-4 * binom[k]);
}
