#include <doctest.h>

#include <cmath>

#include "opuc/special_functions.hpp"

using namespace opuc;

TEST_CASE("pochhammer") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(1.0, 3) == 6.0);
  CHECK(pochhammer(0.5, 2) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("q-pochhammer") {
  QReal q(0.25);
  CHECK(q_pochhammer(0.7, q, 0) == 1.0);
  CHECK(q_pochhammer(0.25, q, 1) == doctest::Approx(0.75).epsilon(1e-16));
  // (a;q)_inf equals the n-term product once a q^n < 1e-17
  const double inf = q_pochhammer_inf(0.25, q);
  CHECK(inf == doctest::Approx(q_pochhammer(0.25, q, 40)).epsilon(1e-15));
}

TEST_CASE("bessel_i basics") {
  CHECK(bessel_i(0, 0.0) == 1.0);
  CHECK(bessel_i(1, 0.0) == 0.0);
  // 30-term series oracle, summed independently
  double oracle = 0.0;
  for (int k = 29; k >= 0; --k) {
    double term = 1.0;
    for (int j = 1; j <= k; ++j) term *= 0.25 / (j * j);  // (1/4)^k / (k!)^2
    oracle += term;
  }
  CHECK(bessel_i(0, 1.0) == doctest::Approx(oracle).epsilon(1e-16));
  CHECK(bessel_i(0, 1.0) == doctest::Approx(1.2660658777520083).epsilon(1e-15));
  // integer-order symmetry used when filling Toeplitz matrices
  CHECK(bessel_i(-3, 1.7) == bessel_i(3, 1.7));
  CHECK_THROWS_AS(bessel_i(0, 50.5), DomainError);
}

TEST_CASE("bessel recurrence I_{nu-1} - I_{nu+1} = (2 nu / t) I_nu") {
  for (double t : {0.5, 1.0, 2.0})
    for (int nu = 1; nu <= 10; ++nu) {
      const double lhs = bessel_i(nu - 1, t) - bessel_i(nu + 1, t);
      const double rhs = 2.0 * nu / t * bessel_i(nu, t);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs)));
    }
}

TEST_CASE("terminating 2F1") {
  CHECK(hyp2f1_terminating(0, 3.3, -2.5, cplx(0.4, 1.0)) == cplx(1.0));
  // 2F1(-1, 2; -1; z) = 1 + 2z (two-term hand sum)
  const cplx z(0.3, -0.2);
  CHECK(std::abs(hyp2f1_terminating(1, 2.0, -1.0, z) - (1.0 + 2.0 * z)) < 1e-15);
  CHECK(hyp2f1_terminating(5, 1.25, 0.75, cplx(0.0)) == cplx(1.0));
  CHECK_THROWS_AS((void)hyp2f1_terminating(3, 1.0, -2.0, cplx(0.5)), PoleInParameter);
}

TEST_CASE("2F1 contiguous differentiation relation") {
  // (1-z) d/dz 2F1(-n, a+1; 1-n-a; z)
  //   = [n(n+2a)/(n-1+a)] 2F1(1-n, a+1; 2-n-a; z) - n 2F1(-n, a+1; 1-n-a; z)
  const double a = 1.5;
  const int n = 6;
  auto f = [&](cplx z) { return hyp2f1_terminating(n, a + 1.0, 1.0 - n - a, z); };
  const double h = 1e-6;
  for (int k = 0; k < 16; ++k) {
    const cplx z = std::polar(0.45, 2.0 * M_PI * (k + 0.31) / 16.0);
    const cplx df = (f(z + h) - f(z - h)) / (2.0 * h);
    const cplx lhs = (1.0 - z) * df;
    const cplx rhs = n * (n + 2.0 * a) / (n - 1.0 + a) *
                         hyp2f1_terminating(n - 1, a + 1.0, 2.0 - n - a, z) -
                     double(n) * f(z);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("2F1 contiguous relation with exact coefficient derivative") {
  const double a = 1.5;
  const int n = 6;
  // build the series coefficients, differentiate exactly, compare at samples
  std::vector<cplx> c(n + 1);
  double term = 1.0;
  c[0] = term;
  for (int k = 0; k < n; ++k) {
    term *= (double(-n + k) * (a + 1.0 + k)) / ((1.0 - n - a + k) * (k + 1.0));
    c[k + 1] = term;
  }
  ComplexPoly p(c);
  ComplexPoly dp = derivative(p);
  for (int k = 0; k < 16; ++k) {
    const cplx z = std::polar(0.45, 2.0 * M_PI * (k + 0.31) / 16.0);
    const cplx lhs = (1.0 - z) * dp(z);
    const cplx rhs = n * (n + 2.0 * a) / (n - 1.0 + a) *
                         hyp2f1_terminating(n - 1, a + 1.0, 2.0 - n - a, z) -
                     double(n) * p(z);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("jacobi_p") {
  CHECK(jacobi_p(0, 0.5, -0.25, 0.3) == 1.0);
  const double alpha = 0.75, beta = -0.25, x = 0.42;
  CHECK(jacobi_p(1, alpha, beta, x) ==
        doctest::Approx((alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0)
            .epsilon(1e-14));
  // symmetry P_n^{(a,b)}(-x) = (-1)^n P_n^{(b,a)}(x)
  for (int n = 0; n <= 8; ++n)
    for (double xs : {-0.7, -0.2, 0.1, 0.6}) {
      const double lhs = jacobi_p(n, alpha, beta, -xs);
      const double rhs = ((n % 2) ? -1.0 : 1.0) * jacobi_p(n, beta, alpha, xs);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::max(1.0, std::abs(rhs)));
    }
  CHECK_THROWS_AS((void)jacobi_p(2, -1.5, 0.0, 0.5), DomainError);
}
