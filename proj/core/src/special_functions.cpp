#include "opuc/special_functions.hpp"

#include <cmath>

#include "opuc/errors.hpp"

namespace opuc {

double pochhammer(double a, int n) {
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

double q_pochhammer(double a, const QReal& q, int n) {
  double p = 1.0;
  double qk = 1.0;
  for (int k = 0; k < n; ++k) {
    p *= 1.0 - a * qk;
    qk *= q.q;
  }
  return p;
}

double q_pochhammer_inf(double a, const QReal& q) {
  double p = 1.0;
  double aqk = a;
  // factors tend to 1 geometrically; stop when they are 1 to working precision
  for (int k = 0; k < 100000; ++k) {
    if (std::abs(aqk) < 1e-17) break;
    p *= 1.0 - aqk;
    aqk *= q.q;
  }
  return p;
}

double bessel_i(int nu, double t) {
  if (nu < 0) nu = -nu;  // integer order: I_{-m} = I_m
  if (std::abs(t) > 50.0) throw DomainError("bessel_i: series kernel restricted to |t| <= 50");
  const double x = 0.5 * t;
  // leading term x^nu / nu!
  double term = 1.0;
  for (int k = 1; k <= nu; ++k) term *= x / k;
  KahanSum<double> s;
  s.add(term);
  const double x2 = x * x;
  for (int k = 1; k < 2000; ++k) {
    term *= x2 / (static_cast<double>(k) * (k + nu));
    s.add(term);
    if (std::abs(term) < 1e-17 * std::abs(s.value())) break;
  }
  return s.value();
}

cplx hyp2f1_terminating(int n, double b, double c, cplx z) {
  // all n+1 terms must be finite: (c)_k in the denominator, k <= n
  for (int j = 0; j < n; ++j) {
    if (c + j == 0.0)
      throw PoleInParameter("hyp2f1_terminating: c = " + std::to_string(-j) +
                            " pole inside summation range");
  }
  KahanSum<cplx> s;
  cplx term = 1.0;
  s.add(term);
  for (int k = 0; k < n; ++k) {
    term *= (static_cast<double>(-n + k) * (b + k)) / ((c + k) * (k + 1.0)) * z;
    s.add(term);
  }
  return s.value();
}

double jacobi_p(int n, double alpha, double beta, double x) {
  if (!(alpha > -1.0 && beta > -1.0))
    throw DomainError("jacobi_p: requires alpha, beta > -1");
  if (n == 0) return 1.0;
  double pm2 = 1.0;
  double pm1 = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x;
  if (n == 1) return pm1;
  for (int k = 2; k <= n; ++k) {
    const double apb = alpha + beta;
    const double c1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0);
    const double c2 = (2.0 * k + apb - 1.0) * (alpha * alpha - beta * beta);
    const double c3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb);
    const double c4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + apb);
    const double pk = ((c2 + c3 * x) * pm1 - c4 * pm2) / c1;
    pm2 = pm1;
    pm1 = pk;
  }
  return pm1;
}

}  // namespace opuc
