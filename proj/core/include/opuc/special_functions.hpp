#ifndef OPUC_SPECIAL_FUNCTIONS_HPP
#define OPUC_SPECIAL_FUNCTIONS_HPP

#include <complex>

#include "opuc/complex_poly.hpp"

namespace opuc {

/// Compensated (Kahan) accumulator; used in the series kernels and quadrature
/// sums so the 1e-12 suite targets are not eaten by summation roundoff.
template <typename T>
struct KahanSum {
  T sum{};
  T carry{};
  void add(T x) {
    T y = x - carry;
    T t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  T value() const { return sum; }
};

/// Shifted factorial (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
double pochhammer(double a, int n);

/// (a; q)_n = prod_{k=1..n} (1 - a q^{k-1}), (a; q)_0 = 1.
double q_pochhammer(double a, const QReal& q, int n);

/// (a; q)_infty, truncated once |a q^k| < 1e-17.
double q_pochhammer_inf(double a, const QReal& q);

/// Modified Bessel function I_nu(t), integer nu >= 0, by ascending series.
/// Restricted to |t| <= 50 where the series is the right tool.
double bessel_i(int nu, double t);

/// Terminating 2F1(-n, b; c; z) as the exact (n+1)-term sum.
/// Throws PoleInParameter when c in {0, -1, ..., -(n-1)}.
cplx hyp2f1_terminating(int n, double b, double c, cplx z);

/// Classical Jacobi polynomial P_n^{(alpha,beta)}(x), alpha, beta > -1.
double jacobi_p(int n, double alpha, double beta, double x);

}  // namespace opuc

#endif  // OPUC_SPECIAL_FUNCTIONS_HPP
