#ifndef OPUC_MOMENTS_HPP
#define OPUC_MOMENTS_HPP

#include <vector>

#include "opuc/opuc_system.hpp"
#include "opuc/weights.hpp"

namespace opuc {

/**
 * @brief Trigonometric moments c_j = integral of zeta^{-j} w dtheta, j = -N..N.
 */
struct MomentTable {
  std::vector<cplx> c;  // c[j + N] holds c_j
  int N = 0;
  int grid_size = 0;    // M of the accepted grid (0 for analytic tables)
  double drift = 0.0;   // last doubling drift observed by the convergence loop

  cplx moment(int j) const { return c[static_cast<size_t>(j + N)]; }
};

/**
 * @brief Periodic-trapezoid moments on the midpoint grid.
 *
 * M = 0 selects the default grid for the family and runs the doubling
 * convergence loop (drift < 1e-12; Richardson step for the half-integer
 * Jacobi-type exponents where the error expansion starts at M^-2).
 * An explicit M computes on that single grid; GridTooCoarse if M < 2N+2.
 */
MomentTable trig_moments(const WeightSpec& w, int N, int M = 0);

/// Determinant in log-magnitude/unit-phase form.
struct LogDet {
  double log_abs = 0.0;
  cplx phase = 1.0;
  cplx value() const;
};

/// det (c_{j-k})_{0<=j,k<n} by LU with partial pivoting; n = 0 gives 1.
LogDet toeplitz_det(const MomentTable& m, int n);

/// Orthonormal system by Cholesky factorization of the moment Gram matrix.
OPUCSystem system_from_moments(const MomentTable& m, int N, WeightSpec tag);

/**
 * @brief Quadrature context caching a grid for repeated inner products.
 */
struct QuadContext {
  WeightSpec spec;
  CircleGrid grid;

  static QuadContext make(const WeightSpec& w, int degree_hint, int M = 0);
  cplx inner(const ComplexPoly& f, const ComplexPoly& g) const;
};

/// (f, g) = integral f(zeta) conj(g(zeta)) w dtheta. For CustomMoments the
/// bilinear form is evaluated exactly through the moment table.
cplx inner_product(const ComplexPoly& f, const ComplexPoly& g, const WeightSpec& w, int M = 0);

}  // namespace opuc

#endif  // OPUC_MOMENTS_HPP
