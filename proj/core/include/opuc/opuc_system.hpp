#ifndef OPUC_OPUC_SYSTEM_HPP
#define OPUC_OPUC_SYSTEM_HPP

#include <span>
#include <vector>

#include "opuc/complex_poly.hpp"
#include "opuc/weights.hpp"

namespace opuc {

enum class Route { ClosedForm, SzegoRecurrence, Moments };

/**
 * @brief Orthonormal system phi_0..phi_N on the unit circle.
 *
 * kappa[n] is the (positive) leading coefficient, phi0[n] = phi_n(0),
 * ell[n] the z^{n-1} coefficient (ell[0] = 0 by convention), phistar[n]
 * the reciprocal polynomial of phi[n]. Immutable after construction.
 */
struct OPUCSystem {
  int N = 0;
  std::vector<double> kappa;
  std::vector<cplx> phi0;
  std::vector<cplx> ell;
  std::vector<ComplexPoly> phi;
  std::vector<ComplexPoly> phistar;
  WeightSpec weight;
  Route route = Route::ClosedForm;

  cplx reflection(int n) const { return phi0[n] / kappa[n]; }
  bool degenerate_at(int n) const { return std::abs(phi0[n]) <= 1e-14 * kappa[n]; }
};

/**
 * @brief Builds a system from the values phi_1(0), ..., phi_N(0) by the
 *        Szego recurrence kappa_n phi_{n+1} = kappa_{n+1} z phi_n + phi_{n+1}(0) phi_n*.
 */
OPUCSystem build_from_phi0(std::span<const cplx> phi0_seq,
                           WeightSpec tag = WeightSpec::lebesgue(),
                           double kappa0 = 1.0);

/// Coefficientwise residual of kappa_n z phi_n = kappa_{n+1} phi_{n+1} - phi_{n+1}(0) phi*_{n+1},
/// relative to the largest coefficient in play. Requires n+1 <= N.
double rec1_residual(const OPUCSystem& sys, int n);

/// Same for kappa_n phi_{n+1} = kappa_{n+1} z phi_n + phi_{n+1}(0) phi_n*.
double rec2_residual(const OPUCSystem& sys, int n);

/// Relative residual of kappa_n^2 = sum_{k<=n} |phi_k(0)|^2.
double kappa_sum_residual(const OPUCSystem& sys, int n);

/// Relative residual of kappa_n l_{n+1} = kappa_{n+1} l_n + conj(phi_n(0)) phi_{n+1}(0).
double kl_residual(const OPUCSystem& sys, int n);

/// Max over samples of the three-term recurrence residual (relative).
/// Throws DegenerateReflection when phi_n(0) or phi_{n+1}(0) vanishes.
double three_term_residual(const OPUCSystem& sys, int n, std::span<const cplx> z_samples);

/// l_n reconstructed as kappa_n sum_{j<n} conj(phi_j(0)) phi_{j+1}(0)/(kappa_j kappa_{j+1}).
cplx subleading_from_sum(const OPUCSystem& sys, int n);

/// Christoffel-Darboux sum  sum_{k<=n} conj(phi_k(a)) phi_k(z), computed directly.
cplx cd_kernel(const OPUCSystem& sys, int n, cplx a, cplx z);

/// Right-hand side of the CD formula via phi_{n+1}; throws PoleAtUnimodularProduct
/// when |1 - conj(a) z| < 1e-13. Requires n+1 <= N.
cplx cd_rhs(const OPUCSystem& sys, int n, cplx a, cplx z);

/// |cd_kernel - cd_rhs| / scale.
double cd_residual(const OPUCSystem& sys, int n, cplx a, cplx z);

}  // namespace opuc

#endif  // OPUC_OPUC_SYSTEM_HPP
