#ifndef OPUC_LADDER_HPP
#define OPUC_LADDER_HPP

#include <span>
#include <vector>

#include "opuc/ladder_types.hpp"
#include "opuc/moments.hpp"
#include "opuc/opuc_system.hpp"
#include "opuc/weights.hpp"

namespace opuc {

/// Standard identity-check contour: points on |z| = 1/2 at offset angles
/// (away from the weight singularities at z = +-1 and the positive real axis).
std::vector<cplx> sample_contour(int count, double radius = 0.5);

/**
 * @brief A_n, B_n from their circle-integral definitions by grid quadrature.
 *
 * M = 0 picks a grid by doubling until two successive evaluations of A_n at a
 * probe point agree to 1e-10 (QuadratureNotConverged if the cap is reached).
 * Throws DegenerateReflection when phi_n(0) = 0.
 */
LadderPair ladder_numeric(const OPUCSystem& sys, const ExternalField& field, int n, int M = 0);

/// q-analogue; the integrals carry phi_n*(q zeta) and the q-divided difference.
LadderPair q_ladder_numeric(const OPUCSystem& sys, const QExternalField& field, int n,
                            int M = 0);

/// First moment M_1(z) = integral of dd(z,zeta) zeta w dtheta.
cplx moment_m1(const WeightSpec& w, const ExternalField& field, cplx z, int M = 0);

/// q-version with the q-divided difference.
cplx q_moment_m1(const WeightSpec& w, const QExternalField& field, cplx z, int M = 0);

/// max over samples of |phi_n' - A_n phi_{n-1} + B_n phi_n| / scale.
double lowering_residual(const OPUCSystem& sys, const LadderPair& pair, int n,
                         std::span<const cplx> z_samples);

/// Raising residual of L_{n,2} phi_{n-1} = (A_{n-1}/z)(phi_{n-1}(0) kappa_{n-1} /
/// (phi_n(0) kappa_{n-2})) phi_n, using the pair at index n-1.
double raising_residual(const OPUCSystem& sys, const LadderPair& pair_nm1, int n,
                        std::span<const cplx> z_samples);

/// q-lowering |D_q phi_n - A_n phi_{n-1} + B_n phi_n| / scale.
double q_lowering_residual(const OPUCSystem& sys, const LadderPair& pair, const QReal& q,
                           int n, std::span<const cplx> z_samples);

/// q-raising via the q-difference L_{n,2}.
double q_raising_residual(const OPUCSystem& sys, const LadderPair& pair_nm1, const QReal& q,
                          int n, std::span<const cplx> z_samples);

/// P and Q of phi_n'' + P phi_n' + Q phi_n = 0 assembled from the pairs at n, n-1.
struct OdeCoeffs {
  std::function<cplx(cplx)> P, Q;
};
OdeCoeffs ode_coefficients(const LadderPair& pair_n, const LadderPair& pair_nm1,
                           const OPUCSystem& sys, int n);

/// Alternate assembly running the elimination upward (pairs at n+1, n); its P
/// must agree with ode_coefficients' P pointwise.
OdeCoeffs ode_coefficients_alt(const LadderPair& pair_np1, const LadderPair& pair_n,
                               const OPUCSystem& sys, int n);

/// max |phi_n'' + P phi_n' + Q phi_n| / scale over samples.
double ode_residual(const OPUCSystem& sys, const OdeCoeffs& coeffs, int n,
                    std::span<const cplx> z_samples);

/// Functional equation
///   B_n + B_{n-1} - (k_{n-1}/k_{n-2}) A_{n-1}/z - (k_n/k_{n-2})(phi_{n-1}(0)/phi_n(0)) A_{n-1}
///   = -(n-1)/z - v'(z);   max relative residual over samples.
double functional_equation_residual(const OPUCSystem& sys, const LadderPair& pair_n,
                                    const LadderPair& pair_nm1, const ExternalField& field,
                                    int n, std::span<const cplx> z_samples);

/// n = 1 evaluation of the inhomogeneity: B_1 + (phi_1/phi_1(0)) M_1 must equal
/// -v'(z). Returns the max relative residual over samples.
double abnew_constant_residual(const OPUCSystem& sys, const ExternalField& field,
                               const LadderPair& pair_1, std::span<const cplx> z_samples,
                               int M = 0);

/// q-functional equation; pairs[j] must hold the q-ladder pair of index j for
/// j = 1..n (pairs[0] unused: the j = 0 term of the sum enters through M_1).
double q_functional_equation_residual(const OPUCSystem& sys,
                                      std::span<const LadderPair> pairs,
                                      const QExternalField& field, int n,
                                      std::span<const cplx> z_samples, int M = 0);

/// Index-by-index q-difference equation linking pairs at m-1, m, m+1
/// (2 <= m <= n-1); returns the max relative residual over samples.
double q_fe_difference_residual(const OPUCSystem& sys, std::span<const LadderPair> pairs,
                                const QReal& q, int m, std::span<const cplx> z_samples);

/// |(L_{n,1} f, g) - (f, L*_{n,1} g)| / (||f|| ||g||), both sides by quadrature.
/// L_{n,1} = d/dz + B_n;  L* g = z^2 g' + z g + conj(v'(z) + B_n(z)) g.
double adjoint_residual(const WeightSpec& w, const ExternalField& field,
                        const LadderPair& pair, int n, const ComplexPoly& f,
                        const ComplexPoly& g, int M = 0);

/// q-analogue: L_{n,1} = D_q + B_n;
/// L* g = [q z^2 - (1-q) z conj(u(z))] D_q g + z g + [conj(B_n) + conj(u)] g.
double q_adjoint_residual(const WeightSpec& w, const QExternalField& field,
                          const LadderPair& pair, int n, const ComplexPoly& f,
                          const ComplexPoly& g, int M = 0);

}  // namespace opuc

#endif  // OPUC_LADDER_HPP
