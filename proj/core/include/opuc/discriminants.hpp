#ifndef OPUC_DISCRIMINANTS_HPP
#define OPUC_DISCRIMINANTS_HPP

#include <span>
#include <vector>

#include "opuc/complex_poly.hpp"
#include "opuc/ladder_types.hpp"
#include "opuc/opuc_system.hpp"
#include "opuc/verification.hpp"

namespace opuc {

enum class DiscMethod { RootProduct, Sylvester, ClosedForm, SchurLemma };

/// Discriminant-type value carried in log-magnitude/unit-phase form; the
/// kappa- and (q;q)-products span hundreds of orders of magnitude by n ~ 30.
struct DiscriminantResult {
  double log_abs = 0.0;
  cplx phase = 1.0;
  DiscMethod method = DiscMethod::RootProduct;
  int n = 0;

  cplx value() const;
  static DiscriminantResult from_value(cplx v, DiscMethod m, int n);
};

/// Relative disagreement of two results, computed in log space.
double disc_rel_diff(const DiscriminantResult& x, const DiscriminantResult& y);

/// D(f) = gamma^{2n-2} prod_{j<k} (z_j - z_k)^2 by the root pair-product.
DiscriminantResult discriminant(const ComplexPoly& p);

/// Resultant route D(f) = (-1)^{n(n-1)/2} gamma^{n-2} prod_j f'(z_j).
DiscriminantResult discriminant_resultant_route(const ComplexPoly& p);

/// q-deformed discriminant
/// gamma^{2n-2} q^{n(n-1)/2} prod_{j<k} (q^{1/2} z_j - q^{-1/2} z_k)(q^{-1/2} z_j - q^{1/2} z_k);
/// the alternate single-bracket product is evaluated as a cross-check.
DiscriminantResult q_discriminant(const ComplexPoly& p, const QReal& q);

/// Alternate product form [z_j^2 + z_k^2 - (q + 1/q) z_j z_k].
DiscriminantResult q_discriminant_alt(const ComplexPoly& p, const QReal& q);

/// Sylvester-matrix resultant of f and g (independent small-degree oracle).
cplx sylvester_resultant(const ComplexPoly& f, const ComplexPoly& g);

struct DeltaPair {
  DiscriminantResult brute;
  DiscriminantResult closed;
  double rel_agreement = 0.0;
};

/// Delta_n = prod_j phi_{n-1}(z_{j,n}) both brute-force over the zeros and by
/// the closed form [phi_n(0)]^{n-1} / (kappa_n^{n-1} kappa_{n-1}^n) prod kappa_j^2.
DeltaPair delta(const OPUCSystem& sys, int n);

enum class OperatorTag { Derivative, QDifference };

/// Generalized discriminant D(phi_n, T), brute via prod (T phi_n)(z_j) and
/// closed via the ladder form with prod A_n(z_j). The pair A belongs to the
/// operator T (classical ladder for d/dz, q-ladder for D_q).
DeltaPair generalized_discriminant(const OPUCSystem& sys, int n, OperatorTag op,
                                   const LadderCoeff& A, const QReal* q = nullptr);

/// Closed-form circular Jacobi Delta_n.
DiscriminantResult delta_cj_closed(double a, int n);

/// Closed-form Szego Delta_n (even/odd displays).
DiscriminantResult delta_sz_closed(double a, double b, int n);

/// Rogers-Szego D(phi_n, D_q) closed form.
DiscriminantResult rs_disc_phi(const QReal& q, int n);

/// Rogers-Szego D(H_n, q) closed form.
DiscriminantResult rs_disc_hn(const QReal& q, int n);

/// Rewriting of D(H_n, q) exposing the (1-q)^{n(n-1)/2} decay factor.
DiscriminantResult rs_disc_hn_rewritten(const QReal& q, int n);

/// q -> 1 decay checks of |D(H_n, q)| on an increasing q grid, n = 2..nmax.
std::vector<ResidualCheck> rs_disc_q_limit(int nmax, std::span<const double> q_grid);

}  // namespace opuc

#endif  // OPUC_DISCRIMINANTS_HPP
