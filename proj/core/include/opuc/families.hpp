#ifndef OPUC_FAMILIES_HPP
#define OPUC_FAMILIES_HPP

#include <vector>

#include "opuc/ladder_types.hpp"
#include "opuc/moments.hpp"
#include "opuc/opuc_system.hpp"
#include "opuc/verification.hpp"

namespace opuc {

// ---------------------------------------------------------------- circular Jacobi

/// Closed-form circular Jacobi system: phi_n built from the terminating 2F1.
OPUCSystem cj_system(double a, int N);

/// A_n = sqrt(n(n+2a))/(1-z), B_n = n/(1-z).
LadderPair cj_ladder(double a, int n);

// ---------------------------------------------------------------- Szego

/// Normalization coefficients of the even/odd Jacobi-polynomial maps.
struct SzegoMapCoeffs {
  double A, B, C, D;
};
SzegoMapCoeffs sz_map_coeffs(double a, double b, int n);

/// Closed-form Szego system via the x = (z + 1/z)/2 Laurent assembly.
OPUCSystem sz_system(double a, double b, int N);

/// Parity-dependent rational ladder pair; throws DegenerateParameters when the
/// (a-b) (odd n) or (a+b) (even n) denominator vanishes.
LadderPair sz_ladder(double a, double b, int n);

// ---------------------------------------------------------------- modified Bessel

enum class MbRoute { ToeplitzDet, DPII, ODE };

struct ReflectionSequence {
  double t = 0.0;
  std::vector<double> r;  // r_0..r_N
  MbRoute route = MbRoute::ToeplitzDet;
};

struct MbSystem {
  OPUCSystem sys;
  ReflectionSequence refl;
};

/// System from the Bessel-moment table c_j = I_j(t)/I_0(t); r_n read off the
/// orthonormal polynomials, kappa_n^2 cross-checkable as determinant ratios.
MbSystem mb_system_toeplitz(double t, int N);

/// Closed-form ladder pair from the differential-difference relation; needs
/// reflection data up to n+1.
LadderPair mb_ladder(const MbSystem& mb, int n);

/// Extends r_0, r_1 through the discrete Painleve II recurrence
///   r_{n+1} = -(2n/t) r_n/(1 - r_n^2) - r_{n-1}.
/// The iteration runs in compensated double-double arithmetic (the growing
/// solution of the recurrence amplifies seed error by ~(2n/t)^n, which in
/// plain binary64 costs ~10 digits by n = 10 at t = 1/2); compensated=false
/// selects the plain iteration for instability measurements.
ReflectionSequence mb_dpii_extend(double t, int N, bool compensated = true);

/// Central-difference residuals of the t-dynamics (differential relation,
/// coefficient ODEs, r-coupling) at step h; all finite-difference limited.
std::vector<ResidualCheck> mb_coefficient_odes(double t, int nmax, double h = 1e-4);

struct MbOdeResult {
  double r_end = 0.0;
  double kappa_sq_quad = 0.0;  // kappa_n^2 via the exp-integral identity
};

/// RK4 integration of the second-order r_n ODE from t0 = 1e-2 with the
/// series seed; also evaluates kappa_n^2 by Simpson quadrature of the
/// trajectory. 0 < t_end <= 5, h <= 1e-3.
MbOdeResult mb_rn_ode_integrate(int n, double t_end, double h);

/// z_n = (r_n + 1)/(r_n - 1) and its inverse (an involution).
double mb_xfm(double r);

// ---------------------------------------------------------------- Rogers-Szego

/// H_n(z|q) in the monomial basis.
ComplexPoly rs_hn(const QReal& q, int n);

/// Orthonormal Rogers-Szego system phi_n = q^{n/2}/sqrt((q;q)_n) H_n(z|q).
OPUCSystem rs_system(const QReal& q, int N);

/// Constant q-ladder pair A_n = sqrt(1-q^n)/(1-q), B_n = 0.
LadderPair rs_q_ladder(const QReal& q, int n);

}  // namespace opuc

#endif  // OPUC_FAMILIES_HPP
