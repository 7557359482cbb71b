#ifndef OPUC_WEIGHTS_HPP
#define OPUC_WEIGHTS_HPP

#include <functional>
#include <string>
#include <vector>

#include "opuc/complex_poly.hpp"
#include "opuc/special_functions.hpp"

namespace opuc {

enum class Family { Lebesgue, CircularJacobi, Szego, ModifiedBessel, RogersSzego, CustomMoments };

/**
 * @brief Weight family descriptor. Densities are normalized so that
 *        integral of w over the circle against dtheta equals 1.
 */
struct WeightSpec {
  Family family = Family::Lebesgue;
  double a = 0.0;  // circular Jacobi / Szego
  double b = 0.0;  // Szego
  double t = 0.0;  // modified Bessel
  double q = 0.0;  // Rogers-Szego
  std::vector<cplx> custom;  // c_0..c_N for CustomMoments

  static WeightSpec lebesgue();
  static WeightSpec circular_jacobi(double a);
  static WeightSpec szego(double a, double b);
  static WeightSpec modified_bessel(double t);
  static WeightSpec rogers_szego(double q);
  static WeightSpec custom_moments(std::vector<cplx> c0_to_cN);

  /// CustomMoments has no pointwise density.
  bool has_density() const { return family != Family::CustomMoments; }

  /// w(e^{i theta}), normalization included.
  double density(double theta) const;

  /// Analytic normalization constant (the factor in front of the bare weight).
  double norm_constant() const;

  /// True when the density has an algebraic endpoint singularity that limits
  /// the periodic-trapezoid rule to algebraic convergence (non-integer a or b).
  bool needs_large_grid() const;

  std::string name() const;
  std::string params_str() const;
};

/**
 * @brief Classical external field v with w = exp(-v), continued off the circle.
 *
 * dd is the divided difference (v'(z)-v'(zeta))/(z-zeta) with the removable
 * singularity resolved analytically per family, so grid points may land
 * arbitrarily close to z.
 */
struct ExternalField {
  std::function<cplx(cplx)> vprime;
  std::function<cplx(cplx, cplx)> dd;        // (z, zeta)
  std::function<cplx(cplx)> log_weight;      // log of the continued weight, -v(z)
};

ExternalField external_field(const WeightSpec& w);

/**
 * @brief q-external field u with (D_q w)(z) = -u(qz) w(qz).
 *
 * qdd(z, zeta) = [u(zeta) - u(qz)]/(zeta - qz). For Rogers-Szego both are
 * closed forms; other families fall back to ratios of the continued weight.
 */
struct QExternalField {
  QReal q;
  std::function<cplx(cplx)> u;
  std::function<cplx(cplx, cplx)> qdd;       // (z, zeta)
};

QExternalField q_external_field(const WeightSpec& w, const QReal& q);

/**
 * @brief Midpoint-offset uniform grid on the circle with cached weight values.
 *
 * theta_m = 2 pi (m + 1/2)/M. The offset keeps the algebraic singularities of
 * the Jacobi-type weights (z = +-1) exactly between nodes, which restores the
 * even-power error expansion the convergence loop relies on.
 */
struct CircleGrid {
  int M = 0;
  std::vector<cplx> zeta;
  std::vector<double> w;

  static CircleGrid build(const WeightSpec& spec, int M);

  /// (2 pi / M) * sum_m f(zeta_m) w_m, compensated.
  template <typename F>
  cplx integrate(F&& f) const {
    KahanSum<cplx> s;
    for (int m = 0; m < M; ++m) s.add(f(zeta[m]) * w[m]);
    return s.value() * (2.0 * M_PI / M);
  }
};

/// Default quadrature size for a weight and max moment order N; honors the
/// OPUC_GRID_M environment override.
int default_grid_size(const WeightSpec& w, int N);

}  // namespace opuc

#endif  // OPUC_WEIGHTS_HPP
