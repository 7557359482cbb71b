#ifndef OPUC_LADDER_TYPES_HPP
#define OPUC_LADDER_TYPES_HPP

#include <functional>
#include <optional>

#include "opuc/complex_poly.hpp"

namespace opuc {

/// Ratio of two polynomials with analytic derivative.
struct RationalFn {
  ComplexPoly num, den;

  cplx eval(cplx z) const { return num(z) / den(z); }
  cplx deriv(cplx z) const {
    const cplx d = den(z);
    return (derivative(num)(z) * d - num(z) * derivative(den)(z)) / (d * d);
  }
};

/**
 * @brief One ladder coefficient: a callable with derivative. Closed forms keep
 *        their rational representation; quadrature-defined coefficients carry a
 *        central-difference derivative.
 */
struct LadderCoeff {
  std::function<cplx(cplx)> f;
  std::function<cplx(cplx)> df;
  std::optional<RationalFn> rational;

  cplx operator()(cplx z) const { return f(z); }

  static LadderCoeff from_rational(RationalFn r) {
    LadderCoeff c;
    c.rational = r;
    c.f = [r](cplx z) { return r.eval(z); };
    c.df = [r](cplx z) { return r.deriv(z); };
    return c;
  }

  static LadderCoeff from_callable(std::function<cplx(cplx)> fn, double h = 1e-6) {
    LadderCoeff c;
    c.f = fn;
    c.df = [fn, h](cplx z) { return (fn(z + h) - fn(z - h)) / (2.0 * h); };
    return c;
  }

  static LadderCoeff zero() {
    return from_rational(RationalFn{ComplexPoly::constant(0.0), ComplexPoly::constant(1.0)});
  }
};

enum class LadderKind { ClosedForm, QuadratureIntegral, QQuadratureIntegral };

/// The (A_n, B_n) pair of a lowering relation T phi_n = A_n phi_{n-1} - B_n phi_n.
struct LadderPair {
  LadderCoeff A, B;
  int n = 0;
  LadderKind kind = LadderKind::ClosedForm;
};

}  // namespace opuc

#endif  // OPUC_LADDER_TYPES_HPP
