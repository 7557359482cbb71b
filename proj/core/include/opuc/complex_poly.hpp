#ifndef OPUC_COMPLEX_POLY_HPP
#define OPUC_COMPLEX_POLY_HPP

#include <complex>
#include <initializer_list>
#include <vector>

#include "opuc/errors.hpp"

namespace opuc {

using cplx = std::complex<double>;

/**
 * @brief Real q in (0,1) together with its principal square root.
 *
 * Several kernels need q^{1/2} consistently; carrying it avoids repeated
 * sqrt calls with accidental sign conventions.
 */
struct QReal {
  double q;
  double sqrt_q;

  explicit QReal(double q_) : q(q_), sqrt_q(0.0) {
    if (!(q_ > 0.0 && q_ < 1.0)) throw DomainError("QReal requires 0 < q < 1");
    sqrt_q = std::sqrt(q_);
  }
};

/**
 * @brief Dense complex polynomial in the monomial basis, ascending coefficients.
 *
 * The stored length fixes the nominal degree: coeffs()[degree()] may be zero,
 * which matters for reciprocal() — that operation requires a nonzero leading
 * coefficient and throws otherwise.
 */
class ComplexPoly {
 public:
  ComplexPoly() : c_(1, cplx(0.0)) {}
  explicit ComplexPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.assign(1, cplx(0.0));
  }
  ComplexPoly(std::initializer_list<cplx> coeffs) : c_(coeffs) {
    if (c_.empty()) c_.assign(1, cplx(0.0));
  }

  static ComplexPoly constant(cplx a0) { return ComplexPoly({a0}); }
  static ComplexPoly monomial(int degree, cplx lead = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : cplx(0.0);
  }
  cplx& operator[](int k) { return c_[k]; }
  cplx operator[](int k) const { return c_[k]; }

  cplx leading() const { return c_.back(); }
  bool is_zero(double tol = 0.0) const;

  /// Horner evaluation.
  cplx eval(cplx z) const;
  cplx operator()(cplx z) const { return eval(z); }

  /// Drops trailing coefficients below |lead|*tol (or exactly zero for tol=0).
  ComplexPoly trimmed(double tol = 0.0) const;

  double max_abs_coeff() const;

  ComplexPoly& operator+=(const ComplexPoly& rhs);
  ComplexPoly& operator-=(const ComplexPoly& rhs);
  ComplexPoly& operator*=(cplx s);

  friend ComplexPoly operator+(ComplexPoly a, const ComplexPoly& b) { return a += b; }
  friend ComplexPoly operator-(ComplexPoly a, const ComplexPoly& b) { return a -= b; }
  friend ComplexPoly operator*(ComplexPoly a, cplx s) { return a *= s; }
  friend ComplexPoly operator*(cplx s, ComplexPoly a) { return a *= s; }
  friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);

 private:
  std::vector<cplx> c_;
};

/// f*(z) = sum conj(a_k) z^{n-k}; requires a_n != 0.
ComplexPoly reciprocal(const ComplexPoly& p);

ComplexPoly derivative(const ComplexPoly& p);

/// (D_q p)(z): coefficient a_k maps to a_k (1-q^k)/(1-q) on z^{k-1}; exact.
ComplexPoly q_difference(const ComplexPoly& p, const QReal& q);

/// Multiplies by z^k (k >= 0).
ComplexPoly shift_up(const ComplexPoly& p, int k);

}  // namespace opuc

#endif  // OPUC_COMPLEX_POLY_HPP
