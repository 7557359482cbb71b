#include "opuc/complex_poly.hpp"

#include <algorithm>
#include <cmath>

namespace opuc {

ComplexPoly ComplexPoly::monomial(int degree, cplx lead) {
  std::vector<cplx> c(static_cast<size_t>(degree) + 1, cplx(0.0));
  c.back() = lead;
  return ComplexPoly(std::move(c));
}

bool ComplexPoly::is_zero(double tol) const {
  for (const cplx& a : c_)
    if (std::abs(a) > tol) return false;
  return true;
}

cplx ComplexPoly::eval(cplx z) const {
  cplx acc = c_.back();
  for (int k = static_cast<int>(c_.size()) - 2; k >= 0; --k) acc = acc * z + c_[k];
  return acc;
}

ComplexPoly ComplexPoly::trimmed(double tol) const {
  double cut = tol * max_abs_coeff();
  size_t n = c_.size();
  while (n > 1 && std::abs(c_[n - 1]) <= cut) --n;
  return ComplexPoly(std::vector<cplx>(c_.begin(), c_.begin() + n));
}

double ComplexPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const cplx& a : c_) m = std::max(m, std::abs(a));
  return m;
}

ComplexPoly& ComplexPoly::operator+=(const ComplexPoly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), cplx(0.0));
  for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
  return *this;
}

ComplexPoly& ComplexPoly::operator-=(const ComplexPoly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), cplx(0.0));
  for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
  return *this;
}

ComplexPoly& ComplexPoly::operator*=(cplx s) {
  for (cplx& a : c_) a *= s;
  return *this;
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, cplx(0.0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return ComplexPoly(std::move(c));
}

ComplexPoly reciprocal(const ComplexPoly& p) {
  if (p.leading() == cplx(0.0)) throw ZeroLeadingCoefficient();
  const auto& a = p.coeffs();
  std::vector<cplx> c(a.size());
  for (size_t k = 0; k < a.size(); ++k) c[a.size() - 1 - k] = std::conj(a[k]);
  return ComplexPoly(std::move(c));
}

ComplexPoly derivative(const ComplexPoly& p) {
  if (p.degree() == 0) return ComplexPoly::constant(0.0);
  const auto& a = p.coeffs();
  std::vector<cplx> c(a.size() - 1);
  for (size_t k = 1; k < a.size(); ++k) c[k - 1] = static_cast<double>(k) * a[k];
  return ComplexPoly(std::move(c));
}

ComplexPoly q_difference(const ComplexPoly& p, const QReal& q) {
  if (p.degree() == 0) return ComplexPoly::constant(0.0);
  const auto& a = p.coeffs();
  std::vector<cplx> c(a.size() - 1);
  // [k]_q = (1-q^k)/(1-q) accumulated as 1 + q + ... + q^{k-1} (exact telescoping)
  double qpow = 1.0;
  double qbracket = 0.0;
  for (size_t k = 1; k < a.size(); ++k) {
    qbracket += qpow;
    qpow *= q.q;
    c[k - 1] = qbracket * a[k];
  }
  return ComplexPoly(std::move(c));
}

ComplexPoly shift_up(const ComplexPoly& p, int k) {
  std::vector<cplx> c(p.coeffs().size() + static_cast<size_t>(k), cplx(0.0));
  std::copy(p.coeffs().begin(), p.coeffs().end(), c.begin() + k);
  return ComplexPoly(std::move(c));
}

}  // namespace opuc
