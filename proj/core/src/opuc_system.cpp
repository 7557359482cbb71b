#include "opuc/opuc_system.hpp"

#include <algorithm>
#include <cmath>

#include "opuc/errors.hpp"

namespace opuc {

OPUCSystem build_from_phi0(std::span<const cplx> phi0_seq, WeightSpec tag, double kappa0) {
  if (!(kappa0 > 0.0)) throw InvalidReflectionData("kappa_0 must be positive");
  const int N = static_cast<int>(phi0_seq.size());
  OPUCSystem s;
  s.N = N;
  s.weight = tag;
  s.route = Route::SzegoRecurrence;
  s.kappa.resize(N + 1);
  s.phi0.resize(N + 1);
  s.ell.resize(N + 1, cplx(0.0));
  s.phi.resize(N + 1);
  s.phistar.resize(N + 1);

  s.kappa[0] = kappa0;
  s.phi0[0] = kappa0;
  s.phi[0] = ComplexPoly::constant(kappa0);
  s.phistar[0] = ComplexPoly::constant(kappa0);

  for (int n = 1; n <= N; ++n) {
    const cplx p0 = phi0_seq[n - 1];
    if (!std::isfinite(p0.real()) || !std::isfinite(p0.imag()))
      throw InvalidReflectionData("phi_n(0) must be finite");
    const double k2 = s.kappa[n - 1] * s.kappa[n - 1] + std::norm(p0);
    const double k = std::sqrt(k2);
    if (!(k > 0.0) || !std::isfinite(k))
      throw InvalidReflectionData("kappa_n must stay positive and finite");
    if (std::abs(p0) >= k && std::abs(p0) > 0.0)
      throw InvalidReflectionData("|phi_n(0)| >= kappa_n: reflection outside the disk");
    // kappa_{n-1} phi_n = kappa_n z phi_{n-1} + phi_n(0) phi*_{n-1}
    ComplexPoly next = shift_up(s.phi[n - 1], 1) * cplx(k) + s.phistar[n - 1] * p0;
    next *= cplx(1.0 / s.kappa[n - 1]);
    s.kappa[n] = k;
    s.phi0[n] = next.coeff(0);
    s.ell[n] = next.coeff(n - 1);
    s.phi[n] = next;
    s.phistar[n] = reciprocal(next);
  }
  return s;
}

namespace {

double coeffwise_residual(const ComplexPoly& lhs, const ComplexPoly& rhs, double scale) {
  ComplexPoly d = lhs - rhs;
  return d.max_abs_coeff() / scale;
}

}  // namespace

double rec1_residual(const OPUCSystem& sys, int n) {
  const ComplexPoly lhs = shift_up(sys.phi[n], 1) * cplx(sys.kappa[n]);
  const ComplexPoly rhs =
      sys.phi[n + 1] * cplx(sys.kappa[n + 1]) - sys.phistar[n + 1] * sys.phi0[n + 1];
  const double scale = std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff());
  return coeffwise_residual(lhs, rhs, scale);
}

double rec2_residual(const OPUCSystem& sys, int n) {
  const ComplexPoly lhs = sys.phi[n + 1] * cplx(sys.kappa[n]);
  const ComplexPoly rhs =
      shift_up(sys.phi[n], 1) * cplx(sys.kappa[n + 1]) + sys.phistar[n] * sys.phi0[n + 1];
  const double scale = std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff());
  return coeffwise_residual(lhs, rhs, scale);
}

double kappa_sum_residual(const OPUCSystem& sys, int n) {
  KahanSum<double> s;
  for (int k = 0; k <= n; ++k) s.add(std::norm(sys.phi0[k]));
  const double k2 = sys.kappa[n] * sys.kappa[n];
  return std::abs(k2 - s.value()) / k2;
}

double kl_residual(const OPUCSystem& sys, int n) {
  const cplx lhs = sys.kappa[n] * sys.ell[n + 1];
  const cplx rhs = sys.kappa[n + 1] * sys.ell[n] + std::conj(sys.phi0[n]) * sys.phi0[n + 1];
  const double scale =
      std::max({std::abs(lhs), std::abs(rhs), sys.kappa[n] * sys.kappa[n + 1]});
  return std::abs(lhs - rhs) / scale;
}

double three_term_residual(const OPUCSystem& sys, int n, std::span<const cplx> z_samples) {
  if (n < 1 || n + 1 > sys.N) throw DomainError("three_term_residual: need 1 <= n <= N-1");
  if (sys.degenerate_at(n) || sys.degenerate_at(n + 1))
    throw DegenerateReflection("three-term recurrence degenerates when phi_n(0) = 0");
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx t1 = sys.kappa[n] * sys.phi0[n] * sys.phi[n + 1](z);
    const cplx t2 = sys.kappa[n - 1] * sys.phi0[n + 1] * z * sys.phi[n - 1](z);
    const cplx t3 = (sys.kappa[n] * sys.phi0[n + 1] + sys.kappa[n + 1] * sys.phi0[n] * z) *
                    sys.phi[n](z);
    const double scale = std::abs(t1) + std::abs(t2) + std::abs(t3);
    worst = std::max(worst, std::abs(t1 + t2 - t3) / scale);
  }
  return worst;
}

cplx subleading_from_sum(const OPUCSystem& sys, int n) {
  KahanSum<cplx> s;
  for (int j = 0; j + 1 <= n; ++j)
    s.add(std::conj(sys.phi0[j]) * sys.phi0[j + 1] / (sys.kappa[j] * sys.kappa[j + 1]));
  return sys.kappa[n] * s.value();
}

cplx cd_kernel(const OPUCSystem& sys, int n, cplx a, cplx z) {
  KahanSum<cplx> s;
  for (int k = 0; k <= n; ++k) s.add(std::conj(sys.phi[k](a)) * sys.phi[k](z));
  return s.value();
}

cplx cd_rhs(const OPUCSystem& sys, int n, cplx a, cplx z) {
  const cplx den = 1.0 - std::conj(a) * z;
  if (std::abs(den) < 1e-13)
    throw PoleAtUnimodularProduct("CD kernel pole: conj(a) z too close to 1");
  const cplx num = std::conj(sys.phistar[n + 1](a)) * sys.phistar[n + 1](z) -
                   std::conj(sys.phi[n + 1](a)) * sys.phi[n + 1](z);
  return num / den;
}

double cd_residual(const OPUCSystem& sys, int n, cplx a, cplx z) {
  const cplx lhs = cd_kernel(sys, n, a, z);
  const cplx rhs = cd_rhs(sys, n, a, z);
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
  return std::abs(lhs - rhs) / scale;
}

}  // namespace opuc
