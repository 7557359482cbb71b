#include "opuc/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "opuc/errors.hpp"

namespace opuc {

namespace {

double backward_scale(const ComplexPoly& p, cplx z) {
  double s = 0.0;
  double zp = 1.0;
  const double az = std::abs(z);
  for (const cplx& a : p.coeffs()) {
    s += std::abs(a) * zp;
    zp *= az;
  }
  return std::max(s, 1e-300);
}

void sort_by_argument(std::vector<cplx>& zs) {
  std::sort(zs.begin(), zs.end(), [](cplx a, cplx b) {
    const double aa = std::arg(a), ab = std::arg(b);
    if (aa != ab) return aa < ab;
    return std::abs(a) < std::abs(b);
  });
}

}  // namespace

RootSet roots(const ComplexPoly& p_in) {
  ComplexPoly p = p_in.trimmed(0.0);
  const int deg = p.degree();
  if (deg < 1) throw DomainError("roots: degree >= 1 required");
  if (p.leading() == cplx(0.0)) throw DomainError("roots: zero leading coefficient");

  // factor out exact zeros at the origin
  int zero_count = 0;
  while (zero_count < deg && p.coeff(zero_count) == cplx(0.0)) ++zero_count;
  std::vector<cplx> reduced(p.coeffs().begin() + zero_count, p.coeffs().end());
  ComplexPoly f(std::move(reduced));
  const int n = f.degree();

  RootSet rs;
  rs.roots.assign(static_cast<size_t>(zero_count), cplx(0.0));
  if (n > 0) {
    const ComplexPoly df = derivative(f);
    std::vector<cplx> z(n);
    const double r0 = std::pow(std::abs(f.coeff(0) / f.leading()), 1.0 / n);
    for (int j = 0; j < n; ++j)
      z[j] = std::polar(std::max(r0, 1e-12), 2.0 * M_PI * j / n + 1e-3);

    const int max_iter = 200;
    int it = 0;
    for (; it < max_iter; ++it) {
      double max_step = 0.0;
      for (int j = 0; j < n; ++j) {
        const cplx pv = f(z[j]);
        const cplx dv = df(z[j]);
        cplx w;
        if (dv == cplx(0.0)) {
          w = 1e-8 * (1.0 + std::abs(z[j]));
        } else {
          w = pv / dv;
        }
        cplx sum = 0.0;
        for (int k = 0; k < n; ++k)
          if (k != j) sum += 1.0 / (z[j] - z[k]);
        const cplx corr = w / (1.0 - w * sum);
        z[j] -= corr;
        max_step = std::max(max_step, std::abs(corr));
      }
      bool done = true;
      for (int j = 0; j < n; ++j)
        if (max_step >= 1e-14 * (1.0 + std::abs(z[j]))) {
          done = false;
          break;
        }
      if (done) break;
    }
    if (it == max_iter) {
      double worst = 0.0;
      for (int j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(f(z[j])) / backward_scale(f, z[j]));
      if (worst > 1e-10)
        throw NoConvergence("roots: Aberth iteration did not converge", worst);
    }
    // Newton polish on the original (unscaled) coefficients
    const ComplexPoly dp = derivative(p_in);
    for (int j = 0; j < n; ++j) {
      for (int s = 0; s < 2; ++s) {
        const cplx dv = dp(z[j]);
        if (dv == cplx(0.0)) break;
        z[j] -= p_in(z[j]) / dv;
      }
      rs.roots.push_back(z[j]);
    }
    rs.iterations = it;
  }
  sort_by_argument(rs.roots);
  rs.residuals.resize(rs.roots.size());
  for (size_t j = 0; j < rs.roots.size(); ++j)
    rs.residuals[j] = std::abs(p_in(rs.roots[j])) / backward_scale(p_in, rs.roots[j]);
  return rs;
}

bool assert_in_disk(const RootSet& rs, double margin) {
  for (cplx z : rs.roots)
    if (!(std::abs(z) < 1.0 - margin)) return false;
  return true;
}

namespace {

void check_configuration(std::span<const cplx> zs) {
  for (size_t j = 0; j < zs.size(); ++j) {
    if (std::abs(zs[j]) < 1e-300) throw DomainError("t_function: zero charge position");
    for (size_t k = j + 1; k < zs.size(); ++k)
      if (std::abs(zs[j] - zs[k]) < 1e-12)
        throw CoincidentCharges("t_function: coincident charges");
  }
}

}  // namespace

cplx t_function_log(std::span<const cplx> zs, const ExternalField& field,
                    const LadderCoeff& A, int n) {
  check_configuration(zs);
  KahanSum<cplx> s;
  for (cplx z : zs) {
    const cplx av = A(z);
    if (std::abs(av) < 1e-300) throw PoleOfA("t_function: A_n vanishes at a zero");
    s.add(static_cast<double>(1 - n) * std::log(z) + field.log_weight(z) - std::log(av));
  }
  for (size_t j = 0; j < zs.size(); ++j)
    for (size_t k = j + 1; k < zs.size(); ++k) s.add(2.0 * std::log(zs[j] - zs[k]));
  return s.value();
}

cplx t_function(std::span<const cplx> zs, const ExternalField& field, const LadderCoeff& A,
                int n) {
  const cplx lt = t_function_log(zs, field, A, n);
  if (std::abs(lt.real()) > 300.0)
    throw NumericalError("t_function: magnitude outside the binary64 range");
  return std::exp(lt);
}

cplx cj_t_function_log(std::span<const cplx> zs, double a, int n) {
  check_configuration(zs);
  KahanSum<cplx> s;
  for (cplx z : zs)
    s.add((1.0 - n - a) * std::log(z) + (a + 1.0) * std::log(1.0 - z) +
          a * std::log(z - 1.0));
  for (size_t j = 0; j < zs.size(); ++j)
    for (size_t k = j + 1; k < zs.size(); ++k) s.add(2.0 * std::log(zs[j] - zs[k]));
  return s.value();
}

double stationarity_residual(std::span<const cplx> zs, const ExternalField& field,
                             const LadderCoeff& A, int n) {
  check_configuration(zs);
  double worst = 0.0;
  for (size_t j = 0; j < zs.size(); ++j) {
    const cplx z = zs[j];
    const cplx t1 = -field.vprime(z);
    const cplx t2 = -A.df(z) / A(z);
    const cplx t3 = -static_cast<double>(n - 1) / z;
    cplx pair_sum = 0.0;
    double pair_scale = 0.0;
    for (size_t k = 0; k < zs.size(); ++k)
      if (k != j) {
        pair_sum += 2.0 / (z - zs[k]);
        pair_scale += std::abs(2.0 / (z - zs[k]));
      }
    const double scale =
        std::max(1.0, std::abs(t1) + std::abs(t2) + std::abs(t3) + pair_scale);
    worst = std::max(worst, std::abs(t1 + t2 + t3 + pair_sum) / scale);
  }
  return worst;
}

double pair_sum_identity_residual(std::span<const cplx> zs) {
  check_configuration(zs);
  // f = prod (z - z_j) built coefficientwise
  ComplexPoly f = ComplexPoly::constant(1.0);
  for (cplx z : zs) f = f * ComplexPoly{-z, 1.0};
  const ComplexPoly d1 = derivative(f);
  const ComplexPoly d2 = derivative(d1);
  double worst = 0.0;
  for (size_t j = 0; j < zs.size(); ++j) {
    cplx direct = 0.0;
    for (size_t k = 0; k < zs.size(); ++k)
      if (k != j) direct += 2.0 / (zs[j] - zs[k]);
    const cplx via_poly = d2(zs[j]) / d1(zs[j]);
    const double scale = std::max(1.0, std::abs(direct) + std::abs(via_poly));
    worst = std::max(worst, std::abs(direct - via_poly) / scale);
  }
  return worst;
}

void write_roots_csv(std::ostream& os, const RootSet& rs) {
  os << "re,im,abs,residual\n";
  os.precision(17);
  for (size_t j = 0; j < rs.roots.size(); ++j)
    os << rs.roots[j].real() << ',' << rs.roots[j].imag() << ',' << std::abs(rs.roots[j])
       << ',' << rs.residuals[j] << '\n';
}

}  // namespace opuc
