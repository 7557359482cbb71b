#include "opuc/discriminants.hpp"

#include <algorithm>
#include <cmath>

#include "opuc/errors.hpp"
#include "opuc/special_functions.hpp"
#include "opuc/zeros.hpp"

namespace opuc {

namespace {

cplx unit_phase(cplx v) {
  const double a = std::abs(v);
  if (a < 1e-300) throw NumericalError("unit_phase: vanishing factor");
  return v / a;
}

struct LogProduct {
  double log_abs = 0.0;
  cplx phase = 1.0;
  void mul(cplx v) {
    log_abs += std::log(std::abs(v));
    phase = unit_phase(phase * unit_phase(v));
  }
  void mul_pow(double base, double expo) {  // base > 0
    log_abs += expo * std::log(base);
  }
  void mul_sign(double s) { phase *= s; }
};

double parity_sign(long long m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// (-1)^{n(n-1)/2}
double alt_sign(int n) { return parity_sign(static_cast<long long>(n) * (n - 1) / 2); }

}  // namespace

cplx DiscriminantResult::value() const {
  if (std::abs(log_abs) > 300.0)
    throw NumericalError("DiscriminantResult::value: outside binary64 range");
  return std::exp(log_abs) * phase;
}

DiscriminantResult DiscriminantResult::from_value(cplx v, DiscMethod m, int n) {
  DiscriminantResult r;
  r.log_abs = std::log(std::abs(v));
  r.phase = unit_phase(v);
  r.method = m;
  r.n = n;
  return r;
}

double disc_rel_diff(const DiscriminantResult& x, const DiscriminantResult& y) {
  // |x - y| / max|.| in log space: factor both as e^{l} p
  const double dl = x.log_abs - y.log_abs;
  const cplx ratio = std::exp(dl) * x.phase / y.phase;
  return std::abs(ratio - 1.0) / std::max(1.0, std::abs(ratio));
}

DiscriminantResult discriminant(const ComplexPoly& p) {
  const int n = p.trimmed(0.0).degree();
  if (n < 2) throw DomainError("discriminant: degree >= 2 required");
  const RootSet rs = roots(p);
  LogProduct lp;
  lp.mul_pow(std::abs(p.trimmed(0.0).leading()), 2.0 * n - 2.0);
  lp.phase *= std::pow(unit_phase(p.trimmed(0.0).leading()), 2 * n - 2);
  for (size_t j = 0; j < rs.roots.size(); ++j)
    for (size_t k = j + 1; k < rs.roots.size(); ++k) {
      const cplx d = rs.roots[j] - rs.roots[k];
      lp.mul(d * d);
    }
  DiscriminantResult r;
  r.log_abs = lp.log_abs;
  r.phase = lp.phase;
  r.method = DiscMethod::RootProduct;
  r.n = n;
  return r;
}

DiscriminantResult discriminant_resultant_route(const ComplexPoly& p) {
  const ComplexPoly pt = p.trimmed(0.0);
  const int n = pt.degree();
  if (n < 2) throw DomainError("discriminant: degree >= 2 required");
  const RootSet rs = roots(pt);
  const ComplexPoly dp = derivative(pt);
  LogProduct lp;
  lp.mul_sign(alt_sign(n));
  lp.mul_pow(std::abs(pt.leading()), static_cast<double>(n - 2));
  lp.phase *= std::pow(unit_phase(pt.leading()), n - 2);
  for (cplx z : rs.roots) lp.mul(dp(z));
  DiscriminantResult r;
  r.log_abs = lp.log_abs;
  r.phase = lp.phase;
  r.method = DiscMethod::RootProduct;
  r.n = n;
  return r;
}

namespace {

DiscriminantResult q_disc_impl(const ComplexPoly& p, const QReal& q, bool alt) {
  const ComplexPoly pt = p.trimmed(0.0);
  const int n = pt.degree();
  if (n < 2) throw DomainError("q_discriminant: degree >= 2 required");
  const RootSet rs = roots(pt);
  LogProduct lp;
  lp.mul_pow(std::abs(pt.leading()), 2.0 * n - 2.0);
  lp.phase *= std::pow(unit_phase(pt.leading()), 2 * n - 2);
  lp.mul_pow(q.q, static_cast<double>(n) * (n - 1) / 2.0);
  const double sq = q.sqrt_q;
  for (size_t j = 0; j < rs.roots.size(); ++j)
    for (size_t k = j + 1; k < rs.roots.size(); ++k) {
      const cplx zj = rs.roots[j], zk = rs.roots[k];
      if (alt) {
        lp.mul(zj * zj + zk * zk - zj * zk * (q.q + 1.0 / q.q));
      } else {
        lp.mul((sq * zj - zk / sq) * (zj / sq - sq * zk));
      }
    }
  DiscriminantResult r;
  r.log_abs = lp.log_abs;
  r.phase = lp.phase;
  r.method = DiscMethod::RootProduct;
  r.n = n;
  return r;
}

}  // namespace

DiscriminantResult q_discriminant(const ComplexPoly& p, const QReal& q) {
  return q_disc_impl(p, q, false);
}

DiscriminantResult q_discriminant_alt(const ComplexPoly& p, const QReal& q) {
  return q_disc_impl(p, q, true);
}

cplx sylvester_resultant(const ComplexPoly& f, const ComplexPoly& g) {
  const ComplexPoly ft = f.trimmed(0.0), gt = g.trimmed(0.0);
  const int n = ft.degree(), m = gt.degree();
  if (n < 1 || m < 1) throw DomainError("sylvester_resultant: positive degrees required");
  const int size = n + m;
  std::vector<std::vector<cplx>> S(size, std::vector<cplx>(size, cplx(0.0)));
  // m rows of f coefficients (descending), then n rows of g
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) S[r][r + k] = ft.coeff(n - k);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) S[m + r][r + k] = gt.coeff(m - k);
  // LU with partial pivoting
  cplx det = 1.0;
  for (int col = 0; col < size; ++col) {
    int piv = col;
    double best = std::abs(S[col][col]);
    for (int r = col + 1; r < size; ++r)
      if (std::abs(S[r][col]) > best) {
        best = std::abs(S[r][col]);
        piv = r;
      }
    if (best < 1e-300) return 0.0;
    if (piv != col) {
      std::swap(S[piv], S[col]);
      det = -det;
    }
    det *= S[col][col];
    for (int r = col + 1; r < size; ++r) {
      const cplx fac = S[r][col] / S[col][col];
      for (int k = col; k < size; ++k) S[r][k] -= fac * S[col][k];
    }
  }
  return det;
}

DeltaPair delta(const OPUCSystem& sys, int n) {
  if (n < 1 || n > sys.N) throw DomainError("delta: 1 <= n <= N");
  for (int k = 1; k <= n; ++k)
    if (sys.degenerate_at(k))
      throw DegenerateReflection("delta: phi_k(0) = 0 for k = " + std::to_string(k));
  DeltaPair out;
  if (n == 1) {
    // Delta_1 = phi_0 evaluated at the single zero: the constant kappa_0
    out.brute = DiscriminantResult::from_value(sys.kappa[0], DiscMethod::RootProduct, 1);
    out.closed = DiscriminantResult::from_value(1.0, DiscMethod::SchurLemma, 1);
    out.rel_agreement = disc_rel_diff(out.brute, out.closed);
    return out;
  }
  const RootSet rs = roots(sys.phi[n]);
  LogProduct brute;
  for (cplx z : rs.roots) brute.mul(sys.phi[n - 1](z));
  out.brute.log_abs = brute.log_abs;
  out.brute.phase = brute.phase;
  out.brute.method = DiscMethod::RootProduct;
  out.brute.n = n;

  LogProduct closed;
  closed.mul(std::pow(unit_phase(sys.phi0[n]), n - 1));
  closed.mul_pow(std::abs(sys.phi0[n]), static_cast<double>(n - 1));
  closed.mul_pow(sys.kappa[n], -static_cast<double>(n - 1));
  closed.mul_pow(sys.kappa[n - 1], -static_cast<double>(n));
  for (int j = 1; j <= n - 1; ++j) closed.mul_pow(sys.kappa[j], 2.0);
  out.closed.log_abs = closed.log_abs;
  out.closed.phase = closed.phase;
  out.closed.method = DiscMethod::SchurLemma;
  out.closed.n = n;
  out.rel_agreement = disc_rel_diff(out.brute, out.closed);
  return out;
}

DeltaPair generalized_discriminant(const OPUCSystem& sys, int n, OperatorTag op,
                                   const LadderCoeff& A, const QReal* q) {
  if (n < 1 || n > sys.N) throw DomainError("generalized_discriminant: 1 <= n <= N");
  if (op == OperatorTag::QDifference && q == nullptr)
    throw NoLadderForOperator("generalized_discriminant: QDifference needs q");
  for (int k = 1; k <= n; ++k)
    if (sys.degenerate_at(k))
      throw DegenerateReflection("generalized_discriminant: phi_k(0) = 0");
  const RootSet rs = roots(sys.phi[n]);
  const ComplexPoly tphi =
      (op == OperatorTag::Derivative) ? derivative(sys.phi[n]) : q_difference(sys.phi[n], *q);

  DeltaPair out;
  LogProduct brute;
  brute.mul_sign(alt_sign(n));
  brute.mul_pow(sys.kappa[n], static_cast<double>(n - 2));
  for (cplx z : rs.roots) brute.mul(tphi(z));
  out.brute.log_abs = brute.log_abs;
  out.brute.phase = brute.phase;
  out.brute.method = DiscMethod::RootProduct;
  out.brute.n = n;

  LogProduct closed;
  closed.mul_sign(alt_sign(n));
  closed.mul(std::pow(unit_phase(sys.phi0[n]), n - 1));
  closed.mul_pow(std::abs(sys.phi0[n]), static_cast<double>(n - 1));
  closed.mul_pow(sys.kappa[n], -1.0);
  closed.mul_pow(sys.kappa[n - 1], -static_cast<double>(n));
  for (int j = 1; j <= n - 1; ++j) closed.mul_pow(sys.kappa[j], 2.0);
  for (cplx z : rs.roots) closed.mul(A(z));
  out.closed.log_abs = closed.log_abs;
  out.closed.phase = closed.phase;
  out.closed.method = DiscMethod::ClosedForm;
  out.closed.n = n;
  out.rel_agreement = disc_rel_diff(out.brute, out.closed);
  return out;
}

DiscriminantResult delta_cj_closed(double a, int n) {
  if (n < 1) throw DomainError("delta_cj_closed: n >= 1");
  LogProduct lp;
  const double head = a / (n + a);
  lp.mul_sign(head < 0.0 ? parity_sign(n - 1) : 1.0);
  lp.mul_pow(std::abs(head), static_cast<double>(n - 1));
  const double bracket = pochhammer(1.0, n - 1) * pochhammer(2.0 * a + 1.0, n - 1) /
                         std::pow(pochhammer(a + 1.0, n - 1), 2.0);
  lp.mul_pow(bracket, 0.5 * n);
  for (int j = 1; j <= n - 1; ++j)
    lp.mul_pow(std::pow(pochhammer(a + 1.0, j), 2.0) /
                   (pochhammer(1.0, j) * pochhammer(2.0 * a + 1.0, j)),
               1.0);
  DiscriminantResult r;
  r.log_abs = lp.log_abs;
  r.phase = lp.phase;
  r.method = DiscMethod::ClosedForm;
  r.n = n;
  return r;
}

DiscriminantResult delta_sz_closed(double a, double b, int n) {
  if (n < 1) throw DomainError("delta_sz_closed: n >= 1");
  LogProduct lp;
  auto common_tail = [&](int jmax, int lmax) {
    double acc_log = 0.0;
    for (int j = 1; j <= jmax; ++j) acc_log += std::log(pochhammer(a + b + 1.0, j));
    for (int l = 1; l <= lmax; ++l)
      acc_log -= std::log(pochhammer(1.0, l) * pochhammer(a + b + 1.0, l) *
                          pochhammer(a + 0.5, l) * pochhammer(b + 0.5, l));
    lp.log_abs += 2.0 * acc_log;
  };
  if (n % 2 == 0) {
    const int m = n / 2;
    const double head = (a + b) / (n + a + b);
    lp.mul_sign(head < 0.0 ? parity_sign(n - 1) : 1.0);
    lp.mul_pow(std::abs(head), static_cast<double>(n - 1));
    const double bracket = pochhammer(1.0, m - 1) * pochhammer(a + b + 1.0, m - 1) *
                           pochhammer(a + 0.5, m) * pochhammer(b + 0.5, m) /
                           std::pow(pochhammer(a + b + 1.0, 2 * m - 1), 2.0);
    lp.mul_pow(bracket, static_cast<double>(m));
    lp.mul_pow(pochhammer(a + 0.5, m) * pochhammer(b + 0.5, m), -1.0);
    common_tail(2 * m - 1, m - 1);
  } else {
    const int m = (n + 1) / 2;
    const double head = (a - b) / (n + a + b);
    lp.mul_sign(head < 0.0 ? parity_sign(n - 1) : 1.0);
    lp.mul_pow(std::abs(head), static_cast<double>(n - 1));
    const double bracket = pochhammer(1.0, m - 1) * pochhammer(a + b + 1.0, m - 1) *
                           pochhammer(a + 0.5, m - 1) * pochhammer(b + 0.5, m - 1) /
                           std::pow(pochhammer(a + b + 1.0, 2 * m - 2), 2.0);
    lp.mul_pow(bracket, m - 0.5);
    lp.mul_pow(pochhammer(1.0, m - 1) * pochhammer(a + b + 1.0, m - 1), 1.0);
    common_tail(2 * m - 2, m - 1);
  }
  DiscriminantResult r;
  r.log_abs = lp.log_abs;
  r.phase = lp.phase;
  r.method = DiscMethod::ClosedForm;
  r.n = n;
  return r;
}

namespace {

double log_qq(const QReal& q, int n) {  // log (q;q)_n
  double s = 0.0;
  double qk = q.q;
  for (int k = 1; k <= n; ++k, qk *= q.q) s += std::log(1.0 - qk);
  return s;
}

}  // namespace

DiscriminantResult rs_disc_phi(const QReal& q, int n) {
  DiscriminantResult r;
  r.method = DiscMethod::ClosedForm;
  r.n = n;
  r.phase = alt_sign(n);
  const double half = static_cast<double>(n) * (n - 1) / 2.0;
  r.log_abs = half * std::log(q.q) - n * std::log(1.0 - q.q) + log_qq(q, n);
  for (int j = 1; j <= n - 1; ++j) r.log_abs -= log_qq(q, j);
  return r;
}

DiscriminantResult rs_disc_hn(const QReal& q, int n) {
  DiscriminantResult r;
  r.method = DiscMethod::ClosedForm;
  r.n = n;
  r.phase = alt_sign(n);
  const double half = static_cast<double>(n) * (n - 1) / 2.0;
  r.log_abs = -half * std::log(q.q) + n * (log_qq(q, n) - std::log(1.0 - q.q));
  for (int j = 1; j <= n - 1; ++j) r.log_abs -= log_qq(q, j);
  return r;
}

DiscriminantResult rs_disc_hn_rewritten(const QReal& q, int n) {
  // equal to rs_disc_hn with the (1-q)^{n(n-1)/2} decay factor pulled out:
  // (-1)^{n(n-1)/2} q^{-n(n-1)/2} (1-q)^{n(n-1)/2} [(q;q)_n/(1-q)^n]^n
  //   prod_{j<n} (1-q)^j/(q;q)_j
  DiscriminantResult r;
  r.method = DiscMethod::ClosedForm;
  r.n = n;
  r.phase = alt_sign(n);
  const double half = static_cast<double>(n) * (n - 1) / 2.0;
  const double l1q = std::log(1.0 - q.q);
  r.log_abs = half * (l1q - std::log(q.q)) + n * (log_qq(q, n) - n * l1q);
  for (int j = 1; j <= n - 1; ++j) r.log_abs += j * l1q - log_qq(q, j);
  return r;
}

std::vector<ResidualCheck> rs_disc_q_limit(int nmax, std::span<const double> q_grid) {
  std::vector<ResidualCheck> out;
  for (double qv : q_grid)
    if (!(qv > 0.0 && qv < 1.0)) throw DomainError("rs_disc_q_limit: grid must be in (0,1)");
  for (int n = 2; n <= nmax; ++n) {
    // |D| strictly decreasing along the grid toward q = 1
    double worst_ratio = 0.0;
    double prev = 0.0;
    for (size_t i = 0; i < q_grid.size(); ++i) {
      const double mag = std::exp(rs_disc_hn_rewritten(QReal(q_grid[i]), n).log_abs);
      if (i > 0) worst_ratio = std::max(worst_ratio, mag / prev);
      prev = mag;
    }
    out.push_back(ResidualCheck::make("decay-monotone n=" + std::to_string(n),
                                      std::max(0.0, worst_ratio - 1.0), 0.0));
    // decay rate: |D| / (1-q)^{n(n-1)/2} -> (n!)^n / prod_{j<n} j!
    double limit = 0.0;
    for (int k = 1; k <= n; ++k) limit += n * std::log(static_cast<double>(k));
    for (int j = 1; j <= n - 1; ++j)
      for (int k = 1; k <= j; ++k) limit -= std::log(static_cast<double>(k));
    const double qlast = q_grid.back();
    const double half = static_cast<double>(n) * (n - 1) / 2.0;
    const double scaled =
        rs_disc_hn_rewritten(QReal(qlast), n).log_abs - half * std::log(1.0 - qlast);
    out.push_back(ResidualCheck::make("decay-rate n=" + std::to_string(n),
                                      std::abs(std::exp(scaled - limit) - 1.0), 0.5));
    // absolute smallness close to q = 1; for n = 2 the decay is only linear
    // in 1-q, so the threshold scales accordingly
    const double q1 = 1.0 - 1e-3;
    const double mag1 = std::exp(rs_disc_hn_rewritten(QReal(q1), n).log_abs);
    if (n == 2) {
      out.push_back(
          ResidualCheck::make("decay-threshold n=2", mag1 / (6.0 * (1.0 - q1)), 1.0));
    } else {
      out.push_back(
          ResidualCheck::make("decay-threshold n=" + std::to_string(n), mag1, 1e-6));
    }
  }
  return out;
}

}  // namespace opuc
