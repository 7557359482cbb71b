#include "opuc/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "opuc/errors.hpp"

namespace opuc {

std::vector<cplx> sample_contour(int count, double radius) {
  std::vector<cplx> z(count);
  for (int k = 0; k < count; ++k)
    z[k] = std::polar(radius, 2.0 * M_PI * (k + 0.37) / count);
  return z;
}

namespace {

constexpr int kLadderGridCap = 1 << 20;

struct LadderTables {
  CircleGrid grid;
  std::vector<cplx> ga;  // phi_n(zeta) conj(phi*_n(zeta or q zeta)) zeta w
  std::vector<cplx> gb;  // phi_n(zeta) [conj(phi_n) - (k_n/phi_n(0)) conj(phi*_n)] zeta w
};

LadderTables make_tables(const OPUCSystem& sys, int n, int M, double qshift) {
  LadderTables t{CircleGrid::build(sys.weight, M), {}, {}};
  t.ga.resize(M);
  t.gb.resize(M);
  const cplx ratio = sys.kappa[n] / sys.phi0[n];
  for (int m = 0; m < M; ++m) {
    const cplx zeta = t.grid.zeta[m];
    const cplx arg = (qshift == 1.0) ? zeta : qshift * zeta;
    const cplx pn = sys.phi[n](zeta);
    const cplx ps = std::conj(sys.phistar[n](arg));
    const cplx pc = std::conj(sys.phi[n](arg));
    const cplx common = pn * zeta * t.grid.w[m];
    t.ga[m] = common * ps;
    t.gb[m] = common * (pc - ratio * ps);
  }
  return t;
}

cplx grid_sum(const std::vector<cplx>& g, const CircleGrid& grid,
              const std::function<cplx(cplx, cplx)>& dd, cplx z) {
  KahanSum<cplx> s;
  for (size_t m = 0; m < g.size(); ++m) s.add(dd(z, grid.zeta[m]) * g[m]);
  return s.value() * (2.0 * M_PI / grid.M);
}

int converge_grid(const OPUCSystem& sys, int n, double qshift,
                  const std::function<cplx(cplx, cplx)>& dd, int M0) {
  const cplx probe(0.41, 0.17);
  int M = M0;
  auto tab = make_tables(sys, n, M, qshift);
  cplx prev = grid_sum(tab.ga, tab.grid, dd, probe);
  while (2 * M <= kLadderGridCap) {
    M *= 2;
    tab = make_tables(sys, n, M, qshift);
    const cplx cur = grid_sum(tab.ga, tab.grid, dd, probe);
    if (std::abs(cur - prev) < 1e-10 * std::max(1.0, std::abs(cur))) return M;
    prev = cur;
  }
  throw QuadratureNotConverged("ladder quadrature did not stabilize by M = 2^20");
}

}  // namespace

LadderPair ladder_numeric(const OPUCSystem& sys, const ExternalField& field, int n, int M) {
  if (n < 1 || n > sys.N) throw DomainError("ladder_numeric: 1 <= n <= N");
  if (sys.degenerate_at(n))
    throw DegenerateReflection("ladder_numeric: phi_n(0) = 0");
  if (M == 0) M = converge_grid(sys, n, 1.0, field.dd, default_grid_size(sys.weight, sys.N));
  auto tab = std::make_shared<LadderTables>(make_tables(sys, n, M, 1.0));
  const double a0 = n * sys.kappa[n - 1] / sys.kappa[n];
  const cplx ca = sys.kappa[n - 1] / sys.phi0[n];
  auto dd = field.dd;
  LadderPair p;
  p.n = n;
  p.kind = LadderKind::QuadratureIntegral;
  p.A = LadderCoeff::from_callable(
      [tab, dd, a0, ca](cplx z) { return a0 - ca * z * grid_sum(tab->ga, tab->grid, dd, z); });
  p.B = LadderCoeff::from_callable(
      [tab, dd](cplx z) { return grid_sum(tab->gb, tab->grid, dd, z); });
  return p;
}

LadderPair q_ladder_numeric(const OPUCSystem& sys, const QExternalField& field, int n, int M) {
  if (n < 1 || n > sys.N) throw DomainError("q_ladder_numeric: 1 <= n <= N");
  if (sys.degenerate_at(n))
    throw DegenerateReflection("q_ladder_numeric: phi_n(0) = 0");
  const double q = field.q.q;
  if (M == 0) M = converge_grid(sys, n, q, field.qdd, default_grid_size(sys.weight, sys.N));
  auto tab = std::make_shared<LadderTables>(make_tables(sys, n, M, q));
  const double a0 =
      sys.kappa[n - 1] / sys.kappa[n] * (1.0 - std::pow(q, n)) / (1.0 - q);
  const cplx ca = sys.kappa[n - 1] / sys.phi0[n];
  auto qdd = field.qdd;
  LadderPair p;
  p.n = n;
  p.kind = LadderKind::QQuadratureIntegral;
  p.A = LadderCoeff::from_callable(
      [tab, qdd, a0, ca](cplx z) { return a0 - ca * z * grid_sum(tab->ga, tab->grid, qdd, z); });
  p.B = LadderCoeff::from_callable(
      [tab, qdd](cplx z) { return grid_sum(tab->gb, tab->grid, qdd, z); });
  return p;
}

namespace {

int m1_grid(const WeightSpec& w, int M) {
  if (M > 0) return M;
  M = default_grid_size(w, 16);
  // endpoint kinks limit the rule to O(M^-2); push the error below 1e-10
  if (w.needs_large_grid()) M = std::max(M, 1 << 18);
  return M;
}

}  // namespace

cplx moment_m1(const WeightSpec& w, const ExternalField& field, cplx z, int M) {
  CircleGrid g = CircleGrid::build(w, m1_grid(w, M));
  return g.integrate([&](cplx zeta) { return field.dd(z, zeta) * zeta; });
}

cplx q_moment_m1(const WeightSpec& w, const QExternalField& field, cplx z, int M) {
  CircleGrid g = CircleGrid::build(w, m1_grid(w, M));
  return g.integrate([&](cplx zeta) { return field.qdd(z, zeta) * zeta; });
}

double lowering_residual(const OPUCSystem& sys, const LadderPair& pair, int n,
                         std::span<const cplx> z_samples) {
  const ComplexPoly dphi = derivative(sys.phi[n]);
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx t1 = dphi(z);
    const cplx t2 = pair.A(z) * sys.phi[n - 1](z);
    const cplx t3 = pair.B(z) * sys.phi[n](z);
    const double scale = std::max(1.0, std::abs(t1) + std::abs(t2) + std::abs(t3));
    worst = std::max(worst, std::abs(t1 - t2 + t3) / scale);
  }
  return worst;
}

double raising_residual(const OPUCSystem& sys, const LadderPair& pair_nm1, int n,
                        std::span<const cplx> z_samples) {
  if (n < 2) throw DomainError("raising_residual: n >= 2 (uses kappa_{n-2})");
  if (sys.degenerate_at(n) || sys.degenerate_at(n - 1))
    throw DegenerateReflection("raising_residual: vanishing reflection coefficient");
  const ComplexPoly dphi = derivative(sys.phi[n - 1]);
  const cplx cfac = sys.kappa[n - 1] / sys.kappa[n - 2] * sys.phi0[n - 1] / sys.phi0[n];
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx A = pair_nm1.A(z);
    const cplx lhs = -dphi(z) - pair_nm1.B(z) * sys.phi[n - 1](z) +
                     (A * sys.kappa[n - 1] / (z * sys.kappa[n - 2]) +
                      A * sys.kappa[n] * sys.phi0[n - 1] / (sys.kappa[n - 2] * sys.phi0[n])) *
                         sys.phi[n - 1](z);
    const cplx rhs = A / z * cfac * sys.phi[n](z);
    const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double q_lowering_residual(const OPUCSystem& sys, const LadderPair& pair, const QReal& q,
                           int n, std::span<const cplx> z_samples) {
  const ComplexPoly dphi = q_difference(sys.phi[n], q);
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx t1 = dphi(z);
    const cplx t2 = pair.A(z) * sys.phi[n - 1](z);
    const cplx t3 = pair.B(z) * sys.phi[n](z);
    const double scale = std::max(1.0, std::abs(t1) + std::abs(t2) + std::abs(t3));
    worst = std::max(worst, std::abs(t1 - t2 + t3) / scale);
  }
  return worst;
}

double q_raising_residual(const OPUCSystem& sys, const LadderPair& pair_nm1, const QReal& q,
                          int n, std::span<const cplx> z_samples) {
  if (n < 2) throw DomainError("q_raising_residual: n >= 2");
  if (sys.degenerate_at(n) || sys.degenerate_at(n - 1))
    throw DegenerateReflection("q_raising_residual: vanishing reflection coefficient");
  const ComplexPoly dphi = q_difference(sys.phi[n - 1], q);
  const cplx cfac = sys.phi0[n - 1] * sys.kappa[n - 1] / (sys.phi0[n] * sys.kappa[n - 2]);
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx A = pair_nm1.A(z);
    const cplx lhs = -dphi(z) - pair_nm1.B(z) * sys.phi[n - 1](z) +
                     (A * sys.kappa[n - 1] / (z * sys.kappa[n - 2]) +
                      A * sys.kappa[n] * sys.phi0[n - 1] / (sys.kappa[n - 2] * sys.phi0[n])) *
                         sys.phi[n - 1](z);
    const cplx rhs = cfac * A / z * sys.phi[n](z);
    const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

OdeCoeffs ode_coefficients(const LadderPair& pair_n, const LadderPair& pair_nm1,
                           const OPUCSystem& sys, int n) {
  if (n < 2) throw DomainError("ode_coefficients: n >= 2 (uses kappa_{n-2})");
  if (sys.degenerate_at(n) || sys.degenerate_at(n - 1))
    throw DegenerateReflection("ode_coefficients: vanishing reflection coefficient");
  const double k_ratio = sys.kappa[n - 1] / sys.kappa[n - 2];
  const cplx p_ratio = sys.kappa[n] / sys.kappa[n - 2] * sys.phi0[n - 1] / sys.phi0[n];
  const LadderCoeff An = pair_n.A, Bn = pair_n.B, Am = pair_nm1.A, Bm = pair_nm1.B;
  OdeCoeffs c;
  c.P = [=](cplx z) {
    return Bn(z) + Bm(z) - An.df(z) / An(z) - k_ratio * Am(z) / z - p_ratio * Am(z);
  };
  c.Q = [=](cplx z) {
    const cplx a = An(z), b = Bn(z), am = Am(z), bm = Bm(z);
    return Bn.df(z) - b * An.df(z) / a + b * bm - k_ratio * am * b / z - p_ratio * am * b +
           k_ratio * (sys.phi0[n - 1] / sys.phi0[n]) * am * a / z;
  };
  return c;
}

OdeCoeffs ode_coefficients_alt(const LadderPair& pair_np1, const LadderPair& pair_n,
                               const OPUCSystem& sys, int n) {
  if (n < 1 || n + 1 > sys.N) throw DomainError("ode_coefficients_alt: needs index n+1");
  if (sys.degenerate_at(n) || sys.degenerate_at(n + 1))
    throw DegenerateReflection("ode_coefficients_alt: vanishing reflection coefficient");
  const double k_ratio = sys.kappa[n] / sys.kappa[n - 1];
  const cplx p_ratio = sys.kappa[n + 1] / sys.kappa[n - 1] * sys.phi0[n] / sys.phi0[n + 1];
  const cplx mixed = sys.kappa[n] / sys.kappa[n - 1] * sys.phi0[n] / sys.phi0[n + 1];
  const LadderCoeff An = pair_n.A, Bn = pair_n.B, Ap = pair_np1.A, Bp = pair_np1.B;
  OdeCoeffs c;
  c.P = [=](cplx z) {
    return Bp(z) + Bn(z) - An.df(z) / An(z) - k_ratio * An(z) / z - p_ratio * An(z) + 1.0 / z;
  };
  c.Q = [=](cplx z) {
    const cplx a = An(z), b = Bn(z), ap = Ap(z), bp = Bp(z);
    return Bn.df(z) - b * An.df(z) / a + bp * b - k_ratio * a * bp / z - p_ratio * a * bp +
           mixed * a * ap / z + b / z - p_ratio * a / z;
  };
  return c;
}

double ode_residual(const OPUCSystem& sys, const OdeCoeffs& coeffs, int n,
                    std::span<const cplx> z_samples) {
  const ComplexPoly d1 = derivative(sys.phi[n]);
  const ComplexPoly d2 = derivative(d1);
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx t1 = d2(z);
    const cplx t2 = coeffs.P(z) * d1(z);
    const cplx t3 = coeffs.Q(z) * sys.phi[n](z);
    const double scale = std::max(1.0, std::abs(t1) + std::abs(t2) + std::abs(t3));
    worst = std::max(worst, std::abs(t1 + t2 + t3) / scale);
  }
  return worst;
}

double functional_equation_residual(const OPUCSystem& sys, const LadderPair& pair_n,
                                    const LadderPair& pair_nm1, const ExternalField& field,
                                    int n, std::span<const cplx> z_samples) {
  if (n < 2) throw DomainError("functional_equation_residual: n >= 2");
  if (sys.degenerate_at(n) || sys.degenerate_at(n - 1))
    throw DegenerateReflection("functional_equation_residual: vanishing reflection");
  const double k_ratio = sys.kappa[n - 1] / sys.kappa[n - 2];
  const cplx p_ratio = sys.kappa[n] / sys.kappa[n - 2] * sys.phi0[n - 1] / sys.phi0[n];
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx am = pair_nm1.A(z);
    const cplx lhs = pair_n.B(z) + pair_nm1.B(z) - k_ratio * am / z - p_ratio * am;
    const cplx rhs = -(n - 1.0) / z - field.vprime(z);
    const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double abnew_constant_residual(const OPUCSystem& sys, const ExternalField& field,
                               const LadderPair& pair_1, std::span<const cplx> z_samples,
                               int M) {
  if (sys.degenerate_at(1)) throw DegenerateReflection("abnew: phi_1(0) = 0");
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx m1 = moment_m1(sys.weight, field, z, M);
    const cplx lhs = pair_1.B(z) + sys.phi[1](z) / sys.phi0[1] * m1;
    const cplx rhs = -field.vprime(z);
    const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double q_functional_equation_residual(const OPUCSystem& sys,
                                      std::span<const LadderPair> pairs,
                                      const QExternalField& field, int n,
                                      std::span<const cplx> z_samples, int M) {
  if (n < 2) throw DomainError("q_functional_equation_residual: n >= 2");
  if (static_cast<int>(pairs.size()) < n + 1)
    throw DomainError("q_functional_equation_residual: needs pairs 0..n");
  const double q = field.q.q;
  const double k_ratio = sys.kappa[n - 1] / sys.kappa[n - 2];
  const cplx p_ratio = sys.kappa[n] / sys.kappa[n - 2] * sys.phi0[n - 1] / sys.phi0[n];
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx am = pairs[n - 1].A(z);
    const cplx lhs = pairs[n].B(z) + pairs[n - 1].B(z) - k_ratio * am / z - p_ratio * am;
    // sum over j = 0..n-1 of [B_{j+1} - (kappa_j/kappa_{j-1}) A_j / z];
    // the j = 0 term is B_1 + M_1 (A_0/kappa_{-1} = -z M_1).
    KahanSum<cplx> sum;
    sum.add(pairs[1].B(z) + q_moment_m1(sys.weight, field, z, M));
    for (int j = 1; j + 1 <= n; ++j)
      sum.add(pairs[j + 1].B(z) - sys.kappa[j] / sys.kappa[j - 1] * pairs[j].A(z) / z);
    const cplx rhs =
        -(n - 1.0) / (q * z) - field.u(q * z) / q - (1.0 - q) / q * sum.value();
    const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double q_fe_difference_residual(const OPUCSystem& sys, std::span<const LadderPair> pairs,
                                const QReal& q, int m, std::span<const cplx> z_samples) {
  if (m < 2) throw DomainError("q_fe_difference_residual: m >= 2");
  if (static_cast<int>(pairs.size()) < m + 2)
    throw DomainError("q_fe_difference_residual: needs pairs up to m+1");
  const double qq = q.q;
  double worst = 0.0;
  for (cplx z : z_samples) {
    const cplx am = pairs[m].A(z), amm = pairs[m - 1].A(z);
    const cplx lhs = pairs[m + 1].B(z) / qq - pairs[m - 1].B(z) -
                     sys.kappa[m] / sys.kappa[m - 1] * am / (qq * z) +
                     sys.kappa[m - 1] / sys.kappa[m - 2] * amm / z -
                     sys.kappa[m + 1] / sys.kappa[m - 1] * sys.phi0[m] / sys.phi0[m + 1] * am +
                     sys.kappa[m] / sys.kappa[m - 2] * sys.phi0[m - 1] / sys.phi0[m] * amm;
    const cplx rhs = -1.0 / (qq * z);
    const double scale = std::max(1.0, std::abs(lhs) + std::abs(rhs));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

namespace {

double norm_l2(const ComplexPoly& f, const QuadContext& ctx) {
  return std::sqrt(std::abs(ctx.inner(f, f)));
}

}  // namespace

double adjoint_residual(const WeightSpec& w, const ExternalField& field,
                        const LadderPair& pair, int n, const ComplexPoly& f,
                        const ComplexPoly& g, int M) {
  (void)n;
  QuadContext ctx = QuadContext::make(w, f.degree() + g.degree() + 8, M);
  const ComplexPoly df = derivative(f);
  const ComplexPoly dg = derivative(g);
  const auto& B = pair.B;
  // (L f, g)
  const cplx lhs = ctx.grid.integrate(
      [&](cplx zeta) { return (df(zeta) + B(zeta) * f(zeta)) * std::conj(g(zeta)); });
  // (f, L* g) with L* g = z^2 g' + z g + conj(v' + B) g
  const cplx rhs = ctx.grid.integrate([&](cplx zeta) {
    const cplx t = std::conj(zeta * zeta * dg(zeta)) + std::conj(zeta * g(zeta)) +
                   (field.vprime(zeta) + B(zeta)) * std::conj(g(zeta));
    return f(zeta) * t;
  });
  const double denom = std::max(1e-300, norm_l2(f, ctx) * norm_l2(g, ctx));
  return std::abs(lhs - rhs) / denom;
}

double q_adjoint_residual(const WeightSpec& w, const QExternalField& field,
                          const LadderPair& pair, int n, const ComplexPoly& f,
                          const ComplexPoly& g, int M) {
  (void)n;
  QuadContext ctx = QuadContext::make(w, f.degree() + g.degree() + 8, M);
  const QReal& q = field.q;
  const ComplexPoly dqf = q_difference(f, q);
  const ComplexPoly dqg = q_difference(g, q);
  const auto& B = pair.B;
  const cplx lhs = ctx.grid.integrate(
      [&](cplx zeta) { return (dqf(zeta) + B(zeta) * f(zeta)) * std::conj(g(zeta)); });
  // L* g = [q z^2 - (1-q) z conj(u(z))] D_q g + z g + [conj(B) + conj(u)] g
  const cplx rhs = ctx.grid.integrate([&](cplx zeta) {
    const cplx bracket = std::conj(q.q * zeta * zeta) - (1.0 - q.q) * std::conj(zeta) * field.u(zeta);
    const cplx t = bracket * std::conj(dqg(zeta)) + std::conj(zeta * g(zeta)) +
                   (B(zeta) + field.u(zeta)) * std::conj(g(zeta));
    return f(zeta) * t;
  });
  const double denom = std::max(1e-300, norm_l2(f, ctx) * norm_l2(g, ctx));
  return std::abs(lhs - rhs) / denom;
}

}  // namespace opuc
