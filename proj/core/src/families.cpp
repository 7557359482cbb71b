#include "opuc/families.hpp"

#include <algorithm>
#include <cmath>

#include "opuc/errors.hpp"
#include "opuc/special_functions.hpp"

namespace opuc {

// ================================================================ circular Jacobi

OPUCSystem cj_system(double a, int N) {
  if (!(a > -0.5)) throw DomainError("cj_system: requires a > -1/2");
  OPUCSystem s;
  s.N = N;
  s.weight = WeightSpec::circular_jacobi(a);
  s.route = Route::ClosedForm;
  s.kappa.resize(N + 1);
  s.phi0.resize(N + 1);
  s.ell.resize(N + 1, cplx(0.0));
  s.phi.resize(N + 1);
  s.phistar.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    const double norm = std::sqrt(pochhammer(1.0, n) * pochhammer(2.0 * a + 1.0, n));
    const double pref = pochhammer(a, n) / norm;
    // phi_n = pref * 2F1(-n, a+1; 1-n-a; z), coefficients by term ratios
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    double term = pref;
    c[0] = term;
    for (int k = 0; k < n; ++k) {
      term *= (static_cast<double>(-n + k) * (a + 1.0 + k)) /
              ((1.0 - n - a + k) * (k + 1.0));
      c[static_cast<size_t>(k) + 1] = term;
    }
    s.phi[n] = ComplexPoly(std::move(c));
    s.kappa[n] = pochhammer(a + 1.0, n) / norm;
    s.phi0[n] = a / (n + a) * s.kappa[n];
    if (n >= 1) s.ell[n] = n * a / (n + a) * s.kappa[n];
    if (n == 0) {
      s.phi[0] = ComplexPoly::constant(1.0);
      s.kappa[0] = 1.0;
      s.phi0[0] = 1.0;
    }
    s.phistar[n] = reciprocal(s.phi[n]);
  }
  return s;
}

LadderPair cj_ladder(double a, int n) {
  if (n < 1) throw DomainError("cj_ladder: n >= 1");
  const double an = std::sqrt(n * (n + 2.0 * a));
  ComplexPoly one_minus_z{1.0, -1.0};
  LadderPair p;
  p.n = n;
  p.kind = LadderKind::ClosedForm;
  p.A = LadderCoeff::from_rational({ComplexPoly::constant(an), one_minus_z});
  p.B = LadderCoeff::from_rational({ComplexPoly::constant(static_cast<double>(n)), one_minus_z});
  return p;
}

// ================================================================ Szego

namespace {

// Laurent polynomial with real coefficients, exponents lo .. lo+size-1
struct Laurent {
  int lo = 0;
  std::vector<double> a;

  double at(int e) const {
    const int i = e - lo;
    return (i >= 0 && i < static_cast<int>(a.size())) ? a[static_cast<size_t>(i)] : 0.0;
  }
  int hi() const { return lo + static_cast<int>(a.size()) - 1; }
};

Laurent laurent_const(double v) { return Laurent{0, {v}}; }

Laurent laurent_add(const Laurent& p, const Laurent& q) {
  const int lo = std::min(p.lo, q.lo);
  const int hi = std::max(p.hi(), q.hi());
  Laurent r{lo, std::vector<double>(static_cast<size_t>(hi - lo + 1), 0.0)};
  for (int e = lo; e <= hi; ++e) r.a[static_cast<size_t>(e - lo)] = p.at(e) + q.at(e);
  return r;
}

Laurent laurent_scale(const Laurent& p, double s) {
  Laurent r = p;
  for (double& v : r.a) v *= s;
  return r;
}

// multiply by x = (z + 1/z)/2
Laurent laurent_mul_x(const Laurent& p) {
  Laurent r{p.lo - 1, std::vector<double>(p.a.size() + 2, 0.0)};
  for (size_t i = 0; i < p.a.size(); ++i) {
    r.a[i] += 0.5 * p.a[i];
    r.a[i + 2] += 0.5 * p.a[i];
  }
  return r;
}

// multiply by (z - 1/z)/2
Laurent laurent_mul_halfdiff(const Laurent& p) {
  Laurent r{p.lo - 1, std::vector<double>(p.a.size() + 2, 0.0)};
  for (size_t i = 0; i < p.a.size(); ++i) {
    r.a[i] -= 0.5 * p.a[i];
    r.a[i + 2] += 0.5 * p.a[i];
  }
  return r;
}

// Jacobi polynomial P_k^{(alpha,beta)} with x = (z + 1/z)/2, as a Laurent polynomial
std::vector<Laurent> jacobi_laurent(int kmax, double alpha, double beta) {
  std::vector<Laurent> P;
  P.push_back(laurent_const(1.0));
  if (kmax == 0) return P;
  {
    Laurent p1 = laurent_add(laurent_const(0.5 * (alpha - beta)),
                             laurent_scale(laurent_mul_x(laurent_const(1.0)),
                                           0.5 * (alpha + beta + 2.0)));
    P.push_back(p1);
  }
  for (int k = 2; k <= kmax; ++k) {
    const double apb = alpha + beta;
    const double c1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0);
    const double c2 = (2.0 * k + apb - 1.0) * (alpha * alpha - beta * beta);
    const double c3 = (2.0 * k + apb - 2.0) * (2.0 * k + apb - 1.0) * (2.0 * k + apb);
    const double c4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + apb);
    Laurent t = laurent_add(laurent_scale(P[k - 1], c2),
                            laurent_scale(laurent_mul_x(P[k - 1]), c3));
    t = laurent_add(t, laurent_scale(P[k - 2], -c4));
    P.push_back(laurent_scale(t, 1.0 / c1));
  }
  return P;
}

// z^shift * L as an ordinary polynomial; coefficients below z^0 must vanish
ComplexPoly laurent_to_poly(const Laurent& L, int shift, int expect_degree) {
  std::vector<cplx> c(static_cast<size_t>(expect_degree) + 1, cplx(0.0));
  double scale = 0.0;
  for (double v : L.a) scale = std::max(scale, std::abs(v));
  for (int e = L.lo; e <= L.hi(); ++e) {
    const double v = L.at(e);
    const int p = e + shift;
    if (p < 0 || p > expect_degree) {
      if (std::abs(v) > 1e-10 * scale)
        throw NumericalError("Szego assembly: stray Laurent coefficient");
      continue;
    }
    c[static_cast<size_t>(p)] += v;
  }
  return ComplexPoly(std::move(c));
}

}  // namespace

SzegoMapCoeffs sz_map_coeffs(double a, double b, int n) {
  SzegoMapCoeffs m{};
  const double den = pochhammer(a + 0.5, n) * pochhammer(b + 0.5, n);
  m.A = std::sqrt(pochhammer(1.0, n) * pochhammer(a + b + 1.0, n) / den);
  m.B = 0.5 * m.A;
  m.C = n * std::sqrt(pochhammer(1.0, n - 1) * pochhammer(a + b + 1.0, n - 1) / den);
  m.D = (n + a + b) / (2.0 * n) * m.C;
  return m;
}

OPUCSystem sz_system(double a, double b, int N) {
  if (!(a > -0.5 && b > -0.5)) throw DomainError("sz_system: requires a, b > -1/2");
  OPUCSystem s;
  s.N = N;
  s.weight = WeightSpec::szego(a, b);
  s.route = Route::ClosedForm;
  s.kappa.resize(N + 1);
  s.phi0.resize(N + 1);
  s.ell.resize(N + 1, cplx(0.0));
  s.phi.resize(N + 1);
  s.phistar.resize(N + 1);

  const int mmax = N / 2 + 1;
  const auto Plow = jacobi_laurent(mmax, a - 0.5, b - 0.5);
  const auto Pup = jacobi_laurent(mmax, a + 0.5, b + 0.5);

  for (int n = 0; n <= N; ++n) {
    if (n == 0) {
      s.phi[0] = ComplexPoly::constant(1.0);
    } else if (n % 2 == 0) {
      const int m = n / 2;
      const auto co = sz_map_coeffs(a, b, m);
      Laurent L = laurent_add(laurent_scale(Plow[m], co.A),
                              laurent_scale(laurent_mul_halfdiff(Pup[m - 1]), co.B));
      s.phi[n] = laurent_to_poly(L, m, n);
    } else {
      const int m = (n + 1) / 2;
      const auto co = sz_map_coeffs(a, b, m);
      Laurent L = laurent_add(laurent_scale(Plow[m], co.C),
                              laurent_scale(laurent_mul_halfdiff(Pup[m - 1]), co.D));
      s.phi[n] = laurent_to_poly(L, m - 1, n);
    }
    s.phistar[n] = reciprocal(s.phi[n]);
    s.kappa[n] = s.phi[n].leading().real();
    s.phi0[n] = s.phi[n].coeff(0);
    if (n >= 1) s.ell[n] = s.phi[n].coeff(n - 1);
  }
  return s;
}

LadderPair sz_ladder(double a, double b, int n) {
  if (n < 1) throw DomainError("sz_ladder: n >= 1");
  LadderPair p;
  p.n = n;
  p.kind = LadderKind::ClosedForm;
  ComplexPoly one_minus_z2{1.0, 0.0, -1.0};
  if (n % 2 == 1) {
    if (a == b) throw DegenerateParameters("sz_ladder: odd-index formulas need a != b");
    const int m = (n + 1) / 2;  // n = 2m-1
    const double pref = 2.0 * std::sqrt((m + a - 0.5) * (m + b - 0.5));
    ComplexPoly anum{pref * (a - b), pref * (a + b)};
    ComplexPoly bnum{4.0 * a * b + (2.0 * m - 1.0) * (a + b), (2.0 * m - 1.0) * (a - b)};
    ComplexPoly den = one_minus_z2 * cplx(a - b);
    p.A = LadderCoeff::from_rational({anum, den});
    p.B = LadderCoeff::from_rational({bnum, den});
  } else {
    if (a == -b) throw DegenerateParameters("sz_ladder: even-index formulas need a + b != 0");
    const int m = n / 2;
    const double pref = 2.0 * std::sqrt(m * (m + a + b));
    ComplexPoly anum{pref * (a + b), pref * (a - b)};
    ComplexPoly bnum{2.0 * m * (a - b), 2.0 * m * (a + b)};
    ComplexPoly den = one_minus_z2 * cplx(a + b);
    p.A = LadderCoeff::from_rational({anum, den});
    p.B = LadderCoeff::from_rational({bnum, den});
  }
  return p;
}

// ================================================================ modified Bessel

MbSystem mb_system_toeplitz(double t, int N) {
  if (!(std::abs(t) <= 50.0)) throw DomainError("mb_system_toeplitz: |t| <= 50");
  const int Nt = N + 1;
  MomentTable m;
  m.N = Nt;
  m.c.resize(2 * Nt + 1);
  const double i0 = bessel_i(0, t);
  for (int j = -Nt; j <= Nt; ++j)
    m.c[static_cast<size_t>(j + Nt)] = bessel_i(std::abs(j), t) / i0;
  MbSystem mb;
  mb.sys = system_from_moments(m, N, WeightSpec::modified_bessel(t));
  mb.sys.route = Route::ClosedForm;  // Bessel-series moments, not grid quadrature
  mb.refl.t = t;
  mb.refl.route = MbRoute::ToeplitzDet;
  mb.refl.r.resize(N + 1);
  mb.refl.r[0] = 1.0;
  for (int n = 1; n <= N; ++n) mb.refl.r[n] = mb.sys.reflection(n).real();
  return mb;
}

LadderPair mb_ladder(const MbSystem& mb, int n) {
  if (n < 1 || n + 1 > mb.sys.N)
    throw DomainError("mb_ladder: needs reflection data up to n+1");
  const auto& s = mb.sys;
  const auto& r = mb.refl.r;
  if (std::abs(r[n]) < 1e-300) throw DegenerateReflection("mb_ladder: r_n = 0");
  const double t = mb.refl.t;
  const double kr = s.kappa[n - 1] / s.kappa[n];
  const double cn =
      n + 0.5 * t * kr * kr * (r[n - 1] / r[n]) - 0.5 * t * r[n + 1] * r[n];
  // A_n = kr (c_n + t/(2z)), B_n = (t/(2z)) kr^2 r_{n-1}/r_n
  ComplexPoly zpoly{0.0, 1.0};
  LadderPair p;
  p.n = n;
  p.kind = LadderKind::ClosedForm;
  p.A = LadderCoeff::from_rational({ComplexPoly{kr * 0.5 * t, kr * cn}, zpoly});
  p.B = LadderCoeff::from_rational(
      {ComplexPoly::constant(0.5 * t * kr * kr * (r[n - 1] / r[n])), zpoly});
  return p;
}

namespace {

// double-double arithmetic (Dekker/Knuth error-free transforms); the dP-II
// forward iteration needs ~twice binary64 precision in both seed and steps
struct DD {
  double hi = 0.0, lo = 0.0;
};

DD dd_from(double x) { return DD{x, 0.0}; }

DD two_sum(double x, double y) {
  const double s = x + y;
  const double b = s - x;
  return DD{s, (x - (s - b)) + (y - b)};
}

DD dd_add(DD x, DD y) {
  DD s = two_sum(x.hi, y.hi);
  s.lo += x.lo + y.lo;
  DD t = two_sum(s.hi, s.lo);
  return t;
}

DD dd_neg(DD x) { return DD{-x.hi, -x.lo}; }

DD dd_sub(DD x, DD y) { return dd_add(x, dd_neg(y)); }

DD two_prod(double x, double y) {
  const double p = x * y;
  return DD{p, std::fma(x, y, -p)};
}

DD dd_mul(DD x, DD y) {
  DD p = two_prod(x.hi, y.hi);
  p.lo += x.hi * y.lo + x.lo * y.hi;
  return two_sum(p.hi, p.lo);
}

DD dd_div(DD x, DD y) {
  const double q1 = x.hi / y.hi;
  DD r = dd_sub(x, dd_mul(dd_from(q1), y));
  const double q2 = r.hi / y.hi;
  r = dd_sub(r, dd_mul(dd_from(q2), y));
  const double q3 = r.hi / y.hi;
  DD q = two_sum(q1, q2);
  q.lo += q3;
  return two_sum(q.hi, q.lo);
}

// I_nu(t) in double-double by the ascending series
DD dd_bessel_i(int nu, double t) {
  const DD x = dd_div(dd_from(t), dd_from(2.0));
  DD term = dd_from(1.0);
  for (int k = 1; k <= nu; ++k) term = dd_div(dd_mul(term, x), dd_from(double(k)));
  DD sum = term;
  const DD x2 = dd_mul(x, x);
  for (int k = 1; k < 200; ++k) {
    term = dd_div(dd_mul(term, x2), dd_from(double(k) * (k + nu)));
    sum = dd_add(sum, term);
    if (std::abs(term.hi) < 1e-34 * std::abs(sum.hi)) break;
  }
  return sum;
}

}  // namespace

ReflectionSequence mb_dpii_extend(double t, int N, bool compensated) {
  if (t == 0.0) throw DomainError("mb_dpii_extend: t = 0");
  ReflectionSequence seq;
  seq.t = t;
  seq.route = MbRoute::DPII;
  seq.r.resize(N + 1);
  if (compensated) {
    DD r0 = dd_from(1.0);
    DD r1 = dd_neg(dd_div(dd_bessel_i(1, t), dd_bessel_i(0, t)));
    seq.r[0] = r0.hi;
    if (N >= 1) seq.r[1] = r1.hi;
    for (int n = 1; n < N; ++n) {
      DD one_minus = dd_sub(dd_from(1.0), dd_mul(r1, r1));
      if (std::abs(one_minus.hi) < 1e-12)
        throw NumericalBreakdown("mb_dpii_extend: 1 - r_n^2 underflow at n=" + std::to_string(n));
      DD next = dd_sub(dd_neg(dd_div(dd_mul(dd_from(2.0 * n / t), r1), one_minus)), r0);
      r0 = r1;
      r1 = next;
      seq.r[static_cast<size_t>(n) + 1] = r1.hi;
    }
  } else {
    double r0 = 1.0;
    double r1 = -bessel_i(1, t) / bessel_i(0, t);
    seq.r[0] = r0;
    if (N >= 1) seq.r[1] = r1;
    for (int n = 1; n < N; ++n) {
      const double one_minus = 1.0 - r1 * r1;
      if (std::abs(one_minus) < 1e-12)
        throw NumericalBreakdown("mb_dpii_extend: 1 - r_n^2 underflow at n=" + std::to_string(n));
      const double next = -(2.0 * n / t) * r1 / one_minus - r0;
      r0 = r1;
      r1 = next;
      seq.r[static_cast<size_t>(n) + 1] = r1;
    }
  }
  return seq;
}

std::vector<ResidualCheck> mb_coefficient_odes(double t, int nmax, double h) {
  const int N = nmax + 1;
  const MbSystem lo = mb_system_toeplitz(t - h, N);
  const MbSystem mid = mb_system_toeplitz(t, N);
  const MbSystem hi = mb_system_toeplitz(t + h, N);
  const double i1_over_i0 = bessel_i(1, t) / bessel_i(0, t);
  const double tol = 1e-6;

  std::vector<ResidualCheck> out;
  auto rel = [](double diff, double scale) { return diff / std::max(scale, 1.0); };

  for (int n = 1; n <= nmax; ++n) {
    const auto& s = mid.sys;
    const auto& r = mid.refl.r;
    // (2/kappa_n) d kappa_n/dt = I1/I0 + r_{n+1} r_n
    const double dk = (hi.sys.kappa[n] - lo.sys.kappa[n]) / (2.0 * h);
    const double lhs1 = 2.0 * dk / s.kappa[n];
    const double rhs1 = i1_over_i0 + r[n + 1] * r[n];
    out.push_back(ResidualCheck::make("coeff-ode-kappa n=" + std::to_string(n),
                                      rel(std::abs(lhs1 - rhs1), std::abs(lhs1) + std::abs(rhs1)),
                                      tol));
    // (2/phi_n(0)) d phi_n(0)/dt = I1/I0 + r_{n+1}/r_n - (r_{n-1}/r_n)(kappa_{n-1}/kappa_n)^2
    const double dp =
        (hi.sys.phi0[n].real() - lo.sys.phi0[n].real()) / (2.0 * h);
    const double lhs2 = 2.0 * dp / s.phi0[n].real();
    const double kr = s.kappa[n - 1] / s.kappa[n];
    const double rhs2 = i1_over_i0 + r[n + 1] / r[n] - (r[n - 1] / r[n]) * kr * kr;
    out.push_back(ResidualCheck::make("coeff-ode-phi0 n=" + std::to_string(n),
                                      rel(std::abs(lhs2 - rhs2), std::abs(lhs2) + std::abs(rhs2)),
                                      tol));
    // r_{n+1} - r_{n-1} = (2/(1-r_n^2)) dr_n/dt
    const double dr = (hi.refl.r[n] - lo.refl.r[n]) / (2.0 * h);
    const double lhs3 = r[n + 1] - r[n - 1];
    const double rhs3 = 2.0 / (1.0 - r[n] * r[n]) * dr;
    out.push_back(ResidualCheck::make("r-coupling n=" + std::to_string(n),
                                      rel(std::abs(lhs3 - rhs3), std::abs(lhs3) + std::abs(rhs3)),
                                      tol));
    // differential relation: 2 d phi_n/dt = [I1/I0 + r_{n+1}/r_n] phi_n
    //                         - (kappa_{n-1}/kappa_n)[1 + (r_{n+1}/r_n) z] phi_{n-1}
    ComplexPoly dphi = hi.sys.phi[n] - lo.sys.phi[n];
    dphi *= cplx(1.0 / h);  // 2 * central difference
    const double rr = r[n + 1] / r[n];
    ComplexPoly rhs = s.phi[n] * cplx(i1_over_i0 + rr) -
                      (s.phi[n - 1] + shift_up(s.phi[n - 1], 1) * cplx(rr)) * cplx(kr);
    const double scale = std::max(dphi.max_abs_coeff(), rhs.max_abs_coeff());
    out.push_back(ResidualCheck::make("diff-relation n=" + std::to_string(n),
                                      (dphi - rhs).max_abs_coeff() / std::max(scale, 1.0), tol));
    // lowering with the closed-form pair, z-derivative exact
    if (n + 1 <= mid.sys.N) {
      const LadderPair p = mb_ladder(mid, n);
      double worst = 0.0;
      for (int k = 0; k < 16; ++k) {
        const cplx z = std::polar(0.5, 2.0 * M_PI * (k + 0.37) / 16.0);
        const cplx lhs = derivative(s.phi[n])(z);
        const cplx rhsv = p.A(z) * s.phi[n - 1](z) - p.B(z) * s.phi[n](z);
        worst = std::max(worst,
                         std::abs(lhs - rhsv) / std::max(1.0, std::abs(lhs) + std::abs(rhsv)));
      }
      out.push_back(
          ResidualCheck::make("lowering n=" + std::to_string(n), worst, tol));
    }
  }
  return out;
}

MbOdeResult mb_rn_ode_integrate(int n, double t_end, double h) {
  if (n < 1) throw DomainError("mb_rn_ode_integrate: n >= 1");
  if (!(t_end > 0.0 && t_end <= 5.0)) throw DomainError("mb_rn_ode_integrate: 0 < t_end <= 5");
  if (!(h > 0.0 && h <= 1e-3)) throw DomainError("mb_rn_ode_integrate: h <= 1e-3");

  const double t0 = 1e-2;
  double cn = 1.0;
  for (int k = 1; k <= n; ++k) cn *= -0.5 / k;  // (-1/2)^n / n!
  const double d = -1.0 / (4.0 * (n + 1.0));
  double r = cn * std::pow(t0, n) * (1.0 + d * t0 * t0);
  double rp = cn * (n * std::pow(t0, n - 1) + (n + 2) * d * std::pow(t0, n + 1));

  auto accel = [n](double t, double r, double rp) {
    const double om = 1.0 - r * r;
    if (std::abs(om) < 1e-10)
      throw SingularityApproached("mb_rn_ode_integrate: r_n^2 -> 1");
    return -r / om * rp * rp - rp / t - r * om + (double(n) * n) / (t * t) * r / om;
  };
  auto integrand = [](double r, double s) {
    const double r2 = r * r;
    return r2 / (s * (1.0 - r2));
  };

  // integral of r^2/(s(1-r^2)) over (0, t0] from the series expansion
  const double quad_head =
      cn * cn * std::pow(t0, 2 * n) * (1.0 / (2.0 * n) + d * t0 * t0 / (n + 1.0));

  // graded steps near t0 (the solution behaves like t^n there), capped at h;
  // the running integral rides along as a third state component, which makes
  // each RK4 step a composite-Simpson cell for the quadrature
  KahanSum<double> quad;
  quad.add(quad_head);
  double t = t0;
  while (t < t_end) {
    const double hs = std::min({h, std::max(t / 128.0, 1e-6), t_end - t});
    const double k1r = rp, k1v = accel(t, r, rp), k1q = integrand(r, t);
    const double r2 = r + 0.5 * hs * k1r, v2 = rp + 0.5 * hs * k1v;
    const double k2r = v2, k2v = accel(t + 0.5 * hs, r2, v2), k2q = integrand(r2, t + 0.5 * hs);
    const double r3 = r + 0.5 * hs * k2r, v3 = rp + 0.5 * hs * k2v;
    const double k3r = v3, k3v = accel(t + 0.5 * hs, r3, v3), k3q = integrand(r3, t + 0.5 * hs);
    const double r4 = r + hs * k3r, v4 = rp + hs * k3v;
    const double k4r = v4, k4v = accel(t + hs, r4, v4), k4q = integrand(r4, t + hs);
    r += hs / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
    rp += hs / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    quad.add(hs / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q));
    t += hs;
  }

  MbOdeResult out;
  out.r_end = r;
  out.kappa_sq_quad =
      bessel_i(0, t_end) / std::sqrt(1.0 - r * r) * std::exp(-double(n) * quad.value());
  return out;
}

double mb_xfm(double r) { return (r + 1.0) / (r - 1.0); }

// ================================================================ Rogers-Szego

ComplexPoly rs_hn(const QReal& q, int n) {
  // H_n(z|q) = sum_k [n k]_q q^{-k/2} z^k
  std::vector<cplx> c(static_cast<size_t>(n) + 1);
  double binom = 1.0;  // [n 0]_q
  double qs = 1.0;     // q^{-k/2}
  c[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    binom *= (1.0 - std::pow(q.q, n - k + 1)) / (1.0 - std::pow(q.q, k));
    qs /= q.sqrt_q;
    c[static_cast<size_t>(k)] = binom * qs;
  }
  return ComplexPoly(std::move(c));
}

OPUCSystem rs_system(const QReal& q, int N) {
  OPUCSystem s;
  s.N = N;
  s.weight = WeightSpec::rogers_szego(q.q);
  s.route = Route::ClosedForm;
  s.kappa.resize(N + 1);
  s.phi0.resize(N + 1);
  s.ell.resize(N + 1, cplx(0.0));
  s.phi.resize(N + 1);
  s.phistar.resize(N + 1);
  double qqn = 1.0;  // (q;q)_n
  double qn2 = 1.0;  // q^{n/2}
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      qqn *= 1.0 - std::pow(q.q, n);
      qn2 *= q.sqrt_q;
    }
    const double pref = qn2 / std::sqrt(qqn);
    s.phi[n] = rs_hn(q, n) * cplx(pref);
    s.phistar[n] = reciprocal(s.phi[n]);
    s.kappa[n] = 1.0 / std::sqrt(qqn);
    s.phi0[n] = pref;
    if (n >= 1) s.ell[n] = s.phi[n].coeff(n - 1);
  }
  return s;
}

LadderPair rs_q_ladder(const QReal& q, int n) {
  if (n < 1) throw DomainError("rs_q_ladder: n >= 1");
  const double an = std::sqrt(1.0 - std::pow(q.q, n)) / (1.0 - q.q);
  LadderPair p;
  p.n = n;
  p.kind = LadderKind::ClosedForm;
  p.A = LadderCoeff::from_rational({ComplexPoly::constant(an), ComplexPoly::constant(1.0)});
  p.B = LadderCoeff::zero();
  return p;
}

}  // namespace opuc
