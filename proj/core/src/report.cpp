#include "opuc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "opuc/discriminants.hpp"
#include "opuc/errors.hpp"
#include "opuc/families.hpp"
#include "opuc/ladder.hpp"
#include "opuc/moments.hpp"
#include "opuc/zeros.hpp"

namespace opuc {

using nlohmann::json;

namespace {

const std::vector<SuiteInfo> kSuites = {
    {"recurrences", "sec2-szego-recurrences",
     "kappa_n z phi_n = kappa_{n+1} phi_{n+1} - phi_{n+1}(0) phi*_{n+1} and its companion, "
     "the three-term recurrence, kappa_n^2 = sum_{k<=n} |phi_k(0)|^2, and the subleading "
     "coefficient relations l_n."},
    {"cd", "sec2-christoffel-darboux",
     "sum_{k<=n} conj(phi_k(a)) phi_k(z) = [conj(phi*_{n+1}(a)) phi*_{n+1}(z) - "
     "conj(phi_{n+1}(a)) phi_{n+1}(z)] / (1 - conj(a) z)."},
    {"ladder", "thm-2.1-ladder",
     "phi_n' = A_n phi_{n-1} - B_n phi_n with A_n, B_n given by weighted circle integrals "
     "of the divided difference of v'; quadrature values must match the closed forms, and "
     "the raising companion L_{n,2} must hold."},
    {"ode", "sec2-second-order-ode",
     "phi_n'' + P phi_n' + Q phi_n = 0 with P, Q assembled from A_n, B_n, A_{n-1}, B_{n-1}; "
     "the alternate upward elimination must produce the identical P."},
    {"functional-eq", "thm-3.1-functional-eq",
     "B_n + B_{n-1} - (k_{n-1}/k_{n-2}) A_{n-1}/z - (k_n/k_{n-2}) (phi_{n-1}(0)/phi_n(0)) "
     "A_{n-1} = -(n-1)/z - v'(z); the n = 1 inhomogeneity equals -v'(z)."},
    {"q-ladder", "thm-4.1-q-ladder",
     "D_q phi_n = A_n phi_{n-1} - B_n phi_n with the q-deformed integral coefficients; for "
     "Rogers-Szego the pair is (sqrt(1-q^n)/(1-q), 0)."},
    {"q-functional-eq", "thm-4.2-q-functional-eq",
     "the q-functional equation with the summed inhomogeneity -(n-1)/(qz) - u(qz)/q - "
     "((1-q)/q) sum_j [B_{j+1} - (k_j/k_{j-1}) A_j/z], plus its index-by-index difference "
     "form."},
    {"dpii", "lem-2.2-discrete-painleve-ii",
     "-(2n/t) r_n/(1-r_n^2) = r_{n+1} + r_{n-1} with r_0 = 1, r_1 = -I_1/I_0; the iterated "
     "sequence must agree with the Toeplitz-determinant route."},
    {"rn-ode", "lem-2.3-2.4-coefficient-dynamics",
     "t-derivative relations for phi_n, kappa_n, phi_n(0); the second-order ODE for r_n "
     "integrated from the series seed; the exp-integral identity for kappa_n^2."},
    {"zeros-stationarity", "sec3-zeros-quasi-energy",
     "all zeros strictly inside the unit disk; the stationarity system -v'(z_j) - A'/A - "
     "(n-1)/z_j + 2 sum 1/(z_j-z_k) = 0; the pair-sum identity f''/f'; constancy of the "
     "reconstructed Q."},
    {"delta", "lem-5.1-schur-delta",
     "Delta_n = prod_j phi_{n-1}(z_{j,n}) equals [phi_n(0)]^{n-1} kappa_n^{1-n} "
     "kappa_{n-1}^{-n} prod kappa_j^2, plus the family closed forms."},
    {"gen-disc", "thm-5.2-generalized-discriminant",
     "D(phi_n, T) = (-1)^{n(n-1)/2} [phi_n(0)]^{n-1}/(kappa_n kappa_{n-1}^n) prod kappa_j^2 "
     "prod A_n(z_k) for degree-reducing T; evaluated for T = d/dz and T = D_q."},
    {"q-disc", "sec1-q-discriminant",
     "gamma^{2n-2} q^{n(n-1)/2} prod (q^{1/2} z_j - q^{-1/2} z_k)(q^{-1/2} z_j - q^{1/2} "
     "z_k): both product forms, the quadratic specialization q B^2 - (1+q)^2 A C, and the "
     "q -> 1 classical limit."},
    {"adjoint", "sec2-sec4-adjoint",
     "(L_{n,1} f, g) = (f, L*_{n,1} g) with L* = z^2 d/dz + z + conj(v' + B_n), and the "
     "q-version with [q z^2 - (1-q) z conj(u)] D_q."},
};

std::vector<cplx> suite_samples() { return sample_contour(16); }

double param(const SuiteRequest& req, const std::string& key, double fallback) {
  auto it = req.params.find(key);
  return it == req.params.end() ? fallback : it->second;
}

using Checks = std::vector<ResidualCheck>;

// ------------------------------------------------------------------ factories

OPUCSystem lebesgue_system(int N) {
  std::vector<cplx> zeros(static_cast<size_t>(N), cplx(0.0));
  OPUCSystem s = build_from_phi0(zeros, WeightSpec::lebesgue());
  s.route = Route::ClosedForm;
  return s;
}

}  // namespace

OPUCSystem random_reflection_system(unsigned long long seed, int N, double rho_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<cplx> phi0(static_cast<size_t>(N));
  double kappa = 1.0;
  for (int n = 1; n <= N; ++n) {
    const double rho = 0.05 + (rho_max - 0.05) * unif(rng);
    const double theta = 2.0 * M_PI * unif(rng);
    kappa = kappa / std::sqrt(1.0 - rho * rho);
    phi0[static_cast<size_t>(n) - 1] = std::polar(rho * kappa, theta);
  }
  return build_from_phi0(phi0, WeightSpec::lebesgue());
}

OPUCSystem make_system(const std::string& family, const std::map<std::string, double>& params,
                       int N, const std::string& route) {
  auto get = [&](const std::string& k, double fallback) {
    auto it = params.find(k);
    return it == params.end() ? fallback : it->second;
  };
  OPUCSystem closed;
  if (family == "lebesgue") {
    closed = lebesgue_system(N);
  } else if (family == "cj") {
    closed = cj_system(get("a", 1.0), N);
  } else if (family == "sz") {
    closed = sz_system(get("a", 1.0), get("b", 0.5), N);
  } else if (family == "mb") {
    closed = mb_system_toeplitz(get("t", 1.0), N).sys;
  } else if (family == "rs") {
    closed = rs_system(QReal(get("q", 0.5)), N);
  } else if (family == "random") {
    closed = random_reflection_system(20250811ull, N, 0.9);
  } else {
    throw DomainError("unknown family: " + family);
  }
  if (route == "closed" || route.empty()) return closed;
  if (route == "recurrence") {
    std::vector<cplx> phi0(closed.phi0.begin() + 1, closed.phi0.end());
    OPUCSystem s = build_from_phi0(phi0, closed.weight);
    return s;
  }
  if (route == "moments") {
    if (!closed.weight.has_density())
      throw DomainError("moments route requires a pointwise density");
    MomentTable t = trig_moments(closed.weight, N + 1);
    return system_from_moments(t, N, closed.weight);
  }
  throw DomainError("unknown route: " + route);
}

// ---------------------------------------------------------------- suite bodies

namespace {

Checks suite_recurrences(const SuiteRequest& req) {
  Checks cs;
  OPUCSystem sys = (req.family == "random")
                       ? random_reflection_system(421537ull, req.n, 0.9)
                       : make_system(req.family, req.params, req.n, "closed");
  const auto zs = suite_samples();
  double rec1 = 0, rec2 = 0, three = 0, ksum = 0, kl = 0, lsum = 0;
  for (int n = 0; n + 1 <= sys.N; ++n) {
    rec1 = std::max(rec1, rec1_residual(sys, n));
    rec2 = std::max(rec2, rec2_residual(sys, n));
    kl = std::max(kl, kl_residual(sys, n));
  }
  for (int n = 0; n <= sys.N; ++n) ksum = std::max(ksum, kappa_sum_residual(sys, n));
  for (int n = 1; n + 1 <= sys.N; ++n)
    if (!sys.degenerate_at(n) && !sys.degenerate_at(n + 1))
      three = std::max(three, three_term_residual(sys, n, zs));
  for (int n = 1; n <= sys.N; ++n) {
    const cplx via_sum = subleading_from_sum(sys, n);
    const double scale = std::max(std::abs(sys.ell[n]), sys.kappa[n]);
    lsum = std::max(lsum, std::abs(via_sum - sys.ell[n]) / scale);
  }
  cs.push_back(ResidualCheck::make("recurrence-down", rec1, 1e-11));
  cs.push_back(ResidualCheck::make("recurrence-up", rec2, 1e-11));
  cs.push_back(ResidualCheck::make("three-term", three, 1e-11));
  cs.push_back(ResidualCheck::make("kappa-sum", ksum, 1e-11));
  cs.push_back(ResidualCheck::make("kappa-l-two-term", kl, 1e-11));
  cs.push_back(ResidualCheck::make("l-from-sum", lsum, 1e-11));
  // kappa monotone, exact
  double mono = 0.0;
  for (int n = 0; n + 1 <= sys.N; ++n)
    mono = std::max(mono, sys.kappa[n] - sys.kappa[n + 1]);
  cs.push_back(ResidualCheck::make("kappa-monotone", std::max(0.0, mono), 0.0));
  return cs;
}

Checks suite_cd(const SuiteRequest& req) {
  Checks cs;
  const int n = req.n;
  OPUCSystem sys = (req.family == "random")
                       ? random_reflection_system(98217ull, n + 1, 0.9)
                       : make_system(req.family, req.params, n + 1, "closed");
  std::mt19937_64 rng(7ull);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 32; ++k) {
    const cplx a = std::polar(0.9 * std::sqrt(unif(rng)), 2.0 * M_PI * unif(rng));
    const cplx z = std::polar(0.9 * std::sqrt(unif(rng)), 2.0 * M_PI * unif(rng));
    worst = std::max(worst, cd_residual(sys, n, a, z));
  }
  cs.push_back(ResidualCheck::make("cd-identity", worst, 1e-11));
  const cplx at_zero = cd_kernel(sys, n, 0.0, 0.0);
  const double k2 = sys.kappa[n] * sys.kappa[n];
  cs.push_back(ResidualCheck::make("cd-at-origin-kappa", std::abs(at_zero - k2) / k2, 1e-12));
  return cs;
}

LadderPair closed_pair(const OPUCSystem& sys, const SuiteRequest& req, int n,
                       const MbSystem* mb) {
  if (req.family == "cj") return cj_ladder(param(req, "a", 1.0), n);
  if (req.family == "sz") return sz_ladder(param(req, "a", 1.0), param(req, "b", 0.5), n);
  if (req.family == "mb") return mb_ladder(*mb, n);
  (void)sys;
  throw DomainError("no closed-form ladder for family " + req.family);
}

Checks suite_ladder(const SuiteRequest& req) {
  Checks cs;
  const int N = req.n;
  MbSystem mb;
  OPUCSystem sys;
  if (req.family == "mb") {
    mb = mb_system_toeplitz(param(req, "t", 1.0), N + 2);
    sys = mb.sys;
  } else {
    sys = make_system(req.family, req.params, N + 2, "closed");
  }
  const ExternalField field = external_field(sys.weight);
  const auto zs = suite_samples();
  double match = 0, low_closed = 0, low_quad = 0, raise = 0;
  for (int n = 1; n <= N; ++n) {
    const LadderPair closed = closed_pair(sys, req, n, &mb);
    const LadderPair quad = ladder_numeric(sys, field, n);
    for (cplx z : zs) {
      const double sa = std::max(1.0, std::abs(closed.A(z)));
      const double sb = std::max(1.0, std::abs(closed.B(z)));
      match = std::max(match, std::abs(closed.A(z) - quad.A(z)) / sa);
      match = std::max(match, std::abs(closed.B(z) - quad.B(z)) / sb);
    }
    low_closed = std::max(low_closed, lowering_residual(sys, closed, n, zs));
    low_quad = std::max(low_quad, lowering_residual(sys, quad, n, zs));
    if (n >= 2) raise = std::max(raise, raising_residual(sys, closed_pair(sys, req, n - 1, &mb), n, zs));
  }
  cs.push_back(ResidualCheck::make("quad-vs-closed", match, 1e-8));
  cs.push_back(ResidualCheck::make("lowering-closed", low_closed, 1e-9));
  cs.push_back(ResidualCheck::make("lowering-quadrature", low_quad, 1e-9));
  cs.push_back(ResidualCheck::make("raising", raise, 1e-9));
  // n = 1 anchors: A_1 and B_1 through the first moment M_1
  if (!sys.degenerate_at(1)) {
    const LadderPair q1 = ladder_numeric(sys, field, 1);
    double worst_b = 0, worst_a = 0;
    for (cplx z : zs) {
      const cplx m1 = moment_m1(sys.weight, field, z);
      const cplx phi1 = sys.phi[1](z);
      const cplx b_expect = -field.vprime(z) - phi1 / sys.phi0[1] * m1;
      const cplx a_expect =
          sys.kappa[1] - phi1 * field.vprime(z) - phi1 * phi1 / sys.phi0[1] * m1;
      worst_b = std::max(worst_b, std::abs(q1.B(z) - b_expect) /
                                      std::max(1.0, std::abs(b_expect)));
      worst_a = std::max(worst_a, std::abs(q1.A(z) - a_expect) /
                                      std::max(1.0, std::abs(a_expect)));
    }
    cs.push_back(ResidualCheck::make("first-order-B1", worst_b, 1e-9));
    cs.push_back(ResidualCheck::make("first-order-A1", worst_a, 1e-9));
  }
  return cs;
}

Checks suite_ode(const SuiteRequest& req) {
  Checks cs;
  const int N = std::max(req.n, 3);
  MbSystem mb;
  OPUCSystem sys;
  if (req.family == "mb") {
    mb = mb_system_toeplitz(param(req, "t", 1.0), N + 2);
    sys = mb.sys;
  } else {
    sys = make_system(req.family, req.params, N + 2, "closed");
  }
  const auto zs = suite_samples();
  double resid = 0, alt_p = 0, p_match = 0, q_match = 0;
  const double a = param(req, "a", 1.0), b = param(req, "b", 0.5);
  for (int n = 2; n <= N; ++n) {
    const LadderPair pn = closed_pair(sys, req, n, &mb);
    const LadderPair pm = closed_pair(sys, req, n - 1, &mb);
    const LadderPair pp = closed_pair(sys, req, n + 1, &mb);
    const OdeCoeffs c = ode_coefficients(pn, pm, sys, n);
    resid = std::max(resid, ode_residual(sys, c, n, zs));
    const OdeCoeffs alt = ode_coefficients_alt(pp, pn, sys, n);
    for (cplx z : zs) {
      alt_p = std::max(alt_p, std::abs(c.P(z) - alt.P(z)) / std::max(1.0, std::abs(c.P(z))));
      if (req.family == "cj") {
        const cplx pref = (1.0 - n - a) / z - (2.0 * a + 1.0) / (1.0 - z);
        const cplx qref = n * (a + 1.0) / (z * (1.0 - z));
        p_match = std::max(p_match, std::abs(c.P(z) - pref) / std::max(1.0, std::abs(pref)));
        q_match = std::max(q_match, std::abs(c.Q(z) - qref) / std::max(1.0, std::abs(qref)));
      } else if (req.family == "sz") {
        cplx pref = -(n + a + b - 1.0) / z - (2.0 * a + 1.0) / (1.0 - z) +
                    (2.0 * b + 1.0) / (1.0 + z);
        cplx qref;
        if (n % 2 == 0) {
          pref -= (a - b) / (a + b + (a - b) * z);
          qref = double(n) * (a * (a + 1.0) * (1.0 + z) * (1.0 + z) -
                              b * (b + 1.0) * (1.0 - z) * (1.0 - z)) /
                 (z * (1.0 - z * z) * (a + b + (a - b) * z));
        } else {
          pref -= (a + b) / (a - b + (a + b) * z);
          qref = (double(n) * (a * (a + 1.0) * (1.0 + z) * (1.0 + z) +
                               b * (b + 1.0) * (1.0 - z) * (1.0 - z) -
                               2.0 * a * b * (1.0 - z * z)) +
                  4.0 * a * b) /
                 (z * (1.0 - z * z) * (a - b + (a + b) * z));
        }
        p_match = std::max(p_match, std::abs(c.P(z) - pref) / std::max(1.0, std::abs(pref)));
        q_match = std::max(q_match, std::abs(c.Q(z) - qref) / std::max(1.0, std::abs(qref)));
      }
    }
  }
  cs.push_back(ResidualCheck::make("ode-residual", resid, 1e-7));
  cs.push_back(ResidualCheck::make("alternate-P-agreement", alt_p, 1e-8));
  if (req.family == "cj" || req.family == "sz") {
    cs.push_back(ResidualCheck::make("P-closed-form", p_match, 1e-8));
    cs.push_back(ResidualCheck::make("Q-closed-form", q_match, 1e-8));
  }
  return cs;
}

Checks suite_functional_eq(const SuiteRequest& req) {
  Checks cs;
  const int N = req.n;
  MbSystem mb;
  OPUCSystem sys;
  if (req.family == "mb") {
    mb = mb_system_toeplitz(param(req, "t", 1.0), N + 2);
    sys = mb.sys;
  } else {
    sys = make_system(req.family, req.params, N + 2, "closed");
  }
  const ExternalField field = external_field(sys.weight);
  const auto zs = suite_samples();
  double fe = 0;
  for (int n = 2; n <= N; ++n)
    fe = std::max(fe, functional_equation_residual(sys, closed_pair(sys, req, n, &mb),
                                                   closed_pair(sys, req, n - 1, &mb), field,
                                                   n, zs));
  cs.push_back(ResidualCheck::make("functional-eq", fe, 1e-9));
  cs.push_back(ResidualCheck::make(
      "inhomogeneity-is-minus-vprime",
      abnew_constant_residual(sys, field, ladder_numeric(sys, field, 1), zs), 1e-9));
  if (req.family == "mb") {
    // the three reflection-coefficient terms must collapse to t/2
    const double t = param(req, "t", 1.0);
    const auto& r = mb.refl.r;
    double worst = 0;
    for (int n = 2; n <= N; ++n) {
      const double kr2 = std::pow(sys.kappa[n - 2] / sys.kappa[n - 1], 2.0);
      const double sum = -(n - 1.0) * r[n - 1] / r[n] - 0.5 * t * kr2 * r[n - 2] / r[n] +
                         0.5 * t * r[n - 1] * r[n - 1];
      worst = std::max(worst, std::abs(sum - 0.5 * t) / (0.5 * t));
    }
    cs.push_back(ResidualCheck::make("trailing-terms-t-over-2", worst, 1e-9));
  }
  return cs;
}

Checks suite_q_ladder(const SuiteRequest& req) {
  if (req.family != "rs") throw DomainError("q-ladder suite runs on the rs family");
  Checks cs;
  const QReal q(param(req, "q", 0.5));
  const int N = req.n;
  const OPUCSystem sys = rs_system(q, N + 1);
  const QExternalField qf = q_external_field(sys.weight, q);
  const auto zs = suite_samples();
  double coeffwise = 0, sampled = 0, lowering = 0, raising = 0;
  for (int n = 1; n <= N; ++n) {
    const double an = std::sqrt(1.0 - std::pow(q.q, n)) / (1.0 - q.q);
    ComplexPoly resid = q_difference(sys.phi[n], q) - sys.phi[n - 1] * cplx(an);
    coeffwise = std::max(coeffwise, resid.max_abs_coeff() / an);
    const LadderPair qp = q_ladder_numeric(sys, qf, n);
    for (cplx z : zs) {
      sampled = std::max(sampled, std::abs(qp.A(z) - an) / an);
      sampled = std::max(sampled, std::abs(qp.B(z)));
    }
    lowering = std::max(lowering, q_lowering_residual(sys, qp, q, n, zs));
    if (n >= 2)
      raising = std::max(raising, q_raising_residual(sys, rs_q_ladder(q, n - 1), q, n, zs));
  }
  cs.push_back(ResidualCheck::make("q-lowering-coefficientwise", coeffwise, 1e-13));
  cs.push_back(ResidualCheck::make("sampled-pair-vs-constant", sampled, 1e-9));
  cs.push_back(ResidualCheck::make("q-lowering-sampled", lowering, 1e-9));
  cs.push_back(ResidualCheck::make("q-raising", raising, 1e-9));
  return cs;
}

Checks suite_q_functional_eq(const SuiteRequest& req) {
  Checks cs;
  const auto zs = suite_samples();
  if (req.family == "cj") {
    // continuum check: the q-functional-equation left side at q -> 1 must
    // approach the classical right side -(n-1)/z - v'(z)
    const double a = param(req, "a", 1.0);
    const QReal q(1.0 - 1e-4);
    const OPUCSystem sys = cj_system(a, req.n + 1);
    const QExternalField qf = q_external_field(sys.weight, q);
    const ExternalField cf = external_field(sys.weight);
    double worst = 0;
    for (int n = 2; n <= std::min(req.n, 4); ++n) {
      const LadderPair pn = q_ladder_numeric(sys, qf, n);
      const LadderPair pm = q_ladder_numeric(sys, qf, n - 1);
      const double k_ratio = sys.kappa[n - 1] / sys.kappa[n - 2];
      const cplx p_ratio = sys.kappa[n] / sys.kappa[n - 2] * sys.phi0[n - 1] / sys.phi0[n];
      for (cplx z : zs) {
        const cplx lhs = pn.B(z) + pm.B(z) - k_ratio * pm.A(z) / z - p_ratio * pm.A(z);
        const cplx rhs = -(n - 1.0) / z - cf.vprime(z);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
    }
    cs.push_back(ResidualCheck::make("q-to-1-continuum", worst, 1e-3));
    return cs;
  }
  if (req.family != "rs") throw DomainError("q-functional-eq runs on rs (or cj for q->1)");
  const QReal q(param(req, "q", 0.5));
  const int N = req.n;
  const OPUCSystem sys = rs_system(q, N + 2);
  const QExternalField qf = q_external_field(sys.weight, q);
  std::vector<LadderPair> pairs(static_cast<size_t>(N) + 2);
  for (int j = 1; j <= N + 1; ++j) pairs[static_cast<size_t>(j)] = rs_q_ladder(q, j);
  double feq = 0, fediff = 0;
  for (int n = 2; n <= N; ++n)
    feq = std::max(feq, q_functional_equation_residual(sys, pairs, qf, n, zs));
  for (int m = 2; m <= N; ++m)
    fediff = std::max(fediff, q_fe_difference_residual(sys, pairs, q, m, zs));
  cs.push_back(ResidualCheck::make("q-functional-eq", feq, 1e-9));
  cs.push_back(ResidualCheck::make("q-difference-form", fediff, 1e-9));
  return cs;
}

Checks suite_dpii(const SuiteRequest& req) {
  if (req.family != "mb") throw DomainError("dpii suite runs on the mb family");
  Checks cs;
  const double t = param(req, "t", 1.0);
  const int N = req.n;
  const MbSystem mb = mb_system_toeplitz(t, N + 1);
  const double i0 = bessel_i(0, t), i1 = bessel_i(1, t);
  cs.push_back(ResidualCheck::make("seed-r1", std::abs(mb.refl.r[1] + i1 / i0), 1e-13));
  double rr = 0;
  for (int n = 1; n < N; ++n) {
    const double r = mb.refl.r[n];
    const double lhs = -(2.0 * n / t) * r / (1.0 - r * r);
    const double rhs = mb.refl.r[n + 1] + mb.refl.r[n - 1];
    rr = std::max(rr, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs) + std::abs(rhs)));
  }
  cs.push_back(ResidualCheck::make("recurrence-residual", rr, 1e-8));
  const ReflectionSequence dp = mb_dpii_extend(t, N);
  double agree = 0;
  for (int n = 0; n <= N; ++n) agree = std::max(agree, std::abs(dp.r[n] - mb.refl.r[n]));
  cs.push_back(ResidualCheck::make("dpii-vs-toeplitz", agree, 1e-8));
  return cs;
}

Checks suite_rn_ode(const SuiteRequest& req) {
  if (req.family != "mb") throw DomainError("rn-ode suite runs on the mb family");
  Checks cs;
  const double t = param(req, "t", 1.0);
  for (auto& c : mb_coefficient_odes(t, 4)) cs.push_back(c);
  const int n = std::max(req.n, 1);
  const MbSystem mb = mb_system_toeplitz(t, n + 1);
  const MbOdeResult ode = mb_rn_ode_integrate(n, t, 1e-3);
  cs.push_back(ResidualCheck::make(
      "ode-route-r" + std::to_string(n),
      std::abs(ode.r_end - mb.refl.r[n]) / std::abs(mb.refl.r[n]), 1e-6));
  for (int k = 1; k <= 3; ++k) {
    const MbOdeResult o = mb_rn_ode_integrate(k, t, 1e-3);
    // kappa_k^2 via determinant ratios of the Bessel moment table
    MomentTable mt;
    mt.N = k + 1;
    mt.c.resize(2 * mt.N + 1);
    for (int j = -mt.N; j <= mt.N; ++j)
      mt.c[static_cast<size_t>(j + mt.N)] = bessel_i(std::abs(j), t) / bessel_i(0, t);
    const double det_k = toeplitz_det(mt, k).value().real();
    const double det_k1 = toeplitz_det(mt, k + 1).value().real();
    const double k2 = det_k / det_k1;
    cs.push_back(ResidualCheck::make("quad-identity-kappa" + std::to_string(k),
                                     std::abs(o.kappa_sq_quad - k2) / k2, 1e-6));
  }
  return cs;
}

Checks suite_zeros(const SuiteRequest& req) {
  Checks cs;
  const int N = req.n;
  MbSystem mb;
  OPUCSystem sys;
  if (req.family == "mb") {
    mb = mb_system_toeplitz(param(req, "t", 1.0), N + 2);
    sys = mb.sys;
  } else {
    sys = make_system(req.family, req.params, N + 2, "closed");
  }
  const ExternalField field = external_field(sys.weight);
  double margin_defect = 0, root_resid = 0, reconstruction = 0, stationarity = 0,
         pair_id = 0;
  for (int n = 1; n <= N; ++n) {
    const RootSet rs = roots(sys.phi[n]);
    for (cplx z : rs.roots)
      margin_defect = std::max(margin_defect, std::abs(z) - (1.0 - 1e-10));
    for (double r : rs.residuals) root_resid = std::max(root_resid, r);
    ComplexPoly rebuilt = ComplexPoly::constant(sys.kappa[n]);
    for (cplx z : rs.roots) rebuilt = rebuilt * ComplexPoly{-z, 1.0};
    reconstruction = std::max(
        reconstruction, (rebuilt - sys.phi[n]).max_abs_coeff() / sys.phi[n].max_abs_coeff());
    bool separated = true;
    for (size_t i = 0; i < rs.roots.size() && separated; ++i) {
      if (std::abs(rs.roots[i]) < 1e-9) separated = false;
      for (size_t k = i + 1; k < rs.roots.size(); ++k)
        if (std::abs(rs.roots[i] - rs.roots[k]) < 1e-9) separated = false;
    }
    if (n >= 2 && separated)
      pair_id = std::max(pair_id, pair_sum_identity_residual(rs.roots));
    if (req.family != "rs" && req.family != "lebesgue" && req.family != "random" &&
        n <= std::min(N, 8) && n >= 1) {
      const LadderPair p = closed_pair(sys, req, n, &mb);
      stationarity = std::max(stationarity, stationarity_residual(rs.roots, field, p.A, n));
    }
  }
  cs.push_back(ResidualCheck::make("zeros-in-disk", std::max(0.0, margin_defect), 0.0));
  cs.push_back(ResidualCheck::make("root-residuals", root_resid, 1e-12));
  cs.push_back(ResidualCheck::make("coefficient-reconstruction", reconstruction, 1e-10));
  cs.push_back(ResidualCheck::make("pair-sum-identity", pair_id, 1e-10));
  if (req.family == "cj" || req.family == "sz" || req.family == "mb")
    cs.push_back(ResidualCheck::make("stationarity", stationarity, 1e-7));
  // constant-Q reconstruction at generic sample points
  if (req.family == "cj") {
    const double a = param(req, "a", 1.0);
    const int n = std::min(N, 6);
    const ComplexPoly& f = sys.phi[n];
    const ComplexPoly d1 = derivative(f), d2 = derivative(d1);
    const auto zsamp = sample_contour(8, 0.41);
    cplx qref = 0.0;
    double spread = 0.0;
    for (size_t i = 0; i < zsamp.size(); ++i) {
      const cplx z = zsamp[i];
      const cplx qv = -(z * (1.0 - z) * d2(z) +
                        ((1.0 - n - a) * (1.0 - z) - (2.0 * a + 1.0) * z) * d1(z)) /
                      f(z);
      if (i == 0) qref = qv;
      spread = std::max(spread, std::abs(qv - qref) / std::max(1.0, std::abs(qref)));
    }
    cs.push_back(ResidualCheck::make("constant-Q-spread", spread, 1e-7));
    cs.push_back(ResidualCheck::make(
        "constant-Q-value", std::abs(qref - n * (a + 1.0)) / (n * (a + 1.0)), 1e-7));
  }
  if (req.family == "sz") {
    const double a = param(req, "a", 1.0), b = param(req, "b", 0.5);
    const int n = std::min(N, 6);
    const ComplexPoly& f = sys.phi[n];
    const ComplexPoly d1 = derivative(f), d2 = derivative(d1);
    const auto zsamp = sample_contour(8, 0.41);
    double worst = 0.0;
    for (cplx z : zsamp) {
      cplx pref = -(n + a + b - 1.0) / z - (2.0 * a + 1.0) / (1.0 - z) +
                  (2.0 * b + 1.0) / (1.0 + z);
      cplx qform;
      if (n % 2 == 0) {
        pref -= (a - b) / (a + b + (a - b) * z);
        qform = double(n) * (a * (a + 1.0) * (1.0 + z) * (1.0 + z) -
                             b * (b + 1.0) * (1.0 - z) * (1.0 - z)) /
                (z * (1.0 - z * z) * (a + b + (a - b) * z));
      } else {
        pref -= (a + b) / (a - b + (a + b) * z);
        qform = (double(n) * (a * (a + 1.0) * (1.0 + z) * (1.0 + z) +
                              b * (b + 1.0) * (1.0 - z) * (1.0 - z) -
                              2.0 * a * b * (1.0 - z * z)) +
                 4.0 * a * b) /
                (z * (1.0 - z * z) * (a - b + (a + b) * z));
      }
      const cplx qv = -(d2(z) + pref * d1(z)) / f(z);
      worst = std::max(worst, std::abs(qv - qform) / std::max(1.0, std::abs(qform)));
    }
    cs.push_back(ResidualCheck::make("Q-reconstruction-vs-closed", worst, 1e-7));
  }
  return cs;
}

Checks suite_delta(const SuiteRequest& req) {
  Checks cs;
  const int N = req.n;
  OPUCSystem sys = make_system(req.family, req.params, N, "closed");
  double agree = 0;
  for (int n = 1; n <= N; ++n) agree = std::max(agree, delta(sys, n).rel_agreement);
  cs.push_back(ResidualCheck::make("brute-vs-lemma", agree, 1e-8));
  if (req.family == "cj") {
    const double a = param(req, "a", 1.0);
    double worst = 0;
    for (int n = 1; n <= N; ++n)
      worst = std::max(worst, disc_rel_diff(delta_cj_closed(a, n), delta(sys, n).closed));
    cs.push_back(ResidualCheck::make("family-closed-form", worst, 1e-10));
  } else if (req.family == "sz") {
    const double a = param(req, "a", 1.0), b = param(req, "b", 0.5);
    double worst = 0;
    for (int n = 1; n <= N; ++n)
      worst = std::max(worst, disc_rel_diff(delta_sz_closed(a, b, n), delta(sys, n).closed));
    cs.push_back(ResidualCheck::make("family-closed-form", worst, 1e-10));
  }
  return cs;
}

Checks suite_gen_disc(const SuiteRequest& req) {
  Checks cs;
  const int N = req.n;
  if (req.family == "cj") {
    const double a = param(req, "a", 1.0);
    const OPUCSystem sys = cj_system(a, N);
    double agree = 0;
    for (int n = 2; n <= N; ++n)
      agree = std::max(agree, generalized_discriminant(sys, n, OperatorTag::Derivative,
                                                       cj_ladder(a, n).A)
                                  .rel_agreement);
    cs.push_back(ResidualCheck::make("derivative-dual-route", agree, 1e-8));
    return cs;
  }
  if (req.family != "rs") throw DomainError("gen-disc runs on cj or rs");
  const QReal q(param(req, "q", 0.25));
  const OPUCSystem sys = rs_system(q, N);
  double agree = 0, formula = 0, hn_match = 0, rewrite = 0;
  for (int n = 2; n <= N; ++n) {
    const auto g =
        generalized_discriminant(sys, n, OperatorTag::QDifference, rs_q_ladder(q, n).A, &q);
    agree = std::max(agree, g.rel_agreement);
    formula = std::max(formula, disc_rel_diff(g.closed, rs_disc_phi(q, n)));
    hn_match = std::max(
        hn_match, disc_rel_diff(q_discriminant(rs_hn(q, n), q), rs_disc_hn(q, n)));
    rewrite = std::max(rewrite, disc_rel_diff(rs_disc_hn(q, n), rs_disc_hn_rewritten(q, n)));
  }
  cs.push_back(ResidualCheck::make("q-difference-dual-route", agree, 1e-8));
  cs.push_back(ResidualCheck::make("orthonormal-closed-form", formula, 1e-10));
  cs.push_back(ResidualCheck::make("hn-q-discriminant-vs-formula", hn_match, 1e-8));
  cs.push_back(ResidualCheck::make("rewriting-identity", rewrite, 1e-12));
  const std::vector<double> grid = {0.9, 0.99, 0.999};
  for (auto& c : rs_disc_q_limit(4, grid)) cs.push_back(c);
  return cs;
}

Checks suite_q_disc(const SuiteRequest&) {
  Checks cs;
  std::mt19937_64 rng(5150ull);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto rand_poly = [&](int deg) {
    std::vector<cplx> c(static_cast<size_t>(deg) + 1);
    for (auto& v : c) v = cplx(unif(rng), unif(rng));
    if (std::abs(c.back()) < 0.3) c.back() += cplx(1.0, 0.5);
    return ComplexPoly(std::move(c));
  };
  double forms = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const ComplexPoly p = rand_poly(3 + trial % 3);
    const QReal q(0.3 + 0.1 * trial);
    forms = std::max(forms, disc_rel_diff(q_discriminant(p, q), q_discriminant_alt(p, q)));
  }
  cs.push_back(ResidualCheck::make("two-product-forms", forms, 1e-11));
  double quad_spec = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const cplx A(unif(rng) + 2.0, unif(rng));
    const cplx B(unif(rng), unif(rng));
    const cplx C(unif(rng), unif(rng));
    const QReal q(0.2 + 0.2 * trial);
    const cplx expect = q.q * B * B - (1.0 + q.q) * (1.0 + q.q) * A * C;
    const cplx got = q_discriminant(ComplexPoly{C, B, A}, q).value();
    quad_spec = std::max(quad_spec, std::abs(got - expect) / std::max(1.0, std::abs(expect)));
  }
  cs.push_back(ResidualCheck::make("quadratic-specialization", quad_spec, 1e-13));
  const ComplexPoly p2 = rand_poly(2);
  const cplx classical = discriminant(p2).value();
  const cplx nearly = q_discriminant(p2, QReal(1.0 - 1e-10)).value();
  cs.push_back(ResidualCheck::make("q-to-1-classical",
                                   std::abs(classical - nearly) /
                                       std::max(1.0, std::abs(classical)),
                                   1e-8));
  // continuity smoke: |D(q + delta) - D(q)| <= C delta with C bounded
  const ComplexPoly p3 = rand_poly(4);
  const double delta_q = 1e-6;
  const cplx d1 = q_discriminant(p3, QReal(0.5)).value();
  const cplx d2 = q_discriminant(p3, QReal(0.5 + delta_q)).value();
  cs.push_back(ResidualCheck::make(
      "q-continuity-smoke", std::abs(d2 - d1) / (delta_q * std::max(1.0, std::abs(d1))),
      100.0));
  return cs;
}

Checks suite_adjoint(const SuiteRequest& req) {
  Checks cs;
  std::mt19937_64 rng(777ull);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto rand_poly = [&](int deg) {
    std::vector<cplx> c(static_cast<size_t>(deg) + 1);
    for (auto& v : c) v = cplx(unif(rng), unif(rng));
    return ComplexPoly(std::move(c));
  };
  if (req.family == "rs") {
    const QReal q(param(req, "q", 0.5));
    const OPUCSystem sys = rs_system(q, 4);
    const QExternalField qf = q_external_field(sys.weight, q);
    double worst = 0;
    worst = std::max(worst, q_adjoint_residual(sys.weight, qf, rs_q_ladder(q, 1), 1,
                                               ComplexPoly::constant(1.0),
                                               ComplexPoly::constant(1.0)));
    for (int trial = 0; trial < 5; ++trial) {
      const int n = 1 + trial % 3;
      worst = std::max(worst, q_adjoint_residual(sys.weight, qf, rs_q_ladder(q, n), n,
                                                 rand_poly(3 + trial), rand_poly(8 - trial)));
    }
    cs.push_back(ResidualCheck::make("q-adjoint", worst, 1e-8));
    return cs;
  }
  const double a = param(req, "a", 1.0);
  const OPUCSystem sys = cj_system(a, 4);
  const ExternalField field = external_field(sys.weight);
  double worst = adjoint_residual(sys.weight, field, cj_ladder(a, 1), 1,
                                  ComplexPoly::constant(1.0), ComplexPoly::constant(1.0));
  cs.push_back(ResidualCheck::make("adjoint-constants", worst, 1e-9));
  worst = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 1 + trial % 3;
    worst = std::max(worst, adjoint_residual(sys.weight, field, cj_ladder(a, n), n,
                                             rand_poly(3 + trial), rand_poly(8 - trial)));
  }
  cs.push_back(ResidualCheck::make("adjoint-random", worst, 1e-8));
  return cs;
}

}  // namespace

const std::vector<SuiteInfo>& suite_registry() { return kSuites; }

const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : kSuites)
    if (s.name == name) return &s;
  return nullptr;
}

VerificationReport run_suite(const SuiteRequest& req) {
  const SuiteInfo* info = find_suite(req.suite);
  if (!info) throw DomainError("unknown suite: " + req.suite);
  VerificationReport rep;
  rep.suite = info->anchor;
  rep.suite_name = info->name;
  rep.family = req.family;
  rep.params = req.params;
  const auto t0 = std::chrono::steady_clock::now();
  if (req.suite == "recurrences") rep.checks = suite_recurrences(req);
  else if (req.suite == "cd") rep.checks = suite_cd(req);
  else if (req.suite == "ladder") rep.checks = suite_ladder(req);
  else if (req.suite == "ode") rep.checks = suite_ode(req);
  else if (req.suite == "functional-eq") rep.checks = suite_functional_eq(req);
  else if (req.suite == "q-ladder") rep.checks = suite_q_ladder(req);
  else if (req.suite == "q-functional-eq") rep.checks = suite_q_functional_eq(req);
  else if (req.suite == "dpii") rep.checks = suite_dpii(req);
  else if (req.suite == "rn-ode") rep.checks = suite_rn_ode(req);
  else if (req.suite == "zeros-stationarity") rep.checks = suite_zeros(req);
  else if (req.suite == "delta") rep.checks = suite_delta(req);
  else if (req.suite == "gen-disc") rep.checks = suite_gen_disc(req);
  else if (req.suite == "q-disc") rep.checks = suite_q_disc(req);
  else if (req.suite == "adjoint") rep.checks = suite_adjoint(req);
  const auto t1 = std::chrono::steady_clock::now();
  rep.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  Config single;
  single.suites.push_back(req);
  rep.config_hash = config_hash(single);
  return rep;
}

std::vector<VerificationReport> run_report_all(const Config& cfg) {
  std::vector<VerificationReport> out;
  const std::string hash = config_hash(cfg);
  for (const auto& req : cfg.suites) {
    VerificationReport r = run_suite(req);
    r.config_hash = hash;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

json check_to_json(const ResidualCheck& c) {
  json j;
  j["name"] = c.name;
  j["residual"] = c.residual;
  j["scale"] = c.scale;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  return j;
}

json report_to_json_obj(const VerificationReport& r, bool with_runtime) {
  json j;
  j["schema"] = 1;
  j["suite"] = r.suite;
  j["name"] = r.suite_name;
  j["family"] = r.family;
  j["params"] = json::object();
  for (const auto& [k, v] : r.params) j["params"][k] = v;
  j["checks"] = json::array();
  for (const auto& c : r.checks) j["checks"].push_back(check_to_json(c));
  j["pass"] = r.all_pass();
  if (with_runtime) j["runtime_ms"] = r.runtime_ms;
  j["config_hash"] = r.config_hash;
  return j;
}

}  // namespace

std::string report_to_json(const VerificationReport& r) {
  return report_to_json_obj(r, true).dump(2) + "\n";
}

std::string aggregate_to_json(const std::vector<VerificationReport>& rs,
                              const std::string& cfg_hash) {
  json j;
  j["schema"] = 1;
  j["config_hash"] = cfg_hash;
  j["suites"] = json::array();
  long long total = 0;
  bool pass = true;
  for (const auto& r : rs) {
    j["suites"].push_back(report_to_json_obj(r, true));
    total += r.runtime_ms;
    pass = pass && r.all_pass();
  }
  j["pass"] = pass;
  j["runtime_ms"] = total;
  return j.dump(2) + "\n";
}

std::string aggregate_to_json_deterministic(const std::vector<VerificationReport>& rs,
                                            const std::string& cfg_hash) {
  json j;
  j["schema"] = 1;
  j["config_hash"] = cfg_hash;
  j["suites"] = json::array();
  bool pass = true;
  for (const auto& r : rs) {
    j["suites"].push_back(report_to_json_obj(r, false));
    pass = pass && r.all_pass();
  }
  j["pass"] = pass;
  return j.dump(2) + "\n";
}

void print_report(std::ostream& os, const VerificationReport& r) {
  os << "suite " << r.suite_name << " (" << r.suite << ")";
  if (!r.family.empty()) {
    os << "  family=" << r.family;
    for (const auto& [k, v] : r.params) os << " " << k << "=" << v;
  }
  os << "\n";
  char buf[160];
  for (const auto& c : r.checks) {
    std::snprintf(buf, sizeof buf, "  %-34s residual %.3e  tol %.1e  %s\n", c.name.c_str(),
                  c.residual, c.tolerance, c.pass ? "PASS" : "FAIL");
    os << buf;
  }
}

void print_summary(std::ostream& os, const std::vector<VerificationReport>& rs) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%-20s %-10s %-18s %7s %10s  %s\n", "suite", "family",
                "params", "checks", "worst", "status");
  os << buf;
  bool all = true;
  for (const auto& r : rs) {
    double worst = 0.0;
    for (const auto& c : r.checks) worst = std::max(worst, c.residual);
    std::ostringstream ps;
    for (const auto& [k, v] : r.params) ps << k << "=" << v << " ";
    const bool pass = r.all_pass();
    all = all && pass;
    std::snprintf(buf, sizeof buf, "%-20s %-10s %-18s %7zu %10.2e  %s\n",
                  r.suite_name.c_str(), r.family.c_str(), ps.str().c_str(),
                  r.checks.size(), worst, pass ? "PASS" : "FAIL");
    os << buf;
  }
  os << (all ? "ALL SUITES PASS\n" : "SUITE FAILURES PRESENT\n");
}

std::string system_to_json(const OPUCSystem& sys) {
  json j;
  j["schema"] = 1;
  j["N"] = sys.N;
  j["family"] = sys.weight.name();
  j["params"] = json::object();
  switch (sys.weight.family) {
    case Family::CircularJacobi: j["params"]["a"] = sys.weight.a; break;
    case Family::Szego:
      j["params"]["a"] = sys.weight.a;
      j["params"]["b"] = sys.weight.b;
      break;
    case Family::ModifiedBessel: j["params"]["t"] = sys.weight.t; break;
    case Family::RogersSzego: j["params"]["q"] = sys.weight.q; break;
    default: break;
  }
  switch (sys.route) {
    case Route::ClosedForm: j["route"] = "closed"; break;
    case Route::SzegoRecurrence: j["route"] = "recurrence"; break;
    case Route::Moments: j["route"] = "moments"; break;
  }
  j["kappa"] = sys.kappa;
  auto cvec = [](const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx c : v) a.push_back(json::array({c.real(), c.imag()}));
    return a;
  };
  j["phi0"] = cvec(sys.phi0);
  j["ell"] = cvec(sys.ell);
  j["phi"] = json::array();
  j["phistar"] = json::array();
  for (int n = 0; n <= sys.N; ++n) {
    j["phi"].push_back(cvec(sys.phi[n].coeffs()));
    j["phistar"].push_back(cvec(sys.phistar[n].coeffs()));
  }
  return j.dump(2) + "\n";
}

void write_residual_dat(std::ostream& os, const VerificationReport& r) {
  os << "# suite " << r.suite_name << " : check-index residual tolerance\n";
  os.precision(17);
  int idx = 0;
  for (const auto& c : r.checks)
    os << idx++ << ' ' << c.residual << ' ' << c.tolerance << " # " << c.name << "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + tmp);
    out << content;
    if (!out) throw IoError("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("atomic rename failed: " + path);
}

WeightSpec parse_custom_moments_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("custom moments parse error: ") + e.what());
  }
  if (!j.is_array()) throw IoError("custom moments: expected a JSON array of [re, im]");
  std::vector<cplx> c;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw IoError("custom moments: each entry must be [re, im]");
    c.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return WeightSpec::custom_moments(std::move(c));
}

std::string discriminant_csv(const std::string& family,
                             const std::map<std::string, double>& params, int nmax) {
  OPUCSystem sys = make_system(family, params, nmax, "closed");
  std::ostringstream os;
  os.precision(17);
  os << "family,params,n,method,log_abs,phase_re,phase_im,rel_agreement\n";
  std::ostringstream ps;
  for (const auto& [k, v] : params) ps << k << "=" << v << ";";
  for (int n = 1; n <= nmax; ++n) {
    const DeltaPair d = delta(sys, n);
    os << family << ',' << ps.str() << ',' << n << ",brute," << d.brute.log_abs << ','
       << d.brute.phase.real() << ',' << d.brute.phase.imag() << ',' << d.rel_agreement
       << "\n";
    os << family << ',' << ps.str() << ',' << n << ",closed," << d.closed.log_abs << ','
       << d.closed.phase.real() << ',' << d.closed.phase.imag() << ',' << d.rel_agreement
       << "\n";
  }
  return os.str();
}

}  // namespace opuc
