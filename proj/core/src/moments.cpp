#include "opuc/moments.hpp"

#include <algorithm>
#include <cmath>

#include "opuc/errors.hpp"

namespace opuc {

namespace {

constexpr int kMaxGrid = 1 << 22;
constexpr double kDriftTarget = 1e-12;

// moments on one midpoint grid; w values evaluated once, e^{-ij theta} by recursion
std::vector<cplx> moments_on_grid(const WeightSpec& w, int N, int M) {
  std::vector<double> wv(M);
  std::vector<cplx> zinv(M);
  for (int m = 0; m < M; ++m) {
    const double theta = 2.0 * M_PI * (m + 0.5) / M;
    wv[m] = w.density(theta);
    zinv[m] = std::polar(1.0, -theta);
  }
  std::vector<cplx> c(2 * N + 1);
  std::vector<cplx> e(M, cplx(1.0));
  for (int j = 0; j <= N; ++j) {
    KahanSum<cplx> s;
    for (int m = 0; m < M; ++m) s.add(e[m] * wv[m]);
    const cplx cj = s.value() * (2.0 * M_PI / M);
    c[static_cast<size_t>(N + j)] = cj;
    c[static_cast<size_t>(N - j)] = std::conj(cj);
    if (j < N)
      for (int m = 0; m < M; ++m) e[m] *= zinv[m];
  }
  return c;
}

double table_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool half_integer_exponents(const WeightSpec& w) {
  auto ok = [](double x) { return std::floor(2.0 * x) == 2.0 * x; };
  if (w.family == Family::CircularJacobi) return ok(w.a);
  if (w.family == Family::Szego) return ok(w.a) && ok(w.b);
  return false;
}

}  // namespace

MomentTable trig_moments(const WeightSpec& w, int N, int M) {
  MomentTable t;
  t.N = N;
  if (w.family == Family::CustomMoments) {
    if (static_cast<int>(w.custom.size()) < N + 1)
      throw DomainError("CustomMoments: table shorter than requested order");
    t.c.resize(2 * N + 1);
    for (int j = 0; j <= N; ++j) {
      t.c[static_cast<size_t>(N + j)] = w.custom[j];
      t.c[static_cast<size_t>(N - j)] = std::conj(w.custom[j]);
    }
    return t;
  }
  if (M > 0) {
    if (M < 2 * N + 2) throw GridTooCoarse("trig_moments: need M >= 2N+2");
    t.c = moments_on_grid(w, N, M);
    t.grid_size = M;
    return t;
  }

  int m = std::max(default_grid_size(w, N), 2 * N + 2);
  const bool richardson = w.needs_large_grid() && half_integer_exponents(w);
  std::vector<cplx> prev = moments_on_grid(w, N, m);
  std::vector<cplx> prev_extrap;
  while (true) {
    const int m2 = 2 * m;
    std::vector<cplx> cur = moments_on_grid(w, N, m2);
    std::vector<cplx> accepted = cur;
    double drift;
    if (richardson) {
      // kink singularities at +-1 sit mid-cell: error expansion runs in even
      // powers of 1/M, so one Richardson step removes the M^-2 term
      std::vector<cplx> extrap(cur.size());
      for (size_t i = 0; i < cur.size(); ++i) extrap[i] = (4.0 * cur[i] - prev[i]) / 3.0;
      drift = prev_extrap.empty() ? table_diff(extrap, cur) : table_diff(extrap, prev_extrap);
      accepted = extrap;
      prev_extrap = std::move(extrap);
    } else {
      drift = table_diff(cur, prev);
    }
    if (drift < kDriftTarget || m2 >= kMaxGrid) {
      t.c = richardson ? prev_extrap : cur;
      t.grid_size = m2;
      t.drift = drift;
      return t;
    }
    prev = std::move(cur);
    m = m2;
  }
}

cplx LogDet::value() const {
  if (std::abs(log_abs) > 300.0)
    throw NumericalError("LogDet::value: magnitude outside the binary64 range");
  return std::exp(log_abs) * phase;
}

LogDet toeplitz_det(const MomentTable& m, int n) {
  if (n > m.N + 1) throw DomainError("toeplitz_det: order exceeds moment table");
  LogDet d;
  if (n == 0) return d;
  std::vector<std::vector<cplx>> A(n, std::vector<cplx>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) A[j][k] = m.moment(j - k);
  double sign_swaps = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(A[col][col]);
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > best) {
        best = std::abs(A[r][col]);
        piv = r;
      }
    if (best < 1e-300) throw SingularMatrix("toeplitz_det: pivot underflow");
    if (piv != col) {
      std::swap(A[piv], A[col]);
      sign_swaps = -sign_swaps;
    }
    const cplx p = A[col][col];
    d.log_abs += std::log(std::abs(p));
    d.phase *= p / std::abs(p);
    for (int r = col + 1; r < n; ++r) {
      const cplx f = A[r][col] / p;
      for (int k = col; k < n; ++k) A[r][k] -= f * A[col][k];
    }
  }
  d.phase *= sign_swaps;
  return d;
}

OPUCSystem system_from_moments(const MomentTable& m, int N, WeightSpec tag) {
  if (N > m.N) throw DomainError("system_from_moments: order exceeds moment table");
  const int n = N + 1;
  // Gram matrix G_{jk} = (z^j, z^k) = c_{k-j}, Hermitian Toeplitz
  std::vector<std::vector<cplx>> L(n, std::vector<cplx>(n, cplx(0.0)));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k <= j; ++k) {
      cplx s = m.moment(k - j);
      for (int p = 0; p < k; ++p) s -= L[j][p] * std::conj(L[k][p]);
      if (k == j) {
        if (!(s.real() > 0.0) || std::abs(s.imag()) > 1e-10 * s.real())
          throw NotPositiveDefinite("moment matrix not positive definite", j);
        L[j][j] = std::sqrt(s.real());
      } else {
        L[j][k] = s / L[k][k];
      }
    }
  }
  // rows of L^{-1} are the polynomial coefficients: phi_n = sum_j W_{nj} z^j
  std::vector<std::vector<cplx>> W(n, std::vector<cplx>(n, cplx(0.0)));
  for (int r = 0; r < n; ++r) {
    W[r][r] = 1.0 / L[r][r];
    for (int j = r - 1; j >= 0; --j) {
      cplx s = 0.0;
      for (int k = j; k < r; ++k) s += L[r][k] * W[k][j];
      W[r][j] = -s / L[r][r];
    }
  }
  OPUCSystem s;
  s.N = N;
  s.weight = tag;
  s.route = Route::Moments;
  s.kappa.resize(n);
  s.phi0.resize(n);
  s.ell.resize(n, cplx(0.0));
  s.phi.resize(n);
  s.phistar.resize(n);
  for (int r = 0; r < n; ++r) {
    std::vector<cplx> coeffs(W[r].begin(), W[r].begin() + r + 1);
    s.phi[r] = ComplexPoly(std::move(coeffs));
    s.phistar[r] = reciprocal(s.phi[r]);
    s.kappa[r] = s.phi[r].leading().real();
    s.phi0[r] = s.phi[r].coeff(0);
    if (r >= 1) s.ell[r] = s.phi[r].coeff(r - 1);
  }
  return s;
}

QuadContext QuadContext::make(const WeightSpec& w, int degree_hint, int M) {
  if (!w.has_density()) throw DomainError("QuadContext requires a pointwise density");
  if (M == 0) {
    M = default_grid_size(w, degree_hint);
    if (w.needs_large_grid()) M = std::max(M, 1 << 18);
  }
  return QuadContext{w, CircleGrid::build(w, M)};
}

cplx QuadContext::inner(const ComplexPoly& f, const ComplexPoly& g) const {
  return grid.integrate([&](cplx zeta) { return f(zeta) * std::conj(g(zeta)); });
}

cplx inner_product(const ComplexPoly& f, const ComplexPoly& g, const WeightSpec& w, int M) {
  if (w.family == Family::CustomMoments) {
    const int N = static_cast<int>(w.custom.size()) - 1;
    if (f.degree() > N || g.degree() > N)
      throw DomainError("inner_product: CustomMoments table too short for degrees");
    MomentTable t = trig_moments(w, N);
    KahanSum<cplx> s;
    for (int j = 0; j <= f.degree(); ++j)
      for (int k = 0; k <= g.degree(); ++k)
        s.add(f.coeff(j) * std::conj(g.coeff(k)) * t.moment(k - j));
    return s.value();
  }
  return QuadContext::make(w, std::max(f.degree(), g.degree()), M).inner(f, g);
}

}  // namespace opuc
