#include "opuc/weights.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "opuc/errors.hpp"

namespace opuc {

namespace {

bool is_nonneg_integer(double x) {
  return x >= 0.0 && x == std::floor(x);
}

double lgamma_d(double x) { return std::lgamma(x); }

// q^{k+1/2} factors of the Rogers-Szego weight down to 1e-17
std::vector<double> rs_factors(double q) {
  std::vector<double> f;
  double v = std::sqrt(q);
  while (v > 1e-17 && f.size() < 4000) {
    f.push_back(v);
    v *= q;
  }
  return f;
}

}  // namespace

WeightSpec WeightSpec::lebesgue() { return WeightSpec{}; }

WeightSpec WeightSpec::circular_jacobi(double a) {
  if (!(a > -0.5)) throw DomainError("circular Jacobi requires a > -1/2");
  WeightSpec w;
  w.family = Family::CircularJacobi;
  w.a = a;
  return w;
}

WeightSpec WeightSpec::szego(double a, double b) {
  if (!(a > -0.5 && b > -0.5)) throw DomainError("Szego weight requires a, b > -1/2");
  WeightSpec w;
  w.family = Family::Szego;
  w.a = a;
  w.b = b;
  return w;
}

WeightSpec WeightSpec::modified_bessel(double t) {
  if (!(std::abs(t) <= 50.0)) throw DomainError("modified Bessel weight requires |t| <= 50");
  WeightSpec w;
  w.family = Family::ModifiedBessel;
  w.t = t;
  return w;
}

WeightSpec WeightSpec::rogers_szego(double q) {
  if (!(q > 0.0 && q < 1.0)) throw DomainError("Rogers-Szego weight requires 0 < q < 1");
  WeightSpec w;
  w.family = Family::RogersSzego;
  w.q = q;
  return w;
}

WeightSpec WeightSpec::custom_moments(std::vector<cplx> c) {
  if (c.empty()) throw DomainError("CustomMoments: need at least c_0");
  if (std::abs(c[0] - 1.0) > 1e-10)
    throw DomainError("CustomMoments: c_0 must be 1 (normalized measure)");
  WeightSpec w;
  w.family = Family::CustomMoments;
  w.custom = std::move(c);
  return w;
}

double WeightSpec::norm_constant() const {
  switch (family) {
    case Family::Lebesgue:
      return 1.0 / (2.0 * M_PI);
    case Family::CircularJacobi:
      return std::exp(2.0 * lgamma_d(a + 1.0) - lgamma_d(2.0 * a + 1.0)) / (2.0 * M_PI);
    case Family::Szego:
      return std::pow(2.0, -1.0 - 2.0 * a - 2.0 * b) *
             std::exp(lgamma_d(a + b + 1.0) - lgamma_d(a + 0.5) - lgamma_d(b + 0.5));
    case Family::ModifiedBessel:
      return 1.0 / (2.0 * M_PI * bessel_i(0, t));
    case Family::RogersSzego: {
      // triple-product normalization: with the (q;q)_inf factor in the
      // numerator the moments are exactly c_j = (-1)^j q^{j^2/2}
      QReal qq(q);
      return q_pochhammer_inf(q, qq) / (2.0 * M_PI);
    }
    case Family::CustomMoments:
      throw DomainError("CustomMoments has no pointwise density");
  }
  return 0.0;
}

double WeightSpec::density(double theta) const {
  switch (family) {
    case Family::Lebesgue:
      return norm_constant();
    case Family::CircularJacobi: {
      const double s = 2.0 * std::abs(std::sin(0.5 * theta));
      return norm_constant() * std::pow(s, 2.0 * a);
    }
    case Family::Szego: {
      const double s = 2.0 * std::abs(std::sin(0.5 * theta));
      const double c = 2.0 * std::abs(std::cos(0.5 * theta));
      return norm_constant() * std::pow(s, 2.0 * a) * std::pow(c, 2.0 * b);
    }
    case Family::ModifiedBessel:
      return norm_constant() * std::exp(t * std::cos(theta));
    case Family::RogersSzego: {
      const double ct = 2.0 * std::cos(theta);
      double prod = 1.0;
      for (double f : rs_factors(q)) prod *= 1.0 - f * ct + f * f;
      return norm_constant() * prod;
    }
    case Family::CustomMoments:
      throw DomainError("CustomMoments has no pointwise density");
  }
  return 0.0;
}

bool WeightSpec::needs_large_grid() const {
  switch (family) {
    case Family::CircularJacobi:
      return !is_nonneg_integer(a);
    case Family::Szego:
      return !is_nonneg_integer(a) || !is_nonneg_integer(b);
    default:
      return false;
  }
}

std::string WeightSpec::name() const {
  switch (family) {
    case Family::Lebesgue: return "lebesgue";
    case Family::CircularJacobi: return "cj";
    case Family::Szego: return "sz";
    case Family::ModifiedBessel: return "mb";
    case Family::RogersSzego: return "rs";
    case Family::CustomMoments: return "custom";
  }
  return "?";
}

std::string WeightSpec::params_str() const {
  std::ostringstream os;
  switch (family) {
    case Family::CircularJacobi: os << "a=" << a; break;
    case Family::Szego: os << "a=" << a << ",b=" << b; break;
    case Family::ModifiedBessel: os << "t=" << t; break;
    case Family::RogersSzego: os << "q=" << q; break;
    default: break;
  }
  return os.str();
}

ExternalField external_field(const WeightSpec& w) {
  ExternalField f;
  switch (w.family) {
    case Family::Lebesgue: {
      const double c = std::log(w.norm_constant());
      f.vprime = [](cplx) { return cplx(0.0); };
      f.dd = [](cplx, cplx) { return cplx(0.0); };
      f.log_weight = [c](cplx) { return cplx(c); };
      break;
    }
    case Family::CircularJacobi: {
      const double a = w.a;
      const double lc = std::log(w.norm_constant());
      f.vprime = [a](cplx z) { return a / z + 2.0 * a / (1.0 - z); };
      f.dd = [a](cplx z, cplx zeta) {
        return -a / (z * zeta) + 2.0 * a / ((1.0 - z) * (1.0 - zeta));
      };
      // |1-z|^{2a} continued as z^{-a} (1-z)^a (z-1)^a
      f.log_weight = [a, lc](cplx z) {
        return lc + a * (-std::log(z) + std::log(1.0 - z) + std::log(z - 1.0));
      };
      break;
    }
    case Family::Szego: {
      const double a = w.a, b = w.b;
      const double lc = std::log(w.norm_constant());
      f.vprime = [a, b](cplx z) {
        return (a + b) / z + 2.0 * a / (1.0 - z) - 2.0 * b / (1.0 + z);
      };
      f.dd = [a, b](cplx z, cplx zeta) {
        return -(a + b) / (z * zeta) + 2.0 * a / ((1.0 - z) * (1.0 - zeta)) +
               2.0 * b / ((1.0 + z) * (1.0 + zeta));
      };
      // |1-z|^{2a} |1+z|^{2b} continued as z^{-a-b} (1-z)^a (z-1)^a (1+z)^{2b}
      f.log_weight = [a, b, lc](cplx z) {
        return lc - (a + b) * std::log(z) + a * (std::log(1.0 - z) + std::log(z - 1.0)) +
               2.0 * b * std::log(1.0 + z);
      };
      break;
    }
    case Family::ModifiedBessel: {
      const double t = w.t;
      const double lc = std::log(w.norm_constant());
      f.vprime = [t](cplx z) { return -0.5 * t * (1.0 - 1.0 / (z * z)); };
      f.dd = [t](cplx z, cplx zeta) {
        return -0.5 * t * (1.0 / (z * zeta * zeta) + 1.0 / (z * z * zeta));
      };
      f.log_weight = [t, lc](cplx z) { return lc + 0.5 * t * (z + 1.0 / z); };
      break;
    }
    case Family::RogersSzego: {
      const auto fac = rs_factors(w.q);
      const double lc = std::log(w.norm_constant());
      f.vprime = [fac](cplx z) {
        cplx s = 0.0;
        for (double c : fac)
          s += c / (1.0 - c * z) - c / (z * (z - c));
        return s;
      };
      f.dd = [fac](cplx z, cplx zeta) {
        cplx s = 0.0;
        for (double c : fac) {
          s += c * c / ((1.0 - c * z) * (1.0 - c * zeta));
          s += c * (z + zeta - c) / (z * (z - c) * zeta * (zeta - c));
        }
        return s;
      };
      f.log_weight = [fac, lc](cplx z) {
        cplx s = lc;
        for (double c : fac) s += std::log(1.0 - c * z) + std::log(1.0 - c / z);
        return s;
      };
      break;
    }
    case Family::CustomMoments:
      throw DomainError("no external field for CustomMoments");
  }
  return f;
}

QExternalField q_external_field(const WeightSpec& w, const QReal& q) {
  QExternalField qf{q, nullptr, nullptr};
  if (w.family == Family::RogersSzego) {
    if (std::abs(w.q - q.q) > 0.0)
      throw DomainError("q of the field must match the Rogers-Szego weight");
    const double qq = q.q, sq = q.sqrt_q;
    qf.u = [qq, sq](cplx z) { return sq / (1.0 - qq) + qq / ((1.0 - qq) * z); };
    qf.qdd = [qq](cplx z, cplx zeta) { return -1.0 / ((1.0 - qq) * zeta * z); };
    return qf;
  }
  if (!w.has_density()) throw DomainError("no q-external field for CustomMoments");
  // generic fallback through the continued weight:
  //   u(y) w(y) = -(D_q w)(y/q) evaluated via w(y/q) and w(y)
  ExternalField cf = external_field(w);
  const double qq = q.q;
  auto wc = [cf](cplx z) { return std::exp(cf.log_weight(z)); };
  auto u = [wc, qq](cplx y) {
    const cplx wy = wc(y);
    const cplx wyq = wc(y / qq);
    return -qq * (wyq - wy) / ((1.0 - qq) * y * wy);
  };
  qf.u = u;
  qf.qdd = [u, qq](cplx z, cplx zeta) {
    return (u(zeta) - u(qq * z)) / (zeta - qq * z);
  };
  return qf;
}

CircleGrid CircleGrid::build(const WeightSpec& spec, int M) {
  CircleGrid g;
  g.M = M;
  g.zeta.resize(M);
  g.w.resize(M);
  for (int m = 0; m < M; ++m) {
    const double theta = 2.0 * M_PI * (m + 0.5) / M;
    g.zeta[m] = std::polar(1.0, theta);
    g.w[m] = spec.density(theta);
  }
  return g;
}

int default_grid_size(const WeightSpec& w, int N) {
  if (const char* env = std::getenv("OPUC_GRID_M")) {
    const int m = std::atoi(env);
    if (m > 0) return m;
  }
  if (w.needs_large_grid()) return std::max(4096, 64 * N);
  return std::max(256, 8 * N + 8);
}

}  // namespace opuc
