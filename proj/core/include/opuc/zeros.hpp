#ifndef OPUC_ZEROS_HPP
#define OPUC_ZEROS_HPP

#include <iosfwd>
#include <span>
#include <vector>

#include "opuc/complex_poly.hpp"
#include "opuc/ladder_types.hpp"
#include "opuc/weights.hpp"

namespace opuc {

struct RootSet {
  std::vector<cplx> roots;       // sorted by argument, then modulus
  std::vector<double> residuals; // |p(z_j)| / (sum_k |a_k| |z_j|^k)
  int iterations = 0;
};

/// Aberth-Ehrlich simultaneous iteration with Newton polish; initial points on
/// the circle of radius |a_0/a_n|^{1/n} with a fixed 1e-3 angular offset.
RootSet roots(const ComplexPoly& p);

/// True iff max |z_j| < 1 - margin.
bool assert_in_disk(const RootSet& rs, double margin = 1e-10);

/// log T = sum_j [(1-n) log z_j - v(z_j) - log A_n(z_j)] + 2 sum_{j<k} log(z_j - z_k).
cplx t_function_log(std::span<const cplx> zs, const ExternalField& field,
                    const LadderCoeff& A, int n);

/// exp of t_function_log when the magnitude fits binary64.
cplx t_function(std::span<const cplx> zs, const ExternalField& field, const LadderCoeff& A,
                int n);

/// Circular Jacobi T-function in its family-specific form
/// prod z_j^{1-n-a} (1-z_j)^{a+1} (z_j-1)^a prod (z_j-z_k)^2 (log form).
cplx cj_t_function_log(std::span<const cplx> zs, double a, int n);

/// max_j of the stationarity defect
/// |-v'(z_j) - A'(z_j)/A(z_j) - (n-1)/z_j + 2 sum_{k != j} 1/(z_j - z_k)| / scale.
double stationarity_residual(std::span<const cplx> zs, const ExternalField& field,
                             const LadderCoeff& A, int n);

/// Residual of 2 sum_{k != j} 1/(z_j-z_k) = f''(z_j)/f'(z_j) with f = prod (z - z_j).
double pair_sum_identity_residual(std::span<const cplx> zs);

/// CSV export: header "re,im,abs,residual", one row per root.
void write_roots_csv(std::ostream& os, const RootSet& rs);

}  // namespace opuc

#endif  // OPUC_ZEROS_HPP
