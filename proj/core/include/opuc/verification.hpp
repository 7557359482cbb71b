#ifndef OPUC_VERIFICATION_HPP
#define OPUC_VERIFICATION_HPP

#include <string>
#include <vector>

namespace opuc {

/// One named residual check against its tolerance.
struct ResidualCheck {
  std::string name;
  double residual = 0.0;
  double scale = 1.0;      // normalization the residual is already relative to
  double tolerance = 0.0;
  bool pass = false;

  static ResidualCheck make(std::string name, double residual, double tolerance,
                            double scale = 1.0) {
    ResidualCheck c;
    c.name = std::move(name);
    c.residual = residual;
    c.scale = scale;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    return c;
  }
};

inline bool all_pass(const std::vector<ResidualCheck>& cs) {
  for (const auto& c : cs)
    if (!c.pass) return false;
  return true;
}

}  // namespace opuc

#endif  // OPUC_VERIFICATION_HPP
