#ifndef APXXX_MODEL_HPP
#define APXXX_MODEL_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "apxxx/linalg.hpp"

namespace apxxx {

// Hermiticity regime of the antiperiodic transfer matrix: purely imaginary
// crossing parameter with real inhomogeneities, the mirrored case, or
// neither (the exact-diagonalization oracle refuses the last one).
enum class Regime { ImaginaryEta, RealEta, Generic };

std::string regime_name(Regime r);
Regime regime_from_name(const std::string& name);

struct ChainSpec {
  int sites = 0;                // N
  std::vector<int> twice_spin;  // 2 s_n, positive integers
  Cx eta;
  std::vector<Cx> inhom;  // eta_n
  Regime regime = Regime::Generic;

  double spin(int n) const { return 0.5 * twice_spin[n]; }
  int local_dim(int n) const { return twice_spin[n] + 1; }
  std::vector<int> local_dims() const;
  long dim() const;  // d_N
};

// Checks N >= 1, 2 s_n > 0, eta != 0 and the separation condition
// eta_a - eta_b not in eta*Z for a != b; detects the regime.
// Throws SovConditionError naming the offending pair, or Error.
ChainSpec validate(ChainSpec raw);

// Coefficient functions a(lambda) = -prod(lambda - eta_n + eta/2 + s_n eta)
// and d(lambda) = prod(lambda - eta_n + eta/2 - s_n eta).
Cx a_of(const ChainSpec& spec, Cx lambda);
Cx d_of(const ChainSpec& spec, Cx lambda);

// Separation grid. Integer indices k = 0..2 s_n label grid points; half
// integer indices appear in the form-factor formulas and are accepted too.
struct SeparationGrid {
  Cx eta;
  std::vector<Cx> inhom;
  std::vector<int> twice_spin;

  // eta_n^{(k)} = eta_n - eta/2 + (s_n - k) eta
  Cx point(int n, double k) const;
  // bar eta_n^{(k)} = eta_n + (k - s_n - 1/2) eta; equals point(n, 2 s_n - k).
  Cx bar_point(int n, double k) const;
};

SeparationGrid grid(const ChainSpec& spec);

// Canonical self-adjoint evaluation point of the regime:
// lambda_0 = x0 - eta/2 (imaginary-eta) or -eta/2 + i x0 (real-eta).
Cx hermitian_point(const ChainSpec& spec, double x0);

nlohmann::json spec_to_json(const ChainSpec& spec);
ChainSpec spec_from_json(const nlohmann::json& j);

}  // namespace apxxx

#endif
