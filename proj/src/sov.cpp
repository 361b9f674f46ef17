#include "apxxx/sov.hpp"

#include <cmath>
#include <map>

#include "apxxx/operators.hpp"

namespace apxxx {

long flat_index(const std::vector<int>& h, const std::vector<int>& twice_spin) {
  long idx = 0, stride = 1;
  for (size_t n = 0; n < twice_spin.size(); ++n) {
    idx += h[n] * stride;
    stride *= twice_spin[n] + 1;
  }
  return idx;
}

std::vector<int> unflat_index(long idx, const std::vector<int>& twice_spin) {
  std::vector<int> h(twice_spin.size());
  for (size_t n = 0; n < twice_spin.size(); ++n) {
    const int d = twice_spin[n] + 1;
    h[n] = static_cast<int>(idx % d);
    idx /= d;
  }
  return h;
}

Cx SovBasis::mu(const std::vector<int>& h) const {
  Cx w = 1.0;
  for (int a = 0; a < spec.sites; ++a)
    for (int b = 0; b < a; ++b) w *= sep.point(a, h[a]) - sep.point(b, h[b]);
  return w;
}

Cx SovBasis::mu(long flat) const { return mu(unflat_index(flat, spec.twice_spin)); }

SovBasis build_sov_basis(const ChainSpec& spec) {
  SovBasis basis{spec, grid(spec), Mat(), Mat(), Cx(1.0)};
  const long d = spec.dim();

  for (int a = 0; a < spec.sites; ++a)
    for (int b = 0; b < a; ++b)
      basis.nrm *= std::sqrt(basis.sep.point(a, 0) - basis.sep.point(b, 0));

  // Monodromy blocks at every separation grid point, shared by both sides.
  std::map<std::pair<int, int>, MonodromyBlocks> blocks;
  for (int n = 0; n < spec.sites; ++n)
    for (int k = 0; k <= spec.twice_spin[n]; ++k)
      blocks.emplace(std::make_pair(n, k), monodromy(spec, basis.sep.point(n, k)));

  Vec ref = Vec::Zero(d);
  ref(0) = 1.0;  // all sites highest weight

  basis.right.resize(d, d);
  basis.left.resize(d, d);
  for (long idx = 0; idx < d; ++idx) {
    const std::vector<int> h = unflat_index(idx, spec.twice_spin);
    Vec v = ref;
    RowVec w = ref.transpose();
    for (int n = 0; n < spec.sites; ++n)
      for (int k = 0; k < h[n]; ++k) {
        const Cx an = a_of(spec, basis.sep.point(n, k));
        const Cx dn = d_of(spec, basis.sep.point(n, k + 1));
        if (std::abs(an) == 0.0 || std::abs(dn) == 0.0)
          throw Error("build_sov_basis: vanishing ladder divisor (separation condition broken)");
        v = blocks.at({n, k}).b * v / an;
        w = w * blocks.at({n, k}).c / dn;
      }
    basis.right.col(idx) = v / basis.nrm;
    basis.left.row(idx) = w / basis.nrm;
  }
  return basis;
}

Cx sov_overlap(const SovBasis& basis, const std::vector<int>& h, const std::vector<int>& k) {
  for (size_t n = 0; n < h.size(); ++n)
    if (h[n] != k[n]) return 0.0;
  Cx w = 1.0;
  for (int a = 0; a < basis.spec.sites; ++a)
    for (int b = 0; b < a; ++b) w /= basis.sep.point(a, h[a]) - basis.sep.point(b, h[b]);
  return w;
}

Vec to_sov(const SovBasis& basis, const Vec& v, Side side) {
  const long d = basis.spec.dim();
  Vec coeff(d);
  if (side == Side::Right) {
    const Vec pairings = basis.left * v;  // <h| v
    for (long idx = 0; idx < d; ++idx) coeff(idx) = basis.mu(idx) * pairings(idx);
  } else {
    const Vec pairings = (v.transpose() * basis.right).transpose();  // <v| h>
    for (long idx = 0; idx < d; ++idx) coeff(idx) = basis.mu(idx) * pairings(idx);
  }
  return coeff;
}

Vec from_sov(const SovBasis& basis, const Vec& coeff, Side side) {
  if (side == Side::Right) return basis.right * coeff;
  return (coeff.transpose() * basis.left).transpose();
}

}  // namespace apxxx
