#ifndef APXXX_SOV_HPP
#define APXXX_SOV_HPP

#include "apxxx/linalg.hpp"
#include "apxxx/model.hpp"

namespace apxxx {

enum class Side { Left, Right };

// Multi-index h = (h_1, ..., h_N) with h_n in {0, ..., 2 s_n}, flattened
// with site 0 as the fastest-varying digit.
long flat_index(const std::vector<int>& h, const std::vector<int>& twice_spin);
std::vector<int> unflat_index(long idx, const std::vector<int>& twice_spin);

// D-eigenbases of the separation of variables. Right states are columns of
// `right`; left states are rows of `left`. Built from the reference states
// by ladders of B (right) and C (left) at the separation grid points:
//   |h> = (1/nrm) prod_n prod_{k<h_n} B(eta_n^{(k)}) / a(eta_n^{(k)}) |0>
//   <h| = (1/nrm) <0| prod_n prod_{k<h_n} C(eta_n^{(k)}) / d(eta_n^{(k+1)})
// with nrm = prod_{b<a} (eta_a^{(0)} - eta_b^{(0)})^{1/2} (principal branch).
struct SovBasis {
  ChainSpec spec;
  SeparationGrid sep;
  Mat right;
  Mat left;
  Cx nrm;

  // Vandermonde weight mu(h) = prod_{b<a} (eta_a^{(h_a)} - eta_b^{(h_b)})
  // of the identity decomposition Id = sum_h mu(h) |h><h|.
  Cx mu(const std::vector<int>& h) const;
  Cx mu(long flat) const;

  Vec right_state(long flat) const { return right.col(flat); }
  RowVec left_state(long flat) const { return left.row(flat); }
};

SovBasis build_sov_basis(const ChainSpec& spec);

// Closed-form pairing <h|k> = delta_{h,k} prod_{b<a} 1/(eta_a^{(h_a)} - eta_b^{(h_b)}).
Cx sov_overlap(const SovBasis& basis, const std::vector<int>& h, const std::vector<int>& k);

// Expansion coefficients of a vector (Side::Right) or covector (Side::Left)
// over the corresponding D-eigenbasis; coefficient of |h> is mu(h) <h|v>.
Vec to_sov(const SovBasis& basis, const Vec& v, Side side);
// Reassembly: v = sum_h coeff(h) |h> (or the covector analogue, returned
// as a column for uniformity).
Vec from_sov(const SovBasis& basis, const Vec& coeff, Side side);

}  // namespace apxxx

#endif
