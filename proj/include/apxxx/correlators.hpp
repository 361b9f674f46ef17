#ifndef APXXX_CORRELATORS_HPP
#define APXXX_CORRELATORS_HPP

#include "apxxx/linalg.hpp"
#include "apxxx/model.hpp"
#include "apxxx/sov.hpp"
#include "apxxx/spectrum.hpp"

namespace apxxx {

// Per-site amplitude samples on the separation grid; outer index is the
// site, inner index k = 0..2 s_a.
using SiteAmplitudes = std::vector<std::vector<Cx>>;

SiteAmplitudes amplitudes_from_q(const QAmplitudes& amps);

// Separate state sum_h prod_a amp_a(eta_a^{(h_a)}) mu(h) |h> (or covector).
Vec separate_state(const SovBasis& basis, const SiteAmplitudes& amp, Side side);

// Gram-type matrix M_{a,b} = sum_h alpha_a beta_a (eta_a^{(h)})^{b-1},
// with `cols` moment columns (N for scalar products, N+1 for form factors).
Mat gram_matrix(const ChainSpec& spec, const SiteAmplitudes& alpha, const SiteAmplitudes& beta,
                int cols);

// Scalar product <alpha|beta> = det_N M of the separate pair.
Cx scalar_product_det(const ChainSpec& spec, const SiteAmplitudes& alpha,
                      const SiteAmplitudes& beta);

// Eigenstate norm <t|t> = det_N M^{(t,t)}.
Cx eigenstate_norm(const ChainSpec& spec, const EigenvalueFn& t);

// Orthogonality witness: the coefficient-difference vector V_b = c'_b - c_b
// annihilates M^{(t,t')}; returns ||M V|| / (||M|| ||V||).
double orthogonality_witness(const ChainSpec& spec, const EigenvalueFn& t,
                             const EigenvalueFn& tp);

// Form factor <t|S_n^-|t'> by the (N+1)x(N+1) determinant formula.
Cx form_factor_sminus(const ChainSpec& spec, const EigenvalueFn& t, const EigenvalueFn& tp,
                      int n);

// Form factor <t|S_n^z|t'> by the (N+1)x(N+1) determinant formula.
Cx form_factor_sz(const ChainSpec& spec, const EigenvalueFn& t, const EigenvalueFn& tp, int n);

// Brute-force oracle: assembled <t| times the embedded local operator times
// the assembled |t'>. Ground truth for the determinant formulas, and the
// only route for operators without one (e.g. S^+).
Cx matrix_element_direct(const SovBasis& basis, const EigenvalueFn& t, const EigenvalueFn& tp,
                         const Mat& x, int n);

// Local operator insertions for the m-point expansion. Tags '-', 'z' use
// the determinant formulas; anything else falls back to the oracle.
struct LocalOp {
  char tag;  // '-', '+', 'z', or 'g' (generic)
  int site;
  Mat matrix;  // required for 'g'; ignored otherwise
};

// Spectral expansion of <t| X_1 ... X_m |t> / <t|t> over intermediate
// eigenstates, using the decomposition of the identity over the spectrum.
Cx mpoint(const ChainSpec& spec, const SovBasis& basis, const std::vector<EigenvalueFn>& spectrum,
          const EigenvalueFn& t, const std::vector<LocalOp>& ops);

// Residuals of the two readings of the fused sum identity
// sum_h T^{(h or h/2)}(eta_n^{((h+1)/2)}) T(eta_n^{(h)}) T^{(s_n-(h+1)/2)}(eta_n^{(h/2+s_n)})
//   = 2 s_n T^{(s_n)}(eta_n)
// evaluated on the scalar eigenvalue level; reported, never asserted. Both
// readings close at spin 1/2; beyond it the sum acquires quantum-determinant
// corrections (see the exact corner in the S^z determinant), so nonzero
// residuals here are expected, not an error.
struct FusedSumReadings {
  double half_label;  // first factor T^{(h/2)}
  double full_label;  // first factor T^{(h)}
};
FusedSumReadings fused_sum_identity(const ChainSpec& spec, const EigenvalueFn& t, int n);

}  // namespace apxxx

#endif
