#ifndef APXXX_RECONSTRUCTION_HPP
#define APXXX_RECONSTRUCTION_HPP

#include "apxxx/linalg.hpp"
#include "apxxx/model.hpp"
#include "apxxx/operators.hpp"

namespace apxxx {

// Solve for X in X * a = b with a conditioning gate.
Mat solve_right(const Mat& b, const Mat& a, double cond_limit = 1e12);

// Reconstructed local operator acting on the full chain, tag in {'-', '+', 'z'}:
//   X_n = prod_{k<n} Tbar^{(s_k)}(eta_k)
//         sum_{k=1}^{2 s_n} Tbar^{(s_n-k/2)}(bar_eta_n^{(s_n+(k+1)/2)})
//               K(bar_eta_n^{(k)}) Tbar^{((k-1)/2)}(bar_eta_n^{(k/2)})
//         prod_{k<=n} Tbar^{(s_k)}(eta_k)^{-1}
// with kernel K = D, A, (C-B)/2 for '-', '+', 'z'.
Mat reconstruct_local(const ChainSpec& spec, char tag, int n);

// Same sum with the fused factors in the swapped order (the second
// decomposition of the inverse-problem proposition); must agree with
// reconstruct_local and serves as its cross-check.
Mat reconstruct_local_alt(const ChainSpec& spec, char tag, int n);

// Max-norm relative residual of the reconstructed generator against the
// directly embedded local spin operator.
double reconstruction_residual(const ChainSpec& spec, char tag, int n);

// Sigma_n^x = prod_{k<n} T^{(s_k)}(eta_k) Tbar^{(s_n)}(eta_n)
//             prod_{k<=n} T^{(s_k)}(eta_k)^{-1}   (periodic outer factors).
Mat sigma_site(const ChainSpec& spec, int n);

// Relative residual of sigma_site against the embedded local flip.
double verify_reconstruction_identity(const ChainSpec& spec, int n);

// prod_{b<=c} Sigma_b^x = prod_{b<=c} Tbar^{(s_b)}(eta_b) T^{(s_b)}(eta_b)^{-1}
// (periodic fused transfer on the right); returns the operator product.
Mat sigma_string(const ChainSpec& spec, int c);

// Relative residual of the string formula against tensored sigma^x factors.
double verify_sigma_string(const ChainSpec& spec, int c);

}  // namespace apxxx

#endif
