#ifndef APXXX_SPECTRUM_HPP
#define APXXX_SPECTRUM_HPP

#include <optional>
#include <string>

#include "apxxx/linalg.hpp"
#include "apxxx/model.hpp"
#include "apxxx/operators.hpp"
#include "apxxx/sov.hpp"

namespace apxxx {

// Transfer-matrix eigenvalue function t(lambda), a polynomial of degree
// <= N-1 with coefficients c_1..c_N.
struct EigenvalueFn {
  Polynomial t;
  Cx operator()(Cx lambda) const { return t.eval(lambda); }
};

// Scalar counterpart of the fusion recursion:
//   t^{(s)}(l) = t(l - eta/2 + s eta) t^{(s-1/2)}(l - eta/2)
//                - qdet(l + (s-1/2) eta) t^{(s-1)}(l - eta),
// with t^{(0)} = 1 and t^{(1/2)} = t.
Cx fused_eigenvalue(const ChainSpec& spec, const EigenvalueFn& t, int twice_s, Cx lambda,
                    Twist twist = Twist::Antiperiodic);

// Tridiagonal matrix D_n of the functional characterization: diagonal
// t(eta_n^{(k)}), superdiagonal -a(eta_n^{(k)}), subdiagonal -d(eta_n^{(k)}).
Mat dn_matrix(const ChainSpec& spec, const EigenvalueFn& t, int n);

// max_n |det D_n| / scale_n, with scale_n the product over k of
// max(|t|, |a|, |d|, 1) at eta_n^{(k)}.
double sov_residual(const ChainSpec& spec, const EigenvalueFn& t);

enum class QKind { Q, Qbar };

struct QAmplitudes {
  QKind kind;
  std::vector<std::vector<Cx>> values;    // per site, index k = 0..2 s_n
  std::vector<double> closure_residuals;  // per site, relative
};

// Site-wise Baxter amplitudes by forward recursion from Q(eta_n^{(0)}) = 1.
// Throws ConvergenceError if a closure residual exceeds `closure_tol`
// (set closure_tol < 0 to skip the gate and just report).
QAmplitudes q_amplitudes(const ChainSpec& spec, const EigenvalueFn& t, QKind kind,
                         double closure_tol = 1e-9);

// SOV-assembled eigenstate: |t> = sum_h prod_a Q(eta_a^{(h_a)}) mu(h) |h>,
// and the left covector with Qbar amplitudes.
Vec sov_eigenstate(const SovBasis& basis, const EigenvalueFn& t, Side side);

struct EigenRecord {
  EigenvalueFn t;
  Vec right;        // ED eigenvector
  RowVec left;      // ED left covector (conjugate transpose)
  double ed_value;  // eigenvalue of the Hermitian matrix at lambda_0
};

// Exact-diagonalization oracle: diagonalizes i T-bar(lambda_0) (imaginary-eta
// regime; i^{e_N} T-bar for real-eta) at the canonical self-adjoint point and
// recovers each eigenvalue function by Rayleigh quotients at the nodes
// lambda_0 + j, j = 0..N-1. Retries with shifted x_0 on eigenvalue collision.
std::vector<EigenRecord> ed_spectrum(const ChainSpec& spec, double x0 = 0.0, int max_retries = 5);

// Damped Newton iteration on F_n(c) = det D_n(c), finite-difference Jacobian.
EigenvalueFn refine_newton(const ChainSpec& spec, const EigenvalueFn& t_init,
                           double target = 1e-12, int max_iter = 50);

// Measured parity diagnostic: reports whether t(lambda) is even or odd in
// some shifted variable lambda - shift, checking a small list of natural
// candidate shifts. Never asserted, only reported.
struct ParityDiagnostic {
  bool found = false;
  std::string parity;  // "even" or "odd"
  Cx shift;
};
ParityDiagnostic measure_parity(const ChainSpec& spec, const EigenvalueFn& t, double tol = 1e-8);

}  // namespace apxxx

#endif
