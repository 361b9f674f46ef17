#ifndef APXXX_OPERATORS_HPP
#define APXXX_OPERATORS_HPP

#include "apxxx/linalg.hpp"
#include "apxxx/model.hpp"

namespace apxxx {

// sl(2) generators of the spin-s representation, dimension 2s+1.
// S^z = diag(s, s-1, ..., -s), S^+ superdiagonal sqrt(j(2s+1-j)).
Mat spin_z(int twice_s);
Mat spin_plus(int twice_s);
Mat spin_minus(int twice_s);
// Antidiagonal flip Sigma^x of size 2s+1.
Mat sigma_x_local(int twice_s);
Mat pauli_x();

// Lax operator blocks for site n, as local (2s_n+1)-dimensional matrices:
// [ lambda + eta(1/2 + S^z)   eta S^-            ]
// [ eta S^+                   lambda + eta(1/2 - S^z) ]
struct LaxBlocks {
  Mat a, b, c, d;
};
LaxBlocks lax(const ChainSpec& spec, int n, Cx lambda);

// Rational 6-vertex R-matrix, 4x4.
Mat r_matrix(Cx lambda, Cx eta);

// Yang-Baxter residual on C^2 x C^2 x C^2:
// ||R12(l-m) R13(l) R23(m) - R23(m) R13(l) R12(l-m)|| / scale.
double yang_baxter_residual(Cx eta, Cx lambda, Cx mu);
// GL(2) symmetry residual ||[R(lambda), W (x) W]|| / scale.
double gl2_symmetry_residual(Cx eta, Cx lambda, const Eigen::Matrix2cd& w);
// Flip symmetry residual ||(sx (x) sx) R(lambda) (sx (x) sx) - R(lambda)|| / scale.
double flip_symmetry_residual(Cx eta, Cx lambda);

// Monodromy matrix M(lambda) = L_N(lambda - eta_N) ... L_1(lambda - eta_1),
// blocks on the full d_N-dimensional quantum space. On the reference state
// (all sites highest weight): A|0> = -a(lambda)|0>, D|0> = d(lambda)|0>,
// C|0> = 0. The sign in the A relation comes from the leading minus sign
// in a(lambda).
struct MonodromyBlocks {
  Cx lambda;
  Mat a, b, c, d;
};
MonodromyBlocks monodromy(const ChainSpec& spec, Cx lambda);

// Antiperiodic transfer matrix T-bar(lambda) = B + C (sigma^x twist).
Mat transfer(const ChainSpec& spec, Cx lambda);
// Transfer matrix with a general invertible 2x2 twist W: tr_0[W M(lambda)].
Mat transfer(const ChainSpec& spec, Cx lambda, const Eigen::Matrix2cd& twist);

// Quantum determinant of the antiperiodic monodromy: a(lambda) d(lambda - eta).
Cx qdetbar(const ChainSpec& spec, Cx lambda);

enum class Twist { Antiperiodic, Periodic };

// Quantum determinant scalar entering the fusion recursion; includes the
// factor det W, i.e. -a(lambda) d(lambda - eta) for the periodic twist.
Cx qdet_scalar(const ChainSpec& spec, Cx lambda, Twist twist);

// Fused transfer matrix T^{(s)}(lambda) by the recursion
//   T^{(s)}(l) = T^{(1/2)}(l - eta/2 + s eta) T^{(s-1/2)}(l - eta/2)
//                - qdet(l + (s-1/2) eta) T^{(s-1)}(l - eta),
// with T^{(0)} = Id and T^{(1/2)} the twisted transfer matrix.
Mat fused_transfer(const ChainSpec& spec, int twice_s, Cx lambda,
                   Twist twist = Twist::Antiperiodic);

// Antiperiodic Hamiltonian H = T^{(s)}(0)^{-1} d/dlambda T^{(s)}(0) for a
// homogeneous chain (all eta_n = 0, equal spins). The derivative is exact:
// every entry of T^{(s)}(lambda) is a polynomial of degree <= 2sN,
// interpolated on 2sN+1 nodes.
Mat hamiltonian(const ChainSpec& spec);

// U = prod_n exp(i pi S_n^z); conjugation sends T-bar(lambda) to its negative.
Mat parity_conjugator(const ChainSpec& spec);

// Global flip Sigma^x = tensor product of the local antidiagonal flips.
Mat global_flip(const ChainSpec& spec);

// Condition number estimate (2-norm); used to gate explicit inversions.
double condition_number(const Mat& m);

}  // namespace apxxx

#endif
