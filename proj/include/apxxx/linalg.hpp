#ifndef APXXX_LINALG_HPP
#define APXXX_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace apxxx {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RowVec = Eigen::RowVectorXcd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct SovConditionError : Error {
  SovConditionError(int a_, int b_, const std::string& msg) : Error(msg), site_a(a_), site_b(b_) {}
  int site_a, site_b;  // 0-based offending pair
};
struct SingularFactorError : Error {
  using Error::Error;
};
struct ConvergenceError : Error {
  using Error::Error;
};

// Throws if any entry is NaN/Inf.
void check_finite(const Mat& m, const char* what = "matrix");

// Determinant by LU with partial pivoting. Requires a square matrix.
Cx det(const Mat& m);

// Eigen-decomposition of a Hermitian matrix. Values ascending, vectors
// orthonormal columns. Rejects input that is not Hermitian within
// 1e-10 * max|entry|.
struct HermitianEigen {
  Eigen::VectorXd values;
  Mat vectors;
};
HermitianEigen eig_hermitian(const Mat& h);

// Dense polynomial in one complex variable, coeffs[k] multiplies lambda^k.
struct Polynomial {
  std::vector<Cx> coeffs;

  Polynomial() = default;
  explicit Polynomial(std::vector<Cx> c) : coeffs(std::move(c)) {}

  Cx eval(Cx lambda) const;
  // Highest index with |coefficient| > 1e-12 * max|coefficient|; -1 for zero.
  int degree() const;
  Polynomial derivative() const;
};

// Unique interpolant of degree <= K-1 through K (node, value) pairs.
// Newton divided differences, expanded to monomial coefficients.
Polynomial poly_from_samples(const std::vector<Cx>& nodes, const std::vector<Cx>& values);

Mat kron(const Mat& a, const Mat& b);

// Embed a local operator at site n (0-based) into the tensor product over
// all sites. Site 0 is the fastest-varying index, so the full matrix is
// I_{>n} (x) x (x) I_{<n} in standard Kronecker order.
Mat embed_site_operator(const Mat& x, int n, const std::vector<int>& dims);

}  // namespace apxxx

#endif
