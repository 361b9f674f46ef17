#include "apxxx/linalg.hpp"

#include <cmath>

namespace apxxx {

void check_finite(const Mat& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string(what) + ": non-finite entry");
}

Cx det(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw DimensionError("det: matrix must be square with dimension >= 1");
  if (m.rows() == 1) return m(0, 0);
  return Eigen::PartialPivLU<Mat>(m).determinant();
}

HermitianEigen eig_hermitian(const Mat& h) {
  if (h.rows() != h.cols()) throw DimensionError("eig_hermitian: matrix must be square");
  const double scale = h.cwiseAbs().maxCoeff();
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (dev > 1e-10 * std::max(scale, 1e-300))
    throw Error("eig_hermitian: input not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  if (solver.info() != Eigen::Success) throw Error("eig_hermitian: solver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Cx Polynomial::eval(Cx lambda) const {
  Cx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

int Polynomial::degree() const {
  double top = 0.0;
  for (const Cx& c : coeffs) top = std::max(top, std::abs(c));
  if (top == 0.0) return -1;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    if (std::abs(coeffs[k]) > 1e-12 * top) return k;
  return -1;
}

Polynomial Polynomial::derivative() const {
  if (coeffs.size() <= 1) return Polynomial{{Cx(0.0)}};
  std::vector<Cx> d(coeffs.size() - 1);
  for (size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = coeffs[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

Polynomial poly_from_samples(const std::vector<Cx>& nodes, const std::vector<Cx>& values) {
  const size_t k = nodes.size();
  if (k == 0 || values.size() != k)
    throw DimensionError("poly_from_samples: need equally many nodes and values");
  double span = 0.0;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < i; ++j) span = std::max(span, std::abs(nodes[i] - nodes[j]));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < i; ++j)
      if (std::abs(nodes[i] - nodes[j]) <= 1e-14 * std::max(span, 1.0))
        throw Error("poly_from_samples: degenerate nodes");

  // Divided-difference table, then expand the Newton form.
  std::vector<Cx> dd = values;
  for (size_t level = 1; level < k; ++level)
    for (size_t i = k - 1; i >= level; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);

  std::vector<Cx> out(k, Cx(0.0));
  std::vector<Cx> basis{Cx(1.0)};  // prod_{j<level} (lambda - nodes[j])
  for (size_t level = 0; level < k; ++level) {
    for (size_t j = 0; j < basis.size(); ++j) out[j] += dd[level] * basis[j];
    if (level + 1 < k) {
      std::vector<Cx> next(basis.size() + 1, Cx(0.0));
      for (size_t j = 0; j < basis.size(); ++j) {
        next[j + 1] += basis[j];
        next[j] -= nodes[level] * basis[j];
      }
      basis = std::move(next);
    }
  }
  return Polynomial(std::move(out));
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat embed_site_operator(const Mat& x, int n, const std::vector<int>& dims) {
  if (n < 0 || n >= static_cast<int>(dims.size()))
    throw DimensionError("embed_site_operator: site index out of range");
  if (x.rows() != dims[n] || x.cols() != dims[n])
    throw DimensionError("embed_site_operator: local operator dimension mismatch");
  long inner = 1, outer = 1;
  for (int m = 0; m < n; ++m) inner *= dims[m];
  for (int m = n + 1; m < static_cast<int>(dims.size()); ++m) outer *= dims[m];
  return kron(Mat::Identity(outer, outer), kron(x, Mat::Identity(inner, inner)));
}

}  // namespace apxxx
