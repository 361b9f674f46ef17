#include "apxxx/operators.hpp"

#include <cmath>
#include <numbers>

namespace apxxx {

Mat spin_z(int twice_s) {
  const int d = twice_s + 1;
  Mat m = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = 0.5 * twice_s - k;
  return m;
}

Mat spin_plus(int twice_s) {
  const int d = twice_s + 1;
  Mat m = Mat::Zero(d, d);
  for (int j = 1; j <= twice_s; ++j) m(j - 1, j) = std::sqrt(j * (twice_s + 1.0 - j));
  return m;
}

Mat spin_minus(int twice_s) { return spin_plus(twice_s).transpose(); }

Mat sigma_x_local(int twice_s) {
  const int d = twice_s + 1;
  Mat m = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) m(k, d - 1 - k) = 1.0;
  return m;
}

Mat pauli_x() { return sigma_x_local(1); }

LaxBlocks lax(const ChainSpec& spec, int n, Cx lambda) {
  if (n < 0 || n >= spec.sites) throw DimensionError("lax: site out of range");
  const int ts = spec.twice_spin[n];
  const int d = ts + 1;
  const Cx eta = spec.eta;
  LaxBlocks blocks;
  blocks.a = lambda * Mat::Identity(d, d) + eta * (0.5 * Mat::Identity(d, d) + spin_z(ts));
  blocks.b = eta * spin_minus(ts);
  blocks.c = eta * spin_plus(ts);
  blocks.d = lambda * Mat::Identity(d, d) + eta * (0.5 * Mat::Identity(d, d) - spin_z(ts));
  return blocks;
}

Mat r_matrix(Cx lambda, Cx eta) {
  Mat r = Mat::Zero(4, 4);
  r(0, 0) = r(3, 3) = lambda + eta;
  r(1, 1) = r(2, 2) = lambda;
  r(1, 2) = r(2, 1) = eta;
  return r;
}

MonodromyBlocks monodromy(const ChainSpec& spec, Cx lambda) {
  const auto dims = spec.local_dims();
  const long d = spec.dim();
  // Accumulate M = L_N ... L_1 in the 2x2 auxiliary space, entries acting
  // on the full quantum space.
  Mat a = Mat::Identity(d, d), b = Mat::Zero(d, d);
  Mat c = Mat::Zero(d, d), dd = Mat::Identity(d, d);
  for (int n = spec.sites - 1; n >= 0; --n) {
    const LaxBlocks local = lax(spec, n, lambda - spec.inhom[n]);
    const Mat la = embed_site_operator(local.a, n, dims);
    const Mat lb = embed_site_operator(local.b, n, dims);
    const Mat lc = embed_site_operator(local.c, n, dims);
    const Mat ld = embed_site_operator(local.d, n, dims);
    const Mat na = a * la + b * lc;
    const Mat nb = a * lb + b * ld;
    const Mat nc = c * la + dd * lc;
    const Mat nd = c * lb + dd * ld;
    a = na;
    b = nb;
    c = nc;
    dd = nd;
  }
  return MonodromyBlocks{lambda, a, b, c, dd};
}

Mat transfer(const ChainSpec& spec, Cx lambda) {
  const MonodromyBlocks m = monodromy(spec, lambda);
  return m.b + m.c;
}

Mat transfer(const ChainSpec& spec, Cx lambda, const Eigen::Matrix2cd& twist) {
  if (std::abs(twist.determinant()) < 1e-14) throw Error("transfer: singular twist matrix");
  const MonodromyBlocks m = monodromy(spec, lambda);
  // tr_0[W M] = W_11 A + W_12 C + W_21 B + W_22 D
  return twist(0, 0) * m.a + twist(0, 1) * m.c + twist(1, 0) * m.b + twist(1, 1) * m.d;
}

Cx qdetbar(const ChainSpec& spec, Cx lambda) {
  return a_of(spec, lambda) * d_of(spec, lambda - spec.eta);
}

Cx qdet_scalar(const ChainSpec& spec, Cx lambda, Twist twist) {
  const Cx q = qdetbar(spec, lambda);
  return twist == Twist::Antiperiodic ? q : -q;
}

Mat fused_transfer(const ChainSpec& spec, int twice_s, Cx lambda, Twist twist) {
  if (twice_s < 0) throw Error("fused_transfer: spin label must be a nonnegative half-integer");
  const long d = spec.dim();
  if (twice_s == 0) return Mat::Identity(d, d);
  if (twice_s == 1) {
    if (twist == Twist::Antiperiodic) return transfer(spec, lambda);
    return transfer(spec, lambda, Eigen::Matrix2cd::Identity());
  }
  const Cx half = spec.eta * 0.5;
  const double s = 0.5 * twice_s;
  const Mat head = fused_transfer(spec, 1, lambda - half + s * spec.eta, twist);
  const Mat mid = fused_transfer(spec, twice_s - 1, lambda - half, twist);
  const Mat tail = fused_transfer(spec, twice_s - 2, lambda - spec.eta, twist);
  return head * mid - qdet_scalar(spec, lambda + (s - 0.5) * spec.eta, twist) * tail;
}

Mat hamiltonian(const ChainSpec& spec) {
  for (const Cx& e : spec.inhom)
    if (std::abs(e) != 0.0) throw Error("hamiltonian: requires a homogeneous chain (eta_n = 0)");
  const int ts = spec.twice_spin[0];
  for (int t : spec.twice_spin)
    if (t != ts) throw Error("hamiltonian: requires homogeneous spins");

  const long d = spec.dim();
  const int deg = ts * spec.sites;  // entries have degree <= 2sN
  std::vector<Cx> nodes(deg + 1);
  std::vector<Mat> samples(deg + 1);
  for (int j = 0; j <= deg; ++j) {
    nodes[j] = Cx(j - 0.5 * deg, 0.0);
    samples[j] = fused_transfer(spec, ts, nodes[j]);
  }
  // Derivative at lambda = 0 is the linear interpolation coefficient.
  Mat deriv(d, d), at_zero(d, d);
  std::vector<Cx> vals(deg + 1);
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) {
      for (int k = 0; k <= deg; ++k) vals[k] = samples[k](i, j);
      const Polynomial p = poly_from_samples(nodes, vals);
      at_zero(i, j) = p.coeffs.empty() ? Cx(0.0) : p.coeffs[0];
      deriv(i, j) = p.coeffs.size() > 1 ? p.coeffs[1] : Cx(0.0);
    }
  if (condition_number(at_zero) > 1e12)
    throw SingularFactorError("hamiltonian: T^{(s)}(0) numerically singular");
  return Eigen::PartialPivLU<Mat>(at_zero).solve(deriv);
}

namespace {

// Embed a 4x4 two-body operator on qubit pair (i, j) of three qubits,
// site 0 fastest-varying.
Mat embed_pair(const Mat& r, int i, int j) {
  Mat m = Mat::Zero(8, 8);
  for (int row = 0; row < 8; ++row)
    for (int col = 0; col < 8; ++col) {
      const int ri = (row >> i) & 1, rj = (row >> j) & 1;
      const int ci = (col >> i) & 1, cj = (col >> j) & 1;
      if ((row & ~((1 << i) | (1 << j))) != (col & ~((1 << i) | (1 << j)))) continue;
      m(row, col) = r(2 * ri + rj, 2 * ci + cj);
    }
  return m;
}

}  // namespace

double yang_baxter_residual(Cx eta, Cx lambda, Cx mu) {
  const Mat r12 = embed_pair(r_matrix(lambda - mu, eta), 2, 1);
  const Mat r13 = embed_pair(r_matrix(lambda, eta), 2, 0);
  const Mat r23 = embed_pair(r_matrix(mu, eta), 1, 0);
  const Mat lhs = r12 * r13 * r23;
  const Mat rhs = r23 * r13 * r12;
  const double scale = std::max(1.0, lhs.cwiseAbs().maxCoeff());
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

double gl2_symmetry_residual(Cx eta, Cx lambda, const Eigen::Matrix2cd& w) {
  const Mat r = r_matrix(lambda, eta);
  const Mat ww = kron(w, w);
  const Mat comm = r * ww - ww * r;
  const double scale = std::max(1.0, (r * ww).cwiseAbs().maxCoeff());
  return comm.cwiseAbs().maxCoeff() / scale;
}

double flip_symmetry_residual(Cx eta, Cx lambda) {
  const Mat r = r_matrix(lambda, eta);
  const Mat xx = kron(pauli_x(), pauli_x());
  const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
  return (xx * r * xx - r).cwiseAbs().maxCoeff() / scale;
}

Mat parity_conjugator(const ChainSpec& spec) {
  const auto dims = spec.local_dims();
  Mat u = Mat::Identity(1, 1);
  for (int n = 0; n < spec.sites; ++n) {
    const int ts = spec.twice_spin[n];
    Mat local = Mat::Zero(ts + 1, ts + 1);
    for (int k = 0; k <= ts; ++k) {
      const double phase = std::numbers::pi * (0.5 * ts - k);
      local(k, k) = Cx(std::cos(phase), std::sin(phase));
    }
    u = kron(local, u);
  }
  return u;
}

Mat global_flip(const ChainSpec& spec) {
  Mat u = Mat::Identity(1, 1);
  for (int n = 0; n < spec.sites; ++n) u = kron(sigma_x_local(spec.twice_spin[n]), u);
  return u;
}

double condition_number(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(sv.size() - 1);
}

}  // namespace apxxx
