#include "apxxx/reconstruction.hpp"

#include <Eigen/LU>
#include <cmath>

namespace apxxx {

Mat solve_right(const Mat& b, const Mat& a, double cond_limit) {
  if (condition_number(a) > cond_limit)
    throw SingularFactorError("solve_right: ill-conditioned transfer product");
  // X a = b  <=>  a^T X^T = b^T
  return a.transpose().partialPivLu().solve(b.transpose()).transpose();
}

namespace {

Mat kernel_block(const ChainSpec& spec, char tag, Cx lambda) {
  const MonodromyBlocks m = monodromy(spec, lambda);
  switch (tag) {
    case '-': return m.d;
    case '+': return m.a;
    case 'z': return 0.5 * (m.c - m.b);
    default: throw Error("kernel_block: unknown tag");
  }
}

Mat local_target(char tag, int twice_s) {
  switch (tag) {
    case '-': return spin_minus(twice_s);
    case '+': return spin_plus(twice_s);
    case 'z': return spin_z(twice_s);
    default: throw Error("local_target: unknown tag");
  }
}

Mat inner_sum(const ChainSpec& spec, char tag, int n, bool reversed) {
  const SeparationGrid sep = grid(spec);
  const int ts = spec.twice_spin[n];
  const long d = spec.dim();
  Mat sum = Mat::Zero(d, d);
  for (int k = 1; k <= ts; ++k) {
    const Mat head = fused_transfer(spec, ts - k, sep.bar_point(n, 0.5 * ts + 0.5 * (k + 1)));
    const Mat kern = kernel_block(spec, tag, sep.bar_point(n, k));
    const Mat tail = fused_transfer(spec, k - 1, sep.bar_point(n, 0.5 * k));
    sum += reversed ? tail * kern * head : head * kern * tail;
  }
  return sum;
}

Mat dress(const ChainSpec& spec, const Mat& inner, int n) {
  const long d = spec.dim();
  Mat pre = Mat::Identity(d, d);
  Mat post = Mat::Identity(d, d);
  for (int k = 0; k <= n; ++k) {
    const Mat tk = fused_transfer(spec, spec.twice_spin[k], spec.inhom[k]);
    if (k < n) pre = pre * tk;
    post = post * tk;
  }
  return solve_right(pre * inner, post);
}

}  // namespace

Mat reconstruct_local(const ChainSpec& spec, char tag, int n) {
  return dress(spec, inner_sum(spec, tag, n, false), n);
}

Mat reconstruct_local_alt(const ChainSpec& spec, char tag, int n) {
  return dress(spec, inner_sum(spec, tag, n, true), n);
}

double reconstruction_residual(const ChainSpec& spec, char tag, int n) {
  const Mat rec = reconstruct_local(spec, tag, n);
  const Mat target = embed_site_operator(local_target(tag, spec.twice_spin[n]), n,
                                         spec.local_dims());
  const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
  return (rec - target).cwiseAbs().maxCoeff() / scale;
}

Mat sigma_site(const ChainSpec& spec, int n) {
  const long d = spec.dim();
  Mat pre = Mat::Identity(d, d);
  Mat post = Mat::Identity(d, d);
  for (int k = 0; k <= n; ++k) {
    const Mat tk = fused_transfer(spec, spec.twice_spin[k], spec.inhom[k], Twist::Periodic);
    if (k < n) pre = pre * tk;
    post = post * tk;
  }
  const Mat mid = fused_transfer(spec, spec.twice_spin[n], spec.inhom[n], Twist::Antiperiodic);
  return solve_right(pre * mid, post);
}

double verify_reconstruction_identity(const ChainSpec& spec, int n) {
  const Mat lhs = sigma_site(spec, n);
  const Mat target = embed_site_operator(sigma_x_local(spec.twice_spin[n]), n,
                                         spec.local_dims());
  return (lhs - target).cwiseAbs().maxCoeff() /
         std::max(1.0, target.cwiseAbs().maxCoeff());
}

Mat sigma_string(const ChainSpec& spec, int c) {
  const long d = spec.dim();
  Mat anti = Mat::Identity(d, d);
  Mat peri = Mat::Identity(d, d);
  for (int b = 0; b <= c; ++b) {
    anti = anti * fused_transfer(spec, spec.twice_spin[b], spec.inhom[b], Twist::Antiperiodic);
    peri = peri * fused_transfer(spec, spec.twice_spin[b], spec.inhom[b], Twist::Periodic);
  }
  return solve_right(anti, peri);
}

double verify_sigma_string(const ChainSpec& spec, int c) {
  const Mat lhs = sigma_string(spec, c);
  Mat target = Mat::Identity(1, 1);
  const std::vector<int> dims = spec.local_dims();
  for (int b = spec.sites - 1; b >= 0; --b) {
    const Mat x = b <= c ? sigma_x_local(spec.twice_spin[b])
                         : Mat::Identity(dims[b], dims[b]).eval();
    target = kron(target, x);
  }
  const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
  return (lhs - target).cwiseAbs().maxCoeff() / scale;
}

}  // namespace apxxx
