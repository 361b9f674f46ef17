#include "apxxx/correlators.hpp"

#include <cmath>
#include <sstream>

namespace apxxx {

SiteAmplitudes amplitudes_from_q(const QAmplitudes& amps) { return amps.values; }

Vec separate_state(const SovBasis& basis, const SiteAmplitudes& amp, Side side) {
  const ChainSpec& spec = basis.spec;
  const long d = spec.dim();
  Vec coeff(d);
  for (long idx = 0; idx < d; ++idx) {
    const std::vector<int> h = unflat_index(idx, spec.twice_spin);
    Cx c = basis.mu(h);
    for (int a = 0; a < spec.sites; ++a) c *= amp[a][h[a]];
    coeff(idx) = c;
  }
  return from_sov(basis, coeff, side);
}

Mat gram_matrix(const ChainSpec& spec, const SiteAmplitudes& alpha, const SiteAmplitudes& beta,
                int cols) {
  const SeparationGrid sep = grid(spec);
  Mat m(spec.sites, cols);
  for (int a = 0; a < spec.sites; ++a)
    for (int b = 0; b < cols; ++b) {
      Cx sum = 0.0;
      for (int h = 0; h <= spec.twice_spin[a]; ++h)
        sum += alpha[a][h] * beta[a][h] * std::pow(sep.point(a, h), b);
      m(a, b) = sum;
    }
  return m;
}

Cx scalar_product_det(const ChainSpec& spec, const SiteAmplitudes& alpha,
                      const SiteAmplitudes& beta) {
  return det(gram_matrix(spec, alpha, beta, spec.sites));
}

Cx eigenstate_norm(const ChainSpec& spec, const EigenvalueFn& t) {
  const SiteAmplitudes qbar = q_amplitudes(spec, t, QKind::Qbar, -1.0).values;
  const SiteAmplitudes q = q_amplitudes(spec, t, QKind::Q, -1.0).values;
  return scalar_product_det(spec, qbar, q);
}

double orthogonality_witness(const ChainSpec& spec, const EigenvalueFn& t,
                             const EigenvalueFn& tp) {
  const int n = spec.sites;
  Vec v = Vec::Zero(n);
  for (int b = 0; b < n; ++b) {
    const Cx c = b < static_cast<int>(t.t.coeffs.size()) ? t.t.coeffs[b] : Cx(0.0);
    const Cx cp = b < static_cast<int>(tp.t.coeffs.size()) ? tp.t.coeffs[b] : Cx(0.0);
    v(b) = cp - c;
  }
  if (v.norm() == 0.0) throw Error("orthogonality_witness: degenerate witness (t = t')");
  const SiteAmplitudes qbar = q_amplitudes(spec, t, QKind::Qbar, -1.0).values;
  const SiteAmplitudes q = q_amplitudes(spec, tp, QKind::Q, -1.0).values;
  const Mat m = gram_matrix(spec, qbar, q, n);
  // Scale by the cancellation-free magnitude of the Gram sums, not ||m||:
  // the N = 1 matrix is exactly zero and the witness is then trivially valid.
  const SeparationGrid sep = grid(spec);
  double scale = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double sum = 0.0;
      for (int h = 0; h <= spec.twice_spin[a]; ++h)
        sum += std::abs(qbar[a][h]) * std::abs(q[a][h]) *
               std::pow(std::abs(sep.point(a, h)), b);
      scale = std::max(scale, sum);
    }
  return (m * v).norm() / (std::max(scale, 1.0) * v.norm());
}

namespace {

Cx guarded_inverse(Cx denom, double scale, const char* where, Cx point) {
  if (std::abs(denom) < 1e-10 * scale) {
    std::ostringstream msg;
    msg << where << ": vanishing fused-eigenvalue denominator at lambda = (" << point.real()
        << ", " << point.imag() << ")";
    throw SingularFactorError(msg.str());
  }
  return 1.0 / denom;
}

// prod_{h<n} t^{(s_h)}(eta_h) / prod_{h<=n} t'^{(s_h)}(eta_h)
Cx transfer_prefactor(const ChainSpec& spec, const EigenvalueFn& t, const EigenvalueFn& tp,
                      int n, const char* where) {
  Cx pref = 1.0;
  double scale = 1.0;
  for (int h = 0; h <= n; ++h) {
    const Cx denom = fused_eigenvalue(spec, tp, spec.twice_spin[h], spec.inhom[h]);
    scale = std::max(scale, std::abs(denom));
    pref *= guarded_inverse(denom, 1.0, where, spec.inhom[h]);
    if (h < n) pref *= fused_eigenvalue(spec, t, spec.twice_spin[h], spec.inhom[h]);
  }
  return pref;
}

}  // namespace

Cx form_factor_sminus(const ChainSpec& spec, const EigenvalueFn& t, const EigenvalueFn& tp,
                      int n) {
  const int sites = spec.sites;
  const SeparationGrid sep = grid(spec);
  const SiteAmplitudes qbar = q_amplitudes(spec, t, QKind::Qbar, -1.0).values;
  const SiteAmplitudes q = q_amplitudes(spec, tp, QKind::Q, -1.0).values;

  Mat s(sites + 1, sites + 1);
  s.topRows(sites) = gram_matrix(spec, qbar, q, sites + 1);
  const int ts = spec.twice_spin[n];
  // Last row: the two fused-eigenvalue factors of each term multiply (they
  // both act multiplicatively on the eigenstates in the reconstruction
  // expansion); the t' factor is not a denominator. The readings coincide
  // at spin 1/2 where t'^{(0)} = 1.
  for (int b = 0; b <= sites; ++b) {
    Cx sum = 0.0;
    for (int k = 1; k <= ts; ++k) {
      const Cx head = fused_eigenvalue(spec, t, ts - k, sep.bar_point(n, 0.5 * ts + 0.5 * (k + 1)));
      const Cx tail = fused_eigenvalue(spec, tp, k - 1, sep.bar_point(n, 0.5 * k));
      sum += head * tail * std::pow(sep.bar_point(n, k), b);
    }
    s(sites, b) = sum;
  }
  const Cx pref = transfer_prefactor(spec, t, tp, n, "form_factor_sminus");
  return pref * det(s);
}

Cx form_factor_sz(const ChainSpec& spec, const EigenvalueFn& t, const EigenvalueFn& tp, int n) {
  const int sites = spec.sites;
  const SeparationGrid sep = grid(spec);
  const SiteAmplitudes qbar = q_amplitudes(spec, t, QKind::Qbar, -1.0).values;
  const SiteAmplitudes q = q_amplitudes(spec, tp, QKind::Q, -1.0).values;

  Mat s(sites + 1, sites + 1);
  s.topLeftCorner(sites, sites) = gram_matrix(spec, qbar, q, sites);

  const int ts = spec.twice_spin[n];
  const Cx pref = transfer_prefactor(spec, t, tp, n, "form_factor_sz");
  // Last row: product of the two fused factors (as in the S^- row), and the
  // first argument is eta_n^{((h-1)/2)}: substituting k = 2 s_n - h into the
  // reconstruction sum gives the label h/2 at that point, one eta below the
  // printed one. Both readings coincide at spin 1/2.
  Cx corner = 0.0;
  for (int b = 0; b < sites; ++b) {
    Cx sum = 0.0;
    for (int h = 0; h < ts; ++h) {
      const Cx head = fused_eigenvalue(spec, t, h, sep.point(n, 0.5 * (h - 1)));
      const Cx tail = fused_eigenvalue(spec, tp, ts - h - 1, sep.point(n, 0.5 * h + 0.5 * ts));
      sum += head * tail * std::pow(sep.point(n, h), b);
      // The transfer half of the kernel (C - B)/2 = C - T/2 contributes the
      // corner through the same weights, with the transfer eigenvalue of the
      // right state in the middle. The constant corner -s_n is the spin-1/2
      // reduction of this sum; at higher spin the fused sum identity picks up
      // quantum-determinant corrections and the sum must be kept exact.
      if (b == 0) corner += head * tail * tp(sep.point(n, h));
    }
    s(sites, b) = pref * sum;
  }
  // The extra column enters with an overall minus sign relative to the
  // cofactor expansion of the Vandermonde (see the C-action derivation);
  // the h = 0 term vanishes with d(eta_a^{(0)}) = 0.
  for (int a = 0; a < sites; ++a) {
    Cx sum = 0.0;
    for (int h = 1; h <= spec.twice_spin[a]; ++h)
      sum += q[a][h] * qbar[a][h - 1] * d_of(spec, sep.point(a, h));
    s(a, sites) = -sum;
  }
  s(sites, sites) = -0.5 * pref * corner;
  return det(s);
}

Cx matrix_element_direct(const SovBasis& basis, const EigenvalueFn& t, const EigenvalueFn& tp,
                         const Mat& x, int n) {
  const RowVec left = sov_eigenstate(basis, t, Side::Left).transpose();
  const Vec right = sov_eigenstate(basis, tp, Side::Right);
  const Mat op = embed_site_operator(x, n, basis.spec.local_dims());
  return left * op * right;
}

namespace {

Cx form_factor_any(const ChainSpec& spec, const SovBasis& basis, const EigenvalueFn& t,
                   const EigenvalueFn& tp, const LocalOp& op) {
  switch (op.tag) {
    case '-': return form_factor_sminus(spec, t, tp, op.site);
    case 'z': return form_factor_sz(spec, t, tp, op.site);
    case '+': return matrix_element_direct(basis, t, tp, spin_plus(spec.twice_spin[op.site]), op.site);
    default: return matrix_element_direct(basis, t, tp, op.matrix, op.site);
  }
}

}  // namespace

Cx mpoint(const ChainSpec& spec, const SovBasis& basis, const std::vector<EigenvalueFn>& spectrum,
          const EigenvalueFn& t, const std::vector<LocalOp>& ops) {
  if (ops.empty()) return 1.0;
  const Cx norm_t = eigenstate_norm(spec, t);
  if (std::abs(norm_t) < 1e-12) throw Error("mpoint: degenerate eigenstate norm");
  if (ops.size() == 1) return form_factor_any(spec, basis, t, t, ops[0]) / norm_t;

  std::vector<Cx> norms(spectrum.size());
  for (size_t j = 0; j < spectrum.size(); ++j) {
    norms[j] = eigenstate_norm(spec, spectrum[j]);
    if (std::abs(norms[j]) < 1e-12) throw Error("mpoint: degenerate intermediate norm");
  }

  std::vector<Cx> cur(spectrum.size());
  for (size_t j = 0; j < spectrum.size(); ++j)
    cur[j] = form_factor_any(spec, basis, t, spectrum[j], ops[0]) / norms[j];
  for (size_t i = 1; i + 1 < ops.size(); ++i) {
    std::vector<Cx> next(spectrum.size(), Cx(0.0));
    for (size_t k = 0; k < spectrum.size(); ++k) {
      for (size_t j = 0; j < spectrum.size(); ++j)
        next[k] += cur[j] * form_factor_any(spec, basis, spectrum[j], spectrum[k], ops[i]);
      next[k] /= norms[k];
    }
    cur = std::move(next);
  }
  Cx total = 0.0;
  for (size_t j = 0; j < spectrum.size(); ++j)
    total += cur[j] * form_factor_any(spec, basis, spectrum[j], t, ops.back());
  return total / norm_t;
}

FusedSumReadings fused_sum_identity(const ChainSpec& spec, const EigenvalueFn& t, int n) {
  const SeparationGrid sep = grid(spec);
  const int ts = spec.twice_spin[n];
  const Cx target = static_cast<double>(ts) * fused_eigenvalue(spec, t, ts, spec.inhom[n]);
  double scale = std::max(1.0, std::abs(target));
  Cx sum_half = 0.0, sum_full = 0.0;
  for (int h = 0; h < ts; ++h) {
    const Cx first_arg = sep.point(n, 0.5 * (h + 1));
    const Cx mid = t(sep.point(n, h));
    const Cx tail = fused_eigenvalue(spec, t, ts - h - 1, sep.point(n, 0.5 * h + 0.5 * ts));
    const Cx term_half = fused_eigenvalue(spec, t, h, first_arg) * mid * tail;
    const Cx term_full = fused_eigenvalue(spec, t, 2 * h, first_arg) * mid * tail;
    sum_half += term_half;
    sum_full += term_full;
    scale = std::max({scale, std::abs(term_half), std::abs(term_full)});
  }
  return FusedSumReadings{std::abs(sum_half - target) / scale, std::abs(sum_full - target) / scale};
}

}  // namespace apxxx
