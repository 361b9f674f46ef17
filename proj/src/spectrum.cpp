#include "apxxx/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace apxxx {

Cx fused_eigenvalue(const ChainSpec& spec, const EigenvalueFn& t, int twice_s, Cx lambda,
                    Twist twist) {
  if (twice_s < 0) throw Error("fused_eigenvalue: spin label must be nonnegative");
  if (twice_s == 0) return 1.0;
  if (twice_s == 1) return t(lambda);
  const Cx half = spec.eta * 0.5;
  const double s = 0.5 * twice_s;
  return t(lambda - half + s * spec.eta) *
             fused_eigenvalue(spec, t, twice_s - 1, lambda - half, twist) -
         qdet_scalar(spec, lambda + (s - 0.5) * spec.eta, twist) *
             fused_eigenvalue(spec, t, twice_s - 2, lambda - spec.eta, twist);
}

Mat dn_matrix(const ChainSpec& spec, const EigenvalueFn& t, int n) {
  const SeparationGrid sep = grid(spec);
  const int d = spec.twice_spin[n] + 1;
  Mat m = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    m(k, k) = t(sep.point(n, k));
    if (k + 1 < d) m(k, k + 1) = -a_of(spec, sep.point(n, k));
    if (k > 0) m(k, k - 1) = -d_of(spec, sep.point(n, k));
  }
  return m;
}

double sov_residual(const ChainSpec& spec, const EigenvalueFn& t) {
  const SeparationGrid sep = grid(spec);
  double worst = 0.0;
  for (int n = 0; n < spec.sites; ++n) {
    double scale = 1.0;
    for (int k = 0; k <= spec.twice_spin[n]; ++k) {
      const Cx x = sep.point(n, k);
      scale *= std::max({std::abs(t(x)), std::abs(a_of(spec, x)), std::abs(d_of(spec, x)), 1.0});
    }
    worst = std::max(worst, std::abs(det(dn_matrix(spec, t, n))) / scale);
  }
  return worst;
}

QAmplitudes q_amplitudes(const ChainSpec& spec, const EigenvalueFn& t, QKind kind,
                         double closure_tol) {
  const SeparationGrid sep = grid(spec);
  QAmplitudes amps{kind, {}, {}};
  for (int n = 0; n < spec.sites; ++n) {
    const int ts = spec.twice_spin[n];
    std::vector<Cx> q(ts + 1);
    q[0] = 1.0;
    double scale = 1.0;
    for (int h = 0; h < ts; ++h) {
      const Cx tv = t(sep.point(n, h));
      if (kind == QKind::Q) {
        // t(x_h) Q(x_h) = d(x_{h+1}) Q(x_{h+1}) + a(x_{h-1}) Q(x_{h-1})
        Cx num = tv * q[h];
        if (h > 0) num -= a_of(spec, sep.point(n, h - 1)) * q[h - 1];
        q[h + 1] = num / d_of(spec, sep.point(n, h + 1));
      } else {
        // t(x_h) Qbar(x_h) = a(x_h) Qbar(x_{h+1}) + d(x_h) Qbar(x_{h-1})
        Cx num = tv * q[h];
        if (h > 0) num -= d_of(spec, sep.point(n, h)) * q[h - 1];
        q[h + 1] = num / a_of(spec, sep.point(n, h));
      }
    }
    for (int k = 0; k <= ts; ++k) {
      const Cx x = sep.point(n, k);
      scale = std::max({scale, std::abs(t(x)) * std::abs(q[k]),
                        std::abs(a_of(spec, x)) * std::abs(q[k]),
                        std::abs(d_of(spec, x)) * std::abs(q[k])});
    }
    // Closure at the top of the ladder, where a (resp. d) has its exact zero.
    Cx closure;
    if (kind == QKind::Q) {
      closure = t(sep.point(n, ts)) * q[ts] - a_of(spec, sep.point(n, ts - 1)) * q[ts - 1];
    } else {
      closure = t(sep.point(n, ts)) * q[ts] - d_of(spec, sep.point(n, ts)) * q[ts - 1];
    }
    const double res = std::abs(closure) / scale;
    amps.values.push_back(std::move(q));
    amps.closure_residuals.push_back(res);
    if (closure_tol >= 0.0 && res > closure_tol) {
      std::ostringstream msg;
      msg << "q_amplitudes: closure residual " << res << " at site " << n + 1
          << " (eigenvalue not in the spectrum?)";
      throw ConvergenceError(msg.str());
    }
  }
  return amps;
}

Vec sov_eigenstate(const SovBasis& basis, const EigenvalueFn& t, Side side) {
  const ChainSpec& spec = basis.spec;
  const QAmplitudes amps =
      q_amplitudes(spec, t, side == Side::Right ? QKind::Q : QKind::Qbar, -1.0);
  const long d = spec.dim();
  Vec coeff(d);
  for (long idx = 0; idx < d; ++idx) {
    const std::vector<int> h = unflat_index(idx, spec.twice_spin);
    Cx c = basis.mu(h);
    for (int n = 0; n < spec.sites; ++n) c *= amps.values[n][h[n]];
    coeff(idx) = c;
  }
  return from_sov(basis, coeff, side);
}

namespace {

double e_n_phase(const ChainSpec& spec) {
  // Lemma on Hermiticity: i T-bar in the imaginary-eta regime;
  // i^{e_N} T-bar with e_N = (N even ? 1 : 0) in the real-eta regime.
  if (spec.regime == Regime::ImaginaryEta) return 1.0;
  return spec.sites % 2 == 0 ? 1.0 : 0.0;
}

}  // namespace

std::vector<EigenRecord> ed_spectrum(const ChainSpec& spec, double x0, int max_retries) {
  if (spec.regime == Regime::Generic)
    throw Error("ed_spectrum: requires a Hermitian regime (imaginary-eta or real-eta)");
  const long d = spec.dim();
  const Cx phase = e_n_phase(spec) > 0.5 ? Cx(0.0, 1.0) : Cx(1.0, 0.0);

  HermitianEigen eig;
  Cx lambda0;
  bool ok = false;
  double x = x0;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    lambda0 = hermitian_point(spec, x);
    const Mat h = phase * transfer(spec, lambda0);
    eig = eig_hermitian(h);
    const double scale = std::max(eig.values.cwiseAbs().maxCoeff(), 1.0);
    double min_gap = std::numeric_limits<double>::infinity();
    for (long i = 1; i < d; ++i) min_gap = std::min(min_gap, eig.values(i) - eig.values(i - 1));
    if (d == 1 || min_gap > 1e-8 * scale) {
      ok = true;
      break;
    }
    x += 0.37 * (attempt + 1);
  }
  if (!ok) throw Error("ed_spectrum: could not find a simple-spectrum evaluation point");

  // Rayleigh-quotient nodes along the self-adjoint line.
  std::vector<Cx> nodes(spec.sites);
  std::vector<Mat> tmats(spec.sites);
  const Cx step = spec.regime == Regime::ImaginaryEta ? Cx(1.0, 0.0) : Cx(0.0, 1.0);
  for (int j = 0; j < spec.sites; ++j) {
    nodes[j] = lambda0 + static_cast<double>(j) * step;
    tmats[j] = j == 0 ? transfer(spec, nodes[0]) : transfer(spec, nodes[j]);
  }

  std::vector<EigenRecord> records;
  records.reserve(d);
  for (long i = 0; i < d; ++i) {
    const Vec v = eig.vectors.col(i);
    std::vector<Cx> values(spec.sites);
    for (int j = 0; j < spec.sites; ++j) values[j] = v.dot(tmats[j] * v);  // v is unit norm
    EigenRecord rec;
    rec.t = EigenvalueFn{poly_from_samples(nodes, values)};
    rec.right = v;
    rec.left = v.adjoint();
    rec.ed_value = eig.values(i);
    records.push_back(std::move(rec));
  }
  return records;
}

EigenvalueFn refine_newton(const ChainSpec& spec, const EigenvalueFn& t_init, double target,
                           int max_iter) {
  const int n = spec.sites;
  Vec c = Vec::Zero(n);
  for (int b = 0; b < n && b < static_cast<int>(t_init.t.coeffs.size()); ++b)
    c(b) = t_init.t.coeffs[b];

  auto as_fn = [&](const Vec& cc) {
    std::vector<Cx> coeffs(cc.data(), cc.data() + cc.size());
    return EigenvalueFn{Polynomial(std::move(coeffs))};
  };
  auto residual_vec = [&](const Vec& cc) {
    const EigenvalueFn fn = as_fn(cc);
    Vec f(n);
    for (int k = 0; k < n; ++k) f(k) = det(dn_matrix(spec, fn, k));
    return f;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    if (sov_residual(spec, as_fn(c)) <= target) return as_fn(c);
    const Vec f = residual_vec(c);
    Mat jac(n, n);
    for (int b = 0; b < n; ++b) {
      const double step = 1e-6 * std::max(1.0, std::abs(c(b)));
      Vec cp = c, cm = c;
      cp(b) += step;
      cm(b) -= step;
      jac.col(b) = (residual_vec(cp) - residual_vec(cm)) / (2.0 * step);
    }
    const Vec delta = Eigen::PartialPivLU<Mat>(jac).solve(-f);
    double alpha = 1.0;
    const double f0 = f.norm();
    for (int back = 0; back < 40; ++back) {
      if (residual_vec(c + alpha * delta).norm() <= (1.0 - 0.5 * alpha) * f0) break;
      alpha *= 0.5;
    }
    c += alpha * delta;
  }
  if (sov_residual(spec, as_fn(c)) <= target) return as_fn(c);
  std::ostringstream msg;
  msg << "refine_newton: no convergence in " << max_iter
      << " iterations, residual = " << sov_residual(spec, as_fn(c));
  throw ConvergenceError(msg.str());
}

ParityDiagnostic measure_parity(const ChainSpec& spec, const EigenvalueFn& t, double tol) {
  Cx mean = 0.0;
  for (const Cx& e : spec.inhom) mean += e;
  mean /= static_cast<double>(spec.sites);
  const std::vector<Cx> shifts = {Cx(0.0),          -spec.eta * 0.5,     spec.eta * 0.5,
                                  mean,             mean - spec.eta * 0.5, mean + spec.eta * 0.5};
  const int n = static_cast<int>(t.t.coeffs.size());
  double scale = 0.0;
  for (const Cx& cc : t.t.coeffs) scale = std::max(scale, std::abs(cc));
  if (scale == 0.0) scale = 1.0;

  for (const Cx& shift : shifts) {
    // Coefficients of t(shift + x) in x: shifted[k] = sum_j c_j C(j,k) shift^{j-k}.
    std::vector<Cx> c = t.t.coeffs;
    std::vector<Cx> shifted(n, Cx(0.0));
    for (int j = 0; j < n; ++j) {
      Cx pow = 1.0;
      double binom = 1.0;
      for (int k = j; k >= 0; --k) {
        shifted[k] += c[j] * binom * pow;
        pow *= shift;
        binom = binom * k / static_cast<double>(j - k + 1);
      }
    }
    double odd_part = 0.0, even_part = 0.0;
    for (int k = 0; k < n; ++k)
      (k % 2 == 0 ? even_part : odd_part) = std::max(k % 2 == 0 ? even_part : odd_part,
                                                      std::abs(shifted[k]));
    if (odd_part <= tol * scale) return ParityDiagnostic{true, "even", shift};
    if (even_part <= tol * scale) return ParityDiagnostic{true, "odd", shift};
  }
  return ParityDiagnostic{};
}

}  // namespace apxxx
