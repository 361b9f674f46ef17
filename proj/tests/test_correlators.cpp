#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <apxxx/correlators.hpp>

using namespace apxxx;

namespace {

ChainSpec single_site_half() {
  ChainSpec s;
  s.sites = 1;
  s.twice_spin = {1};
  s.eta = Cx(0.0, 1.0);
  s.inhom = {Cx(0.0)};
  return validate(s);
}

ChainSpec mixed_chain() {
  ChainSpec s;
  s.sites = 2;
  s.twice_spin = {1, 2};
  s.eta = Cx(0.0, 1.0);
  s.inhom = {Cx(1.0), Cx(2.0)};
  return validate(s);
}

EigenvalueFn constant_fn(Cx c) { return EigenvalueFn{Polynomial({c})}; }

}  // namespace

TEST_CASE("single-site norms and orthogonality by hand") {
  ChainSpec s = single_site_half();
  EigenvalueFn tp = constant_fn(s.eta), tm = constant_fn(-s.eta);
  CHECK(std::abs(eigenstate_norm(s, tp) - Cx(2.0)) < 1e-12);
  CHECK(std::abs(eigenstate_norm(s, tm) - Cx(2.0)) < 1e-12);
  SiteAmplitudes qbar = amplitudes_from_q(q_amplitudes(s, tp, QKind::Qbar, -1.0));
  SiteAmplitudes q = amplitudes_from_q(q_amplitudes(s, tm, QKind::Q, -1.0));
  CHECK(std::abs(scalar_product_det(s, qbar, q)) < 1e-12);
  CHECK(orthogonality_witness(s, tp, tm) < 1e-9);
}

TEST_CASE("single-site form factors by hand") {
  ChainSpec s = single_site_half();
  EigenvalueFn tp = constant_fn(s.eta), tm = constant_fn(-s.eta);
  CHECK(std::abs(form_factor_sminus(s, tp, tm, 0) - Cx(1.0)) < 1e-11);
  CHECK(std::abs(form_factor_sminus(s, tp, tp, 0) - Cx(1.0)) < 1e-11);
  CHECK(std::abs(form_factor_sz(s, tp, tm, 0) - Cx(1.0)) < 1e-11);
  CHECK(std::abs(form_factor_sz(s, tp, tp, 0)) < 1e-11);
}

TEST_CASE("direct matrix element of the identity gives the norm") {
  ChainSpec s = single_site_half();
  SovBasis b = build_sov_basis(s);
  EigenvalueFn tp = constant_fn(s.eta), tm = constant_fn(-s.eta);
  Mat id = Mat::Identity(2, 2);
  CHECK(std::abs(matrix_element_direct(b, tp, tp, id, 0) - Cx(2.0)) < 1e-11);
  CHECK(std::abs(matrix_element_direct(b, tp, tm, id, 0)) < 1e-11);
}

TEST_CASE("sl(2) consistency of the direct elements") {
  ChainSpec s = mixed_chain();
  SovBasis b = build_sov_basis(s);
  auto recs = ed_spectrum(s);
  for (int n = 0; n < s.sites; ++n) {
    const int ts = s.twice_spin[n];
    Mat comm = spin_plus(ts) * spin_minus(ts) - spin_minus(ts) * spin_plus(ts);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < recs.size(); ++j) {
        Cx lhs = matrix_element_direct(b, recs[i].t, recs[j].t, comm, n);
        Cx rhs = 2.0 * matrix_element_direct(b, recs[i].t, recs[j].t, spin_z(ts), n);
        CHECK(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, std::abs(rhs)));
      }
  }
}

TEST_CASE("scalar product determinant equals the direct pairing at N=3") {
  ChainSpec s;
  s.sites = 3;
  s.twice_spin = {1, 1, 1};
  s.eta = Cx(0.0, 1.0);
  s.inhom = {Cx(1.0), Cx(2.0), Cx(3.5)};
  s = validate(s);
  SovBasis b = build_sov_basis(s);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    SiteAmplitudes alpha(s.sites), beta(s.sites);
    for (int n = 0; n < s.sites; ++n)
      for (int k = 0; k <= s.twice_spin[n]; ++k) {
        alpha[n].push_back(Cx(u(rng), u(rng)));
        beta[n].push_back(Cx(u(rng), u(rng)));
      }
    Cx det_val = scalar_product_det(s, alpha, beta);
    Vec lv = separate_state(b, alpha, Side::Left);
    Vec rv = separate_state(b, beta, Side::Right);
    Cx direct = (lv.transpose() * rv).value();
    CHECK(std::abs(det_val - direct) < 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("gram matrix separability: a site perturbation changes one row") {
  ChainSpec s = mixed_chain();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SiteAmplitudes alpha(s.sites), beta(s.sites);
  for (int n = 0; n < s.sites; ++n)
    for (int k = 0; k <= s.twice_spin[n]; ++k) {
      alpha[n].push_back(Cx(u(rng), u(rng)));
      beta[n].push_back(Cx(u(rng), u(rng)));
    }
  Mat m0 = gram_matrix(s, alpha, beta, s.sites);
  alpha[1][0] += Cx(0.5, -0.25);
  Mat m1 = gram_matrix(s, alpha, beta, s.sites);
  CHECK((m0.row(0) - m1.row(0)).norm() == 0.0);
  CHECK((m0.row(1) - m1.row(1)).norm() > 1e-6);
}

TEST_CASE("determinant form factors match the oracle on the mixed chain") {
  ChainSpec s = mixed_chain();
  SovBasis b = build_sov_basis(s);
  auto recs = ed_spectrum(s);
  for (int n = 0; n < s.sites; ++n)
    for (const auto& ta : recs)
      for (const auto& tb : recs) {
        Cx fm = form_factor_sminus(s, ta.t, tb.t, n);
        Cx om = matrix_element_direct(b, ta.t, tb.t, spin_minus(s.twice_spin[n]), n);
        CHECK(std::abs(fm - om) < 1e-8 * std::max(1.0, std::abs(om)));
        Cx fz = form_factor_sz(s, ta.t, tb.t, n);
        Cx oz = matrix_element_direct(b, ta.t, tb.t, spin_z(s.twice_spin[n]), n);
        CHECK(std::abs(fz - oz) < 1e-8 * std::max(1.0, std::abs(oz)));
      }
}

TEST_CASE("one-point expansion reduces to the normalized form factor") {
  ChainSpec s = single_site_half();
  SovBasis b = build_sov_basis(s);
  auto recs = ed_spectrum(s);
  std::vector<EigenvalueFn> spectrum;
  for (const auto& r : recs) spectrum.push_back(r.t);
  const EigenvalueFn& t = spectrum[0];
  Cx one = mpoint(s, b, spectrum, t, {LocalOp{'z', 0, Mat()}});
  Cx expect = form_factor_sz(s, t, t, 0) / eigenstate_norm(s, t);
  CHECK(std::abs(one - expect) < 1e-10);
}

TEST_CASE("(S^z)^2 on the single spin-1/2 site is 1/4") {
  ChainSpec s = single_site_half();
  SovBasis b = build_sov_basis(s);
  auto recs = ed_spectrum(s);
  std::vector<EigenvalueFn> spectrum;
  for (const auto& r : recs) spectrum.push_back(r.t);
  Cx val = mpoint(s, b, spectrum, spectrum[0],
                  {LocalOp{'z', 0, Mat()}, LocalOp{'z', 0, Mat()}});
  CHECK(std::abs(val - Cx(0.25)) < 1e-9);
}

TEST_CASE("hermitian-regime sum rule from the identity decomposition") {
  ChainSpec s = mixed_chain();
  SovBasis b = build_sov_basis(s);
  auto recs = ed_spectrum(s);
  const auto& t = recs[0].t;
  const int n = 1, ts = s.twice_spin[n];
  Cx norm_t = eigenstate_norm(s, t);
  Cx lhs = 0.0;
  for (const auto& r : recs) {
    Cx fz_rt = form_factor_sz(s, t, r.t, n);
    Cx fz_tr = form_factor_sz(s, r.t, t, n);
    lhs += fz_rt * fz_tr / (norm_t * eigenstate_norm(s, r.t));
  }
  Cx rhs = matrix_element_direct(b, t, t, spin_z(ts) * spin_z(ts), n) / norm_t;
  CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("fused sum identity readings close at spin 1/2 and are reported") {
  ChainSpec bench;
  bench.sites = 2;
  bench.twice_spin = {1, 1};
  bench.eta = Cx(0.0, 1.0);
  bench.inhom = {Cx(1.0), Cx(2.0)};
  bench = validate(bench);
  auto recs = ed_spectrum(bench);
  for (const auto& r : recs) {
    FusedSumReadings f = fused_sum_identity(bench, r.t, 0);
    CHECK(f.half_label < 1e-10);
    CHECK(f.full_label < 1e-10);
  }
  // beyond spin 1/2 the readings acquire quantum-determinant corrections:
  // residuals are finite numbers to report, never asserted small
  ChainSpec mix = mixed_chain();
  auto mrecs = ed_spectrum(mix);
  FusedSumReadings f = fused_sum_identity(mix, mrecs[0].t, 1);
  CHECK(std::isfinite(f.half_label));
  CHECK(std::isfinite(f.full_label));
}
