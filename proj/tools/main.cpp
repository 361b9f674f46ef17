#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "apxxx/correlators.hpp"
#include "apxxx/linalg.hpp"
#include "apxxx/model.hpp"
#include "apxxx/operators.hpp"
#include "apxxx/reconstruction.hpp"
#include "apxxx/sov.hpp"
#include "apxxx/spectrum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace apxxx;

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json cx_json(Cx z) { return json::array({z.real(), z.imag()}); }

struct Check {
  std::string name;
  double residual;
  double tol;
  bool pass;
};

struct Suite {
  std::vector<Check> checks;
  std::optional<double> tol_override;

  void add(const std::string& name, double residual, double default_tol) {
    const double tol = tol_override.value_or(default_tol);
    checks.push_back({name, residual, tol, residual <= tol});
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  json to_json() const {
    json arr = json::array();
    for (const auto& c : checks)
      arr.push_back({{"name", c.name}, {"residual", c.residual}, {"tol", c.tol},
                     {"pass", c.pass}});
    return arr;
  }
};

ChainSpec default_benchmark() {
  ChainSpec raw;
  raw.sites = 2;
  raw.twice_spin = {1, 1};
  raw.eta = Cx(0.0, 1.0);
  raw.inhom = {Cx(1.0, 0.0), Cx(2.0, 0.0)};
  return validate(raw);
}

ChainSpec load_spec(const std::string& config_path) {
  if (config_path.empty()) return default_benchmark();
  std::ifstream in(config_path);
  if (!in) throw Error("cannot open config file: " + config_path);
  json j = json::parse(in);
  return validate(spec_from_json(j));
}

Cx random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return Cx(u(rng), u(rng));
}

// <t| X |t'> with X an already-embedded full-space operator.
Cx bilinear(const SovBasis& basis, const EigenvalueFn& t, const EigenvalueFn& tp, const Mat& x) {
  const Vec left = sov_eigenstate(basis, t, Side::Left);
  const Vec right = sov_eigenstate(basis, tp, Side::Right);
  return left.transpose() * x * right;
}

void run_verify(const ChainSpec& spec, Suite& suite, std::mt19937_64& rng) {
  // Algebraic layer.
  {
    double yb = 0.0, gl2 = 0.0, flip = 0.0;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
      const Cx l = random_point(rng), m = random_point(rng);
      yb = std::max(yb, yang_baxter_residual(spec.eta, l, m));
      Eigen::Matrix2cd w;
      w << random_point(rng), random_point(rng), random_point(rng), random_point(rng);
      if (std::abs(w.determinant()) > 1e-3) gl2 = std::max(gl2, gl2_symmetry_residual(spec.eta, l, w));
      flip = std::max(flip, flip_symmetry_residual(spec.eta, l));
    }
    suite.add("yang_baxter", yb, 1e-11);
    suite.add("gl2_twist_symmetry", gl2, 1e-11);
    suite.add("flip_symmetry", flip, 1e-11);
  }
  {
    double qd = 0.0;
    for (int i = 0; i < 5; ++i) {
      const Cx l = random_point(rng);
      const MonodromyBlocks m1 = monodromy(spec, l);
      const MonodromyBlocks m0 = monodromy(spec, l - spec.eta);
      const Mat lhs = m1.b * m0.c - m1.a * m0.d;
      const Mat target = qdetbar(spec, l) * Mat::Identity(spec.dim(), spec.dim());
      const double scale = std::max(1.0, target.cwiseAbs().maxCoeff());
      qd = std::max(qd, (lhs - target).cwiseAbs().maxCoeff() / scale);
    }
    suite.add("quantum_determinant", qd, 1e-11);
  }
  // Commuting family and normality.
  {
    double comm = 0.0;
    for (int i = 0; i < 5; ++i) {
      const Cx l = random_point(rng), m = random_point(rng);
      const Mat tl = transfer(spec, l), tm = transfer(spec, m);
      const double scale = std::max(1.0, (tl * tm).cwiseAbs().maxCoeff());
      comm = std::max(comm, (tl * tm - tm * tl).cwiseAbs().maxCoeff() / scale);
    }
    suite.add("commuting_family", comm, 1e-10);
    const Mat h = Cx(0, 1) * transfer(spec, hermitian_point(spec, 0.3));
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    suite.add("hermitian_at_lambda0", (h - h.adjoint()).cwiseAbs().maxCoeff() / scale,
              1e-11);
  }
  // SOV basis.
  const SovBasis basis = build_sov_basis(spec);
  {
    const long d = spec.dim();
    double deig = 0.0, pair_res = 0.0;
    const Cx l = random_point(rng);
    const MonodromyBlocks m = monodromy(spec, l);
    const SeparationGrid sep = grid(spec);
    for (long idx = 0; idx < d; ++idx) {
      const auto h = unflat_index(idx, spec.twice_spin);
      Cx dh = 1.0;  // d_h(lambda) = prod_n (lambda - eta_n^{(h_n)})
      for (int n = 0; n < spec.sites; ++n) dh *= l - sep.point(n, h[n]);
      const Vec v = basis.right_state(idx);
      deig = std::max(deig, (m.d * v - dh * v).norm() / std::max(1.0, std::abs(dh) * v.norm()));
      const RowVec w = basis.left_state(idx);
      deig = std::max(deig, (w * m.d - dh * w).norm() / std::max(1.0, std::abs(dh) * w.norm()));
      const auto k = unflat_index(idx, spec.twice_spin);
      const Cx direct = w * v;
      pair_res = std::max(pair_res, std::abs(direct - sov_overlap(basis, h, k)));
    }
    suite.add("sov_d_eigenstates", deig, 1e-9);
    suite.add("sov_pairings", pair_res, 1e-9);
    Mat id = Mat::Zero(d, d);
    for (long idx = 0; idx < d; ++idx)
      id += basis.mu(idx) * basis.right_state(idx) * basis.left_state(idx);
    suite.add("identity_decomposition",
              (id - Mat::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-8);
  }
  // Spectrum.
  std::vector<EigenRecord> spectrum = ed_spectrum(spec);
  {
    double worst = 0.0, closure = 0.0, collin = 0.0;
    for (const auto& rec : spectrum) {
      worst = std::max(worst, sov_residual(spec, rec.t));
      for (QKind kind : {QKind::Q, QKind::Qbar}) {
        const QAmplitudes q = q_amplitudes(spec, rec.t, kind, -1.0);
        for (double r : q.closure_residuals) closure = std::max(closure, r);
      }
      const Vec v = sov_eigenstate(basis, rec.t, Side::Right);
      const Cx ip = rec.right.dot(v);
      collin = std::max(collin,
                        std::abs(1.0 - std::abs(ip) / (rec.right.norm() * v.norm())));
    }
    suite.add("spectrum_count",
              spectrum.size() == static_cast<size_t>(spec.dim()) ? 0.0 : 1.0, 0.5);
    suite.add("spectrum_sov_residual", worst, 1e-10);
    suite.add("q_closure", closure, 1e-9);
    suite.add("sov_ed_collinearity", collin, 1e-8);
  }
  // Scalar products and orthogonality.
  {
    double sp = 0.0;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      SiteAmplitudes alpha(spec.sites), beta(spec.sites);
      for (int n = 0; n < spec.sites; ++n)
        for (int k = 0; k <= spec.twice_spin[n]; ++k) {
          alpha[n].push_back(Cx(u(rng), u(rng)));
          beta[n].push_back(Cx(u(rng), u(rng)));
        }
      const Cx det_val = scalar_product_det(spec, alpha, beta);
      const Vec lv = separate_state(basis, alpha, Side::Left);
      const Vec rv = separate_state(basis, beta, Side::Right);
      const Cx direct = lv.transpose() * rv;
      sp = std::max(sp, std::abs(det_val - direct) / std::max(1.0, std::abs(direct)));
    }
    suite.add("scalar_product_det_vs_direct", sp, 1e-9);
    double ortho = 0.0;
    for (size_t i = 0; i < spectrum.size(); ++i)
      for (size_t j = 0; j < spectrum.size(); ++j)
        if (i != j)
          ortho = std::max(ortho, orthogonality_witness(spec, spectrum[i].t, spectrum[j].t));
    suite.add("orthogonality_witness", ortho, 1e-9);
  }
  // Form factors.
  {
    double worst = 0.0;
    for (int n = 0; n < spec.sites; ++n)
      for (const auto& ta : spectrum)
        for (const auto& tb : spectrum) {
          const Cx fm = form_factor_sminus(spec, ta.t, tb.t, n);
          const Cx om = matrix_element_direct(basis, ta.t, tb.t,
                                              spin_minus(spec.twice_spin[n]), n);
          worst = std::max(worst, std::abs(fm - om) / std::max(1.0, std::abs(om)));
          const Cx fz = form_factor_sz(spec, ta.t, tb.t, n);
          const Cx oz = matrix_element_direct(basis, ta.t, tb.t,
                                              spin_z(spec.twice_spin[n]), n);
          worst = std::max(worst, std::abs(fz - oz) / std::max(1.0, std::abs(oz)));
        }
    suite.add("form_factors_vs_oracle", worst, 1e-8);
  }
  // Reconstruction.
  {
    double rec = 0.0, str = 0.0;
    for (int n = 0; n < spec.sites; ++n) {
      for (char tag : {'-', '+', 'z'}) rec = std::max(rec, reconstruction_residual(spec, tag, n));
      rec = std::max(rec, verify_reconstruction_identity(spec, n));
      str = std::max(str, verify_sigma_string(spec, n));
    }
    suite.add("reconstruction", rec, 1e-8);
    suite.add("sigma_strings", str, 1e-8);
  }
  // m-point (2-point at N >= 2).
  if (spec.sites >= 2) {
    std::vector<EigenvalueFn> all;
    for (const auto& r : spectrum) all.push_back(r.t);
    const EigenvalueFn& t0 = spectrum.front().t;
    std::vector<LocalOp> ops = {{'z', 0, Mat()}, {'z', spec.sites - 1, Mat()}};
    const Cx expanded = mpoint(spec, basis, all, t0, ops);
    const Mat x = embed_site_operator(spin_z(spec.twice_spin[0]), 0, spec.local_dims()) *
                  embed_site_operator(spin_z(spec.twice_spin[spec.sites - 1]), spec.sites - 1,
                                      spec.local_dims());
    const Cx direct = bilinear(basis, t0, t0, x) / eigenstate_norm(spec, t0);
    suite.add("two_point_expansion", std::abs(expanded - direct) / std::max(1.0, std::abs(direct)),
              1e-7);
  }
  // Fusion consistency on eigenstates.
  {
    double fus = 0.0;
    const Cx l = random_point(rng);
    const int ts = *std::max_element(spec.twice_spin.begin(), spec.twice_spin.end());
    const Mat ft = fused_transfer(spec, ts, l);
    for (const auto& rec : spectrum) {
      const Vec v = sov_eigenstate(basis, rec.t, Side::Right);
      const Cx val = fused_eigenvalue(spec, rec.t, ts, l);
      fus = std::max(fus, (ft * v - val * v).norm() / std::max(1.0, std::abs(val) * v.norm()));
    }
    suite.add("fused_eigenvalue_consistency", fus, 1e-9);
  }
}

json parity_report(const ChainSpec& spec, const std::vector<EigenRecord>& spectrum) {
  json arr = json::array();
  for (const auto& rec : spectrum) {
    const ParityDiagnostic p = measure_parity(spec, rec.t);
    json item;
    item["found"] = p.found;
    if (p.found) {
      item["parity"] = p.parity;
      item["shift"] = cx_json(p.shift);
    }
    arr.push_back(item);
  }
  return arr;
}

int cmd_verify(const ChainSpec& spec, const fs::path& out_dir, std::optional<double> tol,
               unsigned long seed) {
  Suite suite;
  suite.tol_override = tol;
  std::mt19937_64 rng(seed);
  run_verify(spec, suite, rng);
  json report;
  report["spec"] = spec_to_json(spec);
  report["seed"] = seed;
  report["checks"] = suite.to_json();
  report["pass"] = suite.all_pass();
  // Fused sum identity: residuals of both first-factor readings, reported
  // only (the identity closes at spin 1/2 and acquires quantum-determinant
  // corrections beyond it).
  {
    json arr = json::array();
    const std::vector<EigenRecord> spectrum = ed_spectrum(spec);
    for (size_t i = 0; i < spectrum.size(); ++i)
      for (int n = 0; n < spec.sites; ++n) {
        const FusedSumReadings f = fused_sum_identity(spec, spectrum[i].t, n);
        json item;
        item["state"] = i;
        item["site"] = n;
        item["residual_half_label"] = f.half_label;
        item["residual_full_label"] = f.full_label;
        arr.push_back(item);
      }
    report["fused_sum_identity"] = arr;
  }
  std::ofstream(out_dir / "report_verify.json") << report.dump(2) << "\n";
  for (const auto& c : suite.checks)
    std::cout << (c.pass ? "pass" : "FAIL") << "  " << c.name << "  residual=" << fmt17(c.residual)
              << "  tol=" << fmt17(c.tol) << "\n";
  return suite.all_pass() ? 0 : 1;
}

int cmd_spectrum(const ChainSpec& spec, const fs::path& out_dir, std::optional<double> tol) {
  const double gate = tol.value_or(1e-10);
  const std::vector<EigenRecord> spectrum = ed_spectrum(spec);
  const SovBasis basis = build_sov_basis(spec);
  json records = json::array();
  bool ok = spectrum.size() == static_cast<size_t>(spec.dim());
  std::mt19937_64 rng(1234);
  for (const auto& rec : spectrum) {
    json item;
    json coeffs = json::array();
    for (const Cx& c : rec.t.t.coeffs) coeffs.push_back(cx_json(c));
    item["coefficients"] = coeffs;
    const double res = sov_residual(spec, rec.t);
    item["sov_residual"] = res;
    ok = ok && res <= gate;
    json closures = json::array();
    for (QKind kind : {QKind::Q, QKind::Qbar}) {
      const QAmplitudes q = q_amplitudes(spec, rec.t, kind, -1.0);
      for (double r : q.closure_residuals) closures.push_back(r);
    }
    item["closure_residuals"] = closures;
    double eig_res = 0.0;
    const Vec v = sov_eigenstate(basis, rec.t, Side::Right);
    for (int i = 0; i < 3; ++i) {
      const Cx l = random_point(rng);
      eig_res = std::max(eig_res, (transfer(spec, l) * v - rec.t(l) * v).norm() /
                                      std::max(1.0, std::abs(rec.t(l)) * v.norm()));
    }
    item["eigen_residual"] = eig_res;
    const ParityDiagnostic p = measure_parity(spec, rec.t);
    item["parity_flag"] = p.found ? p.parity + " in lambda - shift" : std::string("none");
    if (p.found) item["parity_shift"] = cx_json(p.shift);
    records.push_back(item);
  }
  json report;
  report["spec"] = spec_to_json(spec);
  report["records"] = records;
  report["parity"] = parity_report(spec, spectrum);
  std::ofstream(out_dir / "spectrum.json") << report.dump(2) << "\n";
  std::cout << "spectrum: " << spectrum.size() << " records written\n";
  return ok ? 0 : 1;
}

int cmd_formfactors(const ChainSpec& spec, const fs::path& out_dir, std::optional<double> tol) {
  const double gate = tol.value_or(1e-8);
  const std::vector<EigenRecord> spectrum = ed_spectrum(spec);
  const SovBasis basis = build_sov_basis(spec);
  std::ofstream csv(out_dir / "formfactors.csv");
  csv << "n,operator,t_index,tp_index,re,im,oracle_re,oracle_im,rel_err\n";
  double worst = 0.0;
  for (int n = 0; n < spec.sites; ++n)
    for (size_t i = 0; i < spectrum.size(); ++i)
      for (size_t j = 0; j < spectrum.size(); ++j)
        for (char op : {'-', 'z'}) {
          Cx formula;
          std::string err;
          try {
            formula = op == '-' ? form_factor_sminus(spec, spectrum[i].t, spectrum[j].t, n)
                                : form_factor_sz(spec, spectrum[i].t, spectrum[j].t, n);
          } catch (const SingularFactorError& e) {
            err = e.what();
          }
          const Mat local = op == '-' ? spin_minus(spec.twice_spin[n]) : spin_z(spec.twice_spin[n]);
          const Cx oracle = matrix_element_direct(basis, spectrum[i].t, spectrum[j].t, local, n);
          const double rel = err.empty()
                                 ? std::abs(formula - oracle) / std::max(1.0, std::abs(oracle))
                                 : std::numeric_limits<double>::quiet_NaN();
          if (err.empty()) worst = std::max(worst, rel);
          csv << n + 1 << "," << op << "," << i << "," << j << "," << fmt17(formula.real()) << ","
              << fmt17(formula.imag()) << "," << fmt17(oracle.real()) << ","
              << fmt17(oracle.imag()) << "," << fmt17(rel) << "\n";
        }
  std::cout << "max rel_err = " << fmt17(worst) << "\n";
  return worst <= gate ? 0 : 1;
}

int cmd_correlate(const ChainSpec& spec, const fs::path& out_dir, std::optional<double> tol) {
  const double gate = tol.value_or(1e-7);
  const std::vector<EigenRecord> spectrum = ed_spectrum(spec);
  const SovBasis basis = build_sov_basis(spec);
  std::vector<EigenvalueFn> all;
  for (const auto& r : spectrum) all.push_back(r.t);
  const EigenvalueFn& t0 = spectrum.front().t;
  const int n0 = 0, n1 = spec.sites - 1;
  std::vector<LocalOp> ops;
  ops.push_back({'z', n0, Mat()});
  if (spec.sites >= 2) ops.push_back({'z', n1, Mat()});
  const Cx expanded = mpoint(spec, basis, all, t0, ops);
  Mat x = embed_site_operator(spin_z(spec.twice_spin[n0]), n0, spec.local_dims());
  if (spec.sites >= 2)
    x = x * embed_site_operator(spin_z(spec.twice_spin[n1]), n1, spec.local_dims());
  const Cx direct = bilinear(basis, t0, t0, x) / eigenstate_norm(spec, t0);
  const double rel = std::abs(expanded - direct) / std::max(1.0, std::abs(direct));
  json report;
  report["spec"] = spec_to_json(spec);
  report["sites"] = {n0 + 1, n1 + 1};
  report["operator"] = "SzSz";
  report["expanded"] = cx_json(expanded);
  report["direct"] = cx_json(direct);
  report["rel_err"] = rel;
  std::ofstream(out_dir / "correlate.json") << report.dump(2) << "\n";
  std::cout << "two-point rel_err = " << fmt17(rel) << "\n";
  return rel <= gate ? 0 : 1;
}

int cmd_reconstruct(const ChainSpec& spec, const fs::path& out_dir, std::optional<double> tol) {
  const double gate = tol.value_or(1e-8);
  json rows = json::array();
  double worst = 0.0;
  for (int n = 0; n < spec.sites; ++n) {
    for (char tag : {'-', '+', 'z'}) {
      const double r = reconstruction_residual(spec, tag, n);
      const Mat alt = reconstruct_local_alt(spec, tag, n);
      const Mat r1 = reconstruct_local(spec, tag, n);
      const double order = (alt - r1).cwiseAbs().maxCoeff() /
                           std::max(1.0, r1.cwiseAbs().maxCoeff());
      worst = std::max({worst, r, order});
      rows.push_back({{"site", n + 1}, {"operator", std::string(1, tag)}, {"residual", r},
                      {"ordering_residual", order}});
    }
    const double sx = verify_reconstruction_identity(spec, n);
    const double str = verify_sigma_string(spec, n);
    worst = std::max({worst, sx, str});
    rows.push_back({{"site", n + 1}, {"operator", "sigma_x"}, {"residual", sx},
                    {"string_residual", str}});
  }
  json report;
  report["spec"] = spec_to_json(spec);
  report["rows"] = rows;
  report["max_residual"] = worst;
  std::ofstream(out_dir / "reconstruct.json") << report.dump(2) << "\n";
  std::cout << "max reconstruction residual = " << fmt17(worst) << "\n";
  return worst <= gate ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Antiperiodic higher-spin XXX chain: SOV spectrum, form factors, reconstruction"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<double> tol;
  unsigned long seed = 0;
  app.add_option("--config", config_path, "chain spec JSON (default: built-in N=2 benchmark)");
  app.add_option("--out", out_dir, "output directory");
  double tol_value = -1.0;
  auto* tol_opt = app.add_option("--tol", tol_value, "tolerance override for pass/fail gates");
  app.add_option("--seed", seed, "random seed for property checks");

  auto* verify = app.add_subcommand("verify", "run every invariant suite");
  auto* spectrum = app.add_subcommand("spectrum", "full spectrum report");
  auto* formfactors = app.add_subcommand("formfactors", "form-factor table vs oracle");
  auto* correlate = app.add_subcommand("correlate", "m-point spectral expansion check");
  auto* reconstruct = app.add_subcommand("reconstruct", "inverse-problem residuals");
  for (auto* sub : {verify, spectrum, formfactors, correlate, reconstruct}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (tol_opt->count() > 0) tol = tol_value;

  ChainSpec spec;
  try {
    spec = load_spec(config_path);
    fs::create_directories(out_dir);
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  try {
    const fs::path out(out_dir);
    if (verify->parsed()) return cmd_verify(spec, out, tol, seed);
    if (spectrum->parsed()) return cmd_spectrum(spec, out, tol);
    if (formfactors->parsed()) return cmd_formfactors(spec, out, tol);
    if (correlate->parsed()) return cmd_correlate(spec, out, tol);
    if (reconstruct->parsed()) return cmd_reconstruct(spec, out, tol);
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
