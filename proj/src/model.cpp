#include "apxxx/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace apxxx {

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::ImaginaryEta: return "imaginary-eta";
    case Regime::RealEta: return "real-eta";
    default: return "generic";
  }
}

Regime regime_from_name(const std::string& name) {
  if (name == "imaginary-eta") return Regime::ImaginaryEta;
  if (name == "real-eta") return Regime::RealEta;
  if (name == "generic") return Regime::Generic;
  throw Error("unknown regime name: " + name);
}

std::vector<int> ChainSpec::local_dims() const {
  std::vector<int> dims(twice_spin.size());
  for (size_t n = 0; n < twice_spin.size(); ++n) dims[n] = twice_spin[n] + 1;
  return dims;
}

long ChainSpec::dim() const {
  long d = 1;
  for (int ts : twice_spin) d *= ts + 1;
  return d;
}

namespace {

bool all_real(const std::vector<Cx>& v) {
  for (const Cx& z : v)
    if (std::abs(z.imag()) > 1e-14 * std::max(1.0, std::abs(z))) return false;
  return true;
}

bool all_imag(const std::vector<Cx>& v) {
  for (const Cx& z : v)
    if (std::abs(z.real()) > 1e-14 * std::max(1.0, std::abs(z))) return false;
  return true;
}

}  // namespace

ChainSpec validate(ChainSpec raw) {
  if (raw.sites < 1) throw Error("validate: N must be >= 1");
  if (static_cast<int>(raw.twice_spin.size()) != raw.sites ||
      static_cast<int>(raw.inhom.size()) != raw.sites)
    throw Error("validate: spins/inhom length must equal N");
  for (int ts : raw.twice_spin)
    if (ts < 1) throw Error("validate: 2 s_n must be a positive integer");
  if (std::abs(raw.eta) == 0.0) throw Error("validate: degenerate eta = 0");

  // eta_a - eta_b must stay away from eta*Z; only small multiples of eta
  // ever enter the grids at desk scale.
  int max_ts = 0;
  for (int ts : raw.twice_spin) max_ts = std::max(max_ts, ts);
  const int mmax = 2 * max_ts;  // 4 * max spin
  for (int a = 0; a < raw.sites; ++a)
    for (int b = 0; b < a; ++b) {
      const Cx diff = raw.inhom[a] - raw.inhom[b];
      for (int m = -mmax; m <= mmax; ++m)
        if (std::abs(diff - static_cast<double>(m) * raw.eta) <= 1e-8 * std::abs(raw.eta)) {
          std::ostringstream msg;
          msg << "separation condition violated for sites (" << b + 1 << "," << a + 1
              << "): eta_a - eta_b in eta*Z";
          throw SovConditionError(b, a, msg.str());
        }
    }

  const bool eta_imag = std::abs(raw.eta.real()) <= 1e-14 * std::abs(raw.eta);
  const bool eta_real = std::abs(raw.eta.imag()) <= 1e-14 * std::abs(raw.eta);
  if (eta_imag && all_real(raw.inhom))
    raw.regime = Regime::ImaginaryEta;
  else if (eta_real && all_imag(raw.inhom))
    raw.regime = Regime::RealEta;
  else
    raw.regime = Regime::Generic;
  return raw;
}

Cx a_of(const ChainSpec& spec, Cx lambda) {
  Cx p = -1.0;
  for (int n = 0; n < spec.sites; ++n)
    p *= lambda - (spec.inhom[n] - spec.eta * 0.5) + spec.spin(n) * spec.eta;
  return p;
}

Cx d_of(const ChainSpec& spec, Cx lambda) {
  Cx p = 1.0;
  for (int n = 0; n < spec.sites; ++n)
    p *= lambda - (spec.inhom[n] - spec.eta * 0.5) - spec.spin(n) * spec.eta;
  return p;
}

Cx SeparationGrid::point(int n, double k) const {
  return inhom[n] - eta * 0.5 + (0.5 * twice_spin[n] - k) * eta;
}

Cx SeparationGrid::bar_point(int n, double k) const {
  return inhom[n] + (k - 0.5 * twice_spin[n] - 0.5) * eta;
}

SeparationGrid grid(const ChainSpec& spec) {
  return SeparationGrid{spec.eta, spec.inhom, spec.twice_spin};
}

Cx hermitian_point(const ChainSpec& spec, double x0) {
  switch (spec.regime) {
    case Regime::ImaginaryEta: return Cx(x0, 0.0) - spec.eta * 0.5;
    case Regime::RealEta: return -spec.eta * 0.5 + Cx(0.0, x0);
    default: throw Error("hermitian_point: no self-adjoint point in the generic regime");
  }
}

namespace {

nlohmann::json cx_to_json(Cx z) { return nlohmann::json::array({z.real(), z.imag()}); }

Cx cx_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw Error("expected complex number as [re, im]");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

nlohmann::json spec_to_json(const ChainSpec& spec) {
  nlohmann::json j;
  j["N"] = spec.sites;
  nlohmann::json spins = nlohmann::json::array();
  for (int ts : spec.twice_spin) spins.push_back(std::to_string(ts) + "/2");
  j["spins"] = spins;
  j["eta"] = cx_to_json(spec.eta);
  nlohmann::json inhom = nlohmann::json::array();
  for (const Cx& z : spec.inhom) inhom.push_back(cx_to_json(z));
  j["inhom"] = inhom;
  j["regime"] = regime_name(spec.regime);
  return j;
}

ChainSpec spec_from_json(const nlohmann::json& j) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key != "N" && key != "spins" && key != "eta" && key != "inhom" && key != "regime")
      throw Error("unknown field in chain spec: " + key);
  }
  ChainSpec spec;
  spec.sites = j.at("N").get<int>();
  for (const auto& s : j.at("spins")) {
    const std::string str = s.get<std::string>();
    int p = 0, consumed = 0;
    if (std::sscanf(str.c_str(), "%d/2%n", &p, &consumed) != 1 ||
        consumed != static_cast<int>(str.size()))
      throw Error("spin must be a \"p/2\" string, got: " + str);
    spec.twice_spin.push_back(p);
  }
  spec.eta = cx_from_json(j.at("eta"));
  for (const auto& z : j.at("inhom")) spec.inhom.push_back(cx_from_json(z));
  if (j.contains("regime")) spec.regime = regime_from_name(j.at("regime").get<std::string>());
  return spec;
}

}  // namespace apxxx
