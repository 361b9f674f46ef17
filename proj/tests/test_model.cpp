#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <apxxx/model.hpp>

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

}  // namespace

TEST_CASE("single-site spin-1/2 chain validates into the imaginary-eta regime") {
  ChainSpec s = single_site_half();
  CHECK(s.regime == Regime::ImaginaryEta);
  CHECK(s.dim() == 2);
  CHECK(std::abs(hermitian_point(s, 0.25) - Cx(0.25, -0.5)) < 1e-15);
}

TEST_CASE("coefficient functions at the single-site chain") {
  ChainSpec s = single_site_half();
  const Cx lambda(0.3, -0.7);
  CHECK(std::abs(a_of(s, lambda) - (-(lambda + s.eta))) < 1e-14);
  CHECK(std::abs(d_of(s, lambda) - lambda) < 1e-14);
}

TEST_CASE("separation grid spin 1/2") {
  ChainSpec s = single_site_half();
  SeparationGrid g = grid(s);
  CHECK(std::abs(g.point(0, 0) - Cx(0.0)) < 1e-15);
  CHECK(std::abs(g.point(0, 1) - Cx(0.0, -1.0)) < 1e-15);
}

TEST_CASE("separation grid spin 1") {
  ChainSpec s;
  s.sites = 1;
  s.twice_spin = {2};
  s.eta = Cx(0.0, 1.0);
  s.inhom = {Cx(0.0)};
  s = validate(s);
  SeparationGrid g = grid(s);
  CHECK(std::abs(g.point(0, 0) - Cx(0.0, 0.5)) < 1e-15);
  CHECK(std::abs(g.point(0, 1) - Cx(0.0, -0.5)) < 1e-15);
  CHECK(std::abs(g.point(0, 2) - Cx(0.0, -1.5)) < 1e-15);
}

TEST_CASE("bar grid is the reversed grid") {
  ChainSpec s;
  s.sites = 2;
  s.twice_spin = {1, 2};
  s.eta = Cx(0.0, 1.0);
  s.inhom = {Cx(1.0), Cx(2.0)};
  s = validate(s);
  SeparationGrid g = grid(s);
  for (int n = 0; n < 2; ++n)
    for (int k = 0; k <= s.twice_spin[n]; ++k)
      CHECK(std::abs(g.bar_point(n, k) - g.point(n, s.twice_spin[n] - k)) < 1e-14);
}

TEST_CASE("validate rejects a violated separation condition, naming the pair") {
  ChainSpec s;
  s.sites = 2;
  s.twice_spin = {1, 1};
  s.eta = Cx(0.0, 1.0);
  s.inhom = {Cx(1.0), Cx(1.0)};
  try {
    validate(s);
    FAIL("expected SovConditionError");
  } catch (const SovConditionError& e) {
    CHECK(e.site_a != e.site_b);
  }
  // shifted by an integer multiple of eta is equally invalid
  s.inhom = {Cx(1.0), Cx(1.0, 2.0)};
  CHECK_THROWS_AS(validate(s), SovConditionError);
}

TEST_CASE("validate rejects degenerate parameters") {
  ChainSpec s;
  s.sites = 0;
  CHECK_THROWS_AS(validate(s), Error);
  s.sites = 1;
  s.twice_spin = {0};
  s.eta = Cx(0.0, 1.0);
  s.inhom = {Cx(0.0)};
  CHECK_THROWS_AS(validate(s), Error);
  s.twice_spin = {1};
  s.eta = Cx(0.0);
  CHECK_THROWS_AS(validate(s), Error);
}

TEST_CASE("json round trip preserves the chain") {
  ChainSpec s;
  s.sites = 2;
  s.twice_spin = {1, 2};
  s.eta = Cx(0.0, 1.0);
  s.inhom = {Cx(1.0), Cx(2.0)};
  s = validate(s);
  ChainSpec r = spec_from_json(spec_to_json(s));
  CHECK(r.sites == s.sites);
  CHECK(r.twice_spin == s.twice_spin);
  CHECK(std::abs(r.eta - s.eta) == 0.0);
  CHECK(std::abs(r.inhom[1] - s.inhom[1]) == 0.0);
}

TEST_CASE("json parsing rejects unknown fields and malformed spins") {
  nlohmann::json j = {{"N", 1},
                      {"spins", {"1/2"}},
                      {"eta", {0.0, 1.0}},
                      {"inhom", {{0.0, 0.0}}}};
  CHECK_NOTHROW(spec_from_json(j));
  nlohmann::json bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_AS(spec_from_json(bad), Error);
  nlohmann::json badspin = j;
  badspin["spins"] = {"1"};  // spins must be written as p/2
  CHECK_THROWS_AS(spec_from_json(badspin), Error);
}

TEST_CASE("regime names round trip") {
  for (Regime r : {Regime::ImaginaryEta, Regime::RealEta, Regime::Generic})
    CHECK(regime_from_name(regime_name(r)) == r);
  CHECK_THROWS_AS(regime_from_name("nonsense"), Error);
}
