// Copyright 2026 The igates Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "igates/bench.hpp"
#include "igates/errors.hpp"

using namespace igates;

TEST_SUITE("bench") {

TEST_CASE("zero duration transfers nothing") {
  CHECK(stirap_infidelity(fig1_preset(), PulseShape::cubic, 0.0) == 1.0);
}

TEST_CASE("STIRAP curves") {
  const auto p = fig1_preset();
  const std::vector<PulseShape> shapes{PulseShape::gaussian, PulseShape::sinsq, PulseShape::cubic};
  const std::vector<double> areas{10.0, 20.0, 40.0, 80.0};
  auto rows = run_stirap_sweep(p, shapes, areas, 2);
  REQUIRE(rows.size() == 12);
  auto inf = [&](std::size_t s, std::size_t a) { return rows[s * areas.size() + a].infidelity; };
  // large area: cubic < sinSQ < Gaussian
  CHECK(inf(2, 3) < inf(1, 3));
  CHECK(inf(1, 3) < inf(0, 3));
  // doubling the area may only raise the infidelity within the oscillation band
  for (std::size_t s = 0; s < 3; ++s)
    for (std::size_t a = 0; a + 1 < areas.size(); ++a) CHECK(inf(s, a + 1) <= inf(s, a) + 0.01);
  for (const auto& r : rows) CHECK(r.tf == doctest::Approx(r.area / p.omega_max));
}

TEST_CASE("sweeps do not depend on the thread count") {
  const auto p = fig1_preset();
  const std::vector<PulseShape> shapes{PulseShape::sinsq, PulseShape::cubic};
  const std::vector<double> areas{15.0, 30.0, 45.0};
  std::ostringstream a, b;
  write_csv(a, run_stirap_sweep(p, shapes, areas, 1));
  write_csv(b, run_stirap_sweep(p, shapes, areas, 3));
  CHECK(a.str() == b.str());
}

TEST_CASE("detuning scan") {
  const auto p = fig1_preset();
  const std::vector<PulseShape> shapes{PulseShape::cubic};
  const std::vector<double> deltas{0.0, kTwoPi * 20e6};
  auto rows = run_stirap_detuning(p, shapes, deltas, 1e-6);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].infidelity == doctest::Approx(stirap_infidelity(p, PulseShape::cubic, 1e-6)));
}

TEST_CASE("quartic reaches unit gate fidelity fastest") {
  GatePreset g = fig3_preset();
  g.gamma = 0.0;
  const double om = kTwoPi * 10e6;
  const double q = 1.0 - gate_point(Gate::phase, PulseShape::quartic, om, g).fidelity;
  const double s = 1.0 - gate_point(Gate::phase, PulseShape::sinsq, om, g).fidelity;
  const double ga = 1.0 - gate_point(Gate::phase, PulseShape::gaussian, om, g).fidelity;
  CHECK(q < s);
  CHECK(s < ga);

  g = fig3_preset();
  const double om2 = kTwoPi * 50e6;
  CHECK(gate_point(Gate::phase, PulseShape::quartic, om2, g).fidelity >
        gate_point(Gate::phase, PulseShape::gaussian, om2, g).fidelity);
}

TEST_CASE("ideal phase gate and the gate/transfer comparison") {
  GatePreset g = fig3_preset();
  const double om = kTwoPi * 50e6;
  const double gate = 1.0 - gate_point(Gate::phase, PulseShape::sinsq, om, g).fidelity;
  const StirapPreset sp{{0.0, g.gamma / 2.0, g.gamma / 2.0}, om, g.steps};
  CHECK(gate >= stirap_infidelity(sp, PulseShape::sinsq, g.tf));

  g.gamma = 0.0;
  g.tf = 1e-6;
  CHECK(1.0 - gate_point(Gate::phase, PulseShape::quartic, kTwoPi * 100e6, g).fidelity < 1e-3);
}

TEST_CASE("failed points are reported, not thrown") {
  GatePreset g = fig3_preset();
  g.steps = 10;
  auto row = gate_point(Gate::phase, PulseShape::quartic, kTwoPi * 100e6, g);
  CHECK_FALSE(row.error.empty());
}

TEST_CASE("zero perturbation changes nothing") {
  CzPreset p = table1_preset();
  p.steps = 1500;
  const std::vector<Perturbation> none{{"delta", 0.0, 0.0}};
  auto r = run_table1(PulseShape::quartic, p, none);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].change_minus == 0.0);
  CHECK(r.rows[0].change_plus == 0.0);
  CHECK(r.rows[0].fidelity_plus == r.nominal_fidelity);
}

TEST_CASE("CZ perturbation list") {
  auto list = table1_perturbations();
  REQUIRE(list.size() == 6);
  CHECK(list[0].parameter == "delta");
  CHECK(list[0].minus == doctest::Approx(0.2));
  CHECK(list.back().parameter == "position");
  CHECK(list.back().plus == doctest::Approx(0.02));
}

TEST_CASE("Monte Carlo without noise reproduces the nominal gate") {
  MonteCarloPreset p = fig2_preset();
  p.noise = NoiseModel{};
  p.base.steps = 1500;
  const std::vector<PulseShape> shapes{PulseShape::quartic};
  auto r = run_fig2_montecarlo(shapes, 3, 11, p, 2);
  REQUIRE(r.size() == 1);
  for (const auto& s : r[0].samples) CHECK(s.infidelity == r[0].nominal_infidelity);
}

TEST_CASE("Monte Carlo CSV is reproducible for a fixed seed") {
  MonteCarloPreset p = fig2_preset();
  p.base.steps = 1500;
  const std::vector<PulseShape> shapes{PulseShape::quartic};
  std::ostringstream a, b, c;
  write_csv(a, run_fig2_montecarlo(shapes, 3, 5, p, 1));
  write_csv(b, run_fig2_montecarlo(shapes, 3, 5, p, 2));
  write_csv(c, run_fig2_montecarlo(shapes, 3, 6, p, 1));
  CHECK(a.str() == b.str());
  CHECK(a.str() != c.str());
}

TEST_CASE("presets") {
  for (const auto& name : preset_names()) {
    auto j = preset_json(name);
    CHECK(j.is_object());
    CHECK_FALSE(j.empty());
  }
  CHECK_THROWS_AS(preset_json("fig9"), ConfigError);
  CHECK(table1_preset().omega_max == doctest::Approx(kTwoPi * 100e6));
  CHECK(fig1_preset().omega_max == doctest::Approx(kTwoPi * 50e6));
}

TEST_CASE("config hashing") {
  nlohmann::json a = {{"preset", "fig1"}, {"x", 1}};
  nlohmann::json b = {{"x", 1}, {"preset", "fig1"}};
  nlohmann::json c = {{"preset", "fig1"}, {"x", 2}};
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a) != config_hash(c));
  auto m = make_manifest("stirap", a, 7, 2000, 4);
  CHECK(m["seed"] == 7);
  CHECK(m["config_hash"] == config_hash(a));
}

TEST_CASE("experiment config parsing") {
  auto c = parse_experiment(nlohmann::json::parse(R"({
    "preset": "fig1", "shapes": ["cubic", "SinSQ"],
    "sweep": {"variable": "area", "values": [10, 20.5]}, "output": "runs/a"})"));
  CHECK(c.preset == "fig1");
  CHECK(c.shapes.size() == 2);
  CHECK(c.shapes[1] == PulseShape::sinsq);
  CHECK(c.values.back() == 20.5);
  CHECK(c.noise == "none");
  CHECK(c.output == "runs/a");

  auto hz = parse_experiment(nlohmann::json::parse(
      R"({"preset": "fig3", "times_2pi": true, "sweep": {"variable": "omega_max", "values": [50e6]}})"));
  CHECK(hz.values[0] == doctest::Approx(kTwoPi * 50e6));
  auto area = parse_experiment(nlohmann::json::parse(
      R"({"preset": "fig1", "times_2pi": true, "sweep": {"variable": "area", "values": [30]}})"));
  CHECK(area.values[0] == 30.0);

  for (const char* bad : {R"({"preset": "nope"})", R"({"preset": "fig1", "shapes": ["square"]})",
                          R"({"preset": "fig1", "sweep": {"variable": "area", "values": []}})",
                          R"({"preset": "fig1", "sweep": {"variable": "mass", "values": [1]}})",
                          R"({"preset": "fig2", "noise": "thermal"})", R"({"preset": "fig3", "times_2pi": "yes"})",
                          R"([1, 2])"})
    CHECK_THROWS_AS(parse_experiment(nlohmann::json::parse(bad)), ConfigError);
}

}  // TEST_SUITE
