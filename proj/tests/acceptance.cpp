// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "ihl/generators.hpp"
#include "ihl/lipschitz.hpp"
#include "ihl/scenario_io.hpp"
#include "ihl/theorems.hpp"

using namespace ihl;

namespace {

// Pinned tolerances.
constexpr double kExactBoundsSeconds = 10.0;
constexpr double kClosedFormTol = 1e-12;

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Shipped {
  GeneratorSpec spec;
  Scenario scenario;
};

const std::vector<Shipped>& shipped() {
  static const auto all = [] {
    std::vector<Shipped> out;
    for (const auto& spec : shipped_specs()) out.push_back({spec, generate(spec)});
    return out;
  }();
  return all;
}

bool is_graph(const Scenario& s) { return s.quotient.is_affine(); }

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string join(const std::vector<double>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + fmt(xs[i]);
  return s + "]";
}

const Series* series(const TheoremReport& r, const std::string& name) {
  for (const auto& s : r.series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

/// Collects failing (scenario, check, worst margin) triples.
struct Failures {
  std::vector<std::string> items;
  void add(const TheoremReport& r) {
    if (r.applicable && !r.passed) {
      items.push_back(r.scenario_id + ":" + std::string(to_string(r.theorem_id)) + "=" + fmt(r.worst_margin));
    }
  }
  std::string text(std::size_t cap = 6) const {
    std::string s;
    for (std::size_t i = 0; i < items.size() && i < cap; ++i) s += (i ? "; " : "") + items[i];
    if (items.size() > cap) s += "; ...";
    return s;
  }
};

Outcome exact_bounds() {
  const auto start = std::chrono::steady_clock::now();
  Failures fails;
  std::size_t cells = 0;
  for (const auto& spec : shipped_specs()) {
    const auto s = generate(spec);
    const Harness h(s);
    for (auto id : {TheoremId::P_BOUNDS, TheoremId::P_T0, TheoremId::P_DPM_MONO, TheoremId::P_2TL}) {
      const auto r = h.run(id);
      cells += r.cells_checked;
      fails.add(r);
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.passed = fails.items.empty() && seconds <= kExactBoundsSeconds;
  o.detail = std::to_string(shipped().size()) + " scenarios, " + std::to_string(cells) + " cells, " +
             fmt(seconds) + " s";
  if (!fails.items.empty()) o.detail += "; failed " + fails.text();
  return o;
}

Outcome time_lipschitz() {
  Failures fails;
  double worst = INFINITY;
  for (const auto& sh : shipped()) {
    const Harness h(sh.scenario);
    const auto r = h.check_time_lipschitz(sh.scenario.tgrid.front());
    worst = std::min(worst, r.worst_margin);
    fails.add(r);
  }
  return {fails.items.empty(), "delta = smallest grid time, worst relative margin " + fmt(worst) +
                                   (fails.items.empty() ? "" : "; failed " + fails.text())};
}

Outcome derivative_formula() {
  Failures fails;
  double guarded = 0.0;
  std::size_t cells = 0;
  for (const auto& sh : shipped()) {
    const Harness h(sh.scenario);
    const auto r = h.check_derivative_formula();
    cells += r.cells_checked;
    if (const auto* g = series(r, "guarded_cells")) guarded += g->values.front();
    fails.add(r);
  }
  // Two-point scenario: f(0) = (0, 0), f(1) = (1, 2).
  const Quotient q(2, SampleSet({{0.0, 0.0}, {1.0, 0.0}}, BoundingBox{{0.0, 0.0}, {1.0, 0.0}}), AffineGraph{1});
  const Section f({{0.0, 0.0}, {1.0, 2.0}});
  const HopfLax hl(q, f);
  const bool smooth = hl.dt_formula(1.0, 1, Side::kLeft) == -0.5 && hl.dt_formula(1.0, 1, Side::kRight) == -0.5 &&
                      std::abs(hl.dt_finite_difference(1.0, 1, 1e-6, Side::kRight) + 0.5) <= 1e-3 * 1.5;
  const bool kink = hl.freeze_time(1) == 0.25 && hl.dt_formula(0.25, 1, Side::kLeft) == 0.0 &&
                    hl.dt_formula(0.25, 1, Side::kRight) == -8.0 && hl.switches_near(0.25, 1, 1e-5);
  std::string detail = std::to_string(cells) + " one-sided cells, " + fmt(guarded) +
                       " guarded; two-point dt(1) = -0.5 " + (smooth ? "ok" : "MISMATCH") +
                       ", kink at 0.25 (0 | -8) " + (kink ? "ok" : "MISMATCH");
  if (!fails.items.empty()) detail += "; failed " + fails.text();
  return {fails.items.empty() && smooth && kink, detail};
}

Outcome classical_equivalence() {
  Failures fails;
  std::size_t scenarios = 0, cells = 0;
  for (const auto& sh : shipped()) {
    if (!is_graph(sh.scenario)) continue;
    ++scenarios;
    const Harness h(sh.scenario);
    const auto r = h.classical_oracle();
    cells += r.cells_checked;
    fails.add(r);
  }
  return {fails.items.empty() && scenarios > 0,
          std::to_string(scenarios) + " affine-graph scenarios, " + std::to_string(cells) + " cells" +
              (fails.items.empty() ? "" : "; failed " + fails.text())};
}

Outcome slope_chain() {
  std::vector<std::string> bad;
  std::size_t points = 0;
  for (const auto& sh : shipped()) {
    const auto& s = sh.scenario;
    const auto r = slope_report(s.quotient, s.section, s.radius_schedule());
    for (std::size_t y = 0; y < r.slope.size(); ++y) {
      if (!r.radius_used[y]) continue;
      ++points;
      if (!(1.0 <= r.slope[y] && r.slope[y] <= r.slope_asymptotic[y] && r.slope_asymptotic[y] <= r.ils_global)) {
        bad.push_back(s.id + "@" + std::to_string(y));
      }
    }
  }
  double worst_closed = 0.0;
  for (double a : {0.5, 1.0, 2.0}) {
    for (std::size_t n : {50, 200, 1000}) {
      const auto s = generate(GeneratorSpec{Family::kAffineGraph, n, 1, a, 2});
      const double err = std::abs(global_ils(s.quotient, s.section) - std::sqrt(1.0 + a * a));
      worst_closed = std::max(worst_closed, err);
      if (err > kClosedFormTol) bad.push_back("closed form a=" + fmt(a) + " n=" + std::to_string(n));
    }
  }
  std::string detail = "chain on " + std::to_string(points) + " neighbored points; |ILS - sqrt(1+a^2)| <= " +
                       fmt(worst_closed) + " for a in {0.5,1,2}, n in {50,200,1000}";
  if (!bad.empty()) detail += "; violations " + std::to_string(bad.size()) + ", first " + bad.front();
  return {bad.empty(), detail};
}

Outcome duality_study() {
  std::vector<std::string> bad;
  std::ostringstream detail;
  HarnessOptions refine4;
  refine4.refine = 4;
  for (const auto family : {Family::kAffineGraph, Family::kQuadraticGraph}) {
    std::vector<double> by_size;
    for (std::size_t n : {50, 200, 1000}) {
      const auto s = generate(GeneratorSpec{family, n, 1, default_param(family), 2});
      const Harness h(s, n == 50 ? refine4 : HarnessOptions{});
      const auto r = h.check_duality();
      if (!r.passed) bad.push_back(s.id + " worst " + fmt(r.worst_margin));
      const auto& values = series(r, "refinement_worst_margin")->values;
      for (double v : values) {
        if (v < 0.0) bad.push_back(s.id + " refined margin " + fmt(v));
      }
      if (n == 50) detail << to_string(family) << " 50 x{1,2,4} " << join(values) << ", ";
      by_size.push_back(values.front());
    }
    bool monotone = true;
    for (std::size_t i = 1; i < by_size.size(); ++i) monotone = monotone && by_size[i] <= by_size[i - 1];
    detail << to_string(family) << " n{50,200,1000} " << join(by_size)
           << (monotone ? " nonincreasing" : " not monotone") << (family == Family::kAffineGraph ? "; " : "");
  }
  std::string text = detail.str();
  if (!bad.empty()) text += "sign violations: " + bad.front();
  return {bad.empty(), text};
}

Outcome slopes_and_hj() {
  Failures pair, hj;
  double hj_worst = INFINITY;
  for (const auto& sh : shipped()) {
    const Harness h(sh.scenario);
    pair.add(h.check_pair_slope());
    if (is_graph(sh.scenario)) {
      const auto r = h.check_hj_subsolution();
      hj_worst = std::min(hj_worst, r.worst_margin);
      hj.add(r);
    }
  }
  std::string detail = "pair slope failures " + std::to_string(pair.items.size()) +
                       (pair.items.empty() ? "" : " (" + pair.text(2) + ")") +
                       "; HJ finest-radius failures " + std::to_string(hj.items.size()) +
                       ", worst normalized margin " + fmt(hj_worst);
  return {pair.items.empty() && hj.items.empty(), detail};
}

Outcome determinism_and_faults() {
  std::vector<std::string> bad;
  using test::run_cli;
  using test::scratch;
  std::size_t commands = 0;
  for (const std::string gen : {"affine_graph 200 1", "random_lipschitz_graph 200 11 --param 5",
                                "finite_partition 30 3", "zero_graph 1 1"}) {
    const auto first = run_cli("gen " + gen);
    commands += 2;
    if (first.code != 0 || first.out != run_cli("gen " + gen).out) bad.push_back("gen " + gen);
    const auto path = scratch("det.json");
    test::RunResult runs[3];
    for (const std::string cmd : {"eval", "slope", "verify --refine 2"}) {
      for (int k = 0; k < 3; ++k) {
        const auto out = scratch("det_out_" + std::to_string(k));
        std::ofstream(path, std::ios::binary) << first.out;
        runs[k] = run_cli(cmd + " --scenario '" + path + "' --threads " + (k == 2 ? "4" : "1") + " --out '" + out +
                          "'");
        runs[k].out += test::slurp(out);
        ++commands;
      }
      if (runs[0].out != runs[1].out || runs[0].out != runs[2].out || runs[0].code != runs[2].code ||
          runs[0].code == 2) {
        bad.push_back(cmd + " on " + gen);
      }
    }
  }

  // Every fault must flip its targeted check. The Hamilton-Jacobi fault is
  // checked on a frozen scenario where the clean surrogate passes.
  const auto base = generate(GeneratorSpec{Family::kAffineGraph, 50, 1, 2.0, 2});
  const Quotient flat_q(2, SampleSet({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}}, BoundingBox{{0.0, 0.0}, {1.0, 0.0}}),
                        AffineGraph{1});
  const Scenario flat{"flat", flat_q, Section({{0.0, 3.0}, {0.5, 3.0}, {1.0, 3.0}}), TGrid({0.01, 0.1, 1.0}),
                      std::nullopt, std::nullopt};
  std::size_t flipped = 0;
  for (const auto id : kAllTheorems) {
    Scenario clean = id == TheoremId::C_HJ ? flat : base;
    Scenario faulty = clean;
    faulty.fault = id;
    const bool clean_pass = Harness(clean).run(id).passed;
    const bool faulty_pass = Harness(faulty).run(id).passed;
    if (clean_pass && !faulty_pass) ++flipped;
    else bad.push_back("fault " + std::string(to_string(id)));
  }
  std::string detail = std::to_string(commands) + " CLI runs byte-identical across reruns and --threads 1/4; " +
                       std::to_string(flipped) + "/" + std::to_string(kAllTheorems.size()) + " faults detected";
  if (!bad.empty()) detail += "; mismatches: " + bad.front();
  return {bad.empty(), detail};
}

/// --known-red 7,... lists criteria recorded as unattainable: they still print
/// FAIL, and the exit code is 0 only if exactly that set fails.
std::vector<std::size_t> parse_known_red(int argc, char** argv) {
  std::vector<std::size_t> ids;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) != "--known-red") continue;
    std::stringstream ss(argv[i + 1]);
    std::string item;
    while (std::getline(ss, item, ',')) ids.push_back(std::stoul(item));
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  const auto known_red = parse_known_red(argc, argv);
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"exact_bounds", exact_bounds},
      {"time_lipschitz", time_lipschitz},
      {"derivative_formula", derivative_formula},
      {"classical_oracle", classical_equivalence},
      {"slope_chain", slope_chain},
      {"duality_refinement", duality_study},
      {"pair_slope_and_hj", slopes_and_hj},
      {"determinism_and_faults", determinism_and_faults},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const bool red = std::find(known_red.begin(), known_red.end(), i + 1) != known_red.end();
    unexpected += o.passed == red ? 1 : 0;
    std::printf("[%s] %zu %s: %s%s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                red ? (o.passed ? " (listed as known red but passed)" : " (known red)") : "");
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
