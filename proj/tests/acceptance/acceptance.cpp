// Acceptance report: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chainctl/chain_sets.hpp"
#include "chainctl/compactification.hpp"
#include "chainctl/monodromy.hpp"
#include "chainctl/scc.hpp"
#include "chainctl/scenarios.hpp"
#include "chainctl/sphere_analysis.hpp"
#include "chainctl/strong_ladder.hpp"
#include "chainctl/transition_graph.hpp"

namespace chainctl::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

Vec vec(std::initializer_list<double> values) {
  Vec out(static_cast<Eigen::Index>(values.size()));
  std::copy(values.begin(), values.end(), out.data());
  return out;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Collects the checks of one criterion.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    pass_ = pass_ && ok;
    notes_.push_back((ok ? "" : "!") + what);
  }
  bool pass() const { return pass_; }
  std::string detail() const {
    std::string out;
    for (const auto& n : notes_) out += (out.empty() ? "" : "; ") + n;
    return out;
  }

 private:
  bool pass_ = true;
  std::vector<std::string> notes_;
};

struct Criterion {
  std::string name;
  std::string title;
  double budget_s;
  std::function<void(Verdict&)> run;
};

std::shared_ptr<const BoxCovering> covering(const DomainSpec& d, int depth) {
  return std::make_shared<const BoxCovering>(d, depth);
}

std::shared_ptr<const BoxCovering> window_of(const Scenario& s, int depth) {
  return covering(DomainSpec::window(s.params.window_lower, s.params.window_upper), depth);
}

GraphOptions horizon(double T, int threads = 1) {
  GraphOptions o;
  o.T = T;
  o.threads = threads;
  return o;
}

const ChainSetResult* set_with(const std::vector<ChainSetResult>& sets, BoxId b) {
  for (const auto& s : sets)
    if (s.contains(b)) return &s;
  return nullptr;
}

bool same_graph(const TransitionGraph& a, const TransitionGraph& b) {
  return a.graph().offsets() == b.graph().offsets() && a.graph().targets() == b.graph().targets() &&
         a.escape_flags() == b.escape_flags();
}

bool edges_subset(const TransitionGraph& small, const TransitionGraph& large) {
  for (BoxId b = 0; b < small.node_count(); ++b)
    for (BoxId t : small.graph().successors(b))
      if (!large.graph().has_edge(b, t)) return false;
  return true;
}

bool sets_nested(const std::vector<ChainSetResult>& inner, const std::vector<ChainSetResult>& outer) {
  return std::all_of(inner.begin(), inner.end(), [&](const ChainSetResult& s) {
    return std::any_of(outer.begin(), outer.end(), [&](const ChainSetResult& o) {
      return std::includes(o.boxes.begin(), o.boxes.end(), s.boxes.begin(), s.boxes.end());
    });
  });
}

// Every box of the fine sets lies within one coarse diameter of a coarse set box.
bool refinement_nested(const BoxCovering& fine, const std::vector<ChainSetResult>& fine_sets, const BoxCovering& coarse,
                       const std::vector<ChainSetResult>& coarse_sets) {
  std::vector<bool> in(coarse.size(), false);
  for (const auto& s : coarse_sets)
    for (BoxId b : s.boxes) in[b] = true;
  std::vector<BoxId> hits;
  for (const auto& s : fine_sets) {
    for (BoxId b : s.boxes) {
      hits.clear();
      coarse.boxes_within(fine.center(b), coarse.max_diameter(), hits);
      if (std::none_of(hits.begin(), hits.end(), [&](BoxId h) { return in[h]; })) return false;
    }
  }
  return true;
}

bool antipodal_edges(const TransitionGraph& g) {
  const BoxCovering& cov = g.covering();
  for (BoxId b = 0; b < cov.size(); ++b) {
    if (g.escapes(b) != g.escapes(cov.antipode(b))) return false;
    for (BoxId w : g.graph().successors(b))
      if (!g.graph().has_edge(cov.antipode(b), cov.antipode(w))) return false;
  }
  return true;
}

bool quotient_consistent(const TransitionGraph& g, std::string& note) {
  auto sets = chain_control_sets(g);
  classify_antipodal(g, sets);
  std::size_t ones = 0;
  std::size_t twos = 0;
  for (const auto& s : sets) (s.antipodal == AntipodalClass::One ? ones : twos) += 1;
  const std::size_t quotient = chain_control_sets(projective_quotient(g)).size();
  note = std::to_string(quotient) + " = " + std::to_string(ones) + " + " + std::to_string(twos) + "/2";
  return twos % 2 == 0 && quotient == ones + twos / 2;
}

void ac1(Verdict& v) {
  const Scenario s = example2_scenario(1.1, 0.5);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> x(-3.0, 3.0), u(-1.1, 1.1), t(0.0, 5.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Vec x0 = vec({x(rng), x(rng)});
    const Vec uu = vec({u(rng)});
    worst = std::max(worst, conjugacy_residual(s.system, x0, ControlSignal::constant(uu), t(rng), 1e-3));
  }
  v.check(worst < 1e-6, "max residual " + fmt(worst) + " < 1e-06 over 100 trials");
}

void ac2(Verdict& v) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> x(-10.0, 10.0);
  double worst_round = 0.0;
  double worst_ratio = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Vec a = vec({x(rng), x(rng)});
    const Vec b = vec({x(rng), x(rng)});
    for (const Vec* p : {&a, &b}) {
      const double scale = std::max(1.0, p->lpNorm<Eigen::Infinity>());
      worst_round = std::max(worst_round, max_distance(h_inverse(embed_h(*p)), *p) / scale);
    }
    worst_ratio = std::max(worst_ratio, sphere_distance(embed_h(a), embed_h(b)) / max_distance(a, b));
  }
  v.check(worst_round <= 1e-10, "roundtrip relative error " + fmt(worst_round) + " <= 1e-10");
  v.check(worst_ratio <= 2.0, "Lipschitz ratio " + fmt(worst_ratio) + " <= 2 over 1e4 pairs");
}

void ac3(Verdict& v) {
  const Scenario s = example2_scenario(1.1, 0.5);
  const ExtendedBilinearSystem ext = extend(s.system);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(-1.1, 1.1), t(0.0, 2.0);
  const auto random_point = [&] { return SpherePoint(vec({g(rng), g(rng), g(rng)})); };
  double tangency = 0.0;
  double equivariance = 0.0;
  double equator = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const SpherePoint p = random_point();
    const Vec uu = vec({u(rng)});
    tangency = std::max(tangency, std::abs(sphere_field(ext, p, uu).dot(p.coords())));

    const ControlSignal c = ControlSignal::constant(uu);
    const double tt = t(rng);
    const SpherePoint a = sphere_integrate(ext, p, c, 0.0, tt, 1e-3);
    const SpherePoint b = sphere_integrate(ext, antipode(p), c, 0.0, tt, 1e-3);
    equivariance = std::max(equivariance, (a.coords() + b.coords()).lpNorm<Eigen::Infinity>());

    Vec e = random_point().coords();
    e[2] = 0.0;
    const SpherePoint end = sphere_integrate(ext, SpherePoint(e), c, 0.0, tt, 1e-3);
    equator = std::max(equator, std::abs(end[2]));
  }
  v.check(tangency < 1e-12, "tangency " + fmt(tangency) + " < 1e-12");
  v.check(equivariance < 1e-9, "antipodal equivariance " + fmt(equivariance) + " < 1e-09");
  v.check(equator < 1e-9, "equator drift " + fmt(equator) + " < 1e-09");
}

void ac4(Verdict& v) {
  const Scenario s = shear_flow_scenario();
  auto cov = covering(DomainSpec::hemisphere(2, 1, true), 7);
  const ProjectedBilinearFlow flow(extend(s.system));
  const auto controls = default_control_samples(s.system.omega());
  const double diam = cov->max_diameter();

  const TransitionGraph g = build_transition_graph(cov, flow, controls, JumpSpec::constant(0.2), horizon(1.0));
  const auto sets = chain_control_sets(g);
  const ChainSetResult* set = set_with(sets, cov->locate(embed_h(vec({0, 2})).coords()));
  const bool reaches = set && min_equator_height(*cov, *set) <= diam;
  v.check(reaches, std::string("(a) eps 0.2: set of h(0,2) ") + (set ? "has " + std::to_string(set->boxes.size()) + " boxes, min height " + fmt(min_equator_height(*cov, *set)) : "missing") +
                       " <= " + fmt(diam));

  const LadderResult ladder =
      strong_chain_ladder(cov, flow, WeightKind::EquatorHeight, {0.5, 0.1, 0.02}, controls, horizon(1.0));
  std::size_t total = 0;
  std::size_t off = 0;
  for (const auto& sv : ladder.survivors) {
    for (BoxId b : sv.boxes) {
      ++total;
      const double gap = std::max({0.0, cov->lower(b)[1], -cov->upper(b)[1]});
      if (gap > diam) ++off;
    }
  }
  v.check(total > 0 && off == 0, "(b) ladder survivors off {|s2| <= diam}: " + std::to_string(off) + " of " +
                                      std::to_string(total) + " boxes");
}

void ac5(Verdict& v) {
  const Scenario s = linear_3d_scenario();
  const AffineFlow flow(s.system);
  const auto controls = default_control_samples(s.system.omega());

  auto cov = window_of(s, 6);
  const double d = cov->max_diameter();
  const LadderResult ladder =
      strong_chain_ladder(cov, flow, WeightKind::InverseNorm, {0.08, 0.04, 0.02}, controls, horizon(1.0));
  std::vector<bool> in(cov->size(), false);
  double ygap = 0.0;
  double zgap = 0.0;
  for (const auto& sv : ladder.survivors) {
    for (BoxId b : sv.boxes) {
      in[b] = true;
      const Vec lo = cov->lower(b);
      const Vec hi = cov->upper(b);
      ygap = std::max({ygap, lo[1], -hi[1]});
      zgap = std::max({zgap, std::abs(lo[2]), std::abs(hi[2])});
    }
  }
  std::size_t points = 0;
  std::size_t missed = 0;
  for (int i = 0; i <= 160; ++i) {
    for (int j = 0; j <= 32; ++j) {
      const double x = -4.0 + 0.05 * i;
      const double z = -0.8 + 0.05 * j;
      ++points;
      const BoxId above = cov->locate(vec({x, 1e-9, z}));
      const BoxId below = cov->locate(vec({x, -1e-9, z}));
      if (!((above != kNoBox && in[above]) || (below != kNoBox && in[below]))) ++missed;
    }
  }
  v.check(ygap <= 2 * d, "survivor |y| reach " + fmt(ygap) + " <= " + fmt(2 * d));
  v.check(zgap <= 1 + 2 * d, "survivor |z| reach " + fmt(zgap) + " <= " + fmt(1 + 2 * d));
  v.check(missed == 0, "uncovered grid points of {|x|<=4, y=0, |z|<=0.8}: " + std::to_string(missed) + "/" +
                           std::to_string(points));

  auto coarse = window_of(s, 5);
  const TransitionGraph g = build_transition_graph(coarse, flow, controls, JumpSpec::constant(1.0), horizon(1.0));
  const auto sets = chain_control_sets(g);
  const ChainSetResult* set = set_with(sets, coarse->locate(vec({0.01, 0.01, 0.01})));
  double ymax = 0.0;
  if (set) {
    for (BoxId b : set->boxes) ymax = std::max(ymax, std::abs(coarse->center(b)[1]));
  }
  v.check(ymax >= 0.5, "eps 1.0 (depth 5): set of the origin reaches |y| = " + fmt(ymax) + " >= 0.5");
}

void ac6(Verdict& v) {
  const Scenario lin = linear_3d_scenario();
  const MonodromyReport m = monodromy(lin.system, ControlSignal::zero(1), 1.0);
  double dist = 1e9;
  for (const auto& l : m.eigenvalues) dist = std::min(dist, std::abs(l - 1.0));
  v.check(m.has_unit_eigenvalue && dist < 1e-9, std::string("linear_3d unit eigenvalue ") +
                                                    (m.has_unit_eigenvalue ? "yes" : "no") + ", |lambda-1| " +
                                                    fmt(dist) + " < 1e-09");
  const Scenario sc = scalar_hyperbolic_scenario();
  const MonodromyReport ms = monodromy(sc.system, ControlSignal::zero(1), 1.0);
  v.check(!ms.has_unit_eigenvalue, std::string("scalar unit eigenvalue ") + (ms.has_unit_eigenvalue ? "yes" : "no"));
}

void ac7(Verdict& v) {
  const Scenario s = example2_scenario(1.1, 0.5);
  const RecommendedParams& p = s.params;
  {
    auto cov = window_of(s, 8);
    const auto controls = s.system.omega().grid_with_origin(p.control_grid);
    const TransitionGraph g =
        build_transition_graph(cov, AffineFlow(s.system), controls, JumpSpec::constant(0.05), horizon(p.window_T));
    const auto sets = chain_control_sets(g);
    const BoxId b1 = cov->locate(vec({6, 0}));
    const BoxId b2 = cov->locate(vec({0.762, 0}));
    const ChainSetResult* c1 = set_with(sets, b1);
    const ChainSetResult* c2 = set_with(sets, b2);
    v.check(sets.size() == 2, "(a) window sets " + std::to_string(sets.size()) + " == 2");
    v.check(c1 && c2 && c1 != c2, "(a) (6,0) and (0.762,0) in distinct sets");
    if (c1 && c2) {
      const auto from1 = reachable_mask(g.graph(), c1->boxes);
      const auto from2 = reachable_mask(g.graph(), c2->boxes);
      v.check(from1[b2] && !from2[b1], std::string("(a) reach 1->2 ") + (from1[b2] ? "yes" : "no") + ", 2->1 " +
                                           (from2[b1] ? "yes" : "no"));
    }
  }

  auto cov = covering(DomainSpec::sphere(2), p.sphere_depth);
  const TransitionGraph g = build_transition_graph(cov, ProjectedBilinearFlow(extend(s.system)),
                                                   default_control_samples(s.system.omega()),
                                                   JumpSpec::constant(p.eps), horizon(p.T));
  const double diam = cov->max_diameter();

  const TransitionGraph q = projective_quotient(g);
  const auto qsets = chain_control_sets(q);
  std::size_t central = 0;
  const ChainSetResult* central_set = nullptr;
  for (const auto& set : qsets) {
    if (contained_in_equator_band(q.covering(), set, diam)) continue;
    ++central;
    central_set = &set;
  }
  const BoxId p100 = q.covering().locate(vec({1, 0, 0}));
  v.check(central == 1, "(b) projective central sets " + std::to_string(central) + " == 1");
  v.check(central == 1 && central_set->contains(p100), "(b) central set contains P(1,0,0)");

  auto sets = chain_control_sets(g);
  bool joined = false;
  for (const auto& set : sets) {
    if (contained_in_equator_band(*cov, set, diam)) continue;
    const bool north = set.contains(cov->locate(embed_h(vec({6, 0})).coords())) &&
                       set.contains(cov->locate(embed_h(vec({0.762, 0})).coords()));
    const bool south = set.contains(cov->locate(embed_h_minus(vec({6, 0})).coords())) &&
                       set.contains(cov->locate(embed_h_minus(vec({0.762, 0})).coords()));
    const bool through = set.contains(cov->locate(vec({1, 0, 0}))) || set.contains(cov->locate(vec({-1, 0, 0})));
    joined = joined || (north && south && through && set.touches_equator);
  }
  v.check(joined, "(c) a central sphere set holds h and h- images of (6,0), (0.762,0) and an equator box");
}

void ac8(Verdict& v) {
  const Scenario s = scalar_hyperbolic_scenario();
  const auto controls = default_control_samples(s.system.omega());
  auto cov = window_of(s, 8);
  const TransitionGraph g = build_transition_graph(cov, AffineFlow(s.system), controls, JumpSpec::constant(0.01));
  const auto sets = chain_control_sets(g);
  const double d = cov->max_diameter();
  v.check(sets.size() == 1, "window sets " + std::to_string(sets.size()) + " == 1");
  if (sets.size() == 1) {
    // Hausdorff distance between the box union and [-1, 1].
    double h = 0.0;
    double covered_to = -1.0;
    for (BoxId b : sets[0].boxes) {
      const double lo = cov->lower(b)[0];
      const double hi = cov->upper(b)[0];
      h = std::max({h, -1.0 - lo, hi - 1.0});
      if (lo > covered_to) h = std::max(h, 0.5 * (std::min(lo, 1.0) - covered_to));
      covered_to = std::max(covered_to, hi);
    }
    h = std::max(h, 1.0 - covered_to);
    v.check(h <= 2 * d, "Hausdorff distance " + fmt(h) + " <= " + fmt(2 * d));
  }

  auto circle = covering(DomainSpec::sphere(1), 8);
  const TransitionGraph sg = build_transition_graph(circle, ProjectedBilinearFlow(extend(s.system)), controls,
                                                    JumpSpec::constant(0.01));
  const auto ssets = chain_control_sets(sg);
  const ChainSetResult* north = set_with(ssets, circle->locate(embed_h(vec({0})).coords()));
  const ChainSetResult* south = set_with(ssets, circle->locate(embed_h_minus(vec({0})).coords()));
  const double hn = north ? min_equator_height(*circle, *north) : 0.0;
  const double hs = south ? min_equator_height(*circle, *south) : 0.0;
  v.check(std::min(hn, hs) > 0.3, "S^1 min equator height " + fmt(std::min(hn, hs)) + " > 0.3");
}

void ac9(Verdict& v) {
  const Scenario shear = shear_flow_scenario();
  const Scenario scalar = scalar_hyperbolic_scenario();
  for (const Scenario* s : {&shear, &scalar}) {
    const AffineFlow flow(s->system);
    const auto controls = default_control_samples(s->system.omega());
    const std::string tag = s->name + ": ";
    auto cov = window_of(*s, 6);
    auto coarse = window_of(*s, 5);

    const TransitionGraph a = build_transition_graph(cov, flow, controls, JumpSpec::constant(0.05));
    const TransitionGraph b = build_transition_graph(cov, flow, controls, JumpSpec::constant(0.2));
    v.check(edges_subset(a, b) && sets_nested(chain_control_sets(a), chain_control_sets(b)), tag + "eps-monotone");

    const TransitionGraph wa =
        build_transition_graph(cov, flow, controls, JumpSpec::weighted(0.05, WeightKind::InverseNorm));
    const TransitionGraph wb =
        build_transition_graph(cov, flow, controls, JumpSpec::weighted(0.2, WeightKind::InverseNorm));
    v.check(edges_subset(wa, wb) && sets_nested(chain_control_sets(wa), chain_control_sets(wb)), tag + "delta-monotone");

    const TransitionGraph c = build_transition_graph(coarse, flow, controls, JumpSpec::constant(0.2));
    v.check(refinement_nested(*cov, chain_control_sets(b), *coarse, chain_control_sets(c)), tag + "refinement");

    const TransitionGraph a8 = build_transition_graph(cov, flow, controls, JumpSpec::constant(0.05), horizon(1.0, 8));
    v.check(same_graph(a, a8), tag + "window 1 vs 8 threads");

    const int n = s->system.state_dim();
    auto sphere = covering(DomainSpec::sphere(n), n == 1 ? 6 : 5);
    const ProjectedBilinearFlow sflow(extend(s->system));
    const TransitionGraph sg = build_transition_graph(sphere, sflow, controls, JumpSpec::constant(0.05));
    const TransitionGraph sg8 =
        build_transition_graph(sphere, sflow, controls, JumpSpec::constant(0.05), horizon(1.0, 8));
    v.check(antipodal_edges(sg), tag + "antipodal edges");
    std::string note;
    const bool consistent = quotient_consistent(sg, note);
    v.check(consistent, tag + "quotient sets " + note);
    v.check(same_graph(sg, sg8), tag + "sphere 1 vs 8 threads");
  }
}

std::vector<Criterion> criteria() {
  return {
      {"AC1", "conjugacy", 5.0, ac1},
      {"AC2", "embedding bounds", 1.0, ac2},
      {"AC3", "sphere structure", 5.0, ac3},
      {"AC4", "shear strong/weak split", 60.0, ac4},
      {"AC5", "3-D linear strong set", 120.0, ac5},
      {"AC6", "monodromy flag", 1.0, ac6},
      {"AC7", "example2 structure", 180.0, ac7},
      {"AC8", "hyperbolic uniqueness", 10.0, ac8},
      {"AC9", "engine properties", 60.0, ac9},
  };
}

}  // namespace
}  // namespace chainctl::acceptance

int main(int argc, char** argv) {
  using namespace chainctl::acceptance;
  CLI::App app{"Acceptance report"};
  bool strict = false;
  std::vector<std::string> only;
  app.add_flag("--strict", strict, "Exit with status 1 when a criterion fails");
  app.add_option("criteria", only, "Criteria to run (default: all)");
  CLI11_PARSE(app, argc, argv);

  int failures = 0;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    Verdict v;
    const auto start = Clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.check(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    v.check(seconds < c.budget_s, "runtime " + fmt(seconds) + " s < " + fmt(c.budget_s) + " s");
    failures += v.pass() ? 0 : 1;
    std::cout << c.name << ' ' << (v.pass() ? "PASS" : "FAIL") << "  " << c.title << ": " << v.detail() << std::endl;
  }
  std::cout << "summary: " << failures << " failing" << std::endl;
  return strict && failures > 0 ? 1 : 0;
}
