#include "pipelines.hpp"

#include <fstream>
#include <memory>
#include <random>
#include <sstream>

#include "chainctl/chain_sets.hpp"
#include "chainctl/compactification.hpp"
#include "chainctl/errors.hpp"
#include "chainctl/export.hpp"
#include "chainctl/monodromy.hpp"
#include "chainctl/scc.hpp"
#include "chainctl/sphere_analysis.hpp"
#include "chainctl/strong_ladder.hpp"
#include "chainctl/transition_graph.hpp"

namespace chainctl::cli {

namespace {

using nlohmann::json;

std::vector<double> as_list(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

class Context {
 public:
  explicit Context(const RunConfig& c) : c_(c) {}

  const RunConfig& config() const { return c_; }
  const AffineSystem& system() const { return c_.scenario.system; }
  RunResult& result() { return result_; }

  std::shared_ptr<const BoxCovering> covering(const DomainSpec& domain, int depth) const {
    CoveringLimits limits;
    limits.max_boxes = c_.max_boxes;
    return std::make_shared<const BoxCovering>(domain, depth, limits);
  }

  DomainSpec window() const {
    const RecommendedParams& p = c_.scenario.params;
    return DomainSpec::window(p.window_lower, p.window_upper);
  }

  std::vector<Vec> controls() const {
    const ControlRange& omega = system().omega();
    return c_.controls > 0 ? omega.grid_with_origin(c_.controls) : default_control_samples(omega);
  }

  GraphOptions options() const {
    GraphOptions o;
    o.T = c_.T;
    o.step = c_.step;
    o.samples_per_box = c_.samples_per_box;
    o.seed = c_.seed;
    o.inflation = c_.inflation;
    o.threads = c_.threads;
    return o;
  }

  TransitionGraph graph(std::shared_ptr<const BoxCovering> cov, const Dynamics& dynamics) {
    TransitionGraph g = build_transition_graph(std::move(cov), dynamics, controls(), JumpSpec::constant(c_.eps), options());
    result_.sink_fraction = std::max(result_.sink_fraction, g.sink_fraction());
    return g;
  }

  std::ofstream open(const std::string& name) {
    std::ofstream f(c_.out / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (c_.out / name).string());
    result_.files.push_back(name);
    return f;
  }

  void write_graph(const TransitionGraph& g) {
    std::ofstream f = open("graph.json");
    write_graph_json(f, g);
  }

  void write_sets(const BoxCovering& cov, const std::vector<ChainSetResult>& sets) {
    {
      std::ofstream f = open("chain_sets.csv");
      write_chain_sets_csv(f, cov, sets);
    }
    for (const auto& p : write_plot_files(c_.out, cov, sets)) result_.files.push_back(p.filename().string());
  }

  void summary(std::string line) { result_.summary.push_back(std::move(line)); }

 private:
  const RunConfig& c_;
  RunResult result_;
};

json graph_stats(const TransitionGraph& g) {
  return {{"node_count", g.node_count()},
          {"edge_count", g.edge_count()},
          {"sink_edge_count", g.sink_edge_count()},
          {"sink_fraction", g.sink_fraction()},
          {"control_count", g.controls().size()}};
}

json set_json(const BoxCovering& cov, const ChainSetResult& s, std::size_t index) {
  Vec lo = Vec::Constant(cov.lower(s.boxes.front()).size(), std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  for (BoxId b : s.boxes) {
    lo = lo.cwiseMin(cov.lower(b));
    hi = hi.cwiseMax(cov.upper(b));
  }
  json j = {{"id", index},
            {"size", s.boxes.size()},
            {"classification", to_string(s.classification)},
            {"bounds", {{"lower", as_list(lo)}, {"upper", as_list(hi)}}}};
  if (cov.domain().spherical()) {
    j["touches_equator"] = s.touches_equator;
    j["hemisphere_sign"] = s.hemisphere_sign;
    j["min_equator_height"] = min_equator_height(cov, s);
    j["in_equator_band"] = contained_in_equator_band(cov, s, cov.max_diameter());
    j["antipodal"] = to_string(s.antipodal);
    if (s.antipodal_partner) j["antipodal_partner"] = *s.antipodal_partner;
  }
  if (s.ladder) {
    j["ladder"] = {{"deltas", s.ladder->deltas}, {"sizes", s.ladder->sizes}, {"stabilized", s.ladder->stabilized}};
    if (s.ladder->died_at) j["ladder"]["died_at"] = *s.ladder->died_at;
  }
  return j;
}

json sets_json(const BoxCovering& cov, const std::vector<ChainSetResult>& sets) {
  json arr = json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) arr.push_back(set_json(cov, sets[i], i));
  return arr;
}

std::optional<std::size_t> set_containing(const std::vector<ChainSetResult>& sets, BoxId b) {
  if (b == kNoBox) return std::nullopt;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].contains(b)) return i;
  }
  return std::nullopt;
}

json optional_index(std::optional<std::size_t> i) { return i ? json(*i) : json(nullptr); }

/// reaches[i] lists the sets reachable from set i; limited to small set counts.
json set_reachability(const Digraph& g, const std::vector<ChainSetResult>& sets) {
  constexpr std::size_t kMaxSets = 64;
  if (sets.size() > kMaxSets) return nullptr;
  json out = json::array();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::vector<bool> mask = reachable_mask(g, sets[i].boxes);
    json row = json::array();
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (j != i && mask[sets[j].boxes.front()]) row.push_back(j);
    }
    out.push_back(row);
  }
  return out;
}

void run_euclidean(Context& ctx) {
  auto cov = ctx.covering(ctx.window(), ctx.config().depth);
  AffineFlow flow(ctx.system());
  TransitionGraph g = ctx.graph(cov, flow);
  std::vector<ChainSetResult> sets = chain_control_sets(g);
  ctx.write_graph(g);
  ctx.write_sets(*cov, sets);

  json report = {{"graph", graph_stats(g)}, {"set_count", sets.size()}, {"sets", sets_json(*cov, sets)}};
  report["reachability"] = set_reachability(g.graph(), sets);
  json eq = json::array();
  for (const Equilibrium& e : ctx.config().scenario.equilibria) {
    eq.push_back({{"u", as_list(e.u)}, {"x", as_list(e.x)}, {"set", optional_index(set_containing(sets, cov->locate(e.x)))}});
  }
  report["equilibria"] = eq;
  ctx.result().report = std::move(report);
  ctx.summary("boxes: " + std::to_string(cov->size()) + ", edges: " + std::to_string(g.edge_count()) +
              ", sink fraction: " + fmt(g.sink_fraction()));
  ctx.summary("chain sets: " + std::to_string(sets.size()));
}

TransitionGraph sphere_graph(Context& ctx) {
  const int n = ctx.system().state_dim();
  auto cov = ctx.covering(DomainSpec::sphere(n), ctx.config().depth);
  ProjectedBilinearFlow flow(extend(ctx.system()));
  return ctx.graph(cov, flow);
}

std::size_t count_central(const BoxCovering& cov, const std::vector<ChainSetResult>& sets) {
  std::size_t central = 0;
  for (const ChainSetResult& s : sets) {
    if (!contained_in_equator_band(cov, s, cov.max_diameter())) ++central;
  }
  return central;
}

void run_sphere(Context& ctx) {
  const RunConfig& c = ctx.config();
  const int n = ctx.system().state_dim();
  TransitionGraph g = sphere_graph(ctx);
  const BoxCovering& cov = g.covering();
  std::vector<ChainSetResult> sets = chain_control_sets(g);
  classify_antipodal(g, sets);
  ctx.write_graph(g);
  ctx.write_sets(cov, sets);

  std::vector<ChainSetResult> central;
  std::vector<std::size_t> central_ids;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!contained_in_equator_band(cov, sets[i], cov.max_diameter())) {
      central.push_back(sets[i]);
      central_ids.push_back(i);
    }
  }

  json report = {{"graph", graph_stats(g)},
                 {"set_count", sets.size()},
                 {"central_set_count", central.size()},
                 {"central_sets", central_ids},
                 {"sets", sets_json(cov, sets)}};

  json eq = json::array();
  for (const Equilibrium& e : c.scenario.equilibria) {
    const auto in_h = set_containing(sets, cov.locate(embed_h(e.x).coords()));
    const auto in_hm = set_containing(sets, cov.locate(embed_h_minus(e.x).coords()));
    eq.push_back({{"u", as_list(e.u)}, {"x", as_list(e.x)}, {"h_set", optional_index(in_h)}, {"h_minus_set", optional_index(in_hm)}});
  }
  report["equilibria"] = eq;

  if (n >= 2) {
    auto hom_cov = ctx.covering(DomainSpec::sphere(n - 1), c.depth);
    ProjectedBilinearFlow hom_flow(homogeneous_bilinear(ctx.system()));
    TransitionGraph hom_graph = ctx.graph(hom_cov, hom_flow);
    std::vector<ChainSetResult> hom_sets = chain_control_sets(hom_graph);
    json containment = json::array();
    for (const EquatorContainment& ec : equator_containment(g, central, *hom_cov, hom_sets)) {
      containment.push_back({{"central_set", central_ids[ec.central_index]},
                             {"contained", ec.contained},
                             {"violations", ec.violations}});
    }
    report["homogeneous_set_count"] = hom_sets.size();
    report["equator_containment"] = containment;
  }
  ctx.result().report = std::move(report);
  ctx.summary("sphere boxes: " + std::to_string(cov.size()) + ", edges: " + std::to_string(g.edge_count()));
  ctx.summary("chain sets: " + std::to_string(sets.size()) + ", central: " + std::to_string(central.size()));
}

void run_hemisphere(Context& ctx) {
  const RunConfig& c = ctx.config();
  const int n = ctx.system().state_dim();
  auto cov = ctx.covering(DomainSpec::hemisphere(n, c.hemisphere_sign, c.closed), c.depth);
  ProjectedBilinearFlow flow(extend(ctx.system()));
  TransitionGraph g = ctx.graph(cov, flow);
  std::vector<ChainSetResult> sets = chain_control_sets(g);
  ctx.write_graph(g);
  ctx.write_sets(*cov, sets);

  std::size_t touching = 0;
  for (const ChainSetResult& s : sets) touching += s.touches_equator ? 1 : 0;
  ctx.result().report = {{"graph", graph_stats(g)},
                         {"set_count", sets.size()},
                         {"equator_touching_count", touching},
                         {"central_set_count", count_central(*cov, sets)},
                         {"sets", sets_json(*cov, sets)}};
  ctx.summary(std::string(c.closed ? "closed" : "open") + " hemisphere boxes: " + std::to_string(cov->size()) +
              ", edges: " + std::to_string(g.edge_count()));
  ctx.summary("chain sets: " + std::to_string(sets.size()) + ", touching the equator: " + std::to_string(touching));
}

void run_projective(Context& ctx) {
  const int n = ctx.system().state_dim();
  TransitionGraph sg = sphere_graph(ctx);
  std::vector<ChainSetResult> sphere_sets = chain_control_sets(sg);
  classify_antipodal(sg, sphere_sets);

  TransitionGraph pg = projective_quotient(sg);
  const BoxCovering& cov = pg.covering();
  std::vector<ChainSetResult> sets = chain_control_sets(pg);
  // Each projective set inherits the antipodal class of a sphere set over it.
  for (ChainSetResult& s : sets) {
    for (const ChainSetResult& ss : sphere_sets) {
      const std::vector<BoxId> img = project_boxes(sg.covering(), cov, {ss.boxes.front()});
      if (!img.empty() && s.contains(img.front())) {
        s.antipodal = ss.antipodal;
        break;
      }
    }
  }
  ctx.write_graph(pg);
  ctx.write_sets(cov, sets);

  const std::size_t central = count_central(cov, sets);
  json axes = json::array();
  for (int i = 0; i < n; ++i) {
    Vec e = Vec::Zero(n + 1);
    e[i] = 1.0;
    axes.push_back({{"axis", i}, {"set", optional_index(set_containing(sets, cov.locate(e)))}});
  }
  ctx.result().report = {{"graph", graph_stats(pg)},
                         {"sphere_graph", graph_stats(sg)},
                         {"sphere_set_count", sphere_sets.size()},
                         {"set_count", sets.size()},
                         {"central_scc_count", central},
                         {"equator_axes", axes},
                         {"sets", sets_json(cov, sets)}};
  ctx.summary("projective boxes: " + std::to_string(cov.size()) + ", edges: " + std::to_string(pg.edge_count()));
  ctx.summary("chain sets: " + std::to_string(sets.size()) + ", central: " + std::to_string(central));
}

void run_strong_ladder(Context& ctx) {
  const RunConfig& c = ctx.config();
  const int n = ctx.system().state_dim();
  std::shared_ptr<const BoxCovering> cov;
  std::unique_ptr<Dynamics> dyn;
  switch (c.ladder_domain) {
    case LadderDomain::Window:
      cov = ctx.covering(ctx.window(), c.depth);
      dyn = std::make_unique<AffineFlow>(ctx.system());
      break;
    case LadderDomain::Sphere:
      cov = ctx.covering(DomainSpec::sphere(n), c.depth);
      dyn = std::make_unique<ProjectedBilinearFlow>(extend(ctx.system()));
      break;
    case LadderDomain::Hemisphere:
      cov = ctx.covering(DomainSpec::hemisphere(n, c.hemisphere_sign, c.closed), c.depth);
      dyn = std::make_unique<ProjectedBilinearFlow>(extend(ctx.system()));
      break;
  }
  LadderResult ladder = strong_chain_ladder(cov, *dyn, c.weight, c.delta_ladder, ctx.controls(), ctx.options());
  ctx.write_sets(*cov, ladder.survivors);

  json levels = json::array();
  for (const LadderLevel& l : ladder.levels) {
    levels.push_back({{"delta", l.delta}, {"edge_count", l.edge_count}, {"component_count", l.components.size()}});
  }
  ctx.result().report = {{"node_count", cov->size()},
                         {"levels", levels},
                         {"survivor_count", ladder.survivors.size()},
                         {"non_strong_count", ladder.non_strong.size()},
                         {"survivors", sets_json(*cov, ladder.survivors)},
                         {"non_strong", sets_json(*cov, ladder.non_strong)}};
  ctx.summary("ladder levels: " + std::to_string(ladder.levels.size()) + ", boxes: " + std::to_string(cov->size()));
  ctx.summary("strong set approximations: " + std::to_string(ladder.survivors.size()) +
              ", non-strong components: " + std::to_string(ladder.non_strong.size()));
}

void run_monodromy(Context& ctx) {
  const RunConfig& c = ctx.config();
  MonodromyOptions opt;
  opt.step = c.step;
  const MonodromyReport m = monodromy(ctx.system(), ControlSignal::constant(c.u), c.tau, opt);
  json matrix = json::array();
  for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) matrix.push_back(as_list(m.matrix.row(i).transpose()));
  json eig = json::array();
  for (const auto& l : m.eigenvalues) eig.push_back({l.real(), l.imag()});
  json report = {{"tau", c.tau}, {"u", as_list(c.u)}, {"matrix", matrix}, {"eigenvalues", eig},
                 {"has_unit_eigenvalue", m.has_unit_eigenvalue}, {"tol_eig", opt.tol_eig}};
  if (m.unit_eigvec) report["unit_eigvec"] = as_list(*m.unit_eigvec);
  ctx.result().report = std::move(report);
  ctx.summary(std::string("unit eigenvalue: ") + (m.has_unit_eigenvalue ? "yes" : "no"));
}

void run_conjugacy(Context& ctx) {
  const RunConfig& c = ctx.config();
  const RecommendedParams& p = c.scenario.params;
  const ControlRange& omega = ctx.system().omega();
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto draw = [&](const Vec& lo, const Vec& hi) {
    Vec v(lo.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
    return v;
  };
  double worst = 0.0;
  double total = 0.0;
  for (int k = 0; k < c.trials; ++k) {
    const Vec x = draw(p.window_lower, p.window_upper);
    const Vec u = draw(omega.lower(), omega.upper());
    const double t = c.horizon * unit(rng);
    const double r = conjugacy_residual(ctx.system(), x, ControlSignal::constant(u), t, c.step);
    worst = std::max(worst, r);
    total += r;
  }
  ctx.result().report = {{"trials", c.trials}, {"horizon", c.horizon}, {"max_residual", worst},
                         {"mean_residual", total / c.trials}};
  ctx.summary("conjugacy residual: max " + fmt(worst) + ", mean " + fmt(total / c.trials));
}

}  // namespace

RunResult run_pipeline(const RunConfig& config) {
  Context ctx(config);
  switch (config.pipeline) {
    case Pipeline::Euclidean: run_euclidean(ctx); break;
    case Pipeline::Sphere: run_sphere(ctx); break;
    case Pipeline::Hemisphere: run_hemisphere(ctx); break;
    case Pipeline::Projective: run_projective(ctx); break;
    case Pipeline::StrongLadder: run_strong_ladder(ctx); break;
    case Pipeline::Monodromy: run_monodromy(ctx); break;
    case Pipeline::Conjugacy: run_conjugacy(ctx); break;
  }
  RunResult r = std::move(ctx.result());
  r.report["pipeline"] = pipeline_name(config.pipeline);
  if (config.pipeline != Pipeline::Monodromy && config.pipeline != Pipeline::Conjugacy) r.report["approximation"] = true;
  return r;
}

}  // namespace chainctl::cli
