#include "chainctl/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "chainctl/errors.hpp"

namespace chainctl {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_array(std::ostream& os, const Vec& v) {
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << num(v[i]);
  os << ']';
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + p.string());
  return f;
}

}  // namespace

void write_graph_json(std::ostream& os, const TransitionGraph& graph) {
  const BoxCovering& cov = graph.covering();
  const bool sphere = cov.domain().spherical();
  os << "{\"nodes\":[";
  for (BoxId b = 0; b < cov.size(); ++b) {
    os << (b ? "," : "") << "\n{\"id\":" << b << ",\"center\":";
    write_array(os, cov.center(b));
    os << ",\"radius\":";
    write_array(os, cov.radius(b));
    if (sphere) os << ",\"face\":" << cov.face(b);
    os << '}';
  }
  os << "\n],\"edges\":[";
  bool first = true;
  for (BoxId b = 0; b < cov.size(); ++b) {
    for (BoxId w : graph.graph().successors(b)) {
      os << (first ? "\n" : ",\n") << '[' << b << ',' << w << ']';
      first = false;
    }
  }
  os << "\n],\"sink_edges\":[";
  first = true;
  for (BoxId b = 0; b < cov.size(); ++b) {
    if (!graph.escapes(b)) continue;
    os << (first ? "" : ",") << b;
    first = false;
  }
  os << "]}\n";
}

void write_chain_sets_csv(std::ostream& os, const BoxCovering& covering, const std::vector<ChainSetResult>& sets) {
  os << "box_id";
  for (int k = 0; k < covering.dim(); ++k) os << ",c" << (k + 1);
  os << ",set_id,classification,touches_equator,hemisphere_sign,antipodal\n";
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const ChainSetResult& set = sets[s];
    for (BoxId b : set.boxes) {
      os << b;
      const Vec c = covering.center(b);
      for (Eigen::Index k = 0; k < c.size(); ++k) os << ',' << num(c[k]);
      os << ',' << s << ',' << to_string(set.classification) << ',' << (set.touches_equator ? 1 : 0) << ','
         << set.hemisphere_sign << ',' << to_string(set.antipodal) << '\n';
    }
  }
}

std::vector<std::filesystem::path> write_plot_files(const std::filesystem::path& dir, const BoxCovering& covering,
                                                    const std::vector<ChainSetResult>& sets,
                                                    const std::string& prefix) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const bool sphere = covering.domain().spherical();
  for (std::size_t s = 0; s < sets.size(); ++s) {
    const auto path = dir / (prefix + "_" + std::to_string(s) + ".dat");
    std::ofstream f = open_out(path);
    for (BoxId b : sets[s].boxes) {
      const Vec c = covering.center(b);
      for (Eigen::Index k = 0; k < c.size(); ++k) f << (k ? " " : "") << num(c[k]);
      f << '\n';
    }
    written.push_back(path);
    if (!sphere) continue;
    const auto chart = dir / (prefix + "_" + std::to_string(s) + "_chart.dat");
    std::ofstream g = open_out(chart);
    for (BoxId b : sets[s].boxes) {
      const Vec c = covering.center(b);
      const double last = c[c.size() - 1];
      if (std::abs(last) < 1e-9) continue;
      const Vec x = c.head(c.size() - 1) / last;
      for (Eigen::Index k = 0; k < x.size(); ++k) g << (k ? " " : "") << num(x[k]);
      g << '\n';
    }
    written.push_back(chart);
  }
  return written;
}

}  // namespace chainctl
