#include "chainctl/system_io.hpp"

#include <fstream>

#include "chainctl/errors.hpp"

namespace chainctl {

namespace {

using nlohmann::json;

Vec read_vector(const json& arr, const char* what) {
  if (!arr.is_array()) throw ConstructionError(std::string("system json: ") + what + " must be an array");
  Vec v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) throw ConstructionError(std::string("system json: ") + what + " must hold numbers");
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

Mat read_matrix(const json& arr, int n) {
  Mat a(n, n);
  if (!arr.is_array()) throw ConstructionError("system json: matrix must be an array");
  if (arr.size() == static_cast<std::size_t>(n) * n && (n == 0 || !arr[0].is_array())) {
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const json& e = arr[static_cast<std::size_t>(r) * n + c];
        if (!e.is_number()) throw ConstructionError("system json: matrix entries must be numbers");
        a(r, c) = e.get<double>();
      }
    }
    return a;
  }
  if (arr.size() == static_cast<std::size_t>(n)) {
    for (int r = 0; r < n; ++r) {
      const Vec row = read_vector(arr[r], "matrix row");
      if (row.size() != n) throw ConstructionError("system json: matrix row has wrong length");
      a.row(r) = row.transpose();
    }
    return a;
  }
  throw ConstructionError("system json: matrix must hold n*n entries");
}

}  // namespace

AffineSystem system_from_json(const json& doc) {
  if (!doc.is_object()) throw ConstructionError("system json: document must be an object");
  for (const char* key : {"n", "matrices", "offsets", "omega"}) {
    if (!doc.contains(key)) throw ConstructionError(std::string("system json: missing key '") + key + "'");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<int>() < 1) {
    throw ConstructionError("system json: 'n' must be a positive integer");
  }
  const int n = doc["n"].get<int>();
  const json& mats = doc["matrices"];
  const json& offs = doc["offsets"];
  if (!mats.is_array() || !offs.is_array()) throw ConstructionError("system json: matrices/offsets must be arrays");

  std::vector<Mat> matrices;
  for (const json& m : mats) matrices.push_back(read_matrix(m, n));
  std::vector<Vec> offsets;
  for (const json& o : offs) offsets.push_back(read_vector(o, "offset"));

  const json& omega = doc["omega"];
  if (!omega.is_object() || !omega.contains("lower") || !omega.contains("upper")) {
    throw ConstructionError("system json: omega needs 'lower' and 'upper'");
  }
  ControlRange range(read_vector(omega["lower"], "omega.lower"), read_vector(omega["upper"], "omega.upper"));
  return AffineSystem(std::move(matrices), std::move(offsets), std::move(range));
}

json system_to_json(const AffineSystem& sys) {
  const int n = sys.state_dim();
  json mats = json::array();
  for (const Mat& a : sys.matrices()) {
    json flat = json::array();
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) flat.push_back(a(r, c));
    }
    mats.push_back(std::move(flat));
  }
  json offs = json::array();
  for (const Vec& a : sys.offsets()) offs.push_back(std::vector<double>(a.data(), a.data() + a.size()));
  const Vec& lo = sys.omega().lower();
  const Vec& hi = sys.omega().upper();
  return json{{"n", n},
              {"matrices", std::move(mats)},
              {"offsets", std::move(offs)},
              {"omega",
               {{"lower", std::vector<double>(lo.data(), lo.data() + lo.size())},
                {"upper", std::vector<double>(hi.data(), hi.data() + hi.size())}}}};
}

AffineSystem load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open system file: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse system file " + path.string() + ": " + e.what());
  }
  try {
    return system_from_json(doc);
  } catch (const ConstructionError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace chainctl
