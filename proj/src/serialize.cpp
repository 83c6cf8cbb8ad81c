#include "speclen/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

namespace speclen {

using json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string triple_to_json(const SpectralTriple& t) {
  json doc;
  doc["schema_version"] = kTripleSchemaVersion;
  json points = json::array();
  for (const Point& p : t.points) {
    json row = json::array();
    row.push_back(p.label);
    for (double c : p.coords) row.push_back(c);
    points.push_back(std::move(row));
  }
  doc["points"] = std::move(points);
  doc["spinor_dim"] = t.spinor_dim;
  doc["weights"] = t.weights;
  json entries = json::array();
  for (int i = 0; i < t.dirac.rows; ++i)
    for (int j = 0; j < t.dirac.cols; ++j) {
      const cplx z = t.dirac(i, j);
      if (z == cplx{}) continue;
      entries.push_back(json::array({i, j, z.real(), z.imag()}));
    }
  doc["dirac"] = {{"n", t.dirac.rows}, {"entries", std::move(entries)}};
  return doc.dump(2) + "\n";
}

SpectralTriple triple_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != kTripleSchemaVersion)
    throw std::invalid_argument("triple schema: unrecognized schema_version");
  std::vector<Point> points;
  for (const json& row : doc.at("points")) {
    Point p;
    p.label = row.at(0).get<std::string>();
    for (std::size_t i = 1; i < row.size(); ++i) p.coords.push_back(row[i].get<double>());
    points.push_back(std::move(p));
  }
  const int spinor_dim = doc.at("spinor_dim").get<int>();
  std::vector<double> weights = doc.at("weights").get<std::vector<double>>();
  const json& dirac = doc.at("dirac");
  const int n = dirac.at("n").get<int>();
  CMatrix d(n, n);
  for (const json& e : dirac.at("entries")) {
    const int i = e.at(0).get<int>();
    const int j = e.at(1).get<int>();
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw std::invalid_argument("triple schema: dirac entry out of range");
    d(i, j) = cplx{e.at(2).get<double>(), e.at(3).get<double>()};
  }
  return new_triple(std::move(points), spinor_dim, std::move(d), std::move(weights));
}

void save_triple(const SpectralTriple& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_triple: cannot open " + path);
  out << triple_to_json(t);
  if (!out) throw std::runtime_error("save_triple: write failed for " + path);
}

SpectralTriple load_triple(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_triple: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return triple_from_json(text);
}

}  // namespace speclen
