#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "speclen/dirac_lattice.hpp"
#include "speclen/serialize.hpp"

using namespace speclen;

namespace {

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("speclen_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

bool bit_identical(const SpectralTriple& a, const SpectralTriple& b) {
  if (a.sites() != b.sites() || a.spinor_dim != b.spinor_dim) return false;
  for (int i = 0; i < a.sites(); ++i) {
    if (a.points[i].label != b.points[i].label) return false;
    if (a.points[i].coords != b.points[i].coords) return false;
    if (a.weights[i] != b.weights[i]) return false;
  }
  if (a.dirac.rows != b.dirac.rows) return false;
  for (std::size_t k = 0; k < a.dirac.a.size(); ++k)
    if (a.dirac.a[k] != b.dirac.a[k]) return false;
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("triples round-trip bit-exactly through json") {
  const SpectralTriple circle = circle_triple(8, 2.0 * M_PI, [](double x) {
    const double s = 1.0 + 0.5 * std::sin(x);
    return s * s;
  });
  const SpectralTriple torus = torus_triple(3, 4, 3.0, 4.0, TorusScheme::block);
  const SpectralTriple central = torus_triple(3, 3, 1.0, 7.0, TorusScheme::central);
  const SpectralTriple two = two_point_triple(0.1);
  for (const SpectralTriple* t : {&circle, &torus, &central, &two}) {
    const SpectralTriple back = triple_from_json(triple_to_json(*t));
    CHECK(bit_identical(*t, back));
    // edge bookkeeping is not part of the schema
    CHECK_FALSE(back.edge_local);
    CHECK(back.edges.empty());
  }
}

TEST_CASE("schema document carries the advertised fields") {
  const SpectralTriple t = two_point_triple(2.0);
  const std::string text = triple_to_json(t);
  CHECK(text.find("\"schema_version\": 1") != std::string::npos);
  CHECK(text.find("\"points\"") != std::string::npos);
  CHECK(text.find("\"spinor_dim\": 1") != std::string::npos);
  CHECK(text.find("\"weights\"") != std::string::npos);
  CHECK(text.find("\"dirac\"") != std::string::npos);
  CHECK(text.find("\"entries\"") != std::string::npos);
  CHECK(text.find("\"n\": 2") != std::string::npos);
  // only the two nonzero mass entries are stored: exactly eight row values
  // (two quadruples) appear under entries
  std::size_t count = 0;
  for (std::size_t at = text.find("2.0"); at != std::string::npos; at = text.find("2.0", at + 1))
    ++count;
  CHECK(count == 2);
}

TEST_CASE("save and load through files, byte-identical on repeated saves") {
  const TempDir tmp;
  const SpectralTriple t = circle_triple(6, 6.0, std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0, 6.0});
  save_triple(t, tmp.path("a.json"));
  save_triple(t, tmp.path("b.json"));
  const std::string a = slurp(tmp.path("a.json"));
  CHECK(a == slurp(tmp.path("b.json")));
  CHECK(!a.empty());
  CHECK(a.back() == '\n');
  const SpectralTriple back = load_triple(tmp.path("a.json"));
  CHECK(bit_identical(t, back));
}

TEST_CASE("awkward doubles survive the round trip") {
  // values with no short decimal representation
  CMatrix d(2, 2);
  d(0, 1) = cplx{1.0 / 3.0, std::nextafter(0.1, 1.0)};
  d(1, 0) = std::conj(d(0, 1));
  d(0, 0) = 1e-300;
  d(1, 1) = 12345678901234567.0;
  SpectralTriple t = new_triple({Point{"p", {0.0}}, Point{"q", {1.0}}}, 1, d,
                                {M_PI, std::nextafter(1.0, 2.0)});
  const SpectralTriple back = triple_from_json(triple_to_json(t));
  CHECK(bit_identical(t, back));
}

TEST_CASE("malformed documents are rejected") {
  const std::string good = triple_to_json(two_point_triple(1.0));
  CHECK_THROWS(triple_from_json("this is not json"));
  CHECK_THROWS(triple_from_json(good.substr(0, good.size() / 2)));  // truncated
  CHECK_THROWS(triple_from_json("{}"));                             // missing fields

  // formatting-independent variants assembled directly
  auto doc = [](const std::string& version, const std::string& entries) {
    return std::string("{\"schema_version\": ") + version +
           ", \"points\": [[\"0\", 0.0], [\"1\", 1.0]],"
           " \"spinor_dim\": 1, \"weights\": [1.0, 1.0],"
           " \"dirac\": {\"n\": 2, \"entries\": " + entries + "}}";
  };
  const std::string mass = "[[0, 1, 1.0, 0.0], [1, 0, 1.0, 0.0]]";
  CHECK(bit_identical(triple_from_json(doc("1", mass)), two_point_triple(1.0)));
  CHECK_THROWS_AS(triple_from_json(doc("99", mass)), std::invalid_argument);
  // dirac entry index out of range
  CHECK_THROWS_AS(triple_from_json(doc("1", "[[0, 7, 1.0, 0.0]]")), std::invalid_argument);
  // loaded matrices still face triple validation: broken self-adjointness
  CHECK_THROWS_AS(triple_from_json(doc("1", "[[0, 1, 1.0, 0.0], [1, 0, 0.5, 0.0]]")),
                  std::invalid_argument);
}

TEST_CASE("file errors are reported") {
  const TempDir tmp;
  CHECK_THROWS_AS(load_triple(tmp.path("missing.json")), std::runtime_error);
  CHECK_THROWS_AS(save_triple(two_point_triple(1.0), tmp.path("no/such/dir/x.json")),
                  std::runtime_error);
}
