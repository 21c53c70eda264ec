#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "toric/corpus.hpp"
#include "toric/io.hpp"

using namespace toric;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string where_of(const std::string& text) {
  try {
    parse_fan(text);
  } catch (const ParseError& e) {
    return e.where;
  }
  return "";
}

}  // namespace

TEST_CASE("corpus files round-trip byte for byte") {
  const Json manifest = read_json_file(corpus_dir() + "/manifest.json");
  REQUIRE(manifest["entries"].size() >= 9);
  for (const auto& e : manifest["entries"]) {
    const std::string path = corpus_dir() + "/" + e["file"].get<std::string>();
    CAPTURE(path);
    const std::string text = slurp(path);
    if (e["kind"] == "fan") {
      const Fan f = parse_fan(text);
      CHECK(serialize(f) == text);
      const Fan b = builtin_fan(e["builtin"].get<std::string>());
      CHECK(f.rays == b.rays);
      CHECK(f.max_cones == b.max_cones);
    } else {
      const auto qp = presentation_from_json(parse_json_text(text));
      CHECK(canonical_dump(to_json(qp)) == text);
      CHECK(canonical_dump(to_json(builtin_presentation(e["builtin"].get<std::string>()))) == text);
    }
  }
}

TEST_CASE("manifest properties match recomputation") {
  const Json manifest = read_json_file(corpus_dir() + "/manifest.json");
  for (const auto& e : manifest["entries"]) {
    CAPTURE(e["name"].get<std::string>());
    const Json file = read_json_file(corpus_dir() + "/" + e["file"].get<std::string>());
    if (e["kind"] == "fan") {
      const Fan f = fan_from_json(file);
      const GlobalProps g = global_props(f);
      CHECK(g.smooth == e["smooth"].get<bool>());
      CHECK(g.simplicial == e["simplicial"].get<bool>());
      CHECK(g.complete == e["complete"].get<bool>());
      CHECK(is_divisorial(f).divisorial == e["divisorial"].get<bool>());
      const ClassGroup cl = class_group(f);
      CHECK(cl.group.free_rank == e["class_group"]["free_rank"].get<std::size_t>());
      IntVector torsion;
      for (const auto& t : e["class_group"]["torsion"]) torsion.push_back(t.get<long>());
      CHECK(cl.group.torsion == torsion);
    } else {
      const auto qp = presentation_from_json(file);
      CHECK(is_separated(qp).separated == e["separated"].get<bool>());
      CHECK(free_locus(qp).size() == e["free_locus_size"].get<std::size_t>());
    }
  }
}

TEST_CASE("canonical layout") {
  Json j;
  j["kind"] = "x";
  j["empty"] = Json::array();
  j["nested"] = Json::array({Json::array({1, 2}), Json::array()});
  j["obj"] = Json::object();
  CHECK(canonical_dump(j) ==
        "{\n  \"kind\": \"x\",\n  \"empty\": [],\n  \"nested\": [\n    [1, 2],\n    []\n  ],\n  \"obj\": {}\n}\n");
  // Large entries travel as decimal strings.
  const Fan f{2, {{Integer("100000000000000000000"), 1}}, {{0}}};
  const std::string text = serialize(f);
  CHECK(text.find("\"100000000000000000000\"") != std::string::npos);
  CHECK(parse_fan(text).rays == f.rays);
  CHECK(serialize(parse_fan(text)) == text);
}

TEST_CASE("parse errors carry positions") {
  CHECK(where_of("{\n  \"kind\": \"fan\",\n  \"rank\": 2,\n  \"rays\": [[1, 0]\n") == "line 5, column 1");
  CHECK(where_of("{\"kind\": \"fan\", \"rank\": 2, \"rays\": [[1, 0], [0, \"x\"]], \"max_cones\": [[0, 1]]}") ==
        "/rays/1/1");
  CHECK(where_of("{\"kind\": \"fan\", \"rank\": 2, \"rays\": [[1, 0], [0]], \"max_cones\": [[0, 1]]}") == "/rays/1");
  CHECK(where_of("{\"kind\": \"fan\", \"rank\": 2, \"rays\": [[1, 0]]}") == "/");
  CHECK(where_of("{\"kind\": \"divisor\"}") == "/kind");
  CHECK(where_of("{\"kind\": \"fan\", \"rank\": 1, \"rays\": [[1], [2]], \"max_cones\": [[0], [1]]}") == "/");
}

TEST_CASE("certificates and artifacts re-verify after a round trip") {
  const Fan p2 = builtin_fan("p2");
  const auto certs = is_divisorial(p2).certificates;
  Fan back;
  const auto parsed = certificates_from_json(parse_json_text(canonical_dump(certificates_to_json(p2, certs))), back);
  REQUIRE(parsed.size() == certs.size());
  for (const auto& c : parsed) CHECK_FALSE(verify_certificate(back, c).has_value());

  auto out = build_embedding(builtin_fan("wp112"), 2, 2);
  REQUIRE(out.artifact.has_value());
  const std::string text = canonical_dump(to_json(*out.artifact));
  const EmbeddingArtifact art = artifact_from_json(parse_json_text(text));
  CHECK(canonical_dump(to_json(art)) == text);
  CHECK_NOTHROW(check_artifact(art));

  EmbeddingArtifact broken = art;
  REQUIRE_FALSE(broken.charts.empty());
  REQUIRE_FALSE(broken.charts[0].lifts.empty());
  broken.charts[0].lifts[0].second[0] += 1;
  CHECK_THROWS_AS(check_artifact(broken), VerificationFailure);

  const Json d = parse_json_text("{\"kind\": \"divisor\", \"fan\": \"p2\", \"coefficients\": [1, 0, 0]}");
  const DivisorFile df = divisor_from_json(d, [](const std::string& n) { return builtin_fan(n); });
  CHECK(df.coeffs == IntVector{1, 0, 0});
  const Json bad = parse_json_text("{\"kind\": \"divisor\", \"fan\": \"p2\", \"coefficients\": [1, 0]}");
  CHECK_THROWS_AS(divisor_from_json(bad, [](const std::string& n) { return builtin_fan(n); }), ParseError);
}
