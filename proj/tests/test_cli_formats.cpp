#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qls/latin.hpp"
#include "qls/rational.hpp"

using namespace qls;
using json = nlohmann::json;

TEST_CASE("rational string round trip") {
  for (const char* s : {"0", "7", "-3", "2/3", "-355/113", "25401600/823543"}) {
    const Rat q = rat_parse(s);
    CHECK(rat_parse(rat_str(q)) == q);
  }
  CHECK(rat_str(Rat(4, 6)) == "2/3");
  CHECK_THROWS_AS(rat_parse("abc"), Error);
}

TEST_CASE("square text format") {
  const LatinSquare L = group_square("Z4");
  const std::string text = L.to_text();
  CHECK(text.substr(0, 2) == "4\n");
  CHECK(LatinSquare::from_text(text) == L);
}

#if defined(QLS_BIN) && defined(QLS_SCHEMA)

namespace {

json run_cli(const std::string& args) {
  const std::string path = std::string(std::tmpnam(nullptr)) + ".json";
  const std::string cmd = std::string(QLS_BIN) + " " + args + " --out " + path;
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream f(path);
  REQUIRE(f.good());
  json j = json::parse(f);
  std::remove(path.c_str());
  return j;
}

// minimal structural validation against the shipped schema: required keys,
// primitive types, const/enum constraints on the envelope
void validate_envelope(const json& doc, const json& schema) {
  for (const auto& req : schema.at("required")) CHECK(doc.contains(req.get<std::string>()));
  const auto& props = schema.at("properties");
  CHECK(doc.at("command").is_string());
  const auto& cmds = props.at("command").at("enum");
  CHECK(std::find(cmds.begin(), cmds.end(), doc.at("command")) != cmds.end());
  CHECK(doc.at("schema_version") == props.at("schema_version").at("const"));
  CHECK(doc.at("config").is_object());
  for (const auto& req : props.at("config").at("required"))
    CHECK(doc.at("config").contains(req.get<std::string>()));
  CHECK(doc.at("config").at("seed").is_number_integer());
}

}  // namespace

TEST_CASE("cli reports validate against the shipped schema") {
  std::ifstream sf(QLS_SCHEMA);
  REQUIRE(sf.good());
  const json schema = json::parse(sf);

  validate_envelope(run_cli("sigma-m --m 4"), schema);
  validate_envelope(run_cli("transversals --group Z5"), schema);
  validate_envelope(run_cli("rho --group Z3"), schema);
  validate_envelope(run_cli("gen --group S3"), schema);
}

TEST_CASE("cli sigma-m values") {
  const json j = run_cli("sigma-m --m 4");
  CHECK(j.at("value") == "5/8");
  const json j0 = run_cli("sigma-m --m 1");
  CHECK(j0.at("value") == "1");
  const json j2 = run_cli("sigma-m --m 3");
  CHECK(j2.at("value") == "1/2");
}

TEST_CASE("cli sample is deterministic and seed-recorded") {
  const json a = run_cli("sample --n 5 --seed 11");
  const json b = run_cli("sample --n 5 --seed 11");
  CHECK(a.at("square") == b.at("square"));
  CHECK(a.at("config").at("seed") == 11);
  const LatinSquare L = LatinSquare::from_grid(a.at("square").at("grid"));
  L.validate();
}

#endif
