#include <doctest.h>

#include <edlab/errors.hpp>
#include <edlab/manifest.hpp>
#include <edlab/structure.hpp>

#include <fstream>
#include <map>
#include <sstream>

using namespace edlab;

namespace {

std::vector<ManifestEntry> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_manifest(in);
}

const Database& bundled() {
  static const Database db = load_and_verify_manifest(default_manifest_path());
  return db;
}

}  // namespace

TEST_CASE("manifest lines parse") {
  const auto es = parse(
      "# comment\n"
      "\n"
      "6|1|D6|D(6)|2|1|1|R9|0\n"
      "54|5|(C3 x C3) : C6|C(3)^2 : C(6) [act a -> a^-1 b^-1, b -> b^-1]|6|3|5|R4|0\n"
      "120|34|S5|S(5)|4|2|2|R10|1\n");
  REQUIRE(es.size() == 3);
  CHECK(es[0].id == GapId{6, 1});
  CHECK(es[0].structure == "D6");
  CHECK(es[0].rd == 2);
  CHECK(es[0].ed_lo == 1);
  CHECK(es[0].ed_hi == 1);
  CHECK(es[0].tag == "R9");
  CHECK_FALSE(es[0].auxiliary);
  CHECK(es[1].ed_lo == 3);
  CHECK(es[1].ed_hi == 5);
  CHECK(es[2].auxiliary);
  CHECK(GapId{54, 5}.to_string() == "(54,5)");
}

TEST_CASE("malformed manifest lines") {
  CHECK_THROWS_AS(parse("6|1|D6|D(6)|2|1|1|R9\n"), ManifestConflict);
  CHECK_THROWS_AS(parse("6|1|D6|D(6)|2|1|1|R9|2\n"), ManifestConflict);
  CHECK_THROWS_AS(parse("6|x|D6|D(6)|2|1|1|R9|0\n"), ManifestConflict);
  CHECK_THROWS_AS(parse("6|1|D6|D(6)|2|2|1|R9|0\n"), ManifestConflict);
  CHECK_THROWS_AS(parse("6|1|D6|D(6)|2|1|3|R9|0\n"), ManifestConflict);
  CHECK_THROWS_AS(parse("6|1|D6|D(6)|2|0|1|R9|0\n"), ManifestConflict);
  CHECK_THROWS_AS(parse("120|34|S5|S(5)|4|2|2|R10|0\n"), ManifestConflict);
}

TEST_CASE("database verification rejects bad manifests") {
  SUBCASE("isomorphic pair") {
    const auto es = parse(
        "16|3|a|C(8) x C(2)|2|2|2|R3|0\n"
        "16|4|b|C(2) x C(8)|2|2|2|R3|0\n");
    try {
      build_database(es);
      FAIL("expected ManifestConflict");
    } catch (const ManifestConflict& e) {
      const std::string msg = e.what();
      CHECK(msg.find("(16,3)") != std::string::npos);
      CHECK(msg.find("(16,4)") != std::string::npos);
    }
  }
  SUBCASE("duplicate id") {
    const auto es = parse(
        "6|1|D6|D(6)|2|1|1|R9|0\n"
        "6|1|D6|S(3)|2|1|1|R9|0\n");
    CHECK_THROWS_AS(build_database(es), ManifestConflict);
  }
  SUBCASE("order mismatch") {
    CHECK_THROWS_AS(build_database(parse("8|3|D8|D(10)|2|2|2|R9|0\n")), ManifestConflict);
  }
  SUBCASE("unrealizable expression") {
    CHECK_THROWS_AS(build_database(parse("6|1|D6|D(7)|2|1|1|R9|0\n")), ManifestConflict);
  }
  SUBCASE("small valid manifest") {
    const auto db = build_database(parse(
        "6|1|D6|D(6)|2|1|1|R9|0\n"
        "6|2|C6|C(6)|1|1|1|R3|0\n"));
    CHECK(db.groups().size() == 2);
    CHECK(db.identify(realize("S(3)")) == GapId{6, 1});
    CHECK(db.identify(realize("C(3) x C(2)")) == GapId{6, 2});
    CHECK_FALSE(db.identify(realize("C(5)")).has_value());
    CHECK_THROWS_AS(db.at({6, 3}), UnknownId);
  }
}

TEST_CASE("bundled manifest file format") {
  std::ifstream in(default_manifest_path(), std::ios::binary);
  REQUIRE(in);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    CHECK(line.find('\r') == std::string::npos);
    if (!line.empty()) CHECK(line.back() != ' ');
  }
  CHECK(n > 300);
}

TEST_CASE("bundled manifest covers every group of order 2..63") {
  // Number of isomorphism classes per order, from the small-groups catalogue.
  const std::map<int, int> expected{
      {2, 1},   {3, 1},  {4, 2},  {5, 1},  {6, 2},  {7, 1},  {8, 5},  {9, 2},   {10, 2}, {11, 1}, {12, 5},
      {13, 1},  {14, 2}, {15, 1}, {16, 14}, {17, 1}, {18, 5}, {19, 1}, {20, 5},  {21, 2}, {22, 2}, {23, 1},
      {24, 15}, {25, 2}, {26, 2}, {27, 5},  {28, 4}, {29, 1}, {30, 4}, {31, 1},  {32, 51}, {33, 1}, {34, 2},
      {35, 1},  {36, 14}, {37, 1}, {38, 2}, {39, 2}, {40, 14}, {41, 1}, {42, 6}, {43, 1}, {44, 4},  {45, 2},
      {46, 2},  {47, 1}, {48, 52}, {49, 2}, {50, 5}, {51, 1}, {52, 5},  {53, 1}, {54, 15}, {55, 2}, {56, 13},
      {57, 2},  {58, 2}, {59, 1}, {60, 13}, {61, 1}, {62, 2}, {63, 4}};
  std::map<int, int> counted;
  std::size_t aux = 0;
  for (const auto& g : bundled().groups()) {
    if (g.entry.auxiliary) {
      ++aux;
      continue;
    }
    ++counted[g.entry.id.order];
    CHECK(g.entry.id.index >= 1);
    CHECK(g.entry.id.index <= expected.at(g.entry.id.order));
  }
  CHECK(counted == expected);
  CHECK(aux == 5);
}

TEST_CASE("bundled manifest entries are consistent") {
  const auto& db = bundled();
  for (const auto& g : db.groups()) {
    CAPTURE(g.entry.id.to_string());
    CHECK(g.group.order() == static_cast<std::size_t>(g.entry.id.order));
    CHECK(db.identify(g.group) == g.entry.id);
    CHECK(g.entry.ed_lo <= g.entry.ed_hi);
    CHECK(g.entry.ed_hi <= g.entry.rd);
    CHECK(g.entry.tag.size() >= 2);
    CHECK(g.entry.tag[0] == 'R');
    if (g.group.is_abelian()) CHECK(g.entry.tag == "R3");
  }
  CHECK(db.at({6, 1}).entry.ed_hi == 1);
  CHECK(db.at({54, 5}).entry.ed_lo == 3);
  CHECK(db.at({54, 5}).entry.ed_hi == 5);
  CHECK(db.at({48, 50}).entry.rd == 6);
}
