#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "godex/io.hpp"
#include "godex/random.hpp"

using namespace godex;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& name) { return slurp(std::filesystem::path(GODEX_TEST_DATA) / name); }

ProblemFile random_problem(std::uint64_t seed, const Field& f, const std::string& poset) {
  Rng rng(seed);
  ProblemFile pf;
  pf.field = f;
  pf.poset = std::make_shared<const Poset>(Poset::named(poset));
  pf.sheaf = random_sheaf(rng, pf.poset, f, SheafBounds{-1, 1, 2});
  pf.target = random_sheaf(rng, pf.poset, f, SheafBounds{-1, 1, 2});
  pf.map = random_sheaf_map(rng, *pf.sheaf, *pf.target);
  pf.filtered = random_filtered_complex(rng, f, 0, 2, 2, -1, 1);
  return pf;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("bundled files are canonical") {
  for (const auto& entry : std::filesystem::directory_iterator(GODEX_TEST_DATA)) {
    if (entry.path().extension() != ".json") continue;
    const std::string text = slurp(entry.path());
    CHECK_MESSAGE(serialize_problem(parse_problem(text)) == text, entry.path().filename().string());
  }
}

TEST_CASE("random problems round-trip") {
  for (const Field& f : {Field::prime(5), Field::rationals()}) {
    for (const auto& poset : {"sierpinski", "pseudocircle"}) {
      ProblemFile pf = random_problem(3, f, poset);
      const std::string once = serialize_problem(pf);
      ProblemFile back = parse_problem(once);
      CHECK(serialize_problem(back) == once);
      CHECK(back.sheaf->stalks() == pf.sheaf->stalks());
      CHECK(back.map->components() == pf.map->components());
      CHECK(same_filtration(*back.filtered, *pf.filtered));
    }
  }
}

TEST_CASE("entries are written canonically") {
  std::string text = data("sierpinski-rational.json");
  CHECK(text.find("\"1/2\"") != std::string::npos);
  std::string gf = replace(data("pseudocircle-constant.json"), "\"0\": [\n            [1]", "\"0\": [\n            [-4]");
  CHECK(serialize_problem(parse_problem(gf)) == data("pseudocircle-constant.json"));
}

TEST_CASE("parse errors report line and column") {
  try {
    parse_problem("{\n  \"format\": \"godex/1\",\n  \"field\" \"Q\"\n}\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.column == 13);  // last character read
  }
}

TEST_CASE("semantic errors name the problem") {
  const std::string base = data("pseudocircle-constant.json");
  auto message = [](const std::string& text) {
    try {
      parse_problem(text);
    } catch (const InvalidInput& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  CHECK(message(replace(base, "godex/1", "godex/2")).find("unsupported format") != std::string::npos);
  CHECK(message(replace(base, "\"from\": \"a\"", "\"from\": \"q\"")).find("unknown element 'q'") != std::string::npos);
  CHECK(message(replace(base, "\"0\": [\n            [1]\n", "\"0\": [\n            [1, 1]\n")).find("a->x degree 0") !=
        std::string::npos);
  CHECK(message(replace(base, "\"y\": {", "\"z\": {")).find("unknown element 'z'") != std::string::npos);

  const std::string dd = replace(data("sierpinski-rational.json"), "\"dims\": [1, 1],\n        \"d\": [\n          [\n            [\"0/1\"]\n          ]\n        ]",
                                 "\"dims\": [1, 1, 1],\n        \"d\": [[[1]], [[1]]]");
  CHECK(message(dd).find("stalk o: d∘d != 0 at degree 0") != std::string::npos);
}
