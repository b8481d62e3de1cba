#include <doctest.h>

#include <string>

#include "laxfact/catio.hpp"
#include "laxfact/errors.hpp"
#include "laxfact/ordcat.hpp"

using namespace laxfact;

namespace {

// one object, idempotent e with e ≤ id
const char* kIdempotent = R"({
  "objects": ["X"],
  "morphisms": [
    {"name": "id", "dom": "X", "cod": "X"},
    {"name": "e", "dom": "X", "cod": "X"}
  ],
  "identities": {"X": "id"},
  "compose": [
    ["id", "id", "id"],
    ["id", "e", "e"],
    ["e", "id", "e"],
    ["e", "e", "e"]
  ],
  "leq": [["e", "id"]]
})";

}  // namespace

TEST_CASE("idempotent category loads and validates") {
  auto cat = FinOrdCategory::build(parse_category(kIdempotent));
  CHECK(cat.object_count() == 1);
  CHECK(cat.morphism_count() == 2);
  const MorId e = *cat.find("e");
  const MorId id = *cat.find("id");
  CHECK(cat.compose(e, e) == e);
  CHECK(cat.leq(e, id));
  CHECK_FALSE(cat.leq(id, e));
  CHECK(cat.leq(e, e));
  CHECK_FALSE(cat.is_discrete());
  CHECK(validate_category(cat).ok());

  auto rev = cat.reversed_order();
  CHECK(rev.leq(id, e));
}

TEST_CASE("export round-trips") {
  auto cat = FinOrdCategory::build(parse_category(kIdempotent));
  const std::string text = export_category(cat);
  auto again = FinOrdCategory::build(parse_category(text));
  CHECK(export_category(again) == text);
}

TEST_CASE("syntax error reports a line") {
  std::string bad = "{\n  \"objects\": [\"X\"],\n  \"morphisms\": [\n    {\"name\": \"id\" \"dom\": \"X\"}\n  ]\n}\n";
  try {
    parse_category(bad);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("unknown morphism reports the compose line") {
  std::string text = kIdempotent;
  text.replace(text.find("[\"e\", \"e\", \"e\"]"), 15, "[\"e\", \"q\", \"e\"]");
  try {
    parse_category(text);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line() == 12);
  }
}

TEST_CASE("broken table is reported by validation") {
  std::string text = kIdempotent;
  // e∘e = id: associative, but e ≤ id gives id = e∘e ≤ e
  text.replace(text.find("[\"e\", \"e\", \"e\"]"), 15, "[\"e\", \"e\", \"id\"]");
  auto cat = FinOrdCategory::build(parse_category(text));
  auto report = validate_category(cat);
  CHECK_FALSE(report.ok());
  bool monotone = false;
  for (const auto& v : report.violations) {
    CHECK(v.law != "associativity");
    monotone = monotone || v.law == "monotonicity";
  }
  CHECK(monotone);
}

TEST_CASE("missing composite is structural") {
  std::string text = kIdempotent;
  const std::string row = ",\n    [\"e\", \"e\", \"e\"]";
  text.replace(text.find(row), row.size(), "");
  auto cat = FinOrdCategory::build(parse_category(text));
  auto report = validate_category(cat);
  CHECK(report.structural_count() >= 1);
}

TEST_CASE("order cycle is rejected") {
  std::string text = kIdempotent;
  text.replace(text.find("[[\"e\", \"id\"]]"), 13, "[[\"e\", \"id\"], [\"id\", \"e\"]]");
  CHECK_THROWS_AS(FinOrdCategory::build(parse_category(text)), FormatError);
}

TEST_CASE("closure") {
  std::vector<Bits> rows(4, Bits(4));
  rows[0].set(1);
  rows[1].set(2);
  rows[3].set(3);
  auto c = reflexive_transitive_closure(rows);
  CHECK(c[0].test(2));
  CHECK(c[0].test(0));
  CHECK_FALSE(c[2].test(0));
  CHECK(c[3].count() == 1);
}
