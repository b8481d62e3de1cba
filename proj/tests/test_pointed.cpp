#include <doctest.h>

#include "laxfact/catio.hpp"
#include "laxfact/errors.hpp"
#include "laxfact/pointed.hpp"

using namespace laxfact;

namespace {

constexpr std::int32_t B = PartialMap::kUndefined;

// 0 ≤ e ≤ 1 on one object, e idempotent, 0 absorbent
const char* kChain = R"({
  "objects": ["X"],
  "morphisms": [
    {"name": "1", "dom": "X", "cod": "X"},
    {"name": "e", "dom": "X", "cod": "X"},
    {"name": "0", "dom": "X", "cod": "X"}
  ],
  "identities": {"X": "1"},
  "compose": [
    ["1", "1", "1"], ["1", "e", "e"], ["1", "0", "0"],
    ["e", "1", "e"], ["e", "e", "e"], ["e", "0", "0"],
    ["0", "1", "0"], ["0", "e", "0"], ["0", "0", "0"]
  ],
  "leq": [["0", "e"], ["e", "1"]]
})";

const char* kNoZero = R"({
  "objects": ["X"],
  "morphisms": [
    {"name": "1", "dom": "X", "cod": "X"},
    {"name": "s", "dom": "X", "cod": "X"}
  ],
  "identities": {"X": "1"},
  "compose": [["1", "1", "1"], ["1", "s", "s"], ["s", "1", "s"], ["s", "s", "1"]],
  "leq": []
})";

}  // namespace

TEST_CASE("zero maps of Par≤2") {
  auto par = shared_par(2);
  const Universe u = whole_universe(par->category(), "Par≤2");
  const ClassReport o = zero_class(par->category(), u);
  CHECK(o.size() == 9);
  for (MorId f : o.list()) CHECK(par->map(f).is_zero());
  CHECK(check_zero_class(par->category(), u, o).outcome == Outcome::Pass);
}

TEST_CASE("split epis") {
  auto par = shared_par(2);
  const Universe u = whole_universe(par->category(), "Par≤2");
  const ClassReport li = split_epi_class(par->category(), u);
  CHECK(li.contains(par->id_of(PartialMap(2, 1, {0, 0}))));
  CHECK(li.contains(par->id_of(PartialMap::identity(2))));
  CHECK_FALSE(li.contains(par->id_of(PartialMap::zero(1, 1))));
  CHECK(li.contains(par->id_of(PartialMap(2, 1, {B, 0}))));
}

TEST_CASE("pointed classes on Par≤2") {
  auto par = shared_par(2);
  const Universe u = whole_universe(par->category(), "Par≤2");
  const PointedClasses pc = compute_pointed_classes(par->category(), u, par.get());
  for (const auto& c : pc.classes) CHECK_MESSAGE(c.verdict.outcome == Outcome::Pass, c.to_json().dump());
  CHECK(pc.checks.outcome == Outcome::Pass);
  CHECK(pc.get("DD").complement.size() == 11);
  CHECK(pc.get("U").complement.size() == 8);
  CHECK(pc.ok());
}

TEST_CASE("conjectures on Par≤2") {
  auto par = shared_par(2);
  const auto& c = par->category();
  const Universe u = whole_universe(c, "Par≤2");
  const auto c1 = run_conjecture(c, u, Conjecture::URightComplement);
  CHECK(c1.verdict == "degenerate-match");
  const auto c2 = run_conjecture(c, u, Conjecture::VLeftComplement);
  CHECK(c2.verdict == "counterexample");
  CHECK(c2.revalidated);
  const auto& cx = c2.report["complement"]["counterexamples"];
  REQUIRE(!cx.empty());
  CHECK(cx[0]["morphism"] == par_morphism_name(PartialMap(2, 1, {0, 0})));
  const auto c3 = run_conjecture(c, u, Conjecture::LiLeftComplement);
  CHECK(c3.verdict == "match");
  CHECK(c3.revalidated);
}

TEST_CASE("file categories") {
  const FinOrdCategory chain = FinOrdCategory::build(parse_category(kChain));
  const Universe u = whole_universe(chain, "chain");
  const PointedClasses pc = compute_pointed_classes(chain, u);
  CHECK(pc.zero.names() == std::vector<std::string>{"0"});
  CHECK(pc.ok());
  for (Conjecture id : all_conjectures()) {
    const auto r = run_conjecture(chain, u, id);
    CHECK(r.revalidated);
    CHECK(r.report.contains("verdict"));
  }
  const FinOrdCategory flip = FinOrdCategory::build(parse_category(kNoZero));
  const Universe fu = whole_universe(flip, "flip");
  CHECK_THROWS_WITH_AS(zero_class(flip, fu), doctest::Contains("not pointed-capable"), ContractViolation);
}

TEST_CASE("conjecture names") {
  for (Conjecture id : all_conjectures()) CHECK(parse_conjecture(conjecture_name(id)) == id);
  CHECK_FALSE(parse_conjecture("nope").has_value());
}
