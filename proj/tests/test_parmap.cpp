#include <doctest.h>

#include "laxfact/errors.hpp"
#include "laxfact/parmap.hpp"

using namespace laxfact;

namespace {
constexpr std::int32_t B = PartialMap::kUndefined;
}

TEST_CASE("hom-set sizes") {
  for (std::uint32_t m = 0; m <= 3; ++m) {
    for (std::uint32_t n = 0; n <= 3; ++n) {
      std::size_t expect = 1;
      for (std::uint32_t i = 0; i < m; ++i) expect *= n + 1;
      CHECK(enumerate_partial_maps(m, n).size() == expect);
    }
  }
}

TEST_CASE("Par universe totals") {
  CHECK(ParCategory::build(2).category().morphism_count() == 23);
  CHECK(ParCategory::build(3).category().morphism_count() == 144);
  CHECK_THROWS_AS(ParCategory::build(5), ResourceError);
}

TEST_CASE("enumeration is lexicographic and ranks match") {
  auto all = enumerate_partial_maps(2, 2);
  CHECK(all.front() == PartialMap(2, 2, {B, B}));
  CHECK(all[1] == PartialMap(2, 2, {B, 0}));
  CHECK(all.back() == PartialMap(2, 2, {1, 1}));
  for (std::size_t k = 0; k < all.size(); ++k) CHECK(all[k].lex_rank() == k);
  CHECK(par_morphism_name(PartialMap(2, 2, {1, 0})) == "p2_2_7");
}

TEST_CASE("composition by preimage and restriction order") {
  PartialMap f(3, 2, {1, B, 0});
  PartialMap g(2, 2, {B, 1});
  CHECK(compose_partial(g, f) == PartialMap(3, 2, {1, B, B}));
  CHECK(restriction_leq(PartialMap(3, 2, {1, B, B}), f));
  CHECK_FALSE(restriction_leq(f, PartialMap(3, 2, {1, B, B})));
  CHECK(restriction_leq(PartialMap::zero(3, 2), f));
  CHECK_THROWS_AS(compose_partial(f, g), ContractViolation);
}

TEST_CASE("ParCategory lookup agrees with the maps") {
  auto par = ParCategory::build(2);
  const auto& cat = par.category();
  for (std::uint32_t i = 0; i < cat.morphism_count(); ++i) {
    const MorId f{i};
    CHECK(par.id_of(par.map(f)) == f);
    CHECK(cat.name(f) == par_morphism_name(par.map(f)));
  }
  CHECK(cat.is_discrete() == false);
  CHECK_FALSE(par.find(PartialMap::identity(3)).has_value());
}

TEST_CASE("left adjoints are the total injections") {
  for (std::uint32_t m = 0; m <= 3; ++m) {
    for (std::uint32_t n = 0; n <= 3; ++n) {
      const auto maps = enumerate_partial_maps(m, n);
      const auto back = enumerate_partial_maps(n, m);
      for (const auto& f : maps) {
        bool found = false;
        for (const auto& g : back) found = found || is_adjoint_pair(f, g);
        const auto partner = adjunction_partner(f);
        CHECK(found == partner.has_value());
        CHECK(found == (f.is_total() && f.is_injective_component()));
        if (partner) CHECK(is_adjoint_pair(f, *partner));
      }
    }
  }
  auto g = adjunction_partner(PartialMap(2, 3, {0, 2}));
  REQUIRE(g);
  CHECK(*g == PartialMap(3, 2, {0, B, 1}));
}

TEST_CASE("reflected adjunction") {
  PartialMap f(2, 3, {0, 2});
  auto [l, r] = reflect_adjunction(f, *adjunction_partner(f));
  CHECK(l == PartialMap(2, 2, {0, 1}));
  CHECK(r == PartialMap(2, 2, {0, 1}));
  CHECK(l.is_total());
  CHECK(r.is_total());
}
