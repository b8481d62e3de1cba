#include <doctest.h>

#include "laxfact/catio.hpp"
#include "laxfact/errors.hpp"
#include "laxfact/ortho.hpp"
#include "laxfact/parmap.hpp"

using namespace laxfact;

namespace {

constexpr std::int32_t B = PartialMap::kUndefined;

const ParCategory& par2() {
  static const ParCategory p = ParCategory::build(2);
  return p;
}

MorId m(const PartialMap& f) { return par2().id_of(f); }

ClassReport by_map(const Universe& u, std::string name, bool (*pred)(const PartialMap&)) {
  return make_class(u, std::move(name), [pred](MorId f) { return pred(par2().map(f)); });
}

}  // namespace

TEST_CASE("square kinds") {
  const auto& c = par2().category();
  const MorId f = m(PartialMap(2, 2, {0, B}));
  const MorId id2 = m(PartialMap::identity(2));
  CHECK_FALSE(is_square(c, Square{f, id2, id2, id2, Kind::Lax}));
  CHECK(is_square(c, Square{f, id2, id2, id2, Kind::Oplax}));
  CHECK(is_square(c, Square{f, f, id2, id2, Kind::Lax}));
  CHECK(is_square(c, Square{f, f, id2, id2, Kind::Oplax}));
  CHECK(is_square(c, Square{f, f, id2, id2, Kind::Strict}));
  CHECK_THROWS_AS(is_square(c, Square{f, id2, m(PartialMap::identity(1)), id2, Kind::Lax}), ContractViolation);
}

TEST_CASE("zero has no filler against itself") {
  const auto& c = par2().category();
  const MorId z = m(PartialMap::zero(1, 1));
  const MorId id1 = m(PartialMap::identity(1));
  const Square s{z, z, id1, id1, Kind::Lax};
  CHECK(is_square(c, s));
  CHECK_FALSE(find_diagonal(c, s).has_value());
  CHECK(first_unfillable(c, z, z, Kind::Lax).has_value());
}

TEST_CASE("identity side gets u as filler") {
  const auto& c = par2().category();
  for (MorId g : c.hom(par2().object(2), par2().object(1))) {
    const MorId id2 = m(PartialMap::identity(2));
    for (const auto& s : all_squares(c, id2, g, Kind::Lax)) CHECK(is_filler(c, s, s.u));
  }
}

TEST_CASE("a self-orthogonal map has both u∘f* and f*∘v as fillers") {
  const auto& c = par2().category();
  const PartialMap fm(1, 2, {1});
  const MorId f = m(fm);
  const MorId fs = m(*adjunction_partner(fm));
  for (const auto& s : all_squares(c, f, f, Kind::Lax)) {
    const auto ds = all_diagonals(c, s);
    CHECK(std::find(ds.begin(), ds.end(), c.compose(s.u, fs)) != ds.end());
    CHECK(std::find(ds.begin(), ds.end(), c.compose(fs, s.v)) != ds.end());
  }
}

TEST_CASE("bitset search agrees with brute force") {
  const auto& c = par2().category();
  for (Kind k : {Kind::Lax, Kind::Oplax, Kind::Strict}) {
    for (std::uint32_t i = 0; i < c.morphism_count(); ++i) {
      for (std::uint32_t j = 0; j < c.morphism_count(); ++j) {
        bool brute = true;
        for (const auto& s : all_squares(c, MorId{i}, MorId{j}, k)) brute = brute && find_diagonal(c, s).has_value();
        const auto w = first_unfillable(c, MorId{i}, MorId{j}, k);
        CHECK(brute == !w.has_value());
        if (w) {
          CHECK(is_square(c, *w));
          CHECK_FALSE(find_diagonal(c, *w).has_value());
        }
      }
    }
  }
}

TEST_CASE("self-orthogonal classes on Par≤2") {
  const Universe u = whole_universe(par2().category(), "Par≤2");
  Orthogonality orth(par2().category(), Kind::Lax);
  const auto s = self_orthogonal_classes(orth, u);
  CHECK(check_self_orthogonal_classes(s).outcome == Outcome::Pass);
  const auto la = by_map(u, "total injective", [](const PartialMap& f) { return f.is_total() && f.is_injective_component(); });
  CHECK(same_members(s.self, la));
}

TEST_CASE("complements of the zero class") {
  const Universe u = whole_universe(par2().category(), "Par≤2");
  const auto zero = by_map(u, "O", [](const PartialMap& f) { return f.is_zero(); });
  const auto tot = by_map(u, "Tot", [](const PartialMap& f) { return f.is_total(); });
  const auto dense = by_map(u, "surjective φ", [](const PartialMap& f) { return f.is_surjective_component(); });
  Orthogonality lax(par2().category(), Kind::Lax);
  Orthogonality oplax(par2().category(), Kind::Oplax);
  CHECK(same_members(right_complement(lax, zero, u), tot));
  CHECK(same_members(left_complement(oplax, zero, u), dense));
  const auto empty = empty_class(u, "∅");
  CHECK(left_complement(lax, empty, u).size() == u.morphisms.size());
  const auto r = right_complement(lax, zero, u);
  for (MorId f : u.morphisms) {
    if (!r.contains(f)) {
      const Square& w = r.witnesses.at(f.index);
      CHECK(is_square(par2().category(), w));
      CHECK_FALSE(find_diagonal(par2().category(), w).has_value());
    }
  }
}

TEST_CASE("complements are antitone and closed under composition") {
  const auto& c = par2().category();
  const Universe u = whole_universe(c, "Par≤2");
  Orthogonality lax(c, Kind::Lax);
  const auto zero = by_map(u, "O", [](const PartialMap& f) { return f.is_zero(); });
  const auto bigger = by_map(u, "O+inj", [](const PartialMap& f) { return f.is_zero() || f.is_injective_component(); });
  const auto r_small = right_complement(lax, zero, u);
  const auto r_big = right_complement(lax, bigger, u);
  CHECK(is_subclass(r_big, r_small));
  for (const auto* cls : {&r_small, &r_big}) {
    for (MorId f : cls->list()) {
      for (MorId g : cls->list()) {
        if (auto gf = c.try_compose(g, f)) CHECK(cls->contains(*gf));
      }
    }
  }
}

TEST_CASE("prefactorisations and LWFS") {
  const auto& c = par2().category();
  const Universe u = whole_universe(c, "Par≤2");
  Orthogonality lax(c, Kind::Lax);
  const auto all = all_class(u);
  const auto la = by_map(u, "LA", [](const PartialMap& f) { return f.is_total() && f.is_injective_component(); });
  const auto inj = by_map(u, "injective φ", [](const PartialMap& f) { return f.is_injective_component(); });
  const auto tot = by_map(u, "Tot", [](const PartialMap& f) { return f.is_total(); });
  CHECK(check_prefactorisation(lax, all, la, u).outcome == Outcome::Pass);
  CHECK(check_lwfs(lax, all, la, u).outcome == Outcome::Pass);
  CHECK(check_lwfs(lax, inj, tot, u).outcome == Outcome::Pass);
  CHECK(check_lwfs(lax, tot, tot, u).outcome == Outcome::Fail);

  const auto zero = by_map(u, "O", [](const PartialMap& f) { return f.is_zero(); });
  auto [l, r] = build_prefactorisation(lax, zero, Side::Left, u);
  CHECK(is_subclass(zero, l));
  CHECK(check_prefactorisation(lax, l, r, u).outcome == Outcome::Pass);
}

TEST_CASE("kind duality and discrete collapse") {
  const auto& c = par2().category();
  const FinOrdCategory rev = c.reversed_order();
  for (std::uint32_t i = 0; i < c.morphism_count(); ++i) {
    for (std::uint32_t j = 0; j < c.morphism_count(); ++j) {
      CHECK(first_unfillable(c, MorId{i}, MorId{j}, Kind::Oplax).has_value() ==
            first_unfillable(rev, MorId{i}, MorId{j}, Kind::Lax).has_value());
    }
  }
  auto data = c.to_data();
  data.leq.clear();
  const FinOrdCategory disc = FinOrdCategory::build(data);
  REQUIRE(disc.is_discrete());
  for (std::uint32_t i = 0; i < disc.morphism_count(); ++i) {
    for (std::uint32_t j = 0; j < disc.morphism_count(); ++j) {
      const bool s = first_unfillable(disc, MorId{i}, MorId{j}, Kind::Strict).has_value();
      CHECK(first_unfillable(disc, MorId{i}, MorId{j}, Kind::Lax).has_value() == s);
      CHECK(first_unfillable(disc, MorId{i}, MorId{j}, Kind::Oplax).has_value() == s);
    }
  }
}
