#include <doctest.h>

#include "laxfact/errors.hpp"
#include "laxfact/factsys.hpp"

using namespace laxfact;

namespace {

constexpr std::int32_t B = PartialMap::kUndefined;

bool class_is(const ClassReport& c, const SchemeWorkbench& w, bool (*pred)(const PartialMap&)) {
  for (std::size_t i = 0; i < w.maps().size(); ++i) {
    if (c.contains(w.universe().morphisms[i]) != pred(w.maps()[i])) return false;
  }
  return true;
}

bool injective(const PartialMap& f) { return f.is_injective_component(); }
bool total(const PartialMap& f) { return f.is_total(); }
bool everything(const PartialMap&) { return true; }
bool left_adjoint(const PartialMap& f) { return f.is_total() && f.is_injective_component(); }

}  // namespace

TEST_CASE("domain-total factorisation instances") {
  auto s = domain_total_scheme();
  auto fz = s->factor(PartialMap(3, 2, {1, B, 0}));
  CHECK(fz.l == PartialMap(3, 2, {0, B, 1}));
  CHECK(fz.r == PartialMap(2, 2, {1, 0}));
  CHECK(s->factor(PartialMap(2, 2, {1, 1})).l == PartialMap::identity(2));
  auto z = s->factor(PartialMap::zero(2, 3));
  CHECK(z.mid() == 0);
  CHECK(z.r == PartialMap(0, 3, {}));
}

TEST_CASE("rho and lambda for domain-total") {
  auto s = domain_total_scheme();
  CHECK(find_rho(*s, PartialMap(2, 1, {0, B})) == PartialMap::identity(1));
  CHECK_FALSE(find_rho(*s, PartialMap(2, 1, {0, 0})).has_value());
  CHECK_FALSE(find_lambda(*s, PartialMap(2, 1, {0, B})).has_value());
  CHECK(find_lambda(*s, PartialMap(2, 1, {0, 0})) == PartialMap::identity(2));
}

TEST_CASE("transfer factorisation instances") {
  const PartialMap f(3, 2, {0, 0, B});
  auto em = transfer_scheme(TransferBase::EpiMono, 2)->factor(f);
  CHECK(em.l == PartialMap(3, 1, {0, 0, B}));
  CHECK(em.r == PartialMap(1, 2, {0}));
  auto me = transfer_scheme(TransferBase::MonoEpi, 2)->factor(f);
  CHECK(me.mid() == 4);
  CHECK(me.l == PartialMap(3, 4, {0, 1, B}));
  CHECK(me.r == PartialMap(4, 2, {0, 0, 0, 1}));
  CHECK(compose_partial(me.r, me.l) == f);
  CHECK(transfer_scheme(TransferBase::EpiMono, 2)->factor(PartialMap(2, 2, {1, 1})).l.is_total());
}

TEST_CASE("stability pre-checks") {
  CHECK(check_stability(image_factoriser(), 2).outcome == Outcome::Pass);
  CHECK(check_stability(coproduct_factoriser(), 2).outcome == Outcome::Pass);
  BaseFactoriser bad = image_factoriser();
  bad.e_name = "non-empty maps";
  bad.in_e = [](const PartialMap& e) { return e.dom_size() > 0; };
  CHECK(check_stability(bad, 2).outcome == Outcome::Fail);
}

TEST_CASE("non-uniqueness witnesses") {
  auto w = non_uniqueness_witness(PartialMap(1, 1, {0}));
  CHECK(w.product.mid() == 1);
  CHECK(w.coproduct.mid() == 2);
  auto id = non_uniqueness_witness(PartialMap::identity(2));
  CHECK(id.product.mid() == 4);
  CHECK(id.coproduct.mid() == 4);
  CHECK_FALSE(id.product.l == id.coproduct.l);
  CHECK_THROWS_AS(non_uniqueness_witness(PartialMap::zero(1, 1)), ContractViolation);
  CHECK(check_non_uniqueness(2).outcome == Outcome::Pass);
}

TEST_CASE("domain-total on Par≤2") {
  SchemeWorkbench w(domain_total_scheme(), 2, 3);
  CHECK(check_section(w).outcome == Outcome::Pass);
  const Verdict k = check_klaws(w);
  CHECK_MESSAGE(k.outcome == Outcome::Pass, k.to_json().dump());
  const Verdict p = check_predistributive(w);
  CHECK_MESSAGE(p.outcome == Outcome::Pass, p.to_json().dump());
  const auto c = derive_classes(w);
  CHECK(class_is(c.left, w, injective));
  CHECK(class_is(c.right, w, total));
  const Verdict l = check_underlying_lwfs(w, c, true);
  CHECK_MESSAGE(l.outcome == Outcome::Pass, l.to_json().dump());
}

TEST_CASE("trivial schemes") {
  SchemeWorkbench left(trivial_left_scheme(), 2, 3);
  SchemeWorkbench right(trivial_right_scheme(), 2, 3);
  for (const SchemeWorkbench* w : {&left, &right}) {
    CHECK(check_section(*w).outcome == Outcome::Pass);
    CHECK(check_klaws(*w).outcome == Outcome::Pass);
    CHECK(check_predistributive(*w).outcome == Outcome::Pass);
  }
  const auto cl = derive_classes(left);
  CHECK(class_is(cl.left, left, everything));
  CHECK(class_is(cl.right, left, left_adjoint));
  CHECK(check_underlying_lwfs(left, cl).outcome == Outcome::Pass);
  const auto cr = derive_classes(right);
  CHECK(class_is(cr.left, right, left_adjoint));
  CHECK(class_is(cr.right, right, everything));
  CHECK(check_underlying_lwfs(right, cr).outcome == Outcome::Pass);
}

TEST_CASE("transfer epi-mono on Par≤2") {
  SchemeWorkbench w(transfer_scheme(TransferBase::EpiMono, 2), 2, 3);
  CHECK(w.kind() == Kind::Oplax);
  CHECK(check_section(w).outcome == Outcome::Pass);
  const Verdict k = check_klaws(w);
  CHECK_MESSAGE(k.outcome == Outcome::Pass, k.to_json().dump());
  const Verdict p = check_predistributive(w);
  CHECK_MESSAGE(p.outcome == Outcome::Pass, p.to_json().dump());
  const auto c = derive_classes(w);
  const Verdict l = check_underlying_lwfs(w, c);
  CHECK_MESSAGE(l.outcome == Outcome::Pass, l.to_json().dump());
}

TEST_CASE("transfer mono-epi stops at the ambient cap") {
  SchemeWorkbench w(transfer_scheme(TransferBase::MonoEpi, 2), 2, 3);
  CHECK(w.depth() == 1);
  CHECK(check_section(w).outcome == Outcome::Pass);
  CHECK_THROWS_AS(check_predistributive(w), ResourceError);
}

TEST_CASE("corrupted scheme fails the section law at the named map") {
  const PartialMap target(2, 2, {1, 0});
  SchemeWorkbench w(corrupted_scheme(trivial_left_scheme(), target), 2, 1);
  const Verdict v = check_section(w);
  CHECK(v.outcome == Outcome::Fail);
  CHECK(v.failure_count == 1);
  REQUIRE_FALSE(v.failures.empty());
  CHECK(v.failures.front().find(target.to_string()) != std::string::npos);
}
