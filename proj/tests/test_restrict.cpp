#include <doctest.h>

#include "laxfact/errors.hpp"
#include "laxfact/restrict.hpp"

using namespace laxfact;

namespace {

constexpr std::int32_t B = PartialMap::kUndefined;

}  // namespace

TEST_CASE("totalise factorisation") {
  const auto t = totalise_factorisation(PartialMap::identity(1), PartialMap(1, 2, {0}), PartialMap(2, 1, {0, B}));
  CHECK(t.l == PartialMap::identity(1));
  CHECK(t.r == PartialMap::identity(1));
  const PartialMap l(2, 2, {0, 1});
  const PartialMap r(2, 1, {0, 0});
  const auto same = totalise_factorisation(PartialMap(2, 1, {0, 0}), l, r);
  CHECK(same.l == l);
  CHECK(same.r == r);
  const auto through = totalise_factorisation(PartialMap(2, 1, {0, 0}), PartialMap(2, 3, {2, 2}),
                                              PartialMap(3, 1, {B, B, 0}));
  CHECK(through.mid() == 1);
  CHECK(through.l == PartialMap(2, 1, {0, 0}));
  CHECK_THROWS_AS(totalise_factorisation(PartialMap(1, 1, {B}), PartialMap(1, 1, {B}), PartialMap::identity(1)),
                  ContractViolation);
  CHECK_THROWS_AS(totalise_factorisation(PartialMap::identity(1), PartialMap(1, 1, {0}), PartialMap(1, 1, {B})),
                  ContractViolation);
}

TEST_CASE("total category") {
  const TotalCategory t(2, 2);
  CHECK(t.universe().morphisms.size() == 11);
  CHECK(t.category().is_discrete());
  CHECK(validate_category(t.category()).ok());
  CHECK(t.find(PartialMap(2, 1, {0, 0})).has_value());
  CHECK_FALSE(t.find(PartialMap(2, 1, {0, B})).has_value());
}

TEST_CASE("mono-epi restricts to injections and surjections") {
  SchemeWorkbench w(transfer_scheme(TransferBase::MonoEpi, 2), 2, 1);
  const TotalCategory t(w.par().max_size(), 2);
  const RestrictedClasses rc = total_classes(t, w, derive_classes(w));
  CHECK(rc.left_match == "injective totals");
  CHECK(rc.right_match == "surjective totals");
  const Verdict fillers = check_total_fillers(t, w, rc);
  CHECK_MESSAGE(fillers.outcome == Outcome::Pass, fillers.to_json().dump());
  CHECK(check_totalise(w).outcome == Outcome::Pass);
  const Verdict wfs = check_restricted_wfs(t, w, rc);
  CHECK_MESSAGE(wfs.outcome == Outcome::Pass, wfs.to_json().dump());
}

TEST_CASE("epi-mono restricts the other way") {
  SchemeWorkbench w(transfer_scheme(TransferBase::EpiMono, 2), 2, 1);
  bool ok = false;
  const auto j = restrict_report(w, ok);
  CHECK(ok);
  CHECK(j["classes"]["left"]["match"] == "surjective totals");
  CHECK(j["classes"]["right"]["match"] == "injective totals");
}

TEST_CASE("lax schemes") {
  SchemeWorkbench right(trivial_right_scheme(), 2, 1);
  CHECK_FALSE(restriction_applies(right));
  bool ok = true;
  CHECK(restrict_report(right, ok)["verdict"] == "not-applicable");
  SchemeWorkbench left(trivial_left_scheme(), 2, 1);
  REQUIRE(restriction_applies(left));
  const TotalCategory t(left.par().max_size(), 2);
  const RestrictedClasses rc = total_classes(t, left, derive_classes(left));
  CHECK(rc.left_match == "all totals");
  CHECK(rc.right_match == "injective totals");
}
