#include <doctest.h>

#include <fstream>

#include "laxfact/errors.hpp"
#include "laxfact/laws.hpp"

using namespace laxfact;

namespace {

constexpr std::int32_t B = PartialMap::kUndefined;

bool mentions(const Verdict& v, const std::string& law, const std::string& at) {
  for (const auto& m : v.failures) {
    if (m.find(law) != std::string::npos && m.find(at) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("epi-mono structure on Par≤2") {
  SchemeWorkbench w(transfer_scheme(TransferBase::EpiMono, 2), 2, 3);
  LaxStructure s(w.scheme_ptr());
  const Verdict th = build_monad_data(s, w);
  CHECK(th.outcome == Outcome::Pass);
  CHECK(th.detail["unique"] == 23);
  CHECK(build_comonad_data(s, w).outcome == Outcome::Pass);
  for (const Verdict& v : {check_lax_monad_laws(s, w), check_lax_comonad_laws(s, w), check_distributivity_law(s, w),
                           check_lawfs_implies_lfwfs(s, w), check_algebra_structures(w)}) {
    CHECK_MESSAGE(v.outcome == Outcome::Pass, v.to_json().dump());
  }
  CHECK(check_adjoint_composite(w, derive_classes(w)).outcome == Outcome::Pass);
}

TEST_CASE("domain-total structure") {
  SchemeWorkbench w(domain_total_scheme(), 2, 3);
  LaxStructure s(w.scheme_ptr());
  CHECK(build_monad_data(s, w).outcome == Outcome::Pass);
  CHECK(check_lax_monad_laws(s, w).outcome == Outcome::Pass);
  CHECK(check_lax_comonad_laws(s, w).outcome == Outcome::Pass);
}

TEST_CASE("trivial-left has identity Θ") {
  SchemeWorkbench w(trivial_left_scheme(), 2, 3);
  LaxStructure s(w.scheme_ptr());
  for (const auto& f : w.maps()) {
    CHECK(s.theta(f) == PartialMap::identity(f.cod_size()));
  }
  CHECK(check_lax_monad_laws(s, w).outcome == Outcome::Pass);
  CHECK(check_lawfs_implies_lfwfs(s, w).outcome == Outcome::Pass);
}

TEST_CASE("swapped Θ breaks associativity") {
  SchemeWorkbench w(transfer_scheme(TransferBase::EpiMono, 2), 2, 3);
  LaxStructure s(w.scheme_ptr());
  const PartialMap f = PartialMap::identity(2);
  s.override_theta(f, PartialMap(2, 2, {1, 0}));
  CHECK(build_monad_data(s, w).outcome == Outcome::Fail);
  const Verdict v = check_lax_monad_laws(s, w);
  CHECK(v.outcome == Outcome::Fail);
  CHECK_MESSAGE(mentions(v, "associativity", f.to_string()), v.to_json().dump());
}

TEST_CASE("structure file overrides") {
  const auto path = std::filesystem::temp_directory_path() / "laxfact_structure.json";
  {
    std::ofstream out(path);
    out << R"({"omega":[{"f":{"dom":1,"cod":1,"map":[0]},"value":{"dom":1,"cod":1,"map":[null]}}]})";
  }
  SchemeWorkbench w(transfer_scheme(TransferBase::EpiMono, 2), 2, 3);
  LaxStructure s(w.scheme_ptr());
  load_structure(s, path);
  CHECK(s.override_count() == 1);
  CHECK(s.omega(PartialMap::identity(1)) == PartialMap(1, 1, {B}));
  CHECK(build_comonad_data(s, w).outcome == Outcome::Fail);
  {
    std::ofstream out(path);
    out << R"({"theta":[{"f":{"dom":1,"cod":1,"map":[3]},"value":{"dom":1,"cod":1,"map":[0]}}]})";
  }
  CHECK_THROWS_AS(load_structure(s, path), FormatError);
  std::filesystem::remove(path);
}

TEST_CASE("map json round trip") {
  const PartialMap f(3, 2, {1, B, 0});
  CHECK(map_from_json(map_json(f)) == f);
  CHECK_THROWS_AS(map_from_json(nlohmann::json::parse(R"({"dom":2,"cod":1,"map":[0]})")), FormatError);
}

TEST_CASE("mono-epi needs a deeper ambient") {
  SchemeWorkbench w(transfer_scheme(TransferBase::MonoEpi, 2), 2, 3);
  LaxStructure s(w.scheme_ptr());
  CHECK_THROWS_AS(build_monad_data(s, w), ResourceError);
}
