#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "laxfact/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "laxfact");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = laxfact::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const fs::path kCorpus = LAXFACT_CORPUS_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / "laxfact-test-cli";
  fs::create_directories(d);
  return d / name;
}

}  // namespace

TEST_CASE("validate exit codes over the corpus") {
  int files = 0;
  for (const auto& e : fs::directory_iterator(kCorpus)) {
    if (e.path().extension() != ".json") continue;
    ++files;
    const Run r = run({"validate", e.path().string()});
    const int want = e.path().filename() == "broken.json" ? 1 : 0;
    CHECK_MESSAGE(r.code == want, e.path().filename().string() << ": " << r.out << r.err);
  }
  CHECK(files >= 6);
  const Run broken = run({"validate", (kCorpus / "broken.json").string()});
  CHECK(broken.out.find("associativity") != std::string::npos);
}

TEST_CASE("usage, format and resource errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"validate"}).code == 2);
  CHECK(run({"par", "--max-size", "2", "--bogus"}).code == 2);
  CHECK(run({"validate", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"ortho", "--cat", "par:2", "--left", "nope", "--right", "p1_1_1"}).code == 2);
  CHECK(run({"ortho", "--cat", "par:2", "--left", "p1_1_1", "--right", "p1_1_1", "--kind", "sideways"}).code == 2);
  CHECK(run({"ortho", "--cat", (kCorpus / "broken.json").string(), "--left", "a", "--right", "a"}).code == 2);
  CHECK(run({"monad", "check", "--scheme", "transfer-mono-epi", "--max-size", "2"}).code == 2);
  CHECK(run({"par", "--max-size", "9"}).code == 2);

  const fs::path bad = scratch("bad.json");
  std::ofstream(bad) << "{\"objects\": [\"a\"],\n \"morphisms\": [oops]}\n";
  const Run r = run({"validate", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("line") != std::string::npos);
}

TEST_CASE("help exits 0") {
  const Run r = run({"complement", "--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("--side") != std::string::npos);
  CHECK(r.out.find("--jobs") != std::string::npos);
}

TEST_CASE("par export matches the bundled files") {
  for (int n : {2, 3}) {
    const fs::path out = scratch("par" + std::to_string(n) + ".json");
    CHECK(run({"par", "--max-size", std::to_string(n), "--out", out.string()}).code == 0);
    CHECK(slurp(out) == slurp(kCorpus / ("par" + std::to_string(n) + ".json")));
  }
}

TEST_CASE("ortho and complement") {
  CHECK(run({"ortho", "--cat", "par:2", "--left", "p1_2_1", "--right", "p2_2_0"}).code == 0);
  const Run no = run({"ortho", "--cat", "par:2", "--left", "p1_1_0", "--right", "p1_1_0", "--json"});
  CHECK(no.code == 1);
  CHECK(no.out.find("\"witness\"") != std::string::npos);

  const fs::path rep = scratch("total.json");
  CHECK(run({"complement", "--cat", "par:2", "--class", "zero", "--side", "right", "--report", rep.string()}).code == 0);
  const auto j = nlohmann::json::parse(slurp(rep));
  const auto& members = j["complement"]["members"];
  CHECK(j["complement"]["size"] == 11);
  CHECK(std::find(members.begin(), members.end(), "p2_2_8") != members.end());
  CHECK(std::find(members.begin(), members.end(), "p2_2_0") == members.end());

  const fs::path cls = scratch("class.json");
  std::ofstream(cls) << "{\"name\": \"H\", \"members\": [\"p1_1_0\"]}\n";
  CHECK(run({"complement", "--cat", "par:2", "--class", cls.string(), "--side", "left"}).code == 0);
  CHECK(run({"complement", "--cat", (kCorpus / "chain_monoid.json").string(), "--class", "total"}).code == 2);
}

TEST_CASE("verdict subcommands") {
  CHECK(run({"scheme", "check", "--scheme", "domain-total", "--max-size", "2"}).code == 0);
  CHECK(run({"monad", "check", "--scheme", "transfer-epi-mono", "--max-size", "2"}).code == 0);
  CHECK(run({"pointed", "report", "--max-size", "2"}).code == 0);
  CHECK(run({"pointed", "report", "--cat", (kCorpus / "par_1_2.json").string()}).code == 0);
  CHECK(run({"restrict", "--scheme", "transfer-mono-epi", "--max-size", "2"}).code == 0);
  CHECK(run({"restrict", "--scheme", "domain-total", "--max-size", "2"}).code == 1);
  const Run na = run({"restrict", "--scheme", "trivial-right", "--max-size", "2"});
  CHECK(na.code == 0);
  CHECK(na.out.find("not-applicable") != std::string::npos);
}

TEST_CASE("conjecture writes its verdict file") {
  const fs::path rep = scratch("li.json");
  fs::remove(rep);
  const Run r = run({"conjecture", "--id", "li-left-complement", "--cat", "par:2", "--report", rep.string()});
  CHECK(r.code == 0);
  CHECK(slurp(rep).find("\"verdict\": \"match\"") != std::string::npos);
  CHECK(run({"conjecture", "--id", "no-such-thing", "--cat", "par:2"}).code == 2);
}

TEST_CASE("reports do not depend on --jobs") {
  const fs::path a = scratch("pointed-1.json");
  const fs::path b = scratch("pointed-8.json");
  CHECK(run({"pointed", "report", "--max-size", "2", "--jobs", "1", "--report", a.string()}).code == 0);
  CHECK(run({"pointed", "report", "--max-size", "2", "--jobs", "8", "--report", b.string()}).code == 0);
  CHECK(slurp(a) == slurp(b));
}
