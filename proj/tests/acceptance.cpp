// One line per acceptance criterion. --known-fail N may be repeated; the exit
// code ignores those criteria but their lines still print FAIL.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "laxfact/parallel.hpp"
#include "laxfact/suite.hpp"

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the CLI suite at two worker counts and compares the report bytes.
laxfact::Criterion determinism(const std::string& cli, const std::string& corpus) {
  laxfact::Criterion c{11, "suite reports identical for --jobs 1 and --jobs 8",
                       laxfact::Verdict("suite reports identical for --jobs 1 and --jobs 8")};
  const auto dir = std::filesystem::temp_directory_path() / ("laxfact-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string reports[2];
  const int jobs[2] = {1, 8};
  for (int i = 0; i < 2; ++i) {
    const auto path = dir / ("suite-" + std::to_string(jobs[i]) + ".json");
    const std::string cmd = "\"" + cli + "\" suite --max-size 2 --corpus \"" + corpus + "\" --jobs " +
                            std::to_string(jobs[i]) + " --report \"" + path.string() + "\" > /dev/null";
    const int rc = std::system(cmd.c_str());
    c.verdict.count();
    if (rc == -1 || !std::filesystem::exists(path)) {
      c.verdict.fail("no report from --jobs " + std::to_string(jobs[i]));
      continue;
    }
    reports[i] = slurp(path);
  }
  c.verdict.count();
  if (reports[0].empty() || reports[0] != reports[1]) c.verdict.fail("reports differ");
  c.verdict.detail["bytes"] = reports[0].size();
  std::filesystem::remove_all(dir);
  c.verdict.finish();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance battery"};
  std::vector<int> known;
  std::string cli = LAXFACT_CLI;
  std::string corpus = LAXFACT_CORPUS_DIR;
  unsigned jobs = 1;
  app.add_option("--known-fail", known, "criterion whose failure does not fail the run");
  app.add_option("--cli", cli, "laxfact binary");
  app.add_option("--corpus", corpus, "corpus directory");
  app.add_option("--jobs", jobs, "worker threads");
  CLI11_PARSE(app, argc, argv);
  laxfact::set_jobs(jobs);

  laxfact::SuiteOptions o;
  o.max_size = 2;
  o.corpus = corpus;
  std::vector<laxfact::Criterion> cs = laxfact::run_suite(o);
  cs.push_back(determinism(cli, corpus));

  const std::set<int> tolerated(known.begin(), known.end());
  int rc = 0;
  for (const auto& c : cs) {
    const bool ok = c.verdict.ok();
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << " " << c.title;
    if (!ok && tolerated.count(c.id)) std::cout << " (known failure)";
    std::cout << '\n';
    for (std::size_t i = 0; i < c.verdict.failures.size() && i < 5; ++i) {
      std::cout << "    " << c.verdict.failures[i] << '\n';
    }
    if (!ok && !tolerated.count(c.id)) rc = 1;
  }
  return rc;
}
