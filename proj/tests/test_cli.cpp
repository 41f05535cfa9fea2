#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fdist/cli.hpp"

using namespace fdist;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, NormOfPublishedWitness) {
  const auto r = run({"norm", "--group", "Z6", "--fourier-coeffs", "[0,1,1,0,1,-1]", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["a_norm"].get<double>(), 4.0, 1e-8);
  const auto s = run({"norm", "--group", "S3", "--fourier-coeffs", "[0,1,1,0,1,-1]", "--format", "json"});
  EXPECT_NEAR(json::parse(s.out)["a_norm"].get<double>(), 2.0 * std::sqrt(2.0), 1e-8);
  const auto d = run({"norm", "--group", "D4", "--values", "[1,0,0,0,0,0,0,0]", "--format", "json"});
  EXPECT_NEAR(json::parse(d.out)["a_norm"].get<double>(), 1.0, 1e-12);
  const auto text = run({"norm", "--group", "Z6", "--values", "[[0,1],0,0,0,0,0]"});
  EXPECT_EQ(text.code, kExitOk);
  EXPECT_NE(text.out.find("1.0"), std::string::npos);
}

TEST(Cli, Irreps) {
  const auto r = run({"irreps", "--group", "S3", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  auto dims = j["dims"].get<std::vector<int>>();
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(j["order"].get<int>(), 6);
  EXPECT_EQ(j["matrices"].size(), 3u);
  EXPECT_EQ(j["matrices"][0].size(), 6u);

  const auto path = std::filesystem::temp_directory_path() / "fdist_cli_group.json";
  std::ofstream(path) << R"({"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]], "label": "C3"})";
  const auto f = run({"irreps", "--group-file", path.string(), "--format", "json"});
  EXPECT_EQ(f.code, kExitOk) << f.err;
  EXPECT_EQ(json::parse(f.out)["group"], "C3");
  std::filesystem::remove(path);
}

TEST(Cli, HomNorm) {
  const auto r = run({"homnorm", "--source", "Z6", "--target", "S3", "--bijection", "0,1,2,3,4,5", "--levels", "1,2",
                      "--effort", "low", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["norm_T"].get<double>(), std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(j["norm_Tinv"].get<double>(), std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(j["distortion"].get<double>(), 2.0, 2e-4);
}

TEST(Cli, JsonIsByteIdenticalPerSeed) {
  const std::vector<std::string> args{"scan", "--source", "Z4", "--target", "Z2xZ2", "--level", "2",
                                      "--effort", "low", "--seed", "3", "--format", "json"};
  const auto a = run(args);
  auto b_args = args;
  b_args.insert(b_args.end(), {"--jobs", "3"});
  const auto b = run(b_args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["records"].size(), 6u);
}

TEST(Cli, CsvExport) {
  const auto r = run({"scan", "--source", "Z4", "--target", "Z2xZ2", "--level", "2", "--effort", "low", "--format",
                      "csv"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "bijection,norm_T,norm_Tinv,level2_T,level2_Tinv,distortion");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) rows += !line.empty();
  EXPECT_EQ(rows, 6);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, kExitUsage);
  EXPECT_EQ(run({"norm", "--group", "Z6", "--values", "[1,2]"}).code, kExitUsage);
  EXPECT_EQ(run({"norm", "--group", "X9", "--values", "[1]"}).code, kExitUsage);
  EXPECT_EQ(run({"norm", "--group", "Z6", "--values", "not json"}).code, kExitUsage);
  EXPECT_EQ(run({"homnorm", "--source", "Z6", "--target", "S3", "--bijection", "0,1,1,3,4,5"}).code, kExitUsage);
  EXPECT_EQ(run({"irreps", "--group", "Z30"}).code, kExitSizeLimit);
  EXPECT_EQ(run({"verify-lemmas", "--lemma", "invmult", "--dim", "9"}).code, kExitSizeLimit);
  EXPECT_EQ(run({"epsilon", "--pairs", "Z6:Z2xZ3", "--effort", "low"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST(Cli, VerifyLemmas) {
  const auto r = run({"verify-lemmas", "--lemma", "norm_gap", "--groups", "Z6,S3", "--trials", "100", "--format",
                      "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_FALSE(r.out.empty());
}

TEST(Cli, ReproducePaper) {
  PaperOptions opts;
  opts.effort = Effort::standard();
  const auto rep = reproduce_paper(opts);
  EXPECT_TRUE(rep.all_pass());
  for (const auto& row : rep.rows) EXPECT_TRUE(row.pass) << row.section << ": " << row.claim;
}

// A corrupted irrep table must surface as failures in the Fourier rows only.
TEST(Cli, CorruptedTableFailsFourierRows) {
  PaperOptions opts;
  opts.effort = Effort::low();
  opts.fourier_table_hook = [](const IrrepTable& t) {
    auto irreps = t.irreps();
    for (auto& ir : irreps)
      if (ir.dim == 2)
        for (auto& m : ir.matrices) m(0, 1) += 0.25;
    if (t.group().is_abelian())
      for (auto& m : irreps.back().matrices) m *= 1.5;
    return IrrepTable(t.group(), irreps);
  };
  const auto rep = reproduce_paper(opts);
  EXPECT_FALSE(rep.all_pass());
  int failed = 0;
  for (const auto& row : rep.rows) {
    if (row.pass) continue;
    ++failed;
    EXPECT_EQ(row.section, "fourier") << row.claim;
  }
  EXPECT_GT(failed, 0);
}
