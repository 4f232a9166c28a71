#include <gtest/gtest.h>

#include <fstream>

#include "classgraph.hpp"

using namespace classgraph;
namespace fs = std::filesystem;

TEST(Report, F21Fields) {
  auto rep = analyze(GroupSpecFile{"f21", frobenius({7}, 3)});
  EXPECT_TRUE(rep.invariants_ok());
  EXPECT_TRUE(rep.spectral_dgroup);
  ASSERT_TRUE(rep.dgroup);
  EXPECT_EQ(rep.dgroup->a_order, 7U);
  const auto j = to_json(rep);
  EXPECT_EQ(j["name"], "f21");
  EXPECT_EQ(j["order"], 21);
  EXPECT_EQ(j["spectrum"], Json::parse("[1,3,3,7,7]"));
  EXPECT_EQ(j["class_sizes"], Json::parse("[[1,1],[3,2],[7,2]]"));
  EXPECT_EQ(j["graph"]["vertices"], Json::parse("[3,7]"));
  EXPECT_EQ(j["connected"], false);
  EXPECT_EQ(j["dgroup"]["spectral"], true);
  EXPECT_EQ(j["block_square"]["found"], false);
  EXPECT_EQ(j["theorem_a"]["status"], "NOT_BLOCK_SQUARE");
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys.front(), "name");
  EXPECT_EQ(keys.back(), "warnings");
  EXPECT_EQ(report_text(rep), report_text(analyze(GroupSpecFile{"f21", frobenius({7}, 3)})));
}

TEST(Report, BlockSquareFields) {
  auto rep = analyze(GroupSpecFile{"x", direct({frobenius({7}, 3), frobenius({11}, 5)})});
  const auto j = to_json(rep);
  EXPECT_EQ(j["block_square"]["found"], true);
  EXPECT_EQ(j["block_square"]["admissible"], true);
  EXPECT_EQ(j["theorem_a"]["status"], "VERIFIED");
  EXPECT_EQ(j["theorem_a"]["forward_check"], true);
  EXPECT_EQ(j["graph"]["edges"], Json::parse("[[3,5],[3,11],[5,7],[7,11]]"));
}

TEST(Report, CorpusIsClean) {
  const auto rows = run_corpus(CORPUS_DIR);
  ASSERT_GE(rows.size(), 20U);
  for (const auto& r : rows) EXPECT_TRUE(r.ok()) << r.file << " " << r.message;
  EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.file < b.file; }));
  for (const auto& r : rows) EXPECT_FALSE(r.file.ends_with(".prediction.json"));
  const auto table = corpus_table(rows);
  EXPECT_EQ(table.find("ERROR"), std::string::npos);
  EXPECT_NE(table.find("f21xf55.json"), std::string::npos);
}

TEST(Report, EmptyAndMissingDirectories) {
  EXPECT_TRUE(run_corpus(fs::path(TEST_DATA_DIR) / "empty_corpus").empty());
  try {
    run_corpus(fs::path(TEST_DATA_DIR) / "nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
  }
}

TEST(Report, CapExceededRow) {
  AnalysisOptions opts;
  opts.perm_cap = 100;
  const auto rows = run_corpus(fs::path(TEST_DATA_DIR) / "cap_corpus", opts);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0].file, "s3.json");
  EXPECT_TRUE(rows[0].ok());
  EXPECT_EQ(rows[1].file, "s5.json");
  ASSERT_TRUE(rows[1].error);
  EXPECT_EQ(*rows[1].error, ErrorKind::CapExceeded);
  EXPECT_NE(corpus_table(rows).find("ERROR"), std::string::npos);
}

TEST(Report, Predictions) {
  for (const auto& entry : fs::directory_iterator(CORPUS_DIR)) {
    const auto name = entry.path().filename().string();
    if (!name.ends_with(".prediction.json")) continue;
    const auto spec = load_spec(fs::path(CORPUS_DIR) / (name.substr(0, name.size() - 16) + ".json"));
    std::ifstream in(entry.path());
    const auto pred = Json::parse(in);
    EXPECT_NO_THROW(check_prediction(spec, pred)) << name;
  }
  auto c = construct_block_square_group(1, 1, 1, 1);
  auto pred = prediction_json(c);
  EXPECT_EQ(graph_from_json(pred["graph"]), c.predicted);
  pred["graph"]["edges"].push_back(Json::parse("[3,7]"));
  try {
    check_prediction(GroupSpecFile{"x", c.expr}, pred);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PredictionMismatch);
  }
  EXPECT_THROW(check_prediction(GroupSpecFile{"x", c.expr}, Json::object()), Error);
}
