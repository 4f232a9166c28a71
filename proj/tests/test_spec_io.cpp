#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "classgraph.hpp"

using namespace classgraph;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(std::string_view text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvariantViolation;
}

}  // namespace

TEST(SpecIo, CorpusRoundTripIsByteIdentical) {
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(CORPUS_DIR)) {
    const auto name = entry.path().filename().string();
    if (entry.path().extension() != ".json" || name.ends_with(".prediction.json")) continue;
    const auto text = slurp(entry.path());
    const auto spec = parse_spec(text);
    EXPECT_EQ(serialize_spec(spec), text) << name;
    EXPECT_EQ(parse_spec(serialize_spec(spec)), spec) << name;
    ++n;
  }
  EXPECT_GE(n, 20U);
}

TEST(SpecIo, EveryNodeKind) {
  GroupSpecFile spec{"all",
                     direct({cyclic(4), abelian({2, 3}), frobenius({7}, 3), frobenius({7, 13}, 3, std::vector<std::uint64_t>{2, 1}),
                             GroupExpr{SemidirectNode{{9}, {6}, {{2}}}}, perm(3, {{1, 2, 0}})})};
  const auto text = serialize_spec(spec);
  EXPECT_EQ(parse_spec(text), spec);
  EXPECT_EQ(serialize_spec(parse_spec(text)), text);
  EXPECT_LT(text.find("\"name\""), text.find("\"construct\""));
  EXPECT_LT(text.find("\"kernel\""), text.find("\"complement\""));
}

TEST(SpecIo, Rejections) {
  EXPECT_EQ(kind_of("{"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of("[]"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"name":"x","construct":{"op":"cyclic","n":6},"extra":1})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"name":"x","construct":{"op":"cyclic","n":6,"m":1}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"name":"x","construct":{"op":"cyclic","n":"6"}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"name":"x","construct":{"op":"cyclic","n":-6}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"name":"x","construct":{"op":"frobenius","kernel":7,"complement":3}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"name":"x","construct":{"op":"wreath"}})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"name":"x"})"), ErrorKind::ParseError);
  EXPECT_EQ(kind_of(R"({"name":3,"construct":{"op":"cyclic","n":6}})"), ErrorKind::ParseError);
}

TEST(SpecIo, DataFiles) {
  for (auto f : {"malformed.json", "unknown_key.json"}) {
    try {
      load_spec(fs::path(TEST_DATA_DIR) / f);
      FAIL() << f;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    }
  }
  EXPECT_THROW(load_spec(fs::path(TEST_DATA_DIR) / "missing.json"), Error);
}
