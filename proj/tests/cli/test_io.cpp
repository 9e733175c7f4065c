#include <gtest/gtest.h>

#include <algorithm>
#include <limits>

#include "io.hpp"

using namespace dyadic;
using io::Json;

namespace {

bool same_values(std::span<const double> a, std::span<const double> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

TEST(Io, FieldRoundTripIsValueIdentical) {
  for (const char* spec : {"uniform", "lognormal", "sparse"}) {
    const auto tree = DyadicTree::make({2, 3});
    const DyadicField a = random_field(5, tree, DataSpec::parse(spec));
    const DyadicField back = io::field_from_json(Json::parse(io::dump(io::to_json(a))));
    EXPECT_TRUE(same_values(a.values(), back.values())) << spec;
    EXPECT_EQ(io::dump(io::to_json(back)), io::dump(io::to_json(a)));
  }
}

TEST(Io, GridRoundTripIsValueIdentical) {
  const auto tree = DyadicTree::make({1, 4});
  const GridFunction g = random_grid(9, tree, 3, DataSpec::parse("lognormal"));
  const Json j = io::to_json(g);
  EXPECT_TRUE(io::is_grid(j));
  const GridFunction back = io::grid_from_json(Json::parse(io::dump(j)));
  EXPECT_EQ(back.subdivision(), 3);
  EXPECT_TRUE(same_values(g.values(), back.values()));
}

TEST(Io, MissingCubesAreZero) {
  const Json j = Json::parse(R"({"n":1,"depth":2,"values":[{"level":1,"index":[1],"v":4}]})");
  const DyadicField a = io::field_from_json(j);
  ASSERT_EQ(a.size(), 7u);
  EXPECT_EQ(a[2], 4.0);
  EXPECT_EQ(std::count(a.values().begin(), a.values().end(), 0.0), 6);
}

TEST(Io, RejectsBadInput) {
  EXPECT_THROW(io::field_from_json(Json::parse(R"({"n":1,"values":[]})")), io::FormatError);
  EXPECT_THROW(io::field_from_json(Json::parse(R"({"n":1,"depth":1,"values":[{"level":2,"index":[0],"v":1}]})")),
               io::FormatError);
  EXPECT_THROW(io::field_from_json(Json::parse(R"({"n":1,"depth":1,"values":[{"level":0,"index":[0],"v":-1}]})")),
               io::FormatError);
  EXPECT_THROW(io::grid_from_json(Json::parse(R"({"n":1,"depth":0,"m":2,"regions":[{"level":0,"index":[0],"cells":[1]}]})")),
               io::FormatError);
  EXPECT_THROW(io::read_json_file("/nonexistent/file.json"), io::FormatError);
}

TEST(Io, DumpIsCompactOrderedAndExact) {
  Json j;
  j["z"] = 1;
  j["a"] = 0.1;
  j["b"] = 2.0;
  j["c"] = std::numeric_limits<double>::infinity();
  j["d"] = "x";
  EXPECT_EQ(io::dump(j), R"({"z":1,"a":0.10000000000000001,"b":2.0,"c":"inf","d":"x"})");
  EXPECT_EQ(io::format_double(-0.5), "-0.5");
  EXPECT_EQ(io::format_double(1e300), "1.0000000000000001e+300");
}

TEST(Io, CsvTable) {
  io::CsvTable t({"a", "b"});
  t.add({"1", "2"});
  t.add({"3", "4"});
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.str(), "a,b\n1,2\n3,4\n");
  EXPECT_THROW(t.add({"5"}), std::logic_error);
}
