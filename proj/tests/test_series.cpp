#include <cmath>
#include <numeric>
#include <sstream>

#include "gtest/gtest.h"
#include "cyclesvd/error.hpp"
#include "cyclesvd/frame.hpp"
#include "cyclesvd/series.hpp"
#include "test_util.hpp"

namespace {
using namespace cyclesvd;

CsvLoadResult parse(const std::string& text, CsvOptions options = {}) {
  std::istringstream in(text);
  return read_csv(in, options);
}

std::vector<double> values(const Series& s) { return {s.values().begin(), s.values().end()}; }

std::string message_of(const std::string& text, CsvOptions options = {}) {
  try {
    parse(text, options);
  } catch (const DataError& e) {
    return e.what();
  }
  return "";
}

TEST(SeriesTest, Validation) {
  EXPECT_THROW(Series({1.0}), DataError);
  EXPECT_THROW(Series({1.0, NAN}), DataError);
  EXPECT_THROW(Series({1.0, 2.0}, "x", std::vector<double>{0.0}), DataError);
  EXPECT_THROW(Series({1.0, 2.0}, "x", std::vector<double>{1.0, 1.0}), DataError);
  EXPECT_NO_THROW(Series({1.0, 2.0}, "x", std::vector<double>{1.0, 2.0}));
}

TEST(CsvTest, SingleColumn) {
  const auto r = parse("1\n2\n3\n");
  EXPECT_FALSE(r.had_header);
  EXPECT_EQ(values(r.series), (std::vector<double>{1, 2, 3}));
}

TEST(CsvTest, HeaderAndNamedColumns) {
  CsvOptions o;
  o.value_column = std::string("load");
  o.time_column = std::string("time");
  const auto r = parse("time,load\n2024-01-01T00:00,1.5\n2024-01-01T01:00,2.5\n", o);
  EXPECT_TRUE(r.had_header);
  EXPECT_EQ(values(r.series), (std::vector<double>{1.5, 2.5}));
  ASSERT_TRUE(r.series.timestamps());
  EXPECT_DOUBLE_EQ((*r.series.timestamps())[1] - (*r.series.timestamps())[0], 3600.0);
  EXPECT_EQ(r.series.name(), "load");
}

TEST(CsvTest, IndexedColumnWithQuotes) {
  CsvOptions o;
  o.value_column = std::size_t{1};
  const auto r = parse("\"a,b\",4\n\"c\",5\r\n", o);
  EXPECT_EQ(values(r.series), (std::vector<double>{4, 5}));
}

TEST(CsvTest, ErrorsCarryLineNumbers) {
  EXPECT_NE(message_of("1\n2\nx\n4\n").find("line 3"), std::string::npos);
  EXPECT_NE(message_of("1\nNaN\n3\n").find("line 2"), std::string::npos);
  EXPECT_THROW(parse(""), DataError);
  EXPECT_THROW(parse("value\nNA\n\n"), DataError);
  CsvOptions o;
  o.value_column = std::string("missing");
  EXPECT_THROW(parse("a,b\n1,2\n", o), DataError);
}

TEST(CsvTest, InterpolateFillsInteriorGap) {
  std::string text;
  for (int i = 0; i < 40; ++i) text += (i == 10 ? std::string("NaN") : std::to_string(i)) + "\n";
  CsvOptions o;
  o.missing = MissingPolicy::kInterpolate;
  const auto r = parse(text, o);
  EXPECT_EQ(r.interpolated, 1u);
  EXPECT_DOUBLE_EQ(r.series.values()[10], 10.0);  // mean of neighbours 9 and 11
}

TEST(CsvTest, InterpolateCapAndEdges) {
  CsvOptions o;
  o.missing = MissingPolicy::kInterpolate;
  EXPECT_THROW(parse("1\nNaN\n3\n", o), DataError);  // 1 of 3 rows > 5%
  std::string edge = "NaN\n";
  for (int i = 0; i < 40; ++i) edge += std::to_string(i) + "\n";
  EXPECT_THROW(parse(edge, o), DataError);
}

TEST(CsvTest, DropEdges) {
  CsvOptions o;
  o.missing = MissingPolicy::kDropEdges;
  const auto r = parse("NA\n\n1\n2\n3\nnan\n", o);
  EXPECT_EQ(values(r.series), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(r.dropped_leading, 2u);
  EXPECT_EQ(r.dropped_trailing, 1u);
  EXPECT_THROW(parse("1\nNA\n3\n", o), DataError);
}

TEST(CsvTest, PolicyParsing) {
  EXPECT_EQ(parse_missing_policy("drop-edges"), MissingPolicy::kDropEdges);
  EXPECT_EQ(to_string(MissingPolicy::kInterpolate), "interpolate");
  EXPECT_THROW(parse_missing_policy("guess"), InvalidArgument);
  EXPECT_EQ(std::get<std::size_t>(parse_column_selector("2")), 2u);
  EXPECT_EQ(std::get<std::string>(parse_column_selector("load")), "load");
}

TEST(CsvTest, HourlyFileAtFullScale) {
  std::string text = "timestamp,value\n";
  for (int h = 0; h < 4368; ++h) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d,%g\n", h * 3600, std::sin(h * 0.26));
    text += buf;
  }
  CsvOptions o;
  o.value_column = std::string("value");
  o.time_column = std::size_t{0};
  EXPECT_EQ(parse(text, o).series.size(), 4368u);
}

TEST(ParseInstantTest, Formats) {
  EXPECT_EQ(parse_instant("12.5"), 12.5);
  EXPECT_EQ(parse_instant("1970-01-02"), 86400.0);
  EXPECT_EQ(parse_instant("1970-01-01 01:00:30Z"), 3630.0);
  EXPECT_FALSE(parse_instant("yesterday"));
}

TEST(FrameTest, ReshapeColumnsAreCycles) {
  const std::vector<double> x{1, 2, 3, 4, 5, 6};
  const CycleFrame f = reshape(x, 2, false);
  EXPECT_EQ(f.matrix, Matrix::from_columns({{1, 2}, {3, 4}, {5, 6}}));
  EXPECT_EQ(f.dropped_tail, 0u);
  EXPECT_EQ(f.cycles, 3u);
}

TEST(FrameTest, RemainderDropped) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const CycleFrame f = reshape(x, 2, false);
  EXPECT_EQ(f.matrix.cols(), 2u);
  EXPECT_EQ(f.dropped_tail, 1u);
}

TEST(FrameTest, PeriodTooLargeNamesMaximum) {
  std::vector<double> x(11, 1.0);
  EXPECT_EQ(max_period(11), 5u);
  try {
    reshape(x, 6, false);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("5"), std::string::npos);
  }
  EXPECT_THROW(reshape(x, 1, false), InvalidArgument);
}

TEST(FrameTest, Fig1Geometry) {
  std::vector<double> x(1000);
  std::iota(x.begin(), x.end(), 0.0);
  const CycleFrame f = reshape(x, 100);
  EXPECT_EQ(f.matrix.rows(), 100u);
  EXPECT_EQ(f.matrix.cols(), 10u);
}

TEST(FrameTest, RoundTripAndMeanRemoval) {
  Rng rng(7);
  std::vector<double> x(103);
  for (double& v : x) v = 3.0 + rng.normal();
  const Series s(x);
  for (std::size_t p : {2u, 7u, 10u, 51u}) {
    for (bool rm : {false, true}) {
      const CycleFrame f = reshape(s, p, rm);
      EXPECT_LT(f.dropped_tail, p);
      if (rm) EXPECT_LE(std::abs(grand_mean(f.matrix)), 1e-12);
      const Series back = flatten(f, f.matrix);
      ASSERT_EQ(back.size(), p * f.cycles);
      for (std::size_t i = 0; i < back.size(); ++i) EXPECT_NEAR(back.values()[i], x[i], 1e-12);
    }
  }
}

TEST(FrameTest, FlattenShapeChecked) {
  const CycleFrame f = reshape(std::vector<double>{1, 2, 3, 4}, 2, false);
  EXPECT_THROW(flatten(f, Matrix(3, 2)), InvalidArgument);
}

}  // namespace
