#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "imfgraph/error.hpp"
#include "imfgraph/series.hpp"
#include "temp_dir.hpp"

using namespace imfgraph;
using imfgraph::testing::TempDir;

namespace {

std::vector<double> values_of(const TimeSeries& s) { return {s.values().begin(), s.values().end()}; }

std::string what_of(auto&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(LoadCsv, ParsesNamedColumnWithDates) {
  TempDir dir("series");
  auto p = dir.write("a.csv", "d,v\n2020-01-01,1\n2020-01-02,2\n2020-01-03,3");
  auto s = load_csv(p, ColumnRef::named("v"), std::string("d"));
  EXPECT_EQ(values_of(s), (std::vector<double>{1, 2, 3}));
  ASSERT_TRUE(s.timestamps().has_value());
  EXPECT_EQ(s.timestamps()->size(), 3u);
  EXPECT_EQ(s.label(), "v");
}

TEST(LoadCsv, ColumnByIndexAndCrlf) {
  TempDir dir("series");
  auto p = dir.write("a.csv", "d,v,w\r\n2020-01-01,1,9\r\n2020-01-02,2,8\r\n2020-01-03,3,7\r\n");
  auto s = load_csv(p, ColumnRef::at(2));
  EXPECT_EQ(values_of(s), (std::vector<double>{9, 8, 7}));
  EXPECT_EQ(s.label(), "w");
  EXPECT_FALSE(s.timestamps().has_value());
}

TEST(LoadCsv, MissingColumn) {
  TempDir dir("series");
  auto p = dir.write("a.csv", "d,v\n2020-01-01,1\n2020-01-02,2\n2020-01-03,3");
  auto msg = what_of([&] { load_csv(p, ColumnRef::named("x")); });
  EXPECT_NE(msg.find("missing column"), std::string::npos) << msg;
  EXPECT_THROW(load_csv(p, ColumnRef::named("x")), InvalidArgument);
}

TEST(LoadCsv, BlankValueReportsRowNumber) {
  TempDir dir("series");
  auto p = dir.write("a.csv", "d,v\n2020-01-01,1\n2020-01-02,\n2020-01-03,3\n2020-01-04,4\n");
  auto msg = what_of([&] { load_csv(p, ColumnRef::named("v")); });
  EXPECT_NE(msg.find("row 3"), std::string::npos) << msg;
}

TEST(LoadCsv, NonFiniteRejected) {
  TempDir dir("series");
  auto p = dir.write("a.csv", "v\n1\nnan\n3\n4\n");
  EXPECT_THROW(load_csv(p, ColumnRef::named("v")), InvalidArgument);
}

TEST(LoadCsv, TooFewRows) {
  TempDir dir("series");
  auto p = dir.write("a.csv", "v\n1\n2\n");
  EXPECT_THROW(load_csv(p, ColumnRef::named("v")), InvalidArgument);
}

TEST(LoadCsv, NonIncreasingDates) {
  TempDir dir("series");
  auto p = dir.write("a.csv", "d,v\n2020-01-02,1\n2020-01-01,2\n2020-01-03,3\n");
  EXPECT_THROW(load_csv(p, ColumnRef::named("v"), std::string("d")), InvalidArgument);
  auto q = dir.write("b.csv", "d,v\n2020-01-01,1\n2020-02-30,2\n2020-01-03,3\n");
  EXPECT_THROW(load_csv(q, ColumnRef::named("v"), std::string("d")), InvalidArgument);
}

TEST(LoadCsv, MissingFileIsIoError) {
  EXPECT_THROW(load_csv("/nonexistent/file.csv", ColumnRef::at(0)), IoError);
}

TEST(TimeSeries, RejectsNonFiniteAndBadTimestamps) {
  EXPECT_THROW(TimeSeries({1.0, NAN}), InvalidArgument);
  EXPECT_THROW(TimeSeries({1.0, INFINITY}), InvalidArgument);
  using std::chrono::sys_days;
  std::vector<sys_days> ts{sys_days{std::chrono::days{2}}, sys_days{std::chrono::days{1}}};
  EXPECT_THROW(TimeSeries({1.0, 2.0}, ts), InvalidArgument);
  EXPECT_THROW(TimeSeries({1.0, 2.0, 3.0}, ts), InvalidArgument);
}

TEST(PctReturns, HandArithmetic) {
  std::vector<double> a{100, 110};
  EXPECT_EQ(pct_returns(a).values, (std::vector<double>{10.0}));
  std::vector<double> b{100, 100, 100};
  EXPECT_EQ(pct_returns(b).values, (std::vector<double>{0.0, 0.0}));
  std::vector<double> c{100, 0};
  EXPECT_THROW(pct_returns(c), InvalidArgument);
  std::vector<double> d{5};
  EXPECT_THROW(pct_returns(d), InvalidArgument);
}

TEST(PctReturns, LengthAndBaseIndex) {
  std::vector<double> s{1, 2, 4, 8, 16};
  auto r = pct_returns(s);
  EXPECT_EQ(r.values.size(), s.size() - 1);
  EXPECT_EQ(r.base_index, 0u);
  for (double v : r.values) EXPECT_DOUBLE_EQ(v, 100.0);
}

TEST(RollingStat, Examples) {
  std::vector<double> a{1, 2, 3};
  EXPECT_EQ(rolling_stat(a, 2, RollingKind::kMean), (std::vector<double>{1.5, 2.5}));
  std::vector<double> b{5, 5, 5, 5};
  EXPECT_EQ(rolling_stat(b, 3, RollingKind::kStd), (std::vector<double>{0.0, 0.0}));
  std::vector<double> c{1, 3};
  auto r = rolling_stat(c, 2, RollingKind::kStd);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], std::sqrt(2.0), 1e-12);
}

TEST(RollingStat, WindowBounds) {
  std::vector<double> a{1, 2, 3};
  EXPECT_THROW(rolling_stat(a, 0, RollingKind::kMean), InvalidArgument);
  EXPECT_THROW(rolling_stat(a, 4, RollingKind::kMean), InvalidArgument);
  EXPECT_THROW(rolling_stat(a, 1, RollingKind::kStd), InvalidArgument);
  EXPECT_EQ(rolling_stat(a, 3, RollingKind::kMean).size(), 1u);
}

TEST(ZeroCrossings, Examples) {
  std::vector<double> a{1, -1, 1, -1};
  EXPECT_EQ(zero_crossings(a), 3u);
  std::vector<double> b{1, 2, 3};
  EXPECT_EQ(zero_crossings(b), 0u);
  std::vector<double> c{1, 0, -1};
  EXPECT_EQ(zero_crossings(c), 1u);
  std::vector<double> d{0, 0, 1, 0, 1};
  EXPECT_EQ(zero_crossings(d), 0u);
}

TEST(ParseIsoDate, ValidAndInvalid) {
  EXPECT_TRUE(parse_iso_date("2021-12-31").has_value());
  EXPECT_TRUE(parse_iso_date("2020-02-29").has_value());
  EXPECT_FALSE(parse_iso_date("2021-02-29").has_value());
  EXPECT_FALSE(parse_iso_date("2021/01/01").has_value());
  EXPECT_FALSE(parse_iso_date("21-01-01").has_value());
}

TEST(Descriptive, SampleMoments) {
  std::vector<double> a{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(mean(a), 5.0);
  EXPECT_DOUBLE_EQ(sample_variance(a), 32.0 / 7.0);
  std::vector<double> one{3};
  EXPECT_EQ(sample_variance(one), 0.0);
}

TEST(Properties, CompoundingReconstructsPrices) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> p{250.0};
  for (int i = 0; i < 999; ++i) p.push_back(p.back() * std::exp(0.01 * z(rng)));
  auto r = pct_returns(p);
  double level = p[0];
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    level *= 1.0 + r.values[i] / 100.0;
    EXPECT_NEAR(level, p[i + 1], 1e-9 * p[i + 1]);
  }
}

TEST(Properties, FullWindowMeanIsGlobalMean) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 7.0);
  std::vector<double> x(317);
  for (double& v : x) v = u(rng);
  auto r = rolling_stat(x, x.size(), RollingKind::kMean);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], mean(x), 1e-12);
}

TEST(Properties, ZeroCrossingsSignSymmetric) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(40), neg(40);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = d(rng);
      neg[i] = -x[i];
    }
    EXPECT_EQ(zero_crossings(x), zero_crossings(neg));
  }
}
