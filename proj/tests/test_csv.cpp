#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "emovec/csv.hpp"

using namespace emovec;

TEST(Csv, Quote) {
  EXPECT_EQ(csv::quote("plain"), "plain");
  EXPECT_EQ(csv::quote("a,b"), "\"a,b\"");
  EXPECT_EQ(csv::quote("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv::quote("two\nlines"), "\"two\nlines\"");
}

TEST(Csv, ParseQuotedAndCrlf) {
  const auto rows = csv::parse("a,\"b,c\",\"d\"\"e\"\r\n,x,\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (csv::Row{"a", "b,c", "d\"e"}));
  EXPECT_EQ(rows[1], (csv::Row{"", "x", ""}));
  EXPECT_THROW(csv::parse("\"open\n"), std::invalid_argument);
}

TEST(Csv, QuoteParseRoundTrip) {
  const csv::Row fields = {"x", "1,2", "\"q\"", "", "line\nbreak"};
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv::quote(fields[i]);
  const auto rows = csv::parse(line + "\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], fields);
}

TEST(Csv, FormatExactRoundTrips) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) / (1 + i);
    EXPECT_EQ(std::stod(csv::format_exact(v)), v);
  }
  EXPECT_EQ(csv::format_exact(0.1), "0.1");
}

TEST(Csv, FormatFixed) {
  EXPECT_EQ(csv::format_fixed(2.0, 3), "2.000");
  EXPECT_EQ(csv::format_fixed(0.70710678, 3), "0.707");
  EXPECT_EQ(csv::format_fixed(-0.0001, 3), "0.000");
  EXPECT_EQ(csv::format_fixed(0.123456, 4), "0.1235");
}
