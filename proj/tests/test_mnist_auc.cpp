#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <sstream>

#include "genreason/mnist/auc.hpp"
#include "genreason/mnist/experiment.hpp"

using namespace genreason;
using namespace genreason::mnist;

namespace {

// Fraction of (positive, negative) pairs ranked correctly, ties counting 1/2.
double pair_oracle(const std::vector<double>& s, const std::vector<bool>& pos) {
  double good = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!pos[i] || pos[j]) continue;
      pairs += 1;
      good += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return good / pairs;
}

std::optional<double> auc(const std::vector<double>& s, const std::vector<bool>& pos) {
  const std::unique_ptr<bool[]> p(new bool[pos.size()]);
  for (std::size_t i = 0; i < pos.size(); ++i) p[i] = pos[i];
  return roc_auc(s, std::span<const bool>(p.get(), pos.size()));
}

DigitDistribution one_hot(int digit, double confidence) {
  std::array<double, kDigits> raw{};
  raw.fill((1 - confidence) / 9);
  raw[static_cast<std::size_t>(digit)] = confidence;
  return DigitDistribution::from_conditionals(raw);
}

}  // namespace

TEST(RocAuc, HandComputed) {
  EXPECT_DOUBLE_EQ(*auc({0.9, 0.8, 0.4, 0.3}, {true, false, true, false}), 0.75);
  EXPECT_DOUBLE_EQ(*auc({0.1, 0.2, 0.8, 0.9}, {false, false, true, true}), 1.0);
  EXPECT_DOUBLE_EQ(*auc({0.1, 0.2, 0.8, 0.9}, {true, true, false, false}), 0.0);
  EXPECT_DOUBLE_EQ(*auc({0.5, 0.5, 0.5}, {true, false, false}), 0.5);
  EXPECT_FALSE(auc({0.1, 0.2}, {true, true}).has_value());
  EXPECT_FALSE(auc({0.1, 0.2}, {false, false}).has_value());
}

TEST(RocAuc, MatchesPairOracleWithTies) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 60);
    std::uniform_int_distribution<int> level(0, 1 + trial % 7);  // few levels: many ties
    std::vector<double> s(n);
    std::vector<bool> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = level(rng) / 8.0;
      pos[i] = (rng() & 1) != 0;
    }
    const auto a = auc(s, pos);
    const bool both = std::count(pos.begin(), pos.end(), true) > 0 && std::count(pos.begin(), pos.end(), false) > 0;
    ASSERT_EQ(a.has_value(), both);
    if (both) {
      ASSERT_NEAR(*a, pair_oracle(s, pos), 1e-12);
    }
  }
}

TEST(RocCurve, TrapezoidAreaEqualsAuc) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + static_cast<std::size_t>(trial);
    std::vector<double> s(n);
    const std::unique_ptr<bool[]> p(new bool[n]);
    std::vector<bool> pos(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng() % 10);
      pos[i] = p[i] = i % 3 == 0;
    }
    const auto curve = roc_curve(s, std::span<const bool>(p.get(), n));
    ASSERT_EQ(curve.front().fpr, 0.0);
    ASSERT_EQ(curve.front().tpr, 0.0);
    ASSERT_DOUBLE_EQ(curve.back().fpr, 1.0);
    ASSERT_DOUBLE_EQ(curve.back().tpr, 1.0);
    double area = 0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
      ASSERT_GE(curve[i].fpr, curve[i - 1].fpr);
      ASSERT_GE(curve[i].tpr, curve[i - 1].tpr);
      area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2;
    }
    EXPECT_NEAR(area, *auc(s, pos), 1e-12);
  }
}

TEST(MacroAuc, PerfectScores) {
  std::vector<DigitDistribution> scores;
  std::vector<int> labels;
  for (int i = 0; i < 40; ++i) {
    scores.push_back(one_hot(i % 10, 0.9));
    labels.push_back(i % 10);
  }
  const auto m = auc_macro(scores, labels);
  EXPECT_DOUBLE_EQ(m.macro, 1.0);
  EXPECT_TRUE(m.skipped.empty());
}

TEST(MacroAuc, IdenticalScores) {
  std::vector<DigitDistribution> scores(20, one_hot(0, 0.1));
  std::vector<int> labels;
  for (int i = 0; i < 20; ++i) labels.push_back(i % 10);
  EXPECT_DOUBLE_EQ(auc_macro(scores, labels).macro, 0.5);
}

TEST(MacroAuc, SkipsClassesWithoutBothSides) {
  std::vector<DigitDistribution> scores = {one_hot(1, 0.9), one_hot(2, 0.9), one_hot(1, 0.6)};
  const std::vector<int> labels = {1, 2, 1};
  const auto m = auc_macro(scores, labels);
  EXPECT_EQ(m.skipped, (std::vector<int>{0, 3, 4, 5, 6, 7, 8, 9}));
  EXPECT_TRUE(m.per_class[1].has_value());
  EXPECT_DOUBLE_EQ(m.macro, 1.0);
}

TEST(MacroAuc, NoValidClass) {
  const std::vector<DigitDistribution> scores = {one_hot(4, 0.9), one_hot(4, 0.8)};
  const std::vector<int> labels = {4, 4};
  try {
    auc_macro(scores, labels);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoValidClass);
  }
  EXPECT_THROW(auc_macro(std::span<const DigitDistribution>{}, std::span<const int>{}), Error);
}

TEST(Csv, PredictionsLayout) {
  const std::vector<DigitDistribution> scores = {one_hot(3, 0.55)};
  const std::vector<int> labels = {3};
  std::ostringstream out;
  write_predictions_csv(out, scores, labels);
  EXPECT_EQ(out.str(),
            "test_index,label,p0,p1,p2,p3,p4,p5,p6,p7,p8,p9,argmax\n"
            "0,3,0.05,0.05,0.05,0.55,0.05,0.05,0.05,0.05,0.05,0.05,3\n");
  EXPECT_DOUBLE_EQ(accuracy(scores, labels), 1.0);
}

TEST(Csv, CurveLayout) {
  const std::vector<CurveRow> rows = {{"mu=0.9", 100, 0.875}, {"knn=5", 100, 0.5}};
  std::ostringstream out;
  write_curve_csv(out, rows);
  EXPECT_EQ(out.str(), "method,size,auc\nmu=0.9,100,0.875\nknn=5,100,0.5\n");
}
