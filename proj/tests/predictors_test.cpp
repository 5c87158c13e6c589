#include <gtest/gtest.h>

#include <algorithm>

#include "mpe2/error.hpp"
#include "mpe2/predictors.hpp"

using namespace mpe2;
using K = PredictorKind;

TEST(Context, ConstantImage) {
  GrayImage img(4, 4, std::vector<std::uint8_t>(16, 7));
  EXPECT_EQ(context_of(img, 3, 3), (CausalContext{7, 7, 7}));
}

TEST(Context, Indexing) {
  GrayImage img(2, 2, {1, 2, 3, 4});
  EXPECT_EQ(context_of(img, 2, 2), (CausalContext{3, 2, 1}));
  EXPECT_EQ(context_unchecked(img, 2, 2), (CausalContext{3, 2, 1}));
  EXPECT_THROW(context_of(img, 1, 2), OutOfBounds);
  EXPECT_THROW(context_of(img, 2, 1), OutOfBounds);
  EXPECT_THROW(context_of(img, 3, 2), OutOfBounds);
}

TEST(Predict, Med) {
  EXPECT_EQ(predict(K::Med, {5, 7, 8}), 5);
  EXPECT_EQ(predict(K::Med, {5, 7, 4}), 7);
  EXPECT_EQ(predict(K::Med, {5, 7, 6}), 6);
  // The planar branch is left unclamped.
  EXPECT_EQ(predict(K::Med, {255, 0, 254}), 1);
}

TEST(Predict, OthersMatchDefinitions) {
  EXPECT_EQ(predict(K::Mean, {4, 5, 7}), 5);
  EXPECT_EQ(predict(K::Median, {3, 9, 4}), 4);
  EXPECT_EQ(predict(K::Min, {3, 9, 4}), 3);
}

TEST(Predict, ExhaustiveAgainstReference) {
  for (int a = 0; a < 256; a += 3) {
    for (int b = 0; b < 256; b += 5) {
      for (int c = 0; c < 256; c += 7) {
        const CausalContext ctx{a, b, c};
        int med;
        if (c >= std::max(a, b)) med = std::min(a, b);
        else if (c <= std::min(a, b)) med = std::max(a, b);
        else med = a + b - c;
        ASSERT_EQ(predict(K::Med, ctx), med);
        ASSERT_EQ(predict(K::Mean, ctx), (a + b + c) / 3);
        int s[3] = {a, b, c};
        std::sort(s, s + 3);
        ASSERT_EQ(predict(K::Median, ctx), s[1]);
        ASSERT_EQ(predict(K::Min, ctx), s[0]);
      }
    }
  }
}

TEST(ErrorVector, FromPredictions) {
  // Contexts chosen so that MED gives 106 and Mean gives 105 / 108.
  const CausalContext c1{106, 106, 103};  // med 106, mean 105
  EXPECT_EQ(predict(K::Med, c1), 106);
  EXPECT_EQ(predict(K::Mean, c1), 105);
  const K kinds[] = {K::Med, K::Mean};
  EXPECT_EQ(error_vector(kinds, c1, 105), (ErrorVector{-1, 0}));

  const CausalContext c2{106, 108, 110};  // med 106, mean 108
  EXPECT_EQ(predict(K::Med, c2), 106);
  EXPECT_EQ(predict(K::Mean, c2), 108);
  EXPECT_EQ(error_vector(kinds, c2, 107), (ErrorVector{1, -1}));

  const CausalContext flat{50, 50, 50};
  EXPECT_EQ(error_vector(kinds, flat, 50), (ErrorVector{0, 0}));
}

TEST(ErrorVector, ShiftAndCapacity) {
  ErrorVector e{1, -2, 3};
  EXPECT_EQ(e.shifted(-1), (ErrorVector{0, -3, 2}));
  e.push_back(4);
  EXPECT_EQ(e.size(), 4u);
  EXPECT_THROW(e.push_back(5), InvalidArgument);
}

TEST(PredictorSet, ParseAndValidate) {
  EXPECT_EQ(PredictorSet::parse("med,mean"), PredictorSet::standard());
  EXPECT_EQ(PredictorSet::parse("med,mean,median,min").size(), 4u);
  EXPECT_EQ(PredictorSet::parse("min,med").to_string(), "min,med");
  EXPECT_THROW(PredictorSet::parse("med"), InvalidArgument);
  EXPECT_THROW(PredictorSet::parse("med,med"), InvalidArgument);
  EXPECT_THROW(PredictorSet::parse("med,avg"), InvalidArgument);
  EXPECT_THROW(PredictorSet::parse("med,mean,"), InvalidArgument);
  EXPECT_THROW(parse_predictor_kind("MED"), InvalidArgument);
  for (K k : {K::Med, K::Mean, K::Median, K::Min}) EXPECT_EQ(parse_predictor_kind(to_string(k)), k);
}
