#include <gtest/gtest.h>

#include <cmath>

#include "qrate/error.hpp"
#include "qrate/payoff.hpp"

using namespace qrate;

TEST(CallPayoff, Examples) {
  EXPECT_EQ(call_payoff(105.0, 100.0), 5.0);
  EXPECT_EQ(call_payoff(100.0, 100.0), 0.0);
  EXPECT_EQ(call_payoff(95.0, 100.0), 0.0);
}

TEST(PutPayoff, Examples) {
  EXPECT_EQ(put_payoff(95.0, 100.0), 5.0);
  EXPECT_EQ(put_payoff(100.0, 100.0), 0.0);
  EXPECT_EQ(put_payoff(105.0, 100.0), 0.0);
}

TEST(Payoff, RejectsNonPositiveStrike) {
  EXPECT_THROW(call_payoff(1.0, 0.0), ValidationError);
  EXPECT_THROW(put_payoff(1.0, -2.0), ValidationError);
}

TEST(Payoff, SpecDispatch) {
  EXPECT_EQ(payoff({100.0, OptionKind::call}, 103.0), 3.0);
  EXPECT_EQ(payoff({100.0, OptionKind::put}, 97.0), 3.0);
  EXPECT_EQ(PayoffSpec{}.discount_sign, DiscountSign::standard_minus);
}

TEST(Payoff, ComplementarityAndExclusivitySweep) {
  const double strike = 100.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 50.0 + 0.1 * i;
    const double c = call_payoff(x, strike);
    const double p = put_payoff(x, strike);
    EXPECT_EQ(c - p, x - strike) << x;
    if (x != strike) {
      EXPECT_TRUE((c == 0.0) != (p == 0.0)) << x;
    } else {
      EXPECT_EQ(c, 0.0);
      EXPECT_EQ(p, 0.0);
    }
  }
}

TEST(Moneyness, Examples) {
  EXPECT_EQ(moneyness(101.0, 100.0, 1e-9).state, MoneynessState::deep_in_the_money);
  EXPECT_EQ(moneyness(100.0, 100.0, 1e-9).state, MoneynessState::at_the_money);
  EXPECT_EQ(moneyness(99.0, 100.0, 1e-9).state, MoneynessState::deep_out_of_the_money);
  EXPECT_THROW(moneyness(99.0, 100.0, 0.0), ValidationError);
}

TEST(Moneyness, MonotoneWithoutOverlap) {
  for (double tol : {1e-9, 0.5, 3.0}) {
    int previous = -1;
    for (int i = 0; i <= 2000; ++i) {
      const double x = 90.0 + 0.01 * i;
      const auto state = moneyness(x, 100.0, tol).state;
      // c -> b -> a as x increases.
      const int rank = state == MoneynessState::deep_out_of_the_money ? 0
                       : state == MoneynessState::at_the_money        ? 1
                                                                      : 2;
      EXPECT_GE(rank, previous);
      previous = rank;
      EXPECT_EQ(state == MoneynessState::at_the_money, std::abs(x - 100.0) <= tol);
    }
  }
}

TEST(DiscountedValue, Examples) {
  // 5 e^{-0.05} and 5 e^{0.05} from tests/oracles/derive_values.py.
  EXPECT_NEAR(discounted_value(5.0, 0.05, 1.0, DiscountSign::standard_minus), 4.756147122503570, 1e-14);
  EXPECT_NEAR(discounted_value(5.0, 0.05, 1.0, DiscountSign::paper_literal_plus), 5.256355481880120, 1e-14);
  EXPECT_EQ(discounted_value(5.0, 0.3, 0.0, DiscountSign::standard_minus), 5.0);
  EXPECT_EQ(discounted_value(5.0, 0.3, 0.0, DiscountSign::paper_literal_plus), 5.0);
  EXPECT_THROW(discounted_value(5.0, 0.3, -1.0, DiscountSign::paper_literal_plus), ValidationError);
}

TEST(DiscountedValue, ConventionsInvertEachOther) {
  for (double r : {-0.2, 0.0, 0.01, 0.05, 0.7}) {
    for (double t : {0.0, 0.25, 1.0, 10.0}) {
      for (double v : {-3.0, 1.0, 123.456}) {
        const double round_trip = discounted_value(v, r, t, DiscountSign::paper_literal_plus) *
                                  discounted_value(1.0, r, t, DiscountSign::standard_minus);
        EXPECT_NEAR(round_trip, v, 1e-15 * std::abs(v));
      }
    }
  }
}

TEST(DiscountSignNames, RoundTrip) {
  for (auto s : {DiscountSign::paper_literal_plus, DiscountSign::standard_minus}) {
    EXPECT_EQ(parse_discount_sign(to_string(s)), s);
  }
  EXPECT_EQ(parse_discount_sign("plus"), DiscountSign::paper_literal_plus);
  EXPECT_THROW(parse_discount_sign("sideways"), ValidationError);
}
