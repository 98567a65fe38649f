#pragma once

#include <string_view>

namespace qrate {

/// Which exponent multiplies a payoff when it is carried through time.
/// `paper_literal_plus` reproduces the printed e^{+rt} form; the default
/// `standard_minus` discounts with e^{-rt}.
enum class DiscountSign { paper_literal_plus, standard_minus };

enum class OptionKind { call, put };

/// Figure-1 style states: a) above the strike, b) at it, c) below it.
enum class MoneynessState { deep_in_the_money, at_the_money, deep_out_of_the_money };

struct PayoffSpec {
  double strike = 1.0;
  OptionKind kind = OptionKind::call;
  DiscountSign discount_sign = DiscountSign::standard_minus;
};

struct Moneyness {
  MoneynessState state;
  double tolerance;
};

double call_payoff(double x, double strike);
double put_payoff(double x, double strike);
double payoff(const PayoffSpec& spec, double x);

/// State relative to the strike, with |x - K| <= tol counting as at the money.
Moneyness moneyness(double x, double strike, double tol);

/// v * e^{+rt} or v * e^{-rt} depending on `sign`.
double discounted_value(double v, double r, double t, DiscountSign sign);

/// +1 for paper_literal_plus, -1 for standard_minus.
constexpr double discount_exponent_sign(DiscountSign sign) {
  return sign == DiscountSign::paper_literal_plus ? 1.0 : -1.0;
}

std::string_view to_string(DiscountSign sign);
std::string_view to_string(MoneynessState state);
DiscountSign parse_discount_sign(std::string_view text);

}  // namespace qrate
