#include "qrate/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrate/error.hpp"

namespace qrate {

namespace {

void require_strike(double strike) {
  if (!(strike > 0.0) || !std::isfinite(strike)) throw ValidationError("strike", "must be positive");
}

}  // namespace

double call_payoff(double x, double strike) {
  require_strike(strike);
  return std::max(x - strike, 0.0);
}

double put_payoff(double x, double strike) {
  require_strike(strike);
  return std::max(strike - x, 0.0);
}

double payoff(const PayoffSpec& spec, double x) {
  return spec.kind == OptionKind::call ? call_payoff(x, spec.strike) : put_payoff(x, spec.strike);
}

Moneyness moneyness(double x, double strike, double tol) {
  require_strike(strike);
  if (!(tol > 0.0)) throw ValidationError("tolerance", "must be positive");
  if (std::abs(x - strike) <= tol) return {MoneynessState::at_the_money, tol};
  return {x > strike ? MoneynessState::deep_in_the_money : MoneynessState::deep_out_of_the_money, tol};
}

double discounted_value(double v, double r, double t, DiscountSign sign) {
  if (!(t >= 0.0)) throw ValidationError("t", "must be non-negative");
  return v * std::exp(discount_exponent_sign(sign) * r * t);
}

std::string_view to_string(DiscountSign sign) {
  return sign == DiscountSign::paper_literal_plus ? "paper_literal_plus" : "standard_minus";
}

std::string_view to_string(MoneynessState state) {
  switch (state) {
    case MoneynessState::deep_in_the_money: return "deep_in_the_money";
    case MoneynessState::at_the_money: return "at_the_money";
    case MoneynessState::deep_out_of_the_money: return "deep_out_of_the_money";
  }
  return "unknown";
}

DiscountSign parse_discount_sign(std::string_view text) {
  if (text == "paper_literal_plus" || text == "plus") return DiscountSign::paper_literal_plus;
  if (text == "standard_minus" || text == "minus") return DiscountSign::standard_minus;
  throw ValidationError("sign", "expected plus|minus, got '" + std::string(text) + "'");
}

}  // namespace qrate
