// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#include "dpecdf/budget.hpp"

#include <numeric>
#include <stdexcept>
#include <json.hpp>

namespace dpecdf {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) { num = -num; den = -den; }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) { num /= g; den /= g; }
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}

void BudgetAccount::charge(std::string tag, double epsilon, Rational session_frac) {
  entries_.push_back({std::move(tag), epsilon, session_frac});
}

double BudgetAccount::total() const {
  double t = 0;
  for (const auto& e : entries_) t += e.epsilon;
  return t;
}

Rational BudgetAccount::total_fraction() const {
  Rational t;
  for (const auto& e : entries_) t = t + e.session_frac;
  return t;
}

std::string BudgetAccount::to_json() const {
  nlohmann::json j;
  j["session_epsilon"] = session_epsilon_;
  j["total"] = total();
  auto arr = nlohmann::json::array();
  for (const auto& e : entries_) {
    arr.push_back({{"tag", e.tag},
                   {"epsilon", e.epsilon},
                   {"fraction", {e.session_frac.num, e.session_frac.den}}});
  }
  j["entries"] = arr;
  return j.dump();
}

}  // namespace dpecdf
