// Copyright 2026 The dpecdf Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DPECDF_BUDGET_HPP
#define DPECDF_BUDGET_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dpecdf {

// Exact fraction, used so ledger totals can be checked without floating
// point (e.g. (L+1)/(L+9) + 8/(L+9) must equal 1 exactly).
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  Rational operator+(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Append-only ledger of epsilon charges. Each entry records the charge
// both as a double and as an exact fraction of the session epsilon.
class BudgetAccount {
 public:
  struct Entry {
    std::string tag;
    double epsilon;        // charged budget
    Rational session_frac; // charge as fraction of the session epsilon
  };

  explicit BudgetAccount(double session_epsilon = 0.0)
      : session_epsilon_(session_epsilon) {}

  void charge(std::string tag, double epsilon, Rational session_frac);

  double total() const;
  Rational total_fraction() const;
  double session_epsilon() const { return session_epsilon_; }
  const std::vector<Entry>& entries() const { return entries_; }

  std::string to_json() const;

 private:
  double session_epsilon_;
  std::vector<Entry> entries_;
};

}  // namespace dpecdf

#endif  // DPECDF_BUDGET_HPP
