#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "longsteps/constants.hpp"
#include "longsteps/types.hpp"

namespace longsteps {

enum class ScheduleKind { silver, left, right, composite };

inline std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::silver: return "silver";
    case ScheduleKind::left: return "left";
    case ScheduleKind::right: return "right";
    case ScheduleKind::composite: return "composite";
  }
  return "?";
}

inline std::optional<ScheduleKind> parse_schedule_kind(std::string_view s) {
  if (s == "silver") return ScheduleKind::silver;
  if (s == "left") return ScheduleKind::left;
  if (s == "right") return ScheduleKind::right;
  if (s == "composite") return ScheduleKind::composite;
  return std::nullopt;
}

/// Ordered stepsizes, 0-indexed. Length 2^k - 1 for silver/left/right and
/// 2^{k+1} - 2 for composite. Every entry exceeds 1.
template <class Real = double>
struct StepSchedule {
  ScheduleKind kind = ScheduleKind::silver;
  int k = 0;
  std::vector<Real> entries;

  Index size() const { return static_cast<Index>(entries.size()); }
};

/// nu(m): the exponent of 2 in m. nu(12) = 2.
inline int two_adic_valuation(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("two_adic_valuation: m must be positive");
  return std::countr_zero(m);
}

/// Silver entries by recursive doubling: [v, beta_j, v] at each level.
template <class Real = double>
std::vector<Real> silver_entries(int k) {
  if (k < 1) throw std::invalid_argument("silver_entries: k must be >= 1");
  std::vector<Real> v{std::sqrt(Real(2))};
  for (int j = 1; j < k; ++j) {
    std::vector<Real> next;
    next.reserve(2 * v.size() + 1);
    next.insert(next.end(), v.begin(), v.end());
    next.push_back(beta<Real>(j));
    next.insert(next.end(), v.begin(), v.end());
    v = std::move(next);
  }
  return v;
}

/// Silver entries by the closed form: entry i is beta_{nu(i+1)}.
template <class Real = double>
std::vector<Real> silver_entries_by_valuation(int k) {
  if (k < 1) throw std::invalid_argument("silver_entries_by_valuation: k must be >= 1");
  const std::uint64_t n = (std::uint64_t{1} << k) - 1;
  std::vector<Real> v(n);
  for (std::uint64_t i = 0; i < n; ++i) v[i] = beta<Real>(two_adic_valuation(i + 1));
  return v;
}

namespace detail {
template <class Real>
void require_level(int k, const ConstantsTable<Real>& tab, const char* what) {
  if (k < 1 || k > tab.k_max)
    throw std::invalid_argument(std::string(what) + ": k = " + std::to_string(k) +
                                " outside [1, " + std::to_string(tab.k_max) + "]");
}

// Kahan-compensated accumulator; the identity checks sum up to 2^k_max terms
// and plain accumulation erodes the last digits near the tolerance.
template <class Real>
struct CompensatedSum {
  Real sum{0};
  Real carry{0};
  void add(Real v) {
    const Real y = v - carry;
    const Real t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};
}  // namespace detail

template <class Real = double>
StepSchedule<Real> silver_schedule(int k, const ConstantsTable<Real>& tab) {
  detail::require_level(k, tab, "silver_schedule");
  return {ScheduleKind::silver, k, silver_entries<Real>(k)};
}

/// Right-heavy schedule: [pi^(j), alpha_j, previous] unrolled from [3/2].
/// The last entries repeat the lower-level schedule.
template <class Real = double>
StepSchedule<Real> right_heavy_schedule(int k, const ConstantsTable<Real>& tab) {
  detail::require_level(k, tab, "right_heavy_schedule");
  std::vector<Real> v{Real(3) / Real(2)};
  for (int j = 1; j < k; ++j) {
    std::vector<Real> next = silver_entries<Real>(j);
    next.reserve(2 * next.size() + 1 + v.size());
    next.push_back(tab.alpha_at(j));
    next.insert(next.end(), v.begin(), v.end());
    v = std::move(next);
  }
  return {ScheduleKind::right, k, std::move(v)};
}

/// Left-heavy schedule: the right-heavy entries in reverse order.
template <class Real = double>
StepSchedule<Real> left_heavy_schedule(int k, const ConstantsTable<Real>& tab) {
  detail::require_level(k, tab, "left_heavy_schedule");
  StepSchedule<Real> s = right_heavy_schedule(k, tab);
  std::reverse(s.entries.begin(), s.entries.end());
  s.kind = ScheduleKind::left;
  return s;
}

/// Concatenation [right, left], 2^{k+1} - 2 steps.
template <class Real = double>
StepSchedule<Real> composite_schedule(int k, const ConstantsTable<Real>& tab) {
  detail::require_level(k, tab, "composite_schedule");
  StepSchedule<Real> s = right_heavy_schedule(k, tab);
  const std::vector<Real> right = s.entries;
  s.entries.reserve(2 * right.size());
  s.entries.insert(s.entries.end(), right.rbegin(), right.rend());
  s.kind = ScheduleKind::composite;
  return s;
}

template <class Real = double>
StepSchedule<Real> make_schedule(ScheduleKind kind, int k, const ConstantsTable<Real>& tab) {
  switch (kind) {
    case ScheduleKind::silver: return silver_schedule(k, tab);
    case ScheduleKind::left: return left_heavy_schedule(k, tab);
    case ScheduleKind::right: return right_heavy_schedule(k, tab);
    case ScheduleKind::composite: return composite_schedule(k, tab);
  }
  throw std::invalid_argument("make_schedule: unknown kind");
}

/// Both characterizations of r_k evaluated on a left/right schedule:
/// 1 + 2 sum h_i and prod (h_i - 1)^{-2}. The product is accumulated in
/// log space; the factors span ~rho^{2k}.
template <class Real = double>
struct ScheduleIdentityReport {
  Real r_expected{};
  Real sum_form{};
  Real product_form{};
  Real rel_err_sum{};
  Real rel_err_product{};
  bool pass = false;
};

template <class Real = double>
ScheduleIdentityReport<Real> check_r_identities(const StepSchedule<Real>& s,
                                                const ConstantsTable<Real>& tab,
                                                Real tol = Real(1e-9)) {
  if (s.kind != ScheduleKind::left && s.kind != ScheduleKind::right)
    throw std::invalid_argument("check_r_identities: schedule must be left or right");
  ScheduleIdentityReport<Real> rep;
  rep.r_expected = tab.r_at(s.k);
  detail::CompensatedSum<Real> sum, log_sum;
  for (const Real h : s.entries) {
    sum.add(h);
    log_sum.add(std::log(h - Real(1)));
  }
  rep.sum_form = Real(1) + 2 * sum.sum;
  rep.product_form = std::exp(-2 * log_sum.sum);
  rep.rel_err_sum = std::abs(rep.sum_form - rep.r_expected) / rep.r_expected;
  rep.rel_err_product = std::abs(rep.product_form - rep.r_expected) / rep.r_expected;
  rep.pass = rep.rel_err_sum <= tol && rep.rel_err_product <= tol;
  return rep;
}

/// Silver schedule identities: sum pi_i = rho^k - 1 and
/// prod (pi_i - 1)^2 = rho^{-2k}.
template <class Real = double>
struct SilverIdentityReport {
  Real sum_form{};
  Real sum_expected{};
  Real product_form{};
  Real product_expected{};
  Real rel_err_sum{};
  Real rel_err_product{};
  bool pass = false;
};

template <class Real = double>
SilverIdentityReport<Real> check_silver_identities(int k, const ConstantsTable<Real>& tab,
                                                   Real tol = Real(1e-9)) {
  detail::require_level(k, tab, "check_silver_identities");
  SilverIdentityReport<Real> rep;
  const std::vector<Real> pi = silver_entries<Real>(k);
  detail::CompensatedSum<Real> sum, log_sum;
  for (const Real h : pi) {
    sum.add(h);
    log_sum.add(std::log(h - Real(1)));
  }
  rep.sum_form = sum.sum;
  rep.sum_expected = silver_ratio_pow<Real>(k) - Real(1);
  rep.product_form = std::exp(2 * log_sum.sum);
  rep.product_expected = silver_ratio_pow<Real>(-2 * k);
  rep.rel_err_sum = std::abs(rep.sum_form - rep.sum_expected) / rep.sum_expected;
  rep.rel_err_product = std::abs(rep.product_form - rep.product_expected) / rep.product_expected;
  rep.pass = rep.rel_err_sum <= tol && rep.rel_err_product <= tol;
  return rep;
}

}  // namespace longsteps
