#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "longsteps/constants.hpp"
#include "longsteps/functions.hpp"
#include "longsteps/schedules.hpp"
#include "longsteps/trajectory.hpp"
#include "longsteps/types.hpp"

namespace longsteps {

enum class BoundClaim { grad_norm, objective_gap, composite_grad, identity, reference_table, restart };

inline std::string to_string(BoundClaim c) {
  switch (c) {
    case BoundClaim::grad_norm: return "grad_norm";
    case BoundClaim::objective_gap: return "objective_gap";
    case BoundClaim::composite_grad: return "composite_grad";
    case BoundClaim::identity: return "identity";
    case BoundClaim::reference_table: return "reference_table";
    case BoundClaim::restart: return "restart";
  }
  return "?";
}

template <class Real = double>
struct BoundReport {
  BoundClaim claim = BoundClaim::identity;
  Real theoretical{};
  Real measured{};
  Real slack{};     // theoretical - measured
  Real rel_err{};   // |slack| / max(|theoretical|, |measured|)
  bool pass = false;
};

/// Bound on (1/2)||grad f(x_N)||^2 after the left-heavy schedule:
/// L (f(x_0) - f*) / r_k.
template <class Real = double>
Real grad_norm_bound(int k, Real L, Real initial_gap, const ConstantsTable<Real>& tab) {
  if (!(L > 0)) throw std::invalid_argument("grad_norm_bound: L must be positive");
  if (initial_gap < 0) throw std::invalid_argument("grad_norm_bound: gap must be >= 0");
  return L * initial_gap / tab.r_at(k);
}

/// Bound on f(x_N) - f* after the right-heavy schedule:
/// (L/2) ||x_0 - x*||^2 / r_k.
template <class Real = double>
Real objective_gap_bound(int k, Real L, Real dist, const ConstantsTable<Real>& tab) {
  if (!(L > 0)) throw std::invalid_argument("objective_gap_bound: L must be positive");
  if (dist < 0) throw std::invalid_argument("objective_gap_bound: dist must be >= 0");
  return L / Real(2) * dist * dist / tab.r_at(k);
}

/// Bound on ||grad f(x_N)|| after the composite schedule (2^{k+1} - 2
/// steps): L ||x_0 - x*|| / r_k. Equals
/// sqrt(2 grad_norm_bound(k, L, objective_gap_bound(k, L, dist))).
template <class Real = double>
Real composite_grad_bound(int k, Real L, Real dist, const ConstantsTable<Real>& tab) {
  if (!(L > 0)) throw std::invalid_argument("composite_grad_bound: L must be positive");
  if (dist < 0) throw std::invalid_argument("composite_grad_bound: dist must be >= 0");
  return L * dist / tab.r_at(k);
}

/// Reference comparison rows for N = 1, 3, 7, 15, 31: our bound 1/(2 r_k) on
/// the unit ball with L = 1, next to the published silver-schedule and
/// branch-and-bound guarantees (stored as printed).
template <class Real = double>
struct ReferenceRow {
  int n_steps = 0;
  Real bound{};
  Real silver_ref{};
  Real bnb_ref{};
};

template <class Real = double>
std::vector<ReferenceRow<Real>> reference_table(const ConstantsTable<Real>& tab) {
  static constexpr std::array<double, 5> silver_refs{0.182, 0.0798, 0.0344, 0.0145, 0.00606};
  static constexpr std::array<double, 5> bnb_refs{0.125, 0.0429, 0.0163, 0.00659, 0.00272};
  std::vector<ReferenceRow<Real>> rows;
  rows.reserve(5);
  for (int k = 1; k <= 5; ++k)
    rows.push_back({(1 << k) - 1, Real(1) / (2 * tab.r_at(k)), Real(silver_refs[k - 1]),
                    Real(bnb_refs[k - 1])});
  return rows;
}

/// Repeated left-heavy sweeps. Under the gradient-dominance condition
/// (1/2)||grad f||^2 >= mu (f - f*), each sweep contracts the gap by
/// L/(mu r_k); choosing r_k >= 2L/mu guarantees halving.
template <class Real = double>
struct RestartResult {
  std::vector<Real> gaps;   // gaps[t] = objective gap after t sweeps
  Real contraction_bound{}; // L / (mu r_k)
  bool halving_guaranteed = false;
};

template <class Real = double>
RestartResult<Real> restart_run(const SmoothConvexFn<Real>& fn, Real mu, int k, int sweeps,
                                const VectorX<Real>& x0, const ConstantsTable<Real>& tab) {
  if (!(mu > 0 && mu <= 1)) throw std::invalid_argument("restart_run: mu must lie in (0, 1]");
  if (sweeps < 0) throw std::invalid_argument("restart_run: sweeps must be >= 0");
  if (!fn.min_value()) throw std::invalid_argument("restart_run: objective needs a known minimum");
  const Real f_star = *fn.min_value();
  const Real L = fn.smoothness();

  RestartResult<Real> out;
  out.contraction_bound = L / (mu * tab.r_at(k));
  out.halving_guaranteed = tab.r_at(k) >= 2 * L / mu;

  const StepSchedule<Real> s = left_heavy_schedule(k, tab);
  VectorX<Real> x = x0;
  out.gaps.push_back(fn.value(x) - f_star);
  for (int t = 0; t < sweeps; ++t) {
    const Trajectory<Real> traj = gd_rollout(fn, x, s);
    x = traj.points.back().x;
    out.gaps.push_back(fn.value(x) - f_star);
  }
  return out;
}

/// Equality witnesses at level k: the 1-d quadratic with d = [L] and the
/// breakpoint-tuned Huber both attain each bound exactly.
template <class Real = double>
struct TightnessReport {
  BoundClaim claim = BoundClaim::grad_norm;
  std::string witness;  // "quadratic" or "huber"
  Real theoretical{};
  Real measured{};
  Real rel_slack{};
  bool pass = false;
};

namespace detail {

template <class Real>
TightnessReport<Real> tightness_row(BoundClaim claim, std::string witness, Real theoretical,
                                    Real measured, Real tol) {
  TightnessReport<Real> row{claim, std::move(witness), theoretical, measured, Real(0), false};
  const Real scale = std::max(std::abs(theoretical), std::abs(measured));
  row.rel_slack = scale > 0 ? std::abs(theoretical - measured) / scale : Real(0);
  row.pass = row.rel_slack <= tol;
  return row;
}

}  // namespace detail

template <class Real = double>
std::vector<TightnessReport<Real>> tightness_reports(int k, Real L, Real x0,
                                                     const ConstantsTable<Real>& tab,
                                                     Real tol = Real(1e-10)) {
  if (x0 == Real(0)) throw std::invalid_argument("tightness_reports: x0 must be nonzero");
  std::vector<TightnessReport<Real>> rows;
  VectorX<Real> start(1);
  start[0] = x0;
  const Real dist = std::abs(x0);

  const StepSchedule<Real> left = left_heavy_schedule(k, tab);
  const StepSchedule<Real> right = right_heavy_schedule(k, tab);
  const StepSchedule<Real> comp = composite_schedule(k, tab);

  VectorX<Real> diag(1);
  diag[0] = L;
  const DiagonalQuadratic<Real> quad(diag, L);
  const Huber<Real> huber_left(tight_eta_left(k, x0, tab), L);
  const Huber<Real> huber_right(tight_eta_right(k, x0, tab), L);

  // (1/2)||g_N||^2 vs L (f_0 - f*) / r_k under the left-heavy schedule
  for (const SmoothConvexFn<Real>* fn : {static_cast<const SmoothConvexFn<Real>*>(&quad),
                                         static_cast<const SmoothConvexFn<Real>*>(&huber_left)}) {
    const Trajectory<Real> t = gd_rollout(*fn, start, left);
    const Real gap0 = t.raw_f.front() - *t.raw_star_f;
    rows.push_back(detail::tightness_row<Real>(
        BoundClaim::grad_norm, fn == &quad ? "quadratic" : "huber",
        grad_norm_bound(k, L, gap0, tab), t.raw_g.back().squaredNorm() / 2, tol));
  }
  // f_N - f* vs (L/2)||x_0 - x*||^2 / r_k under the right-heavy schedule
  for (const SmoothConvexFn<Real>* fn : {static_cast<const SmoothConvexFn<Real>*>(&quad),
                                         static_cast<const SmoothConvexFn<Real>*>(&huber_right)}) {
    const Trajectory<Real> t = gd_rollout(*fn, start, right);
    rows.push_back(detail::tightness_row<Real>(
        BoundClaim::objective_gap, fn == &quad ? "quadratic" : "huber",
        objective_gap_bound(k, L, dist, tab), t.raw_f.back() - *t.raw_star_f, tol));
  }
  // ||g_N|| vs L ||x_0 - x*|| / r_k under the composite schedule
  for (const SmoothConvexFn<Real>* fn : {static_cast<const SmoothConvexFn<Real>*>(&quad),
                                         static_cast<const SmoothConvexFn<Real>*>(&huber_right)}) {
    const Trajectory<Real> t = gd_rollout(*fn, start, comp);
    rows.push_back(detail::tightness_row<Real>(
        BoundClaim::composite_grad, fn == &quad ? "quadratic" : "huber",
        composite_grad_bound(k, L, dist, tab), t.raw_g.back().norm(), tol));
  }
  return rows;
}

}  // namespace longsteps
