#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "longsteps/functions.hpp"
#include "longsteps/schedules.hpp"
#include "longsteps/types.hpp"

namespace longsteps {

template <class Real = double>
struct FirstOrderPoint {
  VectorX<Real> x;
  Real f{};
  VectorX<Real> g;
};

/// Index value selecting the minimizer point in q_form.
inline constexpr int star_index = -1;

/// First-order data along a gradient descent run. `points` carry
/// unit-smoothness values (f/L, g/L) which all certificate arithmetic reads;
/// the original-scale values are kept in raw_f / raw_g. `star`, when
/// present, is the minimizer with zero gradient.
template <class Real = double>
struct Trajectory {
  std::vector<FirstOrderPoint<Real>> points;
  std::optional<FirstOrderPoint<Real>> star;
  std::vector<Real> steps;
  Real L = 1;
  std::vector<Real> raw_f;
  std::vector<VectorX<Real>> raw_g;
  std::optional<Real> raw_star_f;

  int n_points() const { return static_cast<int>(points.size()); }
  int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().x.size()); }
};

/// Runs x_{i+1} = x_i - (h_i / L) grad f(x_i) and records the first-order
/// data at every iterate. Throws on non-finite values, which signal an
/// ill-posed objective or overflow.
template <class Real = double>
Trajectory<Real> gd_rollout(const SmoothConvexFn<Real>& fn, const VectorX<Real>& x0,
                            std::span<const Real> steps) {
  const Real L = fn.smoothness();
  if (!(L > 0)) throw std::invalid_argument("gd_rollout: smoothness must be positive");
  if (x0.size() != fn.dim()) throw std::invalid_argument("gd_rollout: x0 dimension mismatch");

  Trajectory<Real> t;
  t.L = L;
  t.steps.assign(steps.begin(), steps.end());
  t.points.reserve(steps.size() + 1);
  t.raw_f.reserve(steps.size() + 1);
  t.raw_g.reserve(steps.size() + 1);

  VectorX<Real> x = x0;
  for (std::size_t i = 0; i <= steps.size(); ++i) {
    const Real f = fn.value(x);
    VectorX<Real> g = fn.gradient(x);
    if (!std::isfinite(f) || !g.allFinite())
      throw std::runtime_error("gd_rollout: non-finite objective or gradient");
    t.raw_f.push_back(f);
    t.raw_g.push_back(g);
    t.points.push_back({x, f / L, g / L});
    if (i < steps.size()) x -= (steps[i] / L) * g;
  }

  if (auto xs = fn.minimizer()) {
    const Real fs = fn.min_value() ? *fn.min_value() : fn.value(*xs);
    t.raw_star_f = fs;
    t.star = FirstOrderPoint<Real>{*xs, fs / L, VectorX<Real>::Zero(xs->size())};
  }
  return t;
}

template <class Real = double>
Trajectory<Real> gd_rollout(const SmoothConvexFn<Real>& fn, const VectorX<Real>& x0,
                            const StepSchedule<Real>& s) {
  return gd_rollout<Real>(fn, x0, std::span<const Real>(s.entries));
}

/// Builds a trajectory from free first-order data: x follows the descent
/// recursion with L = 1 from the supplied gradients, while f and g values
/// are arbitrary. Used for polynomial-identity testing of certificates.
template <class Real = double>
Trajectory<Real> free_rollout(std::span<const Real> f_values,
                              const std::vector<VectorX<Real>>& gradients,
                              const VectorX<Real>& x0, std::span<const Real> steps) {
  if (f_values.size() != steps.size() + 1 || gradients.size() != steps.size() + 1)
    throw std::invalid_argument("free_rollout: need exactly one value and gradient per point");
  for (const auto& g : gradients)
    if (g.size() != x0.size())
      throw std::invalid_argument("free_rollout: gradient dimension mismatch");

  Trajectory<Real> t;
  t.L = 1;
  t.steps.assign(steps.begin(), steps.end());
  t.points.reserve(f_values.size());
  VectorX<Real> x = x0;
  for (std::size_t i = 0; i < f_values.size(); ++i) {
    t.points.push_back({x, f_values[i], gradients[i]});
    t.raw_f.push_back(f_values[i]);
    t.raw_g.push_back(gradients[i]);
    if (i < steps.size()) x -= steps[i] * gradients[i];
  }
  return t;
}

template <class Real = double>
Trajectory<Real> free_rollout(std::span<const Real> f_values,
                              const std::vector<VectorX<Real>>& gradients,
                              const VectorX<Real>& x0, const StepSchedule<Real>& s) {
  return free_rollout<Real>(f_values, gradients, x0, std::span<const Real>(s.entries));
}

namespace detail {
template <class Real>
const FirstOrderPoint<Real>& point_or_star(const Trajectory<Real>& t, int i) {
  if (i == star_index) {
    if (!t.star) throw std::invalid_argument("q_form: trajectory has no minimizer point");
    return *t.star;
  }
  if (i < 0 || i >= t.n_points()) throw std::out_of_range("q_form: point index out of range");
  return t.points[static_cast<std::size_t>(i)];
}
}  // namespace detail

/// Cocoercivity form between two recorded points (unit-smoothness data):
///   Q_{i,j} = f_i - f_j - <g_j, x_i - x_j> - (1/2) ||g_i - g_j||^2.
/// Nonnegative whenever the data comes from an actual 1-smooth convex
/// function. i or j may be star_index; i == j is rejected.
template <class Real = double>
Real q_form(const Trajectory<Real>& t, int i, int j) {
  if (i == j) throw std::invalid_argument("q_form: indices must differ");
  const FirstOrderPoint<Real>& a = detail::point_or_star(t, i);
  const FirstOrderPoint<Real>& b = detail::point_or_star(t, j);
  return a.f - b.f - b.g.dot(a.x - b.x) - (a.g - b.g).squaredNorm() / Real(2);
}

}  // namespace longsteps
