#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "longsteps/constants.hpp"
#include "longsteps/types.hpp"

namespace longsteps {

/// An L-smooth convex objective with first-order oracle access. The
/// minimizer, when known, lets rollouts attach an optimal point with zero
/// gradient.
template <class Real = double>
class SmoothConvexFn {
 public:
  virtual ~SmoothConvexFn() = default;

  virtual int dim() const = 0;
  virtual Real smoothness() const = 0;
  virtual Real value(const VectorX<Real>& x) const = 0;
  virtual VectorX<Real> gradient(const VectorX<Real>& x) const = 0;
  virtual std::optional<VectorX<Real>> minimizer() const { return std::nullopt; }
  virtual std::optional<Real> min_value() const { return std::nullopt; }
};

/// f(x) = (1/2) sum d_i x_i^2 with 0 <= d_i <= L. Minimizer at the origin.
/// With d = [L] in one dimension this is the worst case attaining the
/// objective-gap bound with equality.
template <class Real = double>
class DiagonalQuadratic final : public SmoothConvexFn<Real> {
 public:
  DiagonalQuadratic(VectorX<Real> diag, Real L) : diag_(std::move(diag)), L_(L) {
    if (!(L_ > 0)) throw std::invalid_argument("DiagonalQuadratic: L must be positive");
    if (diag_.size() < 1) throw std::invalid_argument("DiagonalQuadratic: empty diagonal");
    for (Index i = 0; i < diag_.size(); ++i)
      if (!(diag_[i] >= 0 && diag_[i] <= L_))
        throw std::invalid_argument("DiagonalQuadratic: diagonal entries must lie in [0, L]");
  }

  int dim() const override { return static_cast<int>(diag_.size()); }
  Real smoothness() const override { return L_; }
  Real value(const VectorX<Real>& x) const override {
    return diag_.cwiseProduct(x).dot(x) / Real(2);
  }
  VectorX<Real> gradient(const VectorX<Real>& x) const override {
    return diag_.cwiseProduct(x);
  }
  std::optional<VectorX<Real>> minimizer() const override {
    return VectorX<Real>::Zero(diag_.size());
  }
  std::optional<Real> min_value() const override { return Real(0); }

  const VectorX<Real>& diagonal() const { return diag_; }

 private:
  VectorX<Real> diag_;
  Real L_;
};

/// Univariate Huber function: (L/2) x^2 inside the breakpoint eta, linear
/// with slope L eta outside. C^1 at |x| = eta; minimizer 0, value 0.
template <class Real = double>
class Huber final : public SmoothConvexFn<Real> {
 public:
  Huber(Real eta, Real L) : eta_(eta), L_(L) {
    if (!(eta_ > 0)) throw std::invalid_argument("Huber: eta must be positive");
    if (!(L_ > 0)) throw std::invalid_argument("Huber: L must be positive");
  }

  int dim() const override { return 1; }
  Real smoothness() const override { return L_; }
  Real value(const VectorX<Real>& x) const override { return value_at(x[0]); }
  VectorX<Real> gradient(const VectorX<Real>& x) const override {
    VectorX<Real> g(1);
    g[0] = gradient_at(x[0]);
    return g;
  }
  std::optional<VectorX<Real>> minimizer() const override { return VectorX<Real>::Zero(1); }
  std::optional<Real> min_value() const override { return Real(0); }

  Real value_at(Real x) const {
    const Real a = std::abs(x);
    if (a <= eta_) return L_ / Real(2) * x * x;
    return L_ * eta_ * a - L_ * eta_ * eta_ / Real(2);
  }
  Real gradient_at(Real x) const {
    if (std::abs(x) <= eta_) return L_ * x;
    return x > 0 ? L_ * eta_ : -L_ * eta_;
  }
  Real breakpoint() const { return eta_; }

 private:
  Real eta_;
  Real L_;
};

/// Breakpoint making the gradient-norm bound (left-heavy schedule) an
/// equality: eta = 2 |x0| / (1 + r_k).
template <class Real = double>
Real tight_eta_left(int k, Real x0, const ConstantsTable<Real>& tab) {
  if (x0 == Real(0)) throw std::invalid_argument("tight_eta_left: x0 must be nonzero");
  return 2 * std::abs(x0) / (Real(1) + tab.r_at(k));
}

/// Breakpoint making the objective-gap bound (right-heavy schedule) and the
/// composite gradient bound equalities: eta = |x0| / r_k.
template <class Real = double>
Real tight_eta_right(int k, Real x0, const ConstantsTable<Real>& tab) {
  if (x0 == Real(0)) throw std::invalid_argument("tight_eta_right: x0 must be nonzero");
  return std::abs(x0) / tab.r_at(k);
}

}  // namespace longsteps
