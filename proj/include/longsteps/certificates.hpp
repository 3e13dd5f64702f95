#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "longsteps/constants.hpp"
#include "longsteps/schedules.hpp"
#include "longsteps/trajectory.hpp"
#include "longsteps/types.hpp"

namespace longsteps {

enum class CertLabel { A, B, D };

inline std::string to_string(CertLabel label) {
  switch (label) {
    case CertLabel::A: return "A";
    case CertLabel::B: return "B";
    case CertLabel::D: return "D";
  }
  return "?";
}

/// Dense nonnegative multiplier matrix over point pairs, 2^k x 2^k,
/// zero diagonal.
template <class Real = double>
struct CertMatrix {
  CertLabel label = CertLabel::B;
  int k = 0;
  MatrixX<Real> entries;
};

/// The weight vector c_k: 2^k nonnegative entries summing to sqrt(r_k).
template <class Real = double>
struct CertVector {
  int k = 0;
  VectorX<Real> entries;
};

// Matrices are materialized up to this level; above it the streamed
// recursion evaluates weighted sums without storing 2^k x 2^k entries.
inline constexpr int kDenseKLimit = 10;

namespace detail {

template <class Real>
void require_cert_level(int k, const ConstantsTable<Real>& tab, const char* what) {
  if (k < 1 || k > tab.k_max)
    throw std::invalid_argument(std::string(what) + ": k = " + std::to_string(k) +
                                " outside [1, " + std::to_string(tab.k_max) + "]");
}

// One doubling step of the B recursion: blockdiag(B_j, rho^2 B_j) plus two
// correction rows. The correction's pi block in the last row lands on
// columns already holding the scaled copy's last row; entries add.
template <class Real>
void double_B(MatrixX<Real>& b, int j) {
  const Real rho = silver_ratio<Real>();
  const Index half = b.rows();
  MatrixX<Real> next = MatrixX<Real>::Zero(2 * half, 2 * half);
  next.topLeftCorner(half, half) = b;
  next.bottomRightCorner(half, half) = rho * rho * b;
  const std::vector<Real> pi = silver_entries<Real>(j);
  for (Index t = 0; t < static_cast<Index>(pi.size()); ++t) {
    next(half - 1, half + t) += pi[static_cast<std::size_t>(t)];
    next(2 * half - 1, half + t) += pi[static_cast<std::size_t>(t)];
  }
  next(half - 1, 2 * half - 1) += Real(1);
  next(2 * half - 1, half - 1) += silver_ratio_pow<Real>(j - 1);
  b = std::move(next);
}

}  // namespace detail

/// B_1 = [[0, 1], [1/rho, 0]], doubled k-1 times.
template <class Real = double>
CertMatrix<Real> build_B(int k, const ConstantsTable<Real>& tab) {
  detail::require_cert_level(k, tab, "build_B");
  const Real rho = silver_ratio<Real>();
  MatrixX<Real> b(2, 2);
  b << Real(0), Real(1), Real(1) / rho, Real(0);
  for (int j = 1; j < k; ++j) detail::double_B(b, j);
  return {CertLabel::B, k, std::move(b)};
}

/// A_1 = [[0, 2], [1, 0]]; each level glues the previous A with a scaled B
/// block plus correction rows. Nonnegativity of the (2^{k+1}-1, 2^k-1)
/// entry, r_{k+1}/(2 rho^k) - 1, follows from r_{k+1} >= 4 rho^k.
template <class Real = double>
CertMatrix<Real> build_A(int k, const ConstantsTable<Real>& tab) {
  detail::require_cert_level(k, tab, "build_A");
  const Real rho = silver_ratio<Real>();
  MatrixX<Real> a(2, 2);
  a << Real(0), Real(2), Real(1), Real(0);
  MatrixX<Real> b(2, 2);
  b << Real(0), Real(1), Real(1) / rho, Real(0);
  for (int j = 1; j < k; ++j) {
    const Index half = a.rows();
    const Real r_up = tab.r_at(j + 1);
    MatrixX<Real> next = MatrixX<Real>::Zero(2 * half, 2 * half);
    next.topLeftCorner(half, half) = a;
    next.bottomRightCorner(half, half) = (r_up / silver_ratio_pow<Real>(2 * j - 1)) * b;
    const Real s = r_up / (2 * silver_ratio_pow<Real>(2 * j));
    const std::vector<Real> pi = silver_entries<Real>(j);
    for (Index t = 0; t < static_cast<Index>(pi.size()); ++t) {
      next(half - 1, half + t) += s * pi[static_cast<std::size_t>(t)];
      next(2 * half - 1, half + t) += s * pi[static_cast<std::size_t>(t)];
    }
    next(half - 1, 2 * half - 1) += s;
    next(2 * half - 1, half - 1) += s * (silver_ratio_pow<Real>(j) - 2 * silver_ratio_pow<Real>(2 * j) / r_up);
    a = std::move(next);
    detail::double_B(b, j);
  }
  if (a.minCoeff() < Real(0))
    throw std::logic_error("build_A: negative entry, construction is inconsistent");
  return {CertLabel::A, k, std::move(a)};
}

/// c_1 = (1, 1); c_{k+1} prepends pi^(k)/sqrt(r_{k+1}) and
/// beta_{k+1}/sqrt(r_{k+1}), so every c_j survives as a suffix.
template <class Real = double>
CertVector<Real> build_c(int k, const ConstantsTable<Real>& tab) {
  detail::require_cert_level(k, tab, "build_c");
  std::vector<Real> c{Real(1), Real(1)};
  for (int j = 1; j < k; ++j) {
    const Real inv_sqrt_r = Real(1) / std::sqrt(tab.r_at(j + 1));
    std::vector<Real> next = silver_entries<Real>(j);
    for (Real& v : next) v *= inv_sqrt_r;
    next.reserve(next.size() + 1 + c.size());
    next.push_back(tab.beta_at(j + 1) * inv_sqrt_r);
    next.insert(next.end(), c.begin(), c.end());
    c = std::move(next);
  }
  CertVector<Real> out;
  out.k = k;
  out.entries = Eigen::Map<const VectorX<Real>>(c.data(), static_cast<Index>(c.size()));
  return out;
}

/// D_1 = [[0, 1/2], [0, 0]]; each level glues a scaled B block with the
/// previous D and adds one correction row weighted by c_j.
template <class Real = double>
CertMatrix<Real> build_D(int k, const ConstantsTable<Real>& tab) {
  detail::require_cert_level(k, tab, "build_D");
  const Real rho = silver_ratio<Real>();
  MatrixX<Real> d(2, 2);
  d << Real(0), Real(1) / Real(2), Real(0), Real(0);
  MatrixX<Real> b(2, 2);
  b << Real(0), Real(1), Real(1) / rho, Real(0);
  std::vector<Real> c{Real(1), Real(1)};
  for (int j = 1; j < k; ++j) {
    const Index half = d.rows();
    const Real r_up = tab.r_at(j + 1);
    MatrixX<Real> next = MatrixX<Real>::Zero(2 * half, 2 * half);
    next.topLeftCorner(half, half) = (rho / r_up) * b;
    next.bottomRightCorner(half, half) = d;
    const Real w = Real(1) / std::sqrt(tab.r_at(j)) - Real(1) / std::sqrt(r_up);
    for (Index t = 0; t < half; ++t)
      next(half - 1, half + t) += w * c[static_cast<std::size_t>(t)];
    d = std::move(next);
    // advance c to c_{j+1}
    const Real inv_sqrt_r = Real(1) / std::sqrt(r_up);
    std::vector<Real> cn = silver_entries<Real>(j);
    for (Real& v : cn) v *= inv_sqrt_r;
    cn.push_back(tab.beta_at(j + 1) * inv_sqrt_r);
    cn.insert(cn.end(), c.begin(), c.end());
    c = std::move(cn);
    detail::double_B(b, j);
  }
  return {CertLabel::D, k, std::move(d)};
}

template <class Real = double>
CertMatrix<Real> build_certificate(CertLabel label, int k, const ConstantsTable<Real>& tab) {
  switch (label) {
    case CertLabel::A: return build_A(k, tab);
    case CertLabel::B: return build_B(k, tab);
    case CertLabel::D: return build_D(k, tab);
  }
  throw std::invalid_argument("build_certificate: unknown label");
}

// ---------------------------------------------------------------------------
// Streamed evaluation. The visitors enumerate structural nonzero
// contributions of the recursion without materializing matrices; a cell
// covered by both a block copy and a correction row is visited once per
// contribution and the contributions sum to the dense entry. All blocks sit
// on the diagonal, so one offset suffices.

namespace detail {

template <class Real, class Visit>
void visit_B(int k, std::span<const Real> pi, Visit&& visit, Index base, Real scale) {
  const Real rho = silver_ratio<Real>();
  if (k == 1) {
    visit(base, base + 1, scale);
    visit(base + 1, base, scale / rho);
    return;
  }
  const Index half = Index(1) << (k - 1);
  visit_B<Real>(k - 1, pi, visit, base, scale);
  visit_B<Real>(k - 1, pi, visit, base + half, scale * rho * rho);
  for (Index t = 0; t < half - 1; ++t) {
    visit(base + half - 1, base + half + t, scale * pi[static_cast<std::size_t>(t)]);
    visit(base + 2 * half - 1, base + half + t, scale * pi[static_cast<std::size_t>(t)]);
  }
  visit(base + half - 1, base + 2 * half - 1, scale);
  visit(base + 2 * half - 1, base + half - 1, scale * silver_ratio_pow<Real>(k - 2));
}

template <class Real, class Visit>
void visit_A(int k, const ConstantsTable<Real>& tab, std::span<const Real> pi, Visit&& visit,
             Index base, Real scale) {
  if (k == 1) {
    visit(base, base + 1, 2 * scale);
    visit(base + 1, base, scale);
    return;
  }
  const Index half = Index(1) << (k - 1);
  visit_A<Real>(k - 1, tab, pi, visit, base, scale);
  const Real r_k = tab.r_at(k);
  visit_B<Real>(k - 1, pi, visit, base + half, scale * r_k / silver_ratio_pow<Real>(2 * k - 3));
  const Real s = scale * r_k / (2 * silver_ratio_pow<Real>(2 * k - 2));
  for (Index t = 0; t < half - 1; ++t) {
    visit(base + half - 1, base + half + t, s * pi[static_cast<std::size_t>(t)]);
    visit(base + 2 * half - 1, base + half + t, s * pi[static_cast<std::size_t>(t)]);
  }
  visit(base + half - 1, base + 2 * half - 1, s);
  visit(base + 2 * half - 1, base + half - 1,
        s * (silver_ratio_pow<Real>(k - 1) - 2 * silver_ratio_pow<Real>(2 * k - 2) / r_k));
}

// c_full holds the entries of c_K for the top level K; c_j is its suffix of
// length 2^j.
template <class Real, class Visit>
void visit_D(int k, const ConstantsTable<Real>& tab, std::span<const Real> pi,
             std::span<const Real> c_full, Visit&& visit, Index base, Real scale) {
  const Real rho = silver_ratio<Real>();
  if (k == 1) {
    visit(base, base + 1, scale / 2);
    return;
  }
  const Index half = Index(1) << (k - 1);
  const Real r_k = tab.r_at(k);
  visit_B<Real>(k - 1, pi, visit, base, scale * rho / r_k);
  visit_D<Real>(k - 1, tab, pi, c_full, visit, base + half, scale);
  const Real w = scale * (Real(1) / std::sqrt(tab.r_at(k - 1)) - Real(1) / std::sqrt(r_k));
  const std::size_t tail = c_full.size() - static_cast<std::size_t>(half);
  for (Index t = 0; t < half; ++t)
    visit(base + half - 1, base + half + t, w * c_full[tail + static_cast<std::size_t>(t)]);
}

template <class Real, class Visit>
void visit_certificate(CertLabel label, int k, const ConstantsTable<Real>& tab, Visit&& visit) {
  const std::vector<Real> pi = k > 1 ? silver_entries<Real>(k - 1) : std::vector<Real>{};
  switch (label) {
    case CertLabel::B:
      visit_B<Real>(k, pi, visit, 0, Real(1));
      return;
    case CertLabel::A:
      visit_A<Real>(k, tab, pi, visit, 0, Real(1));
      return;
    case CertLabel::D: {
      const CertVector<Real> c = build_c(k, tab);
      const std::span<const Real> cs(c.entries.data(), static_cast<std::size_t>(c.entries.size()));
      visit_D<Real>(k, tab, pi, cs, visit, 0, Real(1));
      return;
    }
  }
  throw std::invalid_argument("visit_certificate: unknown label");
}

}  // namespace detail

/// Dense weighted sum over all point pairs of the trajectory.
template <class Real = double>
Real weighted_q_sum(const CertMatrix<Real>& m, const Trajectory<Real>& t) {
  if (m.entries.rows() != t.n_points() || m.entries.cols() != t.n_points())
    throw std::invalid_argument("weighted_q_sum: trajectory size does not match certificate");
  Real acc = 0;
  for (Index i = 0; i < m.entries.rows(); ++i)
    for (Index j = 0; j < m.entries.cols(); ++j) {
      const Real w = m.entries(i, j);
      if (w == Real(0)) continue;
      acc += w * q_form(t, static_cast<int>(i), static_cast<int>(j));
    }
  return acc;
}

/// Streamed weighted sum: accumulates contribution * Q over the recursion
/// without materializing the matrix. Agrees with the dense path wherever
/// both are available.
template <class Real = double>
Real weighted_q_sum_streamed(CertLabel label, int k, const ConstantsTable<Real>& tab,
                             const Trajectory<Real>& t) {
  detail::require_cert_level(k, tab, "weighted_q_sum_streamed");
  if (t.n_points() != (1 << k))
    throw std::invalid_argument("weighted_q_sum_streamed: trajectory size does not match level");
  Real acc = 0;
  detail::visit_certificate<Real>(label, k, tab, [&](Index i, Index j, Real v) {
    acc += v * q_form(t, static_cast<int>(i), static_cast<int>(j));
  });
  return acc;
}

/// Smallest streamed contribution. Every dense entry is a sum of streamed
/// contributions, so a nonnegative minimum certifies entrywise
/// nonnegativity at levels too large to materialize.
template <class Real = double>
Real min_streamed_contribution(CertLabel label, int k, const ConstantsTable<Real>& tab) {
  detail::require_cert_level(k, tab, "min_streamed_contribution");
  Real lo = std::numeric_limits<Real>::infinity();
  detail::visit_certificate<Real>(label, k, tab, [&](Index, Index, Real v) {
    if (v < lo) lo = v;
  });
  return lo;
}

// ---------------------------------------------------------------------------
// Identity checks. Each one evaluates the certificate's weighted Q-sum
// against the closed-form left-hand side on a free trajectory; the two agree
// identically in exact arithmetic for arbitrary f and g data.

template <class Real = double>
struct CertCheckReport {
  CertLabel label = CertLabel::B;
  int k = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  Real lhs{};
  Real rhs{};
  Real rel_err{};
  bool pass = false;
};

/// 1e-8 through k = 10, relaxed to 1e-6 beyond: certificate entries grow
/// like rho^{2k} and amplify roundoff.
template <class Real = double>
Real default_certificate_tolerance(int k) {
  return k <= 10 ? Real(1e-8) : Real(1e-6);
}

namespace detail {

template <class Real>
void require_free_unit_trajectory(const Trajectory<Real>& t, int k, ScheduleKind kind,
                                  const ConstantsTable<Real>& tab, const char* what) {
  if (t.L != Real(1))
    throw std::invalid_argument(std::string(what) + ": trajectory must be unit-smoothness");
  const StepSchedule<Real> expect = make_schedule(kind, k, tab);
  if (t.steps.size() != expect.entries.size())
    throw std::invalid_argument(std::string(what) + ": schedule length mismatch");
  for (std::size_t i = 0; i < t.steps.size(); ++i)
    if (t.steps[i] != expect.entries[i])
      throw std::invalid_argument(std::string(what) + ": schedule entries mismatch");
}

template <class Real>
Real certificate_rel_err(Real lhs, Real rhs, Real r_k) {
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), r_k});
}

template <class Real>
Real rhs_weighted_sum(CertLabel label, int k, const ConstantsTable<Real>& tab,
                      const Trajectory<Real>& t) {
  if (k <= kDenseKLimit) return weighted_q_sum(build_certificate(label, k, tab), t);
  return weighted_q_sum_streamed(label, k, tab, t);
}

}  // namespace detail

/// Verifies the silver-schedule certificate: sum B_{ij} Q_{ij} equals
///   -(1/rho) sum_i h_i (f_N - f_i - ||g_i||^2/2 - <g_i, x_0 - x_i>)
///   - ||x_N - x_0||^2 / (2 rho) - rho^{k-1}(rho^k - 1) ||g_N||^2 / 2
/// on any free trajectory under the silver schedule (N = 2^k - 1).
template <class Real = double>
CertCheckReport<Real> check_silver_certificate(int k, const Trajectory<Real>& t,
                                               const ConstantsTable<Real>& tab,
                                               std::optional<Real> tol = std::nullopt) {
  detail::require_cert_level(k, tab, "check_silver_certificate");
  detail::require_free_unit_trajectory(t, k, ScheduleKind::silver, tab, "check_silver_certificate");
  const Real rho = silver_ratio<Real>();
  const int n = (1 << k) - 1;
  const auto& p = t.points;
  Real lhs = 0;
  for (int i = 0; i < n; ++i)
    lhs += t.steps[static_cast<std::size_t>(i)] *
           (p[n].f - p[i].f - p[i].g.squaredNorm() / 2 - p[i].g.dot(p[0].x - p[i].x));
  lhs = -lhs / rho;
  lhs -= (p[n].x - p[0].x).squaredNorm() / (2 * rho);
  lhs -= silver_ratio_pow<Real>(k - 1) * (silver_ratio_pow<Real>(k) - 1) / 2 * p[n].g.squaredNorm();

  const Real rhs = detail::rhs_weighted_sum(CertLabel::B, k, tab, t);
  CertCheckReport<Real> rep{CertLabel::B, k, t.dim(), 0, lhs, rhs,
                            detail::certificate_rel_err(lhs, rhs, tab.r_at(k)), false};
  rep.pass = rep.rel_err <= tol.value_or(default_certificate_tolerance<Real>(k));
  return rep;
}

/// Verifies the gradient-norm certificate for the left-heavy schedule:
///   f_0 - f_N - (r_k - 1)/2 ||g_N||^2 = sum A_{ij} Q_{ij}.
template <class Real = double>
CertCheckReport<Real> check_grad_certificate(int k, const Trajectory<Real>& t,
                                             const ConstantsTable<Real>& tab,
                                             std::optional<Real> tol = std::nullopt) {
  detail::require_cert_level(k, tab, "check_grad_certificate");
  detail::require_free_unit_trajectory(t, k, ScheduleKind::left, tab, "check_grad_certificate");
  const int n = (1 << k) - 1;
  const auto& p = t.points;
  const Real lhs = p[0].f - p[n].f - (tab.r_at(k) - 1) / 2 * p[n].g.squaredNorm();
  const Real rhs = detail::rhs_weighted_sum(CertLabel::A, k, tab, t);
  CertCheckReport<Real> rep{CertLabel::A, k, t.dim(), 0, lhs, rhs,
                            detail::certificate_rel_err(lhs, rhs, tab.r_at(k)), false};
  rep.pass = rep.rel_err <= tol.value_or(default_certificate_tolerance<Real>(k));
  return rep;
}

/// Verifies the objective-gap certificate for the right-heavy schedule:
///   sum_i (c_k)_i/sqrt(r_k) (f_i - f_N + ||g_i||^2/2 + <g_i, x_0 - x_i>)
///   - ||sum_i (c_k)_i g_i||^2 / 2 = sum D_{ij} Q_{ij},
/// and re-checks sum c_k = sqrt(r_k).
template <class Real = double>
CertCheckReport<Real> check_objective_certificate(int k, const Trajectory<Real>& t,
                                                  const ConstantsTable<Real>& tab,
                                                  std::optional<Real> tol = std::nullopt) {
  detail::require_cert_level(k, tab, "check_objective_certificate");
  detail::require_free_unit_trajectory(t, k, ScheduleKind::right, tab, "check_objective_certificate");
  const int n = (1 << k) - 1;
  const auto& p = t.points;
  const CertVector<Real> c = build_c(k, tab);
  const Real sqrt_r = std::sqrt(tab.r_at(k));

  Real lhs = 0;
  VectorX<Real> weighted_g = VectorX<Real>::Zero(t.dim());
  for (int i = 0; i <= n; ++i) {
    const Real ci = c.entries[i];
    lhs += ci / sqrt_r * (p[i].f - p[n].f + p[i].g.squaredNorm() / 2 + p[i].g.dot(p[0].x - p[i].x));
    weighted_g += ci * p[i].g;
  }
  lhs -= weighted_g.squaredNorm() / 2;

  const Real rhs = detail::rhs_weighted_sum(CertLabel::D, k, tab, t);
  CertCheckReport<Real> rep{CertLabel::D, k, t.dim(), 0, lhs, rhs,
                            detail::certificate_rel_err(lhs, rhs, tab.r_at(k)), false};
  const Real eff_tol = tol.value_or(default_certificate_tolerance<Real>(k));
  const Real sum_err = std::abs(c.entries.sum() - sqrt_r) / sqrt_r;
  rep.pass = rep.rel_err <= eff_tol && sum_err <= eff_tol;
  return rep;
}

/// Free trajectory with standard Gaussian f values and gradients, x_0 = 0.
/// Draw order: all f values, then gradients point by point.
template <class Real = double>
Trajectory<Real> gaussian_free_trajectory(const StepSchedule<Real>& s, int dim,
                                          std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("gaussian_free_trajectory: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> normal(Real(0), Real(1));
  const std::size_t n = s.entries.size() + 1;
  std::vector<Real> f(n);
  for (Real& v : f) v = normal(rng);
  std::vector<VectorX<Real>> g(n);
  for (auto& gi : g) {
    gi.resize(dim);
    for (Index c = 0; c < dim; ++c) gi[c] = normal(rng);
  }
  return free_rollout<Real>(f, g, VectorX<Real>::Zero(dim), s);
}

/// Grid runner for the three identity checks across levels, dimensions, and
/// seeds. Rows come back sorted by (label, k, dim, seed).
template <class Real = double>
struct IdentitySuiteConfig {
  int k_min = 1;
  int k_max = 8;
  std::vector<int> dims{1, 2, 5};
  int seeds_per_cell = 20;
  std::uint64_t base_seed = 12345;
  std::optional<Real> tol;
};

template <class Real = double>
std::vector<CertCheckReport<Real>> run_identity_suite(const IdentitySuiteConfig<Real>& cfg,
                                                      const ConstantsTable<Real>& tab) {
  std::vector<CertCheckReport<Real>> rows;
  for (CertLabel label : {CertLabel::A, CertLabel::B, CertLabel::D}) {
    const ScheduleKind kind = label == CertLabel::A   ? ScheduleKind::left
                              : label == CertLabel::B ? ScheduleKind::silver
                                                      : ScheduleKind::right;
    for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
      const StepSchedule<Real> s = make_schedule(kind, k, tab);
      for (int d : cfg.dims) {
        for (int i = 0; i < cfg.seeds_per_cell; ++i) {
          const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(i);
          const Trajectory<Real> t = gaussian_free_trajectory(s, d, seed);
          CertCheckReport<Real> rep;
          switch (label) {
            case CertLabel::A: rep = check_grad_certificate(k, t, tab, cfg.tol); break;
            case CertLabel::B: rep = check_silver_certificate(k, t, tab, cfg.tol); break;
            case CertLabel::D: rep = check_objective_certificate(k, t, tab, cfg.tol); break;
          }
          rep.seed = seed;
          rows.push_back(rep);
        }
      }
    }
  }
  return rows;
}

}  // namespace longsteps
