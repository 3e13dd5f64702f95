#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace longsteps {

// Largest schedule level the double-precision tables support: certificate
// entries grow like rho^{2k}, which exhausts a 53-bit mantissa near k = 20.
// A wider scalar type (e.g. long double) admits larger tables.
inline constexpr int kDefaultKMax = 20;

/// Silver ratio 1 + sqrt(2), evaluated at the precision of Real.
template <class Real = double>
Real silver_ratio() {
  return Real(1) + std::sqrt(Real(2));
}

template <class Real = double>
Real silver_ratio_pow(int e) {
  return std::pow(silver_ratio<Real>(), static_cast<Real>(e));
}

/// beta_k = 1 + rho^{k-1} for k >= 0; the entries of the silver schedule.
/// beta_0 = sqrt(2).
template <class Real = double>
Real beta(int k) {
  if (k < 0) throw std::invalid_argument("beta: k must be >= 0");
  return Real(1) + silver_ratio_pow<Real>(k - 1);
}

/// The spliced step alpha_k: the unique root greater than 1 of
/// r_k (x - 1 - rho^k) + 2 (x - 1)^2, in closed form. Lies strictly between
/// beta_k and beta_{k+1}.
template <class Real = double>
Real alpha(int k, Real r_k) {
  if (k < 1) throw std::invalid_argument("alpha: k must be >= 1");
  if (!(r_k > 0)) throw std::invalid_argument("alpha: r_k must be positive");
  const Real disc = std::sqrt(r_k * (r_k + 8 * silver_ratio_pow<Real>(k)));
  return Real(1) + (disc - r_k) / Real(4);
}

/// Advances the convergence constant: r_1 = 4 and
/// r_{k+1} = (r_k + 4 rho^k + sqrt(r_k (r_k + 8 rho^k))) / 2.
/// Equivalently r_{k+1} = r_k + 2 (rho^k - 1) + 2 alpha_k.
template <class Real = double>
Real r_next(int k, Real r_k) {
  if (k < 1) throw std::invalid_argument("r_next: k must be >= 1");
  if (!(r_k > 0)) throw std::invalid_argument("r_next: r_k must be positive");
  const Real rho_k = silver_ratio_pow<Real>(k);
  const Real disc = std::sqrt(r_k * (r_k + 8 * rho_k));
  return (r_k + 4 * rho_k + disc) / Real(2);
}

/// gamma* = (rho - 1)(1 + rho^{-1/2}) ~ 2.32439, the limit of r_k rho^{-k}.
/// Fixed point of x -> (4 + x + sqrt(x (x + 8))) / (2 rho).
template <class Real = double>
Real asymptotic_constant() {
  const Real rho = silver_ratio<Real>();
  return (rho - Real(1)) * (Real(1) + Real(1) / std::sqrt(rho));
}

/// Precomputed beta_k, alpha_k, r_k, gamma_k = r_k rho^{-k} for k up to
/// k_max. Immutable after build(); safe for concurrent reads.
template <class Real = double>
struct ConstantsTable {
  int k_max = 0;
  std::vector<Real> beta;   // beta[k], k = 0..k_max
  std::vector<Real> alpha;  // alpha[k], k = 1..k_max; slot 0 unused
  std::vector<Real> r;      // r[k], k = 1..k_max; slot 0 unused
  std::vector<Real> gamma;  // gamma[k], k = 1..k_max; slot 0 unused

  static ConstantsTable build(int k_max = kDefaultKMax) {
    if (k_max < 1) throw std::invalid_argument("ConstantsTable: k_max must be >= 1");
    ConstantsTable tab;
    tab.k_max = k_max;
    tab.beta.resize(k_max + 1);
    for (int k = 0; k <= k_max; ++k) tab.beta[k] = longsteps::beta<Real>(k);
    tab.alpha.assign(k_max + 1, Real(0));
    tab.r.assign(k_max + 1, Real(0));
    tab.gamma.assign(k_max + 1, Real(0));
    tab.r[1] = Real(4);
    for (int k = 1; k <= k_max; ++k) {
      tab.alpha[k] = longsteps::alpha<Real>(k, tab.r[k]);
      tab.gamma[k] = tab.r[k] / silver_ratio_pow<Real>(k);
      if (k < k_max) tab.r[k + 1] = longsteps::r_next<Real>(k, tab.r[k]);
    }
    return tab;
  }

  Real beta_at(int k) const {
    require(k, 0, "beta");
    return beta[k];
  }
  Real alpha_at(int k) const {
    require(k, 1, "alpha");
    return alpha[k];
  }
  Real r_at(int k) const {
    require(k, 1, "r");
    return r[k];
  }
  Real gamma_at(int k) const {
    require(k, 1, "gamma");
    return gamma[k];
  }

 private:
  void require(int k, int lo, const char* what) const {
    if (k < lo || k > k_max)
      throw std::out_of_range(std::string("ConstantsTable::") + what +
                              ": k = " + std::to_string(k) + " outside [" +
                              std::to_string(lo) + ", " + std::to_string(k_max) + "]");
  }
};

/// Shared double-precision table at the default depth.
inline const ConstantsTable<double>& default_constants() {
  static const ConstantsTable<double> tab = ConstantsTable<double>::build();
  return tab;
}

}  // namespace longsteps
