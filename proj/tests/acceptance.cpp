// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Run directly or through ctest as the `acceptance` test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "longsteps/bounds.hpp"
#include "longsteps/certificates.hpp"
#include "longsteps/io.hpp"

using namespace longsteps;

namespace {

int g_failures = 0;

void report(int number, const std::string& what, bool pass, const std::string& detail = "") {
  std::printf("[%s] %d. %s%s%s\n", pass ? "PASS" : "FAIL", number, what.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++g_failures;
}

double round_to_3_sig(double v) {
  const double mag = std::pow(10.0, std::floor(std::log10(std::abs(v))) - 2);
  return std::round(v / mag) * mag;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

const ConstantsTable<double>& tab = default_constants();

// 1. 1/(2 r_k) for k = 1..5 reproduces the published column to 3 significant
//    figures, in under a millisecond.
void criterion_1() {
  const double expect[] = {0.125, 0.0429, 0.0164, 0.00654, 0.00266};
  const auto t0 = Clock::now();
  const auto local = ConstantsTable<double>::build(5);
  double values[5];
  for (int k = 1; k <= 5; ++k) values[k - 1] = 1.0 / (2.0 * local.r_at(k));
  const double elapsed = ms_since(t0);
  bool pass = elapsed < 1.0;
  for (int i = 0; i < 5; ++i)
    pass = pass && std::abs(round_to_3_sig(values[i]) - expect[i]) < 1e-12;
  report(1, "reference-table reproduction to 3 significant figures", pass,
         "computed [" + format_real(round_to_3_sig(values[0])) + ", ..., " +
             format_real(round_to_3_sig(values[4])) + "] in " + format_real(elapsed) + " ms");
}

// 2. Asymptotic constant ~ 2.32439 within 1e-5; gamma_k strictly increasing
//    with gamma_20 > 0.999 gamma*.
void criterion_2() {
  const double gs = asymptotic_constant();
  bool pass = std::abs(gs - 2.32439) <= 1e-5;
  for (int k = 1; k < 20; ++k) pass = pass && tab.gamma_at(k) < tab.gamma_at(k + 1);
  pass = pass && tab.gamma_at(20) > 0.999 * gs;
  report(2, "asymptotic constant and gamma monotonicity", pass,
         "gamma* = " + format_real(gs) + ", gamma_20/gamma* = " +
             format_real(tab.gamma_at(20) / gs));
}

// 3. Sum and product characterizations of r_k for left/right plus the silver
//    identities, k <= 12, relative 1e-9, in under a second.
void criterion_3() {
  const auto t0 = Clock::now();
  bool pass = true;
  double worst = 0;
  for (int k = 1; k <= 12; ++k) {
    for (const auto& s : {left_heavy_schedule(k, tab), right_heavy_schedule(k, tab)}) {
      const auto rep = check_r_identities(s, tab, 1e-9);
      pass = pass && rep.pass;
      worst = std::max({worst, rep.rel_err_sum, rep.rel_err_product});
    }
    const auto sil = check_silver_identities(k, tab, 1e-9);
    pass = pass && sil.pass;
    worst = std::max({worst, sil.rel_err_sum, sil.rel_err_product});
  }
  const double elapsed = ms_since(t0);
  pass = pass && elapsed < 1000.0;
  report(3, "schedule identities through k = 12", pass,
         "worst rel err " + format_real(worst) + ", " + format_real(elapsed) + " ms");
}

// 4. Certificate identity suite: k <= 8 at 1e-8 over d in {1,2,5} x 20
//    seeds, extended to k <= 12 at 1e-6, in under two minutes.
void criterion_4() {
  const auto t0 = Clock::now();
  IdentitySuiteConfig<double> core;
  core.k_max = 8;
  core.dims = {1, 2, 5};
  core.seeds_per_cell = 20;
  core.tol = 1e-8;
  bool pass = true;
  double worst = 0;
  for (const auto& row : run_identity_suite(core, tab)) {
    pass = pass && row.pass;
    worst = std::max(worst, row.rel_err);
  }
  IdentitySuiteConfig<double> extended;
  extended.k_min = 9;
  extended.k_max = 12;
  extended.dims = {1, 2, 5};
  extended.seeds_per_cell = 20;
  extended.tol = 1e-6;
  double worst_ext = 0;
  for (const auto& row : run_identity_suite(extended, tab)) {
    pass = pass && row.pass;
    worst_ext = std::max(worst_ext, row.rel_err);
  }
  const double elapsed = ms_since(t0);
  pass = pass && elapsed < 120000.0;
  report(4, "certificate identity suite (core k <= 8, extended k <= 12)", pass,
         "worst rel err " + format_real(worst) + " / " + format_real(worst_ext) + " ext, " +
             format_real(elapsed) + " ms");
}

// 5. Entrywise nonnegativity of every certificate through k = 12 and the
//    c-vector sum identity to 1e-10.
void criterion_5() {
  bool pass = true;
  for (int k = 1; k <= 12; ++k) {
    for (CertLabel label : {CertLabel::A, CertLabel::B, CertLabel::D}) {
      if (k <= kDenseKLimit)
        pass = pass && build_certificate(label, k, tab).entries.minCoeff() >= 0.0;
      else
        pass = pass && min_streamed_contribution(label, k, tab) >= 0.0;
    }
    const auto c = build_c(k, tab);
    pass = pass && c.entries.minCoeff() >= 0.0;
    const double sqrt_r = std::sqrt(tab.r_at(k));
    pass = pass && std::abs(c.entries.sum() - sqrt_r) <= 1e-10 * sqrt_r;
  }
  report(5, "certificate nonnegativity and c-vector sums through k = 12", pass);
}

// 6. Quadratic and tuned-Huber witnesses attain all three bounds with
//    relative slack <= 1e-10 for k <= 10, in under a second.
void criterion_6() {
  const auto t0 = Clock::now();
  bool pass = true;
  double worst = 0;
  for (int k = 1; k <= 10; ++k)
    for (const auto& row : tightness_reports(k, 1.0, 1.0, tab, 1e-10)) {
      pass = pass && row.pass;
      worst = std::max(worst, row.rel_slack);
    }
  const double elapsed = ms_since(t0);
  pass = pass && elapsed < 1000.0;
  report(6, "tightness witnesses for k <= 10", pass,
         "worst rel slack " + format_real(worst) + ", " + format_real(elapsed) + " ms");
}

// 7. 100 random diagonal quadratics and 100 random Huber instances never
//    violate any of the three bounds beyond 1e-10 of scale.
void criterion_7() {
  std::mt19937_64 rng(90210);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> kdist(1, 8);
  std::uniform_int_distribution<int> ddist(1, 8);
  bool pass = true;

  const auto check_all = [&](const SmoothConvexFn<double>& fn, const VectorX<double>& x0, int k) {
    const double gap0 = fn.value(x0) - *fn.min_value();
    const double dist = x0.norm();
    const auto tl = gd_rollout(fn, x0, left_heavy_schedule(k, tab));
    const double b1 = grad_norm_bound(k, 1.0, gap0, tab);
    pass = pass && tl.raw_g.back().squaredNorm() / 2 <= b1 + 1e-10 * std::max(1.0, b1);
    const auto tr = gd_rollout(fn, x0, right_heavy_schedule(k, tab));
    const double b2 = objective_gap_bound(k, 1.0, dist, tab);
    pass = pass && tr.raw_f.back() - *fn.min_value() <= b2 + 1e-10 * std::max(1.0, b2);
    const auto tc = gd_rollout(fn, x0, composite_schedule(k, tab));
    const double b3 = composite_grad_bound(k, 1.0, dist, tab);
    pass = pass && tc.raw_g.back().norm() <= b3 + 1e-10 * std::max(1.0, b3);
  };

  for (int rep = 0; rep < 100; ++rep) {
    const int d = ddist(rng);
    VectorX<double> diag(d), x0(d);
    for (int c = 0; c < d; ++c) {
      diag[c] = u01(rng);
      x0[c] = 2 * gauss(rng);
    }
    if (x0.norm() == 0) x0[0] = 1;
    check_all(DiagonalQuadratic<double>(diag, 1.0), x0, kdist(rng));
  }
  for (int rep = 0; rep < 100; ++rep) {
    const double x0v = (0.5 + u01(rng)) * (u01(rng) < 0.5 ? -1 : 1);
    const double eta = 0.01 + 2 * std::abs(x0v) * u01(rng);
    VectorX<double> x0(1);
    x0[0] = x0v;
    check_all(Huber<double>(eta, 1.0), x0, kdist(rng));
  }
  report(7, "no-violation sweep over 100 quadratics and 100 Huber instances", pass);
}

// 8. Root residual, growth, ordering, and the r-formula identities through
//    k = 15 at relative 1e-9.
void criterion_8() {
  bool pass = true;
  double worst = 0;
  for (int k = 1; k <= 15; ++k) {
    const double a = tab.alpha_at(k);
    const double b1 = tab.beta_at(k + 1);
    const double rk = tab.r_at(k);
    const double resid = rk * (a - 1 - silver_ratio_pow(k)) + 2 * (a - 1) * (a - 1);
    const double resid_rel = std::abs(resid) / (rk * silver_ratio_pow(k));
    pass = pass && resid_rel <= 1e-9;
    pass = pass && rk >= 4 * silver_ratio_pow(k - 1) * (1 - 1e-12);
    pass = pass && tab.beta_at(k) < a && a < b1;
    const double e1 = std::abs(rk - 2 * (a - 1) * (a - 1) / (b1 - a)) / rk;
    const double e2 = std::abs(tab.r_at(k + 1) - 2 * (b1 - 1) * (b1 - 1) / (b1 - a)) / tab.r_at(k + 1);
    const double ratio_l = std::sqrt(rk) / (a - 1), ratio_r = std::sqrt(tab.r_at(k + 1)) / (b1 - 1);
    const double e3 = std::abs(ratio_l - ratio_r) / ratio_r;
    pass = pass && e1 <= 1e-9 && e2 <= 1e-9 && e3 <= 1e-9;
    worst = std::max({worst, resid_rel, e1, e2, e3});
  }
  report(8, "root, growth, ordering, and r-formula identities through k = 15", pass,
         "worst rel err " + format_real(worst));
}

// 9. Restart with mu = 0.1 and k = 3 halves the gap every sweep; ten sweeps
//    shrink it by at least 2^10.
void criterion_9() {
  VectorX<double> diag(4);
  diag << 0.1, 0.4, 0.7, 1.0;
  const DiagonalQuadratic<double> fn(diag, 1.0);
  VectorX<double> x0(4);
  x0 << 1.0, 1.0, 1.0, 1.0;
  const auto res = restart_run(fn, 0.1, 3, 10, x0, tab);
  bool pass = res.halving_guaranteed;
  for (std::size_t t = 1; t < res.gaps.size(); ++t)
    pass = pass && res.gaps[t] <= res.gaps[t - 1] / 2;
  pass = pass && res.gaps.back() <= res.gaps.front() / 1024.0;
  report(9, "restart contraction with mu = 0.1, k = 3", pass,
         "total shrink factor " + format_real(res.gaps.front() / res.gaps.back()));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
