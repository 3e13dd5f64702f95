#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <string>

#include "longsteps/bounds.hpp"
#include "longsteps/certificates.hpp"
#include "longsteps/io.hpp"

namespace py = pybind11;
using namespace longsteps;

namespace {

const ConstantsTable<double>& table() { return default_constants(); }

ScheduleKind kind_or_throw(const std::string& kind) {
  const auto parsed = parse_schedule_kind(kind);
  if (!parsed) throw std::invalid_argument("unknown schedule kind: " + kind);
  return *parsed;
}

CertLabel label_or_throw(const std::string& label) {
  if (label == "A") return CertLabel::A;
  if (label == "B") return CertLabel::B;
  if (label == "D") return CertLabel::D;
  throw std::invalid_argument("unknown certificate label: " + label);
}

py::dict rollout_dict(const Trajectory<double>& t) {
  const int n = t.n_points();
  const int d = t.dim();
  MatrixX<double> xs(n, d), gs(n, d);
  VectorX<double> fs(n);
  for (int i = 0; i < n; ++i) {
    xs.row(i) = t.points[i].x.transpose();
    gs.row(i) = t.raw_g[i].transpose();
    fs[i] = t.raw_f[i];
  }
  py::dict out;
  out["x"] = xs;
  out["f"] = fs;
  out["g"] = gs;
  out["steps"] = t.steps;
  out["L"] = t.L;
  if (t.raw_star_f) out["f_star"] = *t.raw_star_f;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Long-stepsize gradient descent schedules, convergence constants, "
            "and certificate verification.";

  m.def("silver_ratio", [] { return silver_ratio(); }, "1 + sqrt(2)");
  m.def("asymptotic_constant", [] { return asymptotic_constant(); },
        "(rho - 1)(1 + rho^{-1/2}), the limit of r_k rho^{-k}");

  m.def(
      "constants",
      [](int k_max) {
        const auto tab = ConstantsTable<double>::build(k_max);
        py::dict out;
        out["k_max"] = tab.k_max;
        out["beta"] = tab.beta;    // index k, from 0
        out["alpha"] = tab.alpha;  // index k, slot 0 unused
        out["r"] = tab.r;          // index k, slot 0 unused
        out["gamma"] = tab.gamma;  // index k, slot 0 unused
        return out;
      },
      py::arg("k_max") = kDefaultKMax,
      "beta/alpha/r/gamma arrays indexed by level (slot 0 of alpha/r/gamma unused)");

  m.def(
      "schedule",
      [](const std::string& kind, int k) {
        const auto s = make_schedule(kind_or_throw(kind), k, table());
        return VectorX<double>(
            Eigen::Map<const VectorX<double>>(s.entries.data(), static_cast<Index>(s.entries.size())));
      },
      py::arg("kind"), py::arg("k"), "stepsize entries for silver|left|right|composite");

  m.def(
      "check_r_identities",
      [](const std::string& kind, int k) {
        const auto rep = check_r_identities(make_schedule(kind_or_throw(kind), k, table()), table());
        py::dict out;
        out["r"] = rep.r_expected;
        out["sum_form"] = rep.sum_form;
        out["product_form"] = rep.product_form;
        out["rel_err_sum"] = rep.rel_err_sum;
        out["rel_err_product"] = rep.rel_err_product;
        out["pass"] = rep.pass;
        return out;
      },
      py::arg("kind"), py::arg("k"));

  m.def(
      "check_silver_identities",
      [](int k) {
        const auto rep = check_silver_identities(k, table());
        py::dict out;
        out["sum_form"] = rep.sum_form;
        out["sum_expected"] = rep.sum_expected;
        out["product_form"] = rep.product_form;
        out["product_expected"] = rep.product_expected;
        out["pass"] = rep.pass;
        return out;
      },
      py::arg("k"));

  m.def(
      "certificate",
      [](const std::string& label, int k) {
        if (k > 8) throw std::invalid_argument("dense certificate export is limited to k <= 8");
        return build_certificate(label_or_throw(label), k, table()).entries;
      },
      py::arg("label"), py::arg("k"), "dense multiplier matrix A|B|D (k <= 8)");

  m.def(
      "certificate_vector", [](int k) { return build_c(k, table()).entries; }, py::arg("k"),
      "the c weight vector");

  m.def(
      "verify_certificates",
      [](int k_max, int seeds, std::vector<int> dims, std::uint64_t seed) {
        IdentitySuiteConfig<double> cfg;
        cfg.k_max = k_max;
        cfg.seeds_per_cell = seeds;
        cfg.dims = std::move(dims);
        cfg.base_seed = seed;
        py::list rows;
        for (const auto& r : run_identity_suite(cfg, table())) {
          py::dict row;
          row["label"] = to_string(r.label);
          row["k"] = r.k;
          row["d"] = r.dim;
          row["seed"] = r.seed;
          row["lhs"] = r.lhs;
          row["rhs"] = r.rhs;
          row["rel_err"] = r.rel_err;
          row["pass"] = r.pass;
          rows.append(std::move(row));
        }
        return rows;
      },
      py::arg("k_max") = 8, py::arg("seeds") = 20, py::arg("dims") = std::vector<int>{4},
      py::arg("seed") = 12345,
      "randomized identity checks for the A/B/D certificates; one dict per cell");

  py::class_<SmoothConvexFn<double>, std::shared_ptr<SmoothConvexFn<double>>>(m, "SmoothConvexFn")
      .def("value", &SmoothConvexFn<double>::value)
      .def("gradient", &SmoothConvexFn<double>::gradient)
      .def_property_readonly("L", &SmoothConvexFn<double>::smoothness)
      .def_property_readonly("dim", &SmoothConvexFn<double>::dim);

  py::class_<DiagonalQuadratic<double>, SmoothConvexFn<double>,
             std::shared_ptr<DiagonalQuadratic<double>>>(m, "Quadratic")
      .def(py::init<VectorX<double>, double>(), py::arg("diag"), py::arg("L") = 1.0)
      .def_property_readonly("diagonal", &DiagonalQuadratic<double>::diagonal);

  py::class_<Huber<double>, SmoothConvexFn<double>, std::shared_ptr<Huber<double>>>(m, "Huber")
      .def(py::init<double, double>(), py::arg("eta"), py::arg("L") = 1.0)
      .def_property_readonly("eta", &Huber<double>::breakpoint);

  m.def(
      "rollout",
      [](const SmoothConvexFn<double>& fn, const VectorX<double>& x0, const std::string& kind,
         int k) { return rollout_dict(gd_rollout(fn, x0, make_schedule(kind_or_throw(kind), k, table()))); },
      py::arg("fn"), py::arg("x0"), py::arg("kind"), py::arg("k"),
      "gradient descent under a named schedule; returns x, f, g arrays");

  m.def(
      "rollout_steps",
      [](const SmoothConvexFn<double>& fn, const VectorX<double>& x0,
         const std::vector<double>& steps) {
        return rollout_dict(gd_rollout<double>(fn, x0, steps));
      },
      py::arg("fn"), py::arg("x0"), py::arg("steps"));

  m.def(
      "grad_norm_bound",
      [](int k, double L, double initial_gap) { return grad_norm_bound(k, L, initial_gap, table()); },
      py::arg("k"), py::arg("L"), py::arg("initial_gap"),
      "bound on (1/2)||g_N||^2 after the left-heavy schedule");
  m.def(
      "objective_gap_bound",
      [](int k, double L, double dist) { return objective_gap_bound(k, L, dist, table()); },
      py::arg("k"), py::arg("L"), py::arg("dist"),
      "bound on f(x_N) - f* after the right-heavy schedule");
  m.def(
      "composite_grad_bound",
      [](int k, double L, double dist) { return composite_grad_bound(k, L, dist, table()); },
      py::arg("k"), py::arg("L"), py::arg("dist"),
      "bound on ||g_N|| after the composite schedule");

  m.def(
      "tight_eta_left", [](int k, double x0) { return tight_eta_left(k, x0, table()); },
      py::arg("k"), py::arg("x0"));
  m.def(
      "tight_eta_right", [](int k, double x0) { return tight_eta_right(k, x0, table()); },
      py::arg("k"), py::arg("x0"));

  m.def("table1", [] {
    py::list rows;
    for (const auto& r : reference_table(table())) {
      py::dict row;
      row["N"] = r.n_steps;
      row["ours"] = r.bound;
      row["silver_ref"] = r.silver_ref;
      row["bnb_ref"] = r.bnb_ref;
      rows.append(std::move(row));
    }
    return rows;
  });

  m.def(
      "tightness",
      [](int k) {
        py::list rows;
        for (const auto& r : tightness_reports(k, 1.0, 1.0, table())) {
          py::dict row;
          row["claim"] = to_string(r.claim);
          row["witness"] = r.witness;
          row["theoretical"] = r.theoretical;
          row["measured"] = r.measured;
          row["rel_slack"] = r.rel_slack;
          row["pass"] = r.pass;
          rows.append(std::move(row));
        }
        return rows;
      },
      py::arg("k"), "equality checks for all three bounds on both witnesses");

  m.def(
      "restart_run",
      [](const SmoothConvexFn<double>& fn, double mu, int k, int sweeps,
         const VectorX<double>& x0) {
        const auto res = restart_run(fn, mu, k, sweeps, x0, table());
        py::dict out;
        out["gaps"] = res.gaps;
        out["contraction_bound"] = res.contraction_bound;
        out["halving_guaranteed"] = res.halving_guaranteed;
        return out;
      },
      py::arg("fn"), py::arg("mu"), py::arg("k"), py::arg("sweeps"), py::arg("x0"));
}
