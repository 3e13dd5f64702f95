#pragma once

#include <charconv>
#include <string>
#include <system_error>

#include <json.hpp>

#include "longsteps/bounds.hpp"
#include "longsteps/certificates.hpp"
#include "longsteps/schedules.hpp"
#include "longsteps/trajectory.hpp"

namespace longsteps {

using json = nlohmann::ordered_json;

/// Shortest decimal string that parses back to the same value.
template <class Real = double>
std::string format_real(Real v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf, res.ptr);
}

// --- schedules ---

template <class Real = double>
json schedule_to_json(const StepSchedule<Real>& s) {
  json j;
  j["kind"] = to_string(s.kind);
  j["k"] = s.k;
  json entries = json::array();
  for (const Real h : s.entries) entries.push_back(format_real(h));
  j["entries"] = std::move(entries);
  return j;
}

template <class Real = double>
std::string schedule_to_csv(const StepSchedule<Real>& s) {
  std::string out = "index,entry\n";
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_real(s.entries[i]);
    out += '\n';
  }
  return out;
}

// --- trajectories ---

template <class Real = double>
json trajectory_to_json(const Trajectory<Real>& t,
                        const std::string& schedule_ref = std::string()) {
  json j;
  j["L"] = t.L;
  j["schedule_ref"] = schedule_ref;
  json points = json::array();
  for (std::size_t i = 0; i < t.raw_f.size(); ++i) {
    json p;
    json x = json::array();
    for (Index c = 0; c < t.points[i].x.size(); ++c) x.push_back(t.points[i].x[c]);
    p["x"] = std::move(x);
    p["f"] = t.raw_f[i];
    json g = json::array();
    for (Index c = 0; c < t.raw_g[i].size(); ++c) g.push_back(t.raw_g[i][c]);
    p["g"] = std::move(g);
    points.push_back(std::move(p));
  }
  j["points"] = std::move(points);
  if (t.star) {
    json star;
    json x = json::array();
    for (Index c = 0; c < t.star->x.size(); ++c) x.push_back(t.star->x[c]);
    star["x"] = std::move(x);
    star["f"] = t.raw_star_f ? *t.raw_star_f : t.star->f;
    star["g"] = json::array();
    for (Index c = 0; c < t.star->g.size(); ++c) star["g"].push_back(Real(0));
    j["star"] = std::move(star);
  } else {
    j["star"] = nullptr;
  }
  return j;
}

// --- certificates ---

/// Dense export for inspection; limited to small levels where the matrix is
/// a reasonable payload.
template <class Real = double>
json certificate_to_json(const CertMatrix<Real>& m) {
  if (m.k > 8) throw std::invalid_argument("certificate_to_json: export limited to k <= 8");
  json j;
  j["label"] = to_string(m.label);
  j["k"] = m.k;
  json rows = json::array();
  for (Index i = 0; i < m.entries.rows(); ++i) {
    json row = json::array();
    for (Index c = 0; c < m.entries.cols(); ++c) row.push_back(m.entries(i, c));
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

template <class Real = double>
std::string cert_reports_to_csv(const std::vector<CertCheckReport<Real>>& rows) {
  std::string out = "label,k,d,seed,lhs,rhs,rel_err,pass\n";
  for (const auto& r : rows) {
    out += to_string(r.label);
    out += ',' + std::to_string(r.k);
    out += ',' + std::to_string(r.dim);
    out += ',' + std::to_string(r.seed);
    out += ',' + format_real(r.lhs);
    out += ',' + format_real(r.rhs);
    out += ',' + format_real(r.rel_err);
    out += ',';
    out += r.pass ? "1" : "0";
    out += '\n';
  }
  return out;
}

template <class Real = double>
json cert_reports_to_json(const std::vector<CertCheckReport<Real>>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["label"] = to_string(r.label);
    j["k"] = r.k;
    j["d"] = r.dim;
    j["seed"] = r.seed;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["rel_err"] = r.rel_err;
    j["pass"] = r.pass;
    arr.push_back(std::move(j));
  }
  return arr;
}

// --- bounds ---

template <class Real = double>
std::string reference_table_to_csv(const std::vector<ReferenceRow<Real>>& rows) {
  std::string out = "N,ours,silver_ref,bnb_ref\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n_steps);
    out += ',' + format_real(r.bound);
    out += ',' + format_real(r.silver_ref);
    out += ',' + format_real(r.bnb_ref);
    out += '\n';
  }
  return out;
}

template <class Real = double>
json reference_table_to_json(const std::vector<ReferenceRow<Real>>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["N"] = r.n_steps;
    j["ours"] = r.bound;
    j["silver_ref"] = r.silver_ref;
    j["bnb_ref"] = r.bnb_ref;
    arr.push_back(std::move(j));
  }
  return arr;
}

template <class Real = double>
std::string restart_to_csv(const RestartResult<Real>& res) {
  std::string out = "sweep,gap,ratio\n";
  for (std::size_t t = 0; t < res.gaps.size(); ++t) {
    out += std::to_string(t);
    out += ',' + format_real(res.gaps[t]);
    out += ',';
    out += t == 0 ? std::string("") : format_real(res.gaps[t - 1] / res.gaps[t]);
    out += '\n';
  }
  return out;
}

}  // namespace longsteps
