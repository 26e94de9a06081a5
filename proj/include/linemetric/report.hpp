#pragma once

// Structured reports: the classification pipeline for a distance matrix and
// JSON encodings of every result type. JSON objects keep insertion order, and
// scalars are written as their canonical literals, so output is reproducible.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "linemetric/error.hpp"
#include "linemetric/groupsets.hpp"
#include "linemetric/involution.hpp"
#include "linemetric/line_embedding.hpp"
#include "linemetric/metric_space.hpp"
#include "linemetric/scalar.hpp"
#include "linemetric/symbolic.hpp"

namespace linemetric {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_invalid_metric = 2,
  exit_not_subline = 3,
  exit_rectangle = 4,
  exit_internal = 5,
};

inline Json to_json(const QuadScalar& x) { return x.to_string(); }

inline Json to_json(const std::vector<QuadScalar>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

inline Json to_json(const Lattice& l) {
  Json basis = Json::array();
  for (const auto& b : l.basis_elements()) basis.push_back(b.to_string());
  return Json{{"generators", to_json(l.generators())}, {"basis", basis}, {"rank", l.rank()}};
}

inline Json to_json(const LineEmbedding& e) {
  Json out = Json::array();
  for (const auto& [label, x] : e.sorted_by_coordinate()) out.push_back(Json{{"label", label}, {"coordinate", x.to_string()}});
  return out;
}

inline Json to_json(const RectangleWitness& w) {
  return Json{{"relabeling", w.relabeling}, {"p", w.p.to_string()}, {"q", w.q.to_string()}};
}

inline Json to_json(const CenterRadius& cr) { return Json{{"center", cr.center}, {"radius", cr.radius.to_string()}}; }

inline Json to_json(const RayConditionReport& r) {
  Json cond1 = Json::array();
  for (const auto& f : r.cond1_failures) cond1.push_back(Json{{"x", f.x.to_string()}, {"r", f.r.to_string()}});
  return Json{{"apex", r.apex.to_string()},
              {"coeff_bound", r.coeff_bound},
              {"points_checked", r.points_checked},
              {"radii_checked", r.radii_checked},
              {"cond1_failures", cond1},
              {"cond2_failures", to_json(r.cond2_failures)},
              {"passed_at_scale", r.passed()}};
}

inline Json to_json(const ClosureViolation& v) {
  return Json{{"op", v.op == ClosureViolation::Op::sum ? "sum" : "difference"},
              {"x", v.x.to_string()},
              {"y", v.y.to_string()},
              {"result", v.result.to_string()}};
}

inline Json to_json(const SubgroupReconstruction& r) {
  Json coords = Json::object();
  for (const auto& [label, x] : r.coordinates) coords[label] = x.to_string();
  Json closure = Json::array();
  for (const auto& v : r.closure_report) closure.push_back(to_json(v));
  return Json{{"lattice", to_json(r.lattice)}, {"coordinates", coords}, {"closure_violations", closure}};
}

inline Json to_json(const std::optional<std::pair<QuadScalar, QuadScalar>>& pair) {
  if (!pair) return nullptr;
  return Json::array({pair->first.to_string(), pair->second.to_string()});
}

inline Json to_json(const Example1Certificate& c) {
  const auto& inst = c.instance;
  Json density = Json::array();
  for (auto k : c.density.counts) density.push_back(k);
  Json cone_apex_unresolved = to_json(c.cone_apex.unresolved);
  return Json{
      {"instance",
       {{"d", inst.d},
        {"a", inst.a.to_string()},
        {"b", inst.b.to_string()},
        {"group", to_json(inst.group)},
        {"phi", inst.phi.to_string()},
        {"ray", inst.ray.to_spec()},
        {"apex", inst.apex.to_string()}}},
      {"image_equals_group",
       {{"passed", c.group_part()}, {"image_is_group", c.image_is_group}, {"involution", c.involution}}},
      {"antisymmetry",
       {{"passed", c.antisymmetry_part()}, {"coeff_bound", c.options.coeff_bound}, {"failures", to_json(c.antisymmetry)}}},
      {"ray_conditions", {{"passed", c.ray_part()}, {"report", to_json(c.ray)}}},
      {"straddle",
       {{"passed", c.straddle_part()},
        {"coeff_bound", c.options.coeff_bound},
        {"ray_witness", to_json(c.straddle_ray)},
        {"cone_witness", to_json(c.straddle_cone)},
        {"cone_apex_unique", c.cone_apex.unique()},
        {"cone_points_with_doubleton_sphere", c.cone_apex.witnesses.size()},
        {"cone_apex_unresolved", cone_apex_unresolved}}},
      {"density",
       {{"passed", c.density_part()},
        {"lo", c.density.lo.to_string()},
        {"hi", c.density.hi.to_string()},
        {"coeff_bound", c.density.coeff_bound},
        {"counts", density}}},
      {"differences",
       {{"passed", c.differences.passed()},
        {"coeff_bound", c.differences.coeff_bound},
        {"outside_group", to_json(c.differences.outside_group)},
        {"unexpressed", to_json(c.differences.unexpressed)}}},
      {"passed", c.passed()},
  };
}

inline Json to_json(const std::optional<GroupTriple>& t) {
  if (!t) return nullptr;
  return Json::array({(*t)[0], (*t)[1], (*t)[2]});
}

inline Json to_json(const SemiaffineDecomposition& dec) {
  return std::visit(
      [](const auto& f) -> Json {
        using T = std::decay_t<decltype(f)>;
        Json h{{"step", f.subgroup.step}, {"size", f.subgroup.size()}};
        if constexpr (std::is_same_v<T, CosetForm>) {
          return Json{{"form", "cosets"}, {"subgroup", h}, {"a", f.a}, {"b", f.b}};
        } else {
          Json removed = Json::array();
          for (auto k : f.removed.elements()) removed.push_back(k * f.subgroup.step);
          return Json{{"form", "complement"}, {"subgroup", h}, {"removed", removed}, {"shift", f.shift}};
        }
      },
      dec);
}

inline std::string describe(const SemiaffineDecomposition& dec) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        const std::string h = std::to_string(f.subgroup.step) + "Z_" + std::to_string(f.subgroup.modulus);
        if constexpr (std::is_same_v<T, CosetForm>) {
          return "(" + h + " + " + std::to_string(f.a) + ") u (" + h + " + " + std::to_string(f.b) + ")";
        } else {
          std::string c = "{";
          bool first = true;
          for (auto k : f.removed.elements()) {
            c += (first ? "" : ",") + std::to_string(k * f.subgroup.step);
            first = false;
          }
          return "(" + h + " \\ " + c + "}) + " + std::to_string(f.shift);
        }
      },
      dec);
}

inline Json to_json(const TraceShape& t) {
  if (t.empty) return Json{{"empty", true}};
  return Json{{"empty", false},         {"lo", t.lo},         {"hi", t.hi},
              {"step", t.step},         {"offset", t.offset}, {"lo_at_window_edge", t.lo_at_edge},
              {"hi_at_window_edge", t.hi_at_edge}};
}

// Everything the classification pipeline learns about one distance matrix.
struct ClassificationReport {
  std::size_t points = 0;
  std::int64_t radicand = 1;
  bool metric_valid = false;
  std::vector<MetricViolation> violations;
  std::vector<std::string> labels;
  std::optional<bool> subline;
  std::optional<LabelTriple> subline_witness;
  std::optional<RectangleWitness> rectangle;
  bool embeddable = false;
  std::optional<LineEmbedding> embedding;
  std::optional<SphericityResult> sphericity;
  std::optional<BanakhResult> banakh;
  std::vector<std::string> apexes;
  std::optional<RayWindowReport> ray;
  std::optional<SubgroupReconstruction> reconstruction;
  std::optional<std::string> internal_error;

  int exit_code() const {
    if (internal_error) return exit_internal;
    if (!metric_valid) return exit_invalid_metric;
    if (subline && !*subline) return exit_not_subline;
    if (rectangle) return exit_rectangle;
    return exit_ok;
  }
};

// verify -> subline -> rectangle -> embed -> spheres -> Banakh -> apexes -> ray
// -> subgroup reconstruction. Stops after the first failure that makes later
// stages meaningless (invalid metric, non-subline).
inline ClassificationReport classify(const FiniteMetricSpace& m) {
  ClassificationReport r;
  r.points = m.size();
  r.radicand = m.radicand();
  r.labels = m.labels();
  r.violations = m.violations();
  r.metric_valid = m.is_valid();
  if (!r.metric_valid) return r;

  const auto sub = is_subline(m);
  r.subline = sub.holds;
  r.subline_witness = sub.witness;
  if (!sub.holds) return r;

  try {
    auto decision = decide_embeddable(m);
    r.rectangle = std::move(decision.rectangle);
    r.embeddable = decision.embeddable;
    r.embedding = std::move(decision.embedding);
  } catch (const InternalInconsistency& e) {
    r.internal_error = e.what();
    return r;
  }
  if (m.size() >= 2) r.sphericity = sphericity(m);
  r.banakh = is_banakh_window(m);
  r.apexes = apex_candidates(m);
  r.ray = is_consistent_with_ray(m);
  if (r.embedding && m.size() >= 2) r.reconstruction = reconstruct_subgroup(*r.embedding);
  return r;
}

inline Json to_json(const ClassificationReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json entry{{"kind", to_string(v.kind)}, {"i", r.labels[v.i]}, {"j", r.labels[v.j]}};
    if (v.kind == MetricViolation::Kind::triangle) entry["k"] = r.labels[v.k];
    violations.push_back(entry);
  }
  Json out{{"points", r.points}, {"radicand", r.radicand}, {"metric_valid", r.metric_valid}, {"violations", violations}};
  out["subline"] = r.subline ? Json(*r.subline) : Json(nullptr);
  out["subline_witness"] = r.subline_witness ? Json(*r.subline_witness) : Json(nullptr);
  out["rectangle"] = r.rectangle ? to_json(*r.rectangle) : Json(nullptr);
  out["embeddable"] = r.embeddable;
  out["embedding"] = r.embedding ? to_json(*r.embedding) : Json(nullptr);
  if (r.sphericity) {
    out["sphericity"] = Json{{"value", r.sphericity->value},
                             {"center", r.sphericity->center},
                             {"radius", r.sphericity->radius.to_string()}};
  } else {
    out["sphericity"] = nullptr;
  }
  if (r.banakh) {
    out["banakh_window"] =
        Json{{"holds", r.banakh->holds}, {"witness", r.banakh->witness ? to_json(*r.banakh->witness) : Json(nullptr)}};
  } else {
    out["banakh_window"] = nullptr;
  }
  out["apexes"] = r.apexes;
  if (r.ray) {
    Json deficiencies = Json::array();
    for (const auto& d : r.ray->sphericity_deficiencies) deficiencies.push_back(to_json(d));
    out["ray_window"] = Json{{"consistent", r.ray->consistent()}, {"sphericity_deficiencies", deficiencies}};
  } else {
    out["ray_window"] = nullptr;
  }
  out["reconstructed_group"] = r.reconstruction ? to_json(*r.reconstruction) : Json(nullptr);
  if (r.internal_error) out["internal_error"] = *r.internal_error;
  out["exit_code"] = r.exit_code();
  return out;
}

inline std::string to_text(const ClassificationReport& r) {
  std::ostringstream out;
  out << "points: " << r.points << "\n";
  if (r.radicand != 1) out << "field: Q(sqrt(" << r.radicand << "))\n";
  out << "metric: " << (r.metric_valid ? "valid" : "INVALID") << "\n";
  for (const auto& v : r.violations) {
    out << "  " << to_string(v.kind) << " at (" << r.labels[v.i] << ", " << r.labels[v.j];
    if (v.kind == MetricViolation::Kind::triangle) out << ", " << r.labels[v.k];
    out << ")\n";
  }
  if (!r.metric_valid) return out.str();
  out << "subline: " << (*r.subline ? "yes" : "no");
  if (r.subline_witness) {
    const auto& w = *r.subline_witness;
    out << " (no triangle equality on " << w[0] << ", " << w[1] << ", " << w[2] << ")";
  }
  out << "\n";
  if (!*r.subline) return out.str();
  if (r.internal_error) {
    out << "INTERNAL INCONSISTENCY: " << *r.internal_error << "\n";
    return out.str();
  }
  if (r.rectangle) {
    const auto& w = *r.rectangle;
    out << "l1-rectangle: " << w.relabeling[0] << " " << w.relabeling[1] << " " << w.relabeling[2] << " "
        << w.relabeling[3] << " with p = " << w.p << ", q = " << w.q << "\n";
  } else {
    out << "l1-rectangle: none\n";
  }
  out << "embeddable: " << (r.embeddable ? "yes" : "no") << "\n";
  if (r.embedding) {
    for (const auto& [label, x] : r.embedding->sorted_by_coordinate()) out << "  " << label << "\t" << x << "\n";
  }
  if (r.sphericity) {
    out << "sphericity: " << r.sphericity->value << " (sphere around " << r.sphericity->center << " of radius "
        << r.sphericity->radius << ")\n";
  }
  if (r.banakh) {
    out << "banakh window: " << (r.banakh->holds ? "yes" : "no");
    if (r.banakh->witness) out << " (fails at center " << r.banakh->witness->center << ", radius " << r.banakh->witness->radius << ")";
    out << "\n";
  }
  out << "apexes:";
  if (r.apexes.empty()) out << " none";
  for (const auto& a : r.apexes) out << " " << a;
  out << "\n";
  if (r.ray) {
    out << "ray window: " << (r.ray->consistent() ? "consistent" : "inconsistent") << " ("
        << r.ray->sphericity_deficiencies.size() << " empty spheres at realized radii)\n";
  }
  if (r.reconstruction) {
    out << "reconstructed group: " << r.reconstruction->lattice.to_string() << "\n";
    out << "closure violations: " << r.reconstruction->closure_report.size() << "\n";
    for (const auto& v : r.reconstruction->closure_report) {
      out << "  " << v.x << (v.op == ClosureViolation::Op::sum ? " + " : " - ") << v.y << " = " << v.result
          << " missing\n";
    }
  }
  return out.str();
}

inline std::string to_text(const Example1Certificate& c) {
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  const auto& inst = c.instance;
  std::ostringstream out;
  out << "X = " << inst.ray.to_spec() << " over G = " << inst.group.to_string() << ", apex " << inst.apex << "\n";
  out << "[" << verdict(c.group_part()) << "] phi[G] = G" << (c.involution ? ", phi o phi = id" : ", phi o phi != id")
      << "\n";
  out << "[" << verdict(c.antisymmetry_part()) << "] antisymmetry on window(G, " << c.options.coeff_bound
      << "): " << c.antisymmetry.size() << " failures\n";
  out << "[" << verdict(c.ray_part()) << "] ray conditions at apex, N = " << c.ray.coeff_bound << ": "
      << c.ray.points_checked << " points x " << c.ray.radii_checked << " radii, " << c.ray.cond1_failures.size()
      << " + " << c.ray.cond2_failures.size() << " failures\n";
  out << "[" << verdict(c.straddle_part()) << "] straddle at apex: X ";
  if (c.straddle_ray) {
    out << "(" << c.straddle_ray->first << ", " << c.straddle_ray->second << ")";
  } else {
    out << "none";
  }
  out << "; cone(G) " << (c.straddle_cone ? "found one" : "none") << "; cone apex unique "
      << (c.cone_apex.unique() ? "yes" : "no") << "\n";
  out << "[" << verdict(c.density_part()) << "] density on [" << c.density.lo << ", " << c.density.hi << "], "
      << c.density.counts.size() << " buckets, N = " << c.density.coeff_bound << ":";
  for (auto k : c.density.counts) out << " " << k;
  out << "\n";
  out << "[" << verdict(c.differences.passed()) << "] X - X = G at N = " << c.differences.coeff_bound << "\n";
  out << "certificate: " << verdict(c.passed()) << "\n";
  return out.str();
}

}  // namespace linemetric
