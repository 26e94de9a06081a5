#pragma once

// The command layer behind the linemetric tool. Each command reads its inputs,
// writes its report to `out` and diagnostics to `err`, and returns an exit code
// (see ExitCode). Commands never terminate the process, so they can be driven
// directly from tests.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "linemetric/acceptance.hpp"
#include "linemetric/error.hpp"
#include "linemetric/groupsets.hpp"
#include "linemetric/involution.hpp"
#include "linemetric/line_embedding.hpp"
#include "linemetric/matrix_io.hpp"
#include "linemetric/report.hpp"
#include "linemetric/scalar.hpp"
#include "linemetric/symbolic.hpp"

namespace linemetric {

enum class OutputFormat { text, json };

struct CommonOptions {
  OutputFormat format = OutputFormat::text;
  std::optional<std::int64_t> radicand;  // --d; inferred from the input when unset

  ScalarContext context() const { return radicand ? ScalarContext::with(*radicand) : ScalarContext{}; }
};

namespace detail {

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline std::optional<FiniteMetricSpace> read_matrix(std::istream& in, const CommonOptions& opt, std::ostream& err) {
  try {
    return parse_matrix(in, opt.context());
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return std::nullopt;
}

}  // namespace detail

inline int cmd_check(std::istream& in, const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  const auto m = detail::read_matrix(in, opt, err);
  if (!m) return exit_usage;
  const auto report = classify(*m);
  if (opt.format == OutputFormat::json) {
    detail::emit(out, to_json(report));
  } else {
    out << to_text(report);
  }
  return report.exit_code();
}

inline int cmd_embed(std::istream& in, bool canonical, const CommonOptions& opt, std::ostream& out,
                     std::ostream& err) {
  const auto m = detail::read_matrix(in, opt, err);
  if (!m) return exit_usage;
  const bool json = opt.format == OutputFormat::json;
  Json j;
  int code = exit_ok;
  if (!m->is_valid()) {
    err << "not a metric: " << m->violations().size() << " axiom violations (run 'check' for details)\n";
    j = Json{{"embeddable", false}, {"reason", "invalid metric"}};
    code = exit_invalid_metric;
  } else {
    try {
      const auto decision = decide_embeddable(*m);
      if (decision.subline_failure) {
        const auto& w = *decision.subline_failure;
        err << "not a subline: no triangle equality on " << w[0] << ", " << w[1] << ", " << w[2] << "\n";
        j = Json{{"embeddable", false}, {"reason", "not a subline"}, {"triple", w}};
        code = exit_not_subline;
      } else if (decision.rectangle) {
        const auto& w = *decision.rectangle;
        err << "l1-rectangle " << w.relabeling[0] << " " << w.relabeling[1] << " " << w.relabeling[2] << " "
            << w.relabeling[3] << ": p = " << w.p << ", q = " << w.q << "\n";
        j = Json{{"embeddable", false}, {"reason", "l1-rectangle"}, {"rectangle", to_json(w)}};
        code = exit_rectangle;
      } else {
        const LineEmbedding e = canonical ? canonicalize(*decision.embedding) : *decision.embedding;
        if (!json) out << format_embedding(e);
        j = Json{{"embeddable", true}, {"canonical", canonical}, {"embedding", to_json(e)}};
      }
    } catch (const InternalInconsistency& e) {
      err << "internal inconsistency: " << e.what() << "\n";
      j = Json{{"embeddable", nullptr}, {"internal_error", e.what()}};
      code = exit_internal;
    }
  }
  if (json) {
    j["exit_code"] = code;
    detail::emit(out, j);
  }
  return code;
}

struct SymbolicQuery {
  std::string kind;  // member | sphere | window | ray
  std::string setspec;
  std::optional<std::string> x;
  std::optional<std::string> c;
  std::optional<std::string> r;
  std::string o = "0";
  std::int64_t bound = 10;
};

inline int cmd_symbolic(const SymbolicQuery& q, const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  const bool json = opt.format == OutputFormat::json;
  try {
    ScalarContext ctx = opt.context();
    const SymbolicSet s = parse_setspec(q.setspec, ctx);
    if (s.radicand() != 1) ctx.infer(QuadScalar::sqrt_of(s.radicand()));
    auto scalar = [&](const std::optional<std::string>& text, const char* flag) {
      if (!text) throw DomainError(std::string("missing ") + flag);
      QuadScalar v = parse_scalar(*text, ctx);
      ctx.infer(v);
      return v;
    };
    Json j{{"set", s.to_spec()}, {"query", q.kind}};
    if (q.kind == "member") {
      const QuadScalar x = scalar(q.x, "--x");
      const bool in = s.contains(x);
      j["x"] = x.to_string();
      j["member"] = in;
      if (!json) out << (in ? "true" : "false") << "\n";
    } else if (q.kind == "sphere") {
      const QuadScalar c = scalar(q.c, "--c");
      const QuadScalar r = scalar(q.r, "--r");
      const auto pts = sphere_symbolic(s, c, r);
      j["center"] = c.to_string();
      j["radius"] = r.to_string();
      j["points"] = to_json(pts);
      if (!json)
        for (const auto& p : pts) out << p << "\n";
    } else if (q.kind == "window") {
      const auto w = window(s, q.bound);
      j["coeff_bound"] = q.bound;
      j["elements"] = to_json(w.elements);
      if (!json)
        for (const auto& p : w.elements) out << p << "\n";
    } else if (q.kind == "ray") {
      const QuadScalar o = scalar(q.o, "--o");
      const auto rep = check_ray_conditions(s, o, q.bound);
      j["report"] = to_json(rep);
      if (!json) {
        out << "apex " << rep.apex << ", N = " << rep.coeff_bound << ": " << rep.points_checked << " points, "
            << rep.radii_checked << " radii\n";
        out << "condition 1 failures: " << rep.cond1_failures.size() << "\n";
        for (const auto& f : rep.cond1_failures) out << "  x = " << f.x << ", r = " << f.r << "\n";
        out << "condition 2 failures: " << rep.cond2_failures.size() << "\n";
        for (const auto& r : rep.cond2_failures) out << "  r = " << r << "\n";
        out << (rep.passed() ? "passed at scale N" : "failed") << "\n";
      }
    } else {
      throw DomainError("unknown query '" + q.kind + "' (expected member, sphere, window or ray)");
    }
    if (json) detail::emit(out, j);
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

inline int cmd_example1(const Example1Options& ex, const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const auto cert = run_example1_certificate(ex);
    if (opt.format == OutputFormat::json) {
      detail::emit(out, to_json(cert));
    } else {
      out << to_text(cert);
    }
    return cert.passed() ? exit_ok : exit_internal;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return exit_internal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

struct GroupsetQuery {
  std::optional<std::int64_t> modulus;
  std::optional<std::int64_t> window;
  std::vector<std::int64_t> elements;
  std::optional<std::string> check;  // semiaffine | midconvex
  bool classify = false;
  bool trace = false;
};

inline int cmd_groupset(const GroupsetQuery& q, const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  const bool json = opt.format == OutputFormat::json;
  try {
    if (q.modulus.has_value() == q.window.has_value()) throw DomainError("give exactly one of --mod and --window");
    Json j = Json::object();
    if (q.modulus) {
      if (q.trace) throw DomainError("--trace needs --window");
      const auto s = CyclicSubset::from_elements(*q.modulus, q.elements);
      if (!q.check && !q.classify) throw DomainError("nothing to do: give --check and/or --classify");
      j["modulus"] = *q.modulus;
      j["set"] = s.elements();
      if (q.check) {
        PredicateResult res;
        if (*q.check == "semiaffine") {
          res = is_semiaffine(s);
        } else if (*q.check == "midconvex") {
          res = is_midconvex(s);
        } else {
          throw DomainError("unknown check '" + *q.check + "' (expected semiaffine or midconvex)");
        }
        j["check"] = *q.check;
        j["holds"] = res.holds;
        j["witness"] = to_json(res.witness);
        if (!json) {
          out << *q.check << ": " << (res.holds ? "yes" : "no");
          if (res.witness) out << " (x, y, z) = (" << (*res.witness)[0] << ", " << (*res.witness)[1] << ", " << (*res.witness)[2] << ")";
          out << "\n";
        }
      }
      if (q.classify) {
        const auto dec = classify_semiaffine(s);
        j["decomposition"] = dec ? to_json(*dec) : Json(nullptr);
        if (!json) out << "decomposition: " << (dec ? describe(*dec) : std::string("none")) << "\n";
      }
    } else {
      if (!q.trace && !q.check) throw DomainError("nothing to do: give --trace or --check midconvex");
      const auto t = WindowSubset::from_elements(*q.window, q.elements);
      j["window"] = *q.window;
      j["set"] = t.elements();
      if (q.check) {
        if (*q.check != "midconvex") throw DomainError("windows of Z support only --check midconvex");
        const auto res = is_midconvex_in_window(t);
        j["check"] = "midconvex";
        j["holds"] = res.holds;
        j["witness"] = to_json(res.witness);
        j["scope"] = "window";
        if (!json) {
          out << "midconvex at window scale: " << (res.holds ? "yes" : "no");
          if (res.witness) out << " (x, y, z) = (" << (*res.witness)[0] << ", " << (*res.witness)[1] << ", " << (*res.witness)[2] << ")";
          out << "\n";
        }
      }
      if (q.trace) {
        const auto shape = analyze_trace_set(t);
        j["trace"] = shape ? to_json(*shape) : Json(nullptr);
        if (!json) {
          if (!shape) {
            out << "trace: not an odd-step progression\n";
          } else if (shape->empty) {
            out << "trace: empty\n";
          } else {
            out << "trace: [" << shape->lo << ", " << shape->hi << "] step " << shape->step << " offset "
                << shape->offset;
            if (shape->lo_at_edge || shape->hi_at_edge) {
              out << " (touches window edge:" << (shape->lo_at_edge ? " lo" : "") << (shape->hi_at_edge ? " hi" : "")
                  << ")";
            }
            out << "\n";
          }
        }
      }
    }
    if (json) detail::emit(out, j);
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
}

// Runs the acceptance criteria (all, or the listed ids) and prints one line each.
inline int cmd_selftest(const std::vector<int>& only, const CommonOptions& opt, std::ostream& out, std::ostream& err) {
  const auto& all = acceptance::criteria();
  for (int id : only) {
    if (id < 1 || id > static_cast<int>(all.size())) {
      err << "error: no criterion " << id << "\n";
      return exit_usage;
    }
  }
  bool ok = true;
  Json j = Json::array();
  for (int id = 1; id <= static_cast<int>(all.size()); ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto r = all[static_cast<std::size_t>(id - 1)]();
    ok = ok && r.passed;
    if (opt.format == OutputFormat::json) {
      j.push_back(Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}, {"seconds", r.seconds}});
    } else {
      out << acceptance::format_line(r) << std::endl;
    }
  }
  if (opt.format == OutputFormat::json) detail::emit(out, j);
  return ok ? exit_ok : exit_internal;
}

}  // namespace linemetric
