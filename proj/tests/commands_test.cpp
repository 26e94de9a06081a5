#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "linemetric/commands.hpp"

namespace {

using namespace linemetric;

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string data_path(const std::string& name) { return std::string(LINEMETRIC_DATA_DIR) + "/" + name; }

CommonOptions json_options() {
  CommonOptions opt;
  opt.format = OutputFormat::json;
  return opt;
}

Run check_file(const std::string& name, const CommonOptions& opt = {}) {
  std::ifstream in(data_path(name));
  std::ostringstream out, err;
  const int code = cmd_check(in, opt, out, err);
  return {code, out.str(), err.str()};
}

Run embed_file(const std::string& name, bool canonical, const CommonOptions& opt = {}) {
  std::ifstream in(data_path(name));
  std::ostringstream out, err;
  const int code = cmd_embed(in, canonical, opt, out, err);
  return {code, out.str(), err.str()};
}

Run symbolic(const SymbolicQuery& q, const CommonOptions& opt = {}) {
  std::ostringstream out, err;
  const int code = cmd_symbolic(q, opt, out, err);
  return {code, out.str(), err.str()};
}

Run groupset(const GroupsetQuery& q, const CommonOptions& opt = {}) {
  std::ostringstream out, err;
  const int code = cmd_groupset(q, opt, out, err);
  return {code, out.str(), err.str()};
}

SymbolicQuery query(const std::string& kind, const std::string& setspec) {
  SymbolicQuery q;
  q.kind = kind;
  q.setspec = setspec;
  return q;
}

TEST(CheckCommand, ExitCodesByFailureClass) {
  EXPECT_EQ(check_file("line_0136.txt").code, exit_ok);
  EXPECT_EQ(check_file("z_window.txt").code, exit_ok);
  EXPECT_EQ(check_file("sqrt2_points.txt").code, exit_ok);
  EXPECT_EQ(check_file("mixed_radicands.txt").code, exit_usage);
  EXPECT_EQ(check_file("not_metric.txt").code, exit_invalid_metric);
  EXPECT_EQ(check_file("triangle.txt").code, exit_not_subline);
  EXPECT_EQ(check_file("rectangle.txt").code, exit_rectangle);
}

TEST(CheckCommand, RectangleReport) {
  const auto r = check_file("rectangle.txt", json_options());
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["exit_code"], exit_rectangle);
  EXPECT_EQ(j["embeddable"], false);
  EXPECT_EQ(j["rectangle"]["p"], "1");
  EXPECT_EQ(j["rectangle"]["q"], "2");
  EXPECT_EQ(j["sphericity"]["value"], 1);
}

TEST(CheckCommand, WindowOfIntegersReconstructsZ) {
  const auto j = Json::parse(check_file("z_window.txt", json_options()).out);
  EXPECT_EQ(j["embeddable"], true);
  EXPECT_EQ(j["reconstructed_group"]["lattice"]["basis"], to_json(Lattice{QuadScalar(1)})["basis"]);
  EXPECT_TRUE(j["reconstructed_group"]["closure_violations"].empty());
  EXPECT_EQ(j["sphericity"]["value"], 0);
}

TEST(CheckCommand, JsonIsDeterministic) {
  const auto a = check_file("sqrt2_points.txt", json_options()).out;
  const auto b = check_file("sqrt2_points.txt", json_options()).out;
  EXPECT_EQ(a, b);
  EXPECT_EQ(Json::parse(a)["radicand"], 2);
}

TEST(CheckCommand, ParseErrorsGoToStderr) {
  const auto r = check_file("mixed_radicands.txt");
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("mixed radicands"), std::string::npos);
}

TEST(EmbedCommand, Outputs) {
  const auto line = embed_file("line_0136.txt", false);
  EXPECT_EQ(line.code, exit_ok);
  EXPECT_EQ(line.out, "p0\t0\np1\t1\np3\t3\np6\t6\n");

  const auto z = embed_file("z_window.txt", true);
  EXPECT_EQ(z.code, exit_ok);
  EXPECT_EQ(z.out.substr(0, 5), "m3\t0\n");

  const auto rect = embed_file("rectangle.txt", false, json_options());
  EXPECT_EQ(rect.code, exit_rectangle);
  EXPECT_EQ(Json::parse(rect.out)["reason"], "l1-rectangle");
  EXPECT_FALSE(rect.err.empty());

  EXPECT_EQ(embed_file("triangle.txt", false).code, exit_not_subline);
  EXPECT_EQ(embed_file("not_metric.txt", false).code, exit_invalid_metric);
}

TEST(SymbolicCommand, Queries) {
  auto member = query("member", "group:1,1*sqrt(2)");
  member.x = "1/2";
  auto r = symbolic(member);
  EXPECT_EQ(r.code, exit_ok);
  EXPECT_EQ(r.out, "false\n");

  member.setspec = "image:[-1,0;0,1]:cone:1,1*sqrt(2)";
  member.x = "-3+2*sqrt(2)";
  EXPECT_EQ(symbolic(member).out, "true\n");

  auto sphere = query("sphere", "group:1,1*sqrt(2)");
  sphere.c = "0";
  sphere.r = "1+1*sqrt(2)";
  EXPECT_EQ(symbolic(sphere).out, "-1-1*sqrt(2)\n1+1*sqrt(2)\n");

  auto win = query("window", "cone:1");
  win.bound = 3;
  EXPECT_EQ(symbolic(win).out, "0\n1\n2\n3\n");

  auto ray = query("ray", "image:[-1,0;0,1]:cone:1,1*sqrt(2)");
  ray.bound = 4;
  const auto j = Json::parse(symbolic(ray, json_options()).out);
  EXPECT_EQ(j["report"]["passed_at_scale"], true);

  auto bad = query("member", "ring:1");
  bad.x = "1";
  EXPECT_EQ(symbolic(bad).code, exit_usage);
  auto missing = query("member", "cone:1");
  EXPECT_EQ(symbolic(missing).code, exit_usage);
  auto mixed = query("member", "group:1,1*sqrt(2)");
  mixed.x = "1*sqrt(3)";
  EXPECT_EQ(symbolic(mixed).code, exit_usage);
}

TEST(GroupsetCommand, Queries) {
  GroupsetQuery q;
  q.modulus = 7;
  q.elements = {0, 1, 3};
  q.check = "semiaffine";
  q.classify = true;
  auto r = groupset(q);
  EXPECT_EQ(r.code, exit_ok);
  EXPECT_EQ(r.out, "semiaffine: no (x, y, z) = (0, 1, 3)\ndecomposition: none\n");

  GroupsetQuery t;
  t.window = 5;
  t.elements = {-4, -1, 2, 5};
  t.trace = true;
  const auto j = Json::parse(groupset(t, json_options()).out);
  EXPECT_EQ(j["trace"]["step"], 3);
  EXPECT_EQ(j["trace"]["offset"], 2);

  GroupsetQuery both = q;
  both.window = 3;
  EXPECT_EQ(groupset(both).code, exit_usage);
  GroupsetQuery outside;
  outside.window = 2;
  outside.elements = {5};
  outside.trace = true;
  EXPECT_EQ(groupset(outside).code, exit_usage);
}

TEST(Example1Command, SmallScale) {
  Example1Options ex;
  ex.coeff_bound = 10;
  ex.buckets = 5;
  ex.ray_bound = 4;
  ex.difference_bound = 4;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_example1(ex, json_options(), out, err), exit_ok);
  EXPECT_EQ(Json::parse(out.str())["passed"], true);

  ex.d = 9;
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_example1(ex, {}, out2, err2), exit_usage);
}

TEST(SelftestCommand, RejectsUnknownCriterion) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_selftest({12}, {}, out, err), exit_usage);
  EXPECT_EQ(cmd_selftest({8}, {}, out, err), exit_ok);
  EXPECT_EQ(out.str().rfind("[PASS] 8", 0), 0u);
}

}  // namespace
