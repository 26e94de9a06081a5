// linemetric: classify distance matrices, embed them in the line, and query
// symbolic subsets of quadratic fields and finite cyclic groups.

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "linemetric/commands.hpp"

namespace {

using linemetric::CommonOptions;
using linemetric::OutputFormat;

struct CommonFlags {
  std::string format = "text";
  std::optional<std::int64_t> radicand;

  CommonOptions options() const {
    return CommonOptions{format == "json" ? OutputFormat::json : OutputFormat::text, radicand};
  }
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--d", flags.radicand, "Radicand of the quadratic field (squarefree, >= 1)");
}

// Opens a matrix file, "-" meaning standard input.
int with_input(const std::string& path, const std::function<int(std::istream&)>& run) {
  if (path == "-") return run(std::cin);
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    return linemetric::exit_usage;
  }
  return run(in);
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw linemetric::DomainError("bad integer '" + item + "' in --set");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact line-embedding and ray analysis of finite metric spaces"};
  app.require_subcommand(1);

  CommonFlags flags;
  int code = linemetric::exit_ok;

  std::string matrix_path;
  auto* check = app.add_subcommand("check", "Classify a distance matrix");
  check->add_option("file", matrix_path, "Matrix file ('-' for stdin)")->required();
  add_common(check, flags);
  check->callback([&] {
    code = with_input(matrix_path, [&](std::istream& in) {
      return linemetric::cmd_check(in, flags.options(), std::cout, std::cerr);
    });
  });

  bool canonical = false;
  auto* embed = app.add_subcommand("embed", "Embed a distance matrix isometrically in the line");
  embed->add_option("file", matrix_path, "Matrix file ('-' for stdin)")->required();
  embed->add_flag("--canonical", canonical, "Shift the minimum to 0 and pick the canonical reflection");
  add_common(embed, flags);
  embed->callback([&] {
    code = with_input(matrix_path, [&](std::istream& in) {
      return linemetric::cmd_embed(in, canonical, flags.options(), std::cout, std::cerr);
    });
  });

  linemetric::SymbolicQuery sq;
  auto* symbolic = app.add_subcommand("symbolic", "Query a symbolic subset of R");
  symbolic->add_option("query", sq.kind, "member | sphere | window | ray")
      ->required()
      ->check(CLI::IsMember({"member", "sphere", "window", "ray"}));
  symbolic->add_option("setspec", sq.setspec, "Set spec, e.g. cone:1,1*sqrt(2)")->required();
  symbolic->add_option("--x", sq.x, "Scalar to test (member)");
  symbolic->add_option("--c", sq.c, "Sphere center (sphere)");
  symbolic->add_option("--r", sq.r, "Sphere radius (sphere)");
  symbolic->add_option("--o", sq.o, "Apex (ray)")->capture_default_str();
  symbolic->add_option("--N", sq.bound, "Coefficient bound (window, ray)")->capture_default_str()->check(CLI::NonNegativeNumber);
  add_common(symbolic, flags);
  symbolic->callback([&] { code = linemetric::cmd_symbolic(sq, flags.options(), std::cout, std::cerr); });

  linemetric::Example1Options ex;
  std::int64_t ex_d = 2;
  auto* example1 = app.add_subcommand("example1", "Certificate for the dense ray built from an involution");
  example1->add_option("--N", ex.coeff_bound, "Coefficient bound for windows")->capture_default_str()->check(CLI::PositiveNumber);
  example1->add_option("--buckets", ex.buckets, "Density buckets on [0, 5]")->capture_default_str()->check(CLI::PositiveNumber);
  example1->add_option("--ray-N", ex.ray_bound, "Coefficient bound for the ray conditions")->capture_default_str()->check(CLI::PositiveNumber);
  example1->add_option("--d", ex_d, "Radicand (squarefree, >= 2)")->capture_default_str();
  example1->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  example1->callback([&] {
    ex.d = ex_d;
    code = linemetric::cmd_example1(ex, flags.options(), std::cout, std::cerr);
  });

  linemetric::GroupsetQuery gq;
  std::string set_text;
  auto* groupset = app.add_subcommand("groupset", "Semiaffine / midconvex predicates in Z_n and windows of Z");
  groupset->add_option("--mod", gq.modulus, "Modulus n of Z_n")->check(CLI::PositiveNumber);
  groupset->add_option("--window", gq.window, "Window bound N for subsets of [-N, N]")->check(CLI::NonNegativeNumber);
  groupset->add_option("--set", set_text, "Comma-separated elements")->allow_extra_args(false);
  groupset->add_option("--check", gq.check, "semiaffine | midconvex");
  groupset->add_flag("--classify", gq.classify, "Search for a semiaffine decomposition");
  groupset->add_flag("--trace", gq.trace, "Analyze a trace set in a window");
  groupset->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  groupset->callback([&] {
    try {
      gq.elements = parse_int_list(set_text);
    } catch (const linemetric::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      code = linemetric::exit_usage;
      return;
    }
    code = linemetric::cmd_groupset(gq, flags.options(), std::cout, std::cerr);
  });

  std::vector<int> only;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance criteria");
  selftest->add_option("--criterion", only, "Run only these criteria (1-9)");
  selftest->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  selftest->callback([&] { code = linemetric::cmd_selftest(only, flags.options(), std::cout, std::cerr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : linemetric::exit_usage;
  } catch (const linemetric::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return linemetric::exit_usage;
  }
  return code;
}
