// pretty: format documents, run benchmarks, check cost factories.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "pretty/bench.hpp"
#include "pretty/cost_factory.hpp"
#include "pretty/deep_stack.hpp"
#include "pretty/errors.hpp"
#include "pretty/formatters.hpp"
#include "pretty/resolver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoLayout = 2;
constexpr int kExitCounterexample = 3;

struct FmtOptions {
  std::string syntax = "json";
  std::size_t page_width = 80;
  std::size_t computation_width = 100;
  std::string factory = "quadratic";
  std::size_t indent = 2;
  bool report_tainted = false;
  bool fused = false;
  std::string input = "-";
};

bool read_input(const std::string& path, std::string& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  out.assign(std::istreambuf_iterator<char>(in), {});
  return true;
}

template <class F>
pretty::Layout print_with(const pretty::Doc& doc, const F& factory, const FmtOptions& opt, bool& tainted) {
  pretty::ResolverConfig cfg;
  cfg.computation_width = opt.computation_width;
  cfg.fused = opt.fused;
  auto result = pretty::print(doc, factory, cfg);
  tainted = result.tainted;
  return std::move(result.layout);
}

int run_fmt(const FmtOptions& opt) {
  std::string source;
  if (!read_input(opt.input, source)) {
    std::cerr << "pretty: cannot read " << opt.input << '\n';
    return kExitInput;
  }
  try {
    return pretty::with_deep_stack([&] {
      pretty::StyleConfig style;
      style.indent_width = opt.indent;
      pretty::Doc doc = opt.syntax == "json"   ? pretty::json_to_doc(source, style)
                        : opt.syntax == "sexp" ? pretty::sexp_to_doc(std::string_view(source), style)
                                               : pretty::parse_doc_ir(source);
      bool tainted = false;
      pretty::Layout layout;
      if (opt.factory == "linear") {
        layout = print_with(doc, pretty::LinearFactory(opt.page_width), opt, tainted);
      } else if (opt.factory == "max") {
        layout = print_with(doc, pretty::MaxOverflowFactory(opt.page_width), opt, tainted);
      } else {
        layout = print_with(doc, pretty::QuadraticFactory(opt.page_width), opt, tainted);
      }
      std::cout << layout.str() << '\n';
      if (opt.report_tainted) std::cerr << "tainted: " << (tainted ? "yes" : "no") << '\n';
      return kExitOk;
    });
  } catch (const pretty::ParseError& e) {
    std::cerr << "pretty: " << opt.input << ":" << e.what() << '\n';
    return kExitInput;
  } catch (const pretty::NoLayoutError& e) {
    std::cerr << "pretty: " << e.what() << '\n';
    return kExitNoLayout;
  }
}

int run_bench_cmd(const std::string& family, pretty::BenchSpec spec, const std::string& layout_out) {
  auto f = pretty::parse_bench_family(family);
  if (!f) {
    std::cerr << "pretty: unknown benchmark family " << family << '\n';
    return kExitInput;
  }
  spec.family = *f;
  try {
    pretty::BenchReport report = pretty::run_bench(spec);
    std::cout << "family: " << family << '\n'
              << "size: " << spec.size << '\n'
              << "seed: " << spec.seed << '\n'
              << pretty::format_bench_report(report);
    if (!layout_out.empty()) {
      std::ofstream out(layout_out, std::ios::binary);
      out << report.layout.str() << '\n';
      if (!out) {
        std::cerr << "pretty: cannot write " << layout_out << '\n';
        return kExitInput;
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "pretty: " << e.what() << '\n';
    return kExitInput;
  }
}

template <class F>
int report_check(const F& factory, std::size_t trials, std::uint64_t seed) {
  const pretty::FactoryReport r = pretty::check_factory_validity(factory, trials, seed);
  if (r.valid) {
    std::cout << "pass: " << r.trials_run << " trials\n";
    return kExitOk;
  }
  std::cout << "counterexample after " << r.trials_run << " trials\n"
            << "contract: " << r.contract << '\n'
            << "witness: " << r.witness << '\n';
  return kExitCounterexample;
}

int run_check_factory(const std::string& name, std::size_t width, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) {
    std::cerr << "pretty: --trials must be positive\n";
    return kExitInput;
  }
  if (name == "linear") return report_check(pretty::LinearFactory(width), trials, seed);
  if (name == "quadratic") return report_check(pretty::QuadraticFactory(width), trials, seed);
  if (name == "max") return report_check(pretty::MaxOverflowFactory(width), trials, seed);
  if (name == "invalid-maxlex") return report_check(pretty::InvalidMaxLexFactory(width), trials, seed);
  std::cerr << "pretty: unknown factory " << name << '\n';
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal pretty printer"};
  app.require_subcommand(1);

  FmtOptions fmt;
  auto* fmt_cmd = app.add_subcommand("fmt", "Format a JSON, S-expression or document IR file");
  fmt_cmd->add_option("--syntax", fmt.syntax, "Input syntax")
      ->check(CLI::IsMember({"json", "sexp", "docir"}))
      ->capture_default_str();
  fmt_cmd->add_option("--page-width", fmt.page_width, "Page width")->capture_default_str();
  fmt_cmd->add_option("--computation-width", fmt.computation_width, "Computation width limit")
      ->capture_default_str();
  fmt_cmd->add_option("--factory", fmt.factory, "Cost factory")
      ->check(CLI::IsMember({"linear", "quadratic", "max"}))
      ->capture_default_str();
  fmt_cmd->add_option("--indent", fmt.indent, "Indentation width for JSON")->capture_default_str();
  fmt_cmd->add_flag("--report-tainted", fmt.report_tainted, "Print 'tainted: yes|no' to stderr");
  fmt_cmd->add_flag("--fused", fmt.fused, "Render through token ropes while resolving");
  fmt_cmd->add_option("input", fmt.input, "Input file, or - for stdin")->capture_default_str();

  pretty::BenchSpec spec;
  std::string family;
  std::string layout_out;
  auto* bench_cmd = app.add_subcommand("bench", "Run a seeded benchmark");
  bench_cmd->add_option("family", family, "concat|fillsep|flatten|sexpfull|randfit|randover|json")->required();
  bench_cmd->add_option("size", spec.size, "Benchmark size")->required();
  bench_cmd->add_option("--seed", spec.seed, "PRNG seed")->capture_default_str();
  bench_cmd->add_option("--page-width", spec.page_width, "Page width")->capture_default_str();
  bench_cmd->add_option("--computation-width", spec.computation_width, "Computation width limit")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", spec.repeats, "Timed runs; the median is reported")->capture_default_str();
  bench_cmd->add_flag("--fused", spec.fused, "Render through token ropes while resolving");
  bench_cmd->add_option("--layout-out", layout_out, "Write the printed layout to this file");

  std::string factory_name;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t width = 6;
  auto* check_cmd = app.add_subcommand("check-factory", "Randomized check of the cost factory contracts");
  check_cmd->add_option("name", factory_name, "linear|quadratic|max|invalid-maxlex")->required();
  check_cmd->add_option("--trials", trials, "Number of trials")->capture_default_str();
  check_cmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();
  check_cmd->add_option("--page-width", width, "Page width of the factory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (*fmt_cmd) return run_fmt(fmt);
  if (*bench_cmd) return run_bench_cmd(family, spec, layout_out);
  return run_check_factory(factory_name, width, trials, seed);
}
