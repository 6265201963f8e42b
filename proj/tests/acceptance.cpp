// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Pass the path of the pretty executable to include the command line
// in the determinism check.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <unistd.h>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "pretty/bench.hpp"
#include "pretty/cost_factory.hpp"
#include "pretty/deep_stack.hpp"
#include "pretty/formatters.hpp"
#include "pretty/reference.hpp"
#include "pretty/resolver.hpp"
#include "support/examples.hpp"
#include "support/random_docs.hpp"

using namespace pretty;
using pretty::testing::DocShape;
using pretty::testing::RandomDocs;

namespace {

using Clock = std::chrono::steady_clock;
using OH = OverflowHeight;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;

  // Keeps the first failure message.
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

bool g_all_pass = true;

void report(int n, const char* name, const Verdict& v, std::string summary) {
  g_all_pass = g_all_pass && v.pass;
  std::cout << (v.pass ? "PASS" : "FAIL") << " " << n << " " << name << ": " << (v.pass ? summary : v.detail)
            << std::endl;
}

// Choiceless widenings of every sub-document seen, by node id.
class WidenCache {
 public:
  bool contains(const Doc& d, const Doc& payload) {
    auto it = cache_.find(d.id());
    if (it == cache_.end()) {
      std::vector<std::pair<std::uint64_t, Doc>> entry;
      for (const Doc& w : widen(d)) entry.emplace_back(structural_hash(w), w);
      it = cache_.emplace(d.id(), std::move(entry)).first;
    }
    const auto h = structural_hash(payload);
    for (const auto& [wh, w] : it->second) {
      if (wh == h && structurally_equal(w, payload)) return true;
    }
    return false;
  }

 private:
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, Doc>>> cache_;
};

struct CorpusTally {
  Verdict optimality;
  Verdict validity;
  Verdict invariants;
  std::size_t prints = 0;
  std::size_t within = 0;
  std::size_t frontiers = 0;
  std::size_t measures = 0;
  std::size_t deferred_checked = 0;
};

std::string where(const Doc& d, const std::string& factory, std::size_t w, std::size_t limit) {
  return factory + "(" + std::to_string(w) + ") W=" + std::to_string(limit) + " doc " + to_doc_ir(d);
}

template <class F>
void check_measure(const F& f, const Doc& sub, std::size_t c, std::size_t i, const Measure<cost_t<F>>& m,
                   WidenCache& widened, CorpusTally& t, const std::string& ctx) {
  const Doc& p = std::get<Doc>(m.payload);
  if (!widened.contains(sub, p)) {
    t.validity.fail("payload is not a widening of its document, " + ctx);
    return;
  }
  auto o = measure_oracle(p, c, i, f);
  if (!o || o->last != m.last || !(o->cost == m.cost) || o->max_column != m.max_column ||
      o->max_indent != m.max_indent) {
    t.validity.fail("measure differs from the oracle at c=" + std::to_string(c) + " i=" + std::to_string(i) + ", " +
                    ctx);
  }
}

template <class F>
void check_corpus_doc(const Doc& d, const F& f, const std::string& name, std::size_t w, std::size_t limit,
                      WidenCache& widened, CorpusTally& t) {
  using Set = MeasureSet<cost_t<F>>;
  const std::string ctx = where(d, name, w, limit);
  ++t.prints;

  ResolverConfig cfg;
  cfg.computation_width = limit;
  Resolver<F> r(f, cfg);
  r.set_observer([&](const Doc& sub, std::size_t c, std::size_t i, const Set& s) {
    if ((c > limit || i > limit) && sub.nonempty()) {
      ++t.deferred_checked;
      if (!s.is_tainted() || s.promise()->forced()) {
        t.invariants.fail("resolve past the limit did not return an unforced tainted set, " + ctx);
      }
    }
    if (!s.is_frontier()) return;
    const auto& ms = s.measures();
    ++t.frontiers;
    t.measures += ms.size();
    if (ms.size() > limit + 1) t.invariants.fail("frontier longer than W+1, " + ctx);
    for (std::size_t k = 0; k + 1 < ms.size(); ++k) {
      const bool sorted = ms[k].last > ms[k + 1].last && f.le(ms[k].cost, ms[k + 1].cost) &&
                          !(ms[k].cost == ms[k + 1].cost);
      if (!sorted) t.invariants.fail("frontier not strictly sorted, " + ctx);
    }
    for (std::size_t a = 0; a < ms.size(); ++a) {
      for (std::size_t b = 0; b < ms.size(); ++b) {
        if (a != b && dominates(f, ms[a], ms[b])) t.invariants.fail("frontier has a dominated measure, " + ctx);
      }
    }
    for (const auto& m : ms) check_measure(f, sub, c, i, m, widened, t, ctx);
  });

  const bool has_layout = !eval(d).empty();
  if (has_layout != d.nonempty()) t.validity.fail("emptiness flag disagrees with evaluation, " + ctx);
  if (!has_layout) {
    bool threw = false;
    try {
      print(d, f, cfg);
    } catch (const NoLayoutError&) {
      threw = true;
    }
    if (!threw) t.optimality.fail("a document without layouts printed, " + ctx);
    return;
  }

  Set top = r.resolve(d, 0, 0);
  const auto& chosen = Resolver<F>::force(top);
  check_measure(f, d, 0, 0, chosen, widened, t, ctx);

  const auto printed = print(d, f, cfg);
  if (!(render_payload(chosen.payload) == printed.layout)) t.validity.fail("print disagrees with resolve, " + ctx);
  const auto bf = brute_force_print(d, f, limit);
  if (bf.within_limit) {
    ++t.within;
    if (printed.tainted) t.optimality.fail("tainted although an untainted layout exists, " + ctx);
    if (!(printed.cost == bf.cost)) {
      t.optimality.fail("cost " + cost_label(printed.cost) + " but the optimum is " + cost_label(bf.cost) + ", " + ctx);
    }
  }
}

void criteria_1_to_3() {
  const auto t0 = Clock::now();
  CorpusTally t;
  DocShape shape;  // node count <= 40, <= 6 alternatives, text <= 8, nest <= 6
  // 2000 documents, twice the required corpus
  RandomDocs gen(20240611, shape);
  constexpr int kDocs = 2000;
  std::size_t nodes = 0;
  std::size_t alts = 0;
  std::size_t widenings = 0;
  for (int k = 0; k < kDocs; ++k) {
    Doc d = gen.next();
    nodes += dag_size(d);
    alts += pretty::testing::count_kind(d, DocKind::alt);
    widenings += widen(d).size();
    WidenCache widened;
    for (std::size_t w : {2, 6, 12}) {
      for (std::size_t limit : {4, 10, 25}) {
        check_corpus_doc(d, LinearFactory(w), "linear", w, limit, widened, t);
        check_corpus_doc(d, QuadraticFactory(w), "quadratic", w, limit, widened, t);
        check_corpus_doc(d, MaxOverflowFactory(w), "max", w, limit, widened, t);
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs > 60) t.optimality.fail("corpus took " + std::to_string(secs) + " s");
  if (t.within == 0) t.optimality.fail("no print had an untainted optimum to compare against");
  if (t.deferred_checked == 0) t.invariants.fail("no resolve past the limit was observed");

  std::ostringstream s1;
  s1 << kDocs << " docs (mean " << static_cast<double>(nodes) / kDocs << " nodes, "
     << static_cast<double>(alts) / kDocs << " alts, " << static_cast<double>(widenings) / kDocs << " widenings), "
     << t.prints << " prints, " << t.within << " with an untainted optimum, " << secs << " s";
  report(1, "oracle optimality", t.optimality, s1.str());
  std::ostringstream s2;
  s2 << t.measures << " frontier measures checked against widening and oracle";
  report(2, "validity", t.validity, s2.str());
  std::ostringstream s3;
  s3 << t.frontiers << " frontiers sorted and domination-free, " << t.deferred_checked
     << " resolves past W unforced and tainted";
  report(3, "structural invariants", t.invariants, s3.str());
}

void criterion_4() {
  Verdict v;
  const Doc d = pretty::testing::func_call_doc();
  const Layout broken = *render(d, {3, 0, false});
  const Layout flat = *render(d, {3, 0, true});
  auto expect = [&v](bool ok, const std::string& what) {
    if (!ok) v.fail(what);
  };
  expect(broken.lines == std::vector<std::string>{"= func(", "  pretty,", "  print", ")"}, "broken layout text");
  expect(layout_cost(LinearFactory(6), broken, 3) == OH{8, 3}, "linear broken != (8,3)");
  expect(layout_cost(LinearFactory(6), flat, 3) == OH{20, 0}, "linear flat != (20,0)");
  expect(layout_cost(QuadraticFactory(6), broken, 3) == OH{26, 3}, "quadratic broken != (26,3)");
  expect(layout_cost(QuadraticFactory(6), flat, 3) == OH{400, 0}, "quadratic flat != (400,0)");
  expect(layout_cost(MaxOverflowFactory(6), broken, 3) == 4, "max broken != 4");
  expect(layout_cost(MaxOverflowFactory(6), flat, 3) == 20, "max flat != 20");

  LinearFactory lin(6);
  auto m = measure_oracle(d, 3, 0, lin);
  expect(m && m->last == 1 && m->cost == OH{8, 3} && m->max_column == 10 && m->max_indent == 2,
         "oracle measure != <1,(8,3),d,10,2>");
  ResolverConfig cfg;
  cfg.computation_width = 100;
  Resolver r(lin, cfg);
  auto s = r.resolve(d, 3, 0);
  expect(s.is_frontier() && s.measures().size() == 1, "resolver did not return a single measure");
  if (s.is_frontier() && !s.measures().empty()) {
    const auto& x = s.measures().front();
    expect(x.last == 1 && x.cost == OH{8, 3} && x.max_column == 10 && x.max_indent == 2 &&
               same_node(std::get<Doc>(x.payload), d),
           "resolver measure != <1,(8,3),d,10,2>");
  }
  report(4, "worked examples", v, "(8,3) vs (20,0), (26,3), 4 vs 20, measure <1,(8,3),d,10,2>");
}

void criterion_5() {
  Verdict v;
  constexpr std::size_t kTrials = 10000;
  auto valid = [&](const FactoryReport& r, const char* name) {
    if (!r.valid) v.fail(std::string(name) + " broke " + r.contract + ": " + r.witness);
  };
  valid(check_factory_validity(LinearFactory(6), kTrials, 0), "linear");
  valid(check_factory_validity(QuadraticFactory(6), kTrials, 0), "quadratic");
  valid(check_factory_validity(MaxOverflowFactory(6), kTrials, 0), "max");
  const auto bad = check_factory_validity(InvalidMaxLexFactory(6), kTrials, 0);
  if (bad.valid) v.fail("invalid-maxlex passed " + std::to_string(kTrials) + " trials");
  InvalidMaxLexFactory f(6);
  const bool witness = f.le({0, 1}, {1, 0}) && f.le({2, 0}, {2, 0}) && !f.le(f.add({0, 1}, {2, 0}), f.add({1, 0}, {2, 0}));
  if (!witness) v.fail("(0,1)+(2,0) vs (1,0)+(2,0) is not a counterexample");
  report(5, "factory contracts", v,
         "three factories pass " + std::to_string(kTrials) + " trials, invalid-maxlex fails " + bad.contract +
             " after " + std::to_string(bad.trials_run));
}

// Every node reachable from d.
std::vector<Doc> sub_documents(const Doc& d) {
  std::vector<Doc> out;
  std::vector<Doc> stack{d};
  std::vector<std::uint64_t> seen;
  while (!stack.empty()) {
    Doc x = stack.back();
    stack.pop_back();
    if (std::find(seen.begin(), seen.end(), x.id()) != seen.end()) continue;
    seen.push_back(x.id());
    out.push_back(x);
    if (x.node()->left) stack.push_back(x.left());
    if (x.node()->right) stack.push_back(x.right());
  }
  return out;
}

void criterion_6() {
  Verdict v;
  DocShape shape;
  shape.choices = false;
  shape.hard_newlines = false;
  RandomDocs gen(606, shape);
  SplitMix64 rng(607);
  constexpr int kDocs = 500;
  std::size_t preserved = 0;
  for (int k = 0; k < kDocs; ++k) {
    const Doc d = gen.next();
    const std::string ir = to_doc_ir(d);
    const Doc f = flatten(d);
    const std::size_t c = rng.below(8);
    const std::size_t i = rng.below(8);
    auto a = render(f, {c, i, false});
    auto b = render(d, {c, i, true});
    if (!a || !b || a->lines != b->lines) v.fail("flattened rendering differs for " + ir);
    if (!same_node(flatten(f), f)) v.fail("flatten is not idempotent on " + ir);
    for (const Doc& sub : sub_documents(d)) {
      if (pretty::testing::count_kind(sub, DocKind::newline) != 0) continue;
      ++preserved;
      if (!same_node(flatten(sub), sub)) v.fail("flatten copied a newline-free node in " + ir);
    }
  }
  report(6, "flatten semantics", v,
         std::to_string(kDocs) + " docs, " + std::to_string(preserved) + " newline-free nodes kept");
}

BenchReport bench(BenchFamily f, std::size_t size, std::size_t page_width = 80, std::size_t limit = 100,
                  std::size_t repeats = 3, std::uint64_t seed = 0) {
  BenchSpec s;
  s.family = f;
  s.size = size;
  s.page_width = page_width;
  s.computation_width = limit;
  s.repeats = repeats;
  s.seed = seed;
  return run_bench(s);
}

Layout criterion_7() {
  Verdict v;
  const auto f8 = bench(BenchFamily::flatten, 8000);
  const auto f16 = bench(BenchFamily::flatten, 16000);
  const auto cat = bench(BenchFamily::concat, 50000);
  const auto sx = bench(BenchFamily::sexpfull, 13);
  const double ratio = f16.time_ms / std::max(f8.time_ms, 1e-3);
  if (ratio > 3) v.fail("flatten ratio " + std::to_string(ratio));
  if (cat.time_ms > 2000) v.fail("concat(50000) took " + std::to_string(cat.time_ms) + " ms");
  if (sx.time_ms > 30000) v.fail("sexpfull(13) took " + std::to_string(sx.time_ms) + " ms");
  std::ostringstream s;
  s << "flatten 8000 " << f8.time_ms << " ms (" << f8.lines << " lines), 16000 " << f16.time_ms << " ms ("
    << f16.lines << " lines), ratio " << ratio << "; concat 50000 " << cat.time_ms << " ms; sexpfull 13 "
    << sx.time_ms << " ms";
  report(7, "performance", v, s.str());
  return sx.layout;
}

void criterion_8(const Layout& sexp_at_100) {
  Verdict v;
  const auto wide = bench(BenchFamily::sexpfull, 13, 80, 1000, 1);
  if (wide.layout.str() != sexp_at_100.str()) v.fail("sexpfull(13) differs between W=100 and W=1000");

  const auto narrow_json = bench(BenchFamily::json, 1000, 50, 60, 1);
  const auto wide_json = bench(BenchFamily::json, 1000, 50, 1000, 1);
  const QuadraticFactory q(50);
  const OH narrow_cost = layout_cost(q, narrow_json.layout, 0);
  const OH wide_cost = layout_cost(q, wide_json.layout, 0);
  if (!narrow_json.tainted) v.fail("json input is not tainted at W=60");
  if (!q.le(wide_cost, narrow_cost)) {
    v.fail("W=1000 cost " + cost_label(wide_cost) + " exceeds W=60 cost " + cost_label(narrow_cost));
  }
  std::ostringstream s;
  s << "sexpfull 13 identical (" << wide.lines << " lines); json page 50: W=60 tainted cost "
    << cost_label(narrow_cost) << ", W=1000 cost " << cost_label(wide_cost);
  report(8, "tainting consistency", v, s.str());
}

// Report with the timing lines removed.
std::string stable_report(const BenchReport& r) {
  std::istringstream in(format_bench_report(r));
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("time_ms", 0) == 0 || line.rfind("generation_ms", 0) == 0) continue;
    out += line + "\n";
  }
  return out + std::to_string(r.doc_hash) + "\n" + r.layout.str();
}

struct Run {
  int status = -1;
  std::string out;
};

Run run_command(const std::string& cmd) {
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  r.status = pclose(p);
  return r;
}

std::string strip_timing(const std::string& s) {
  std::istringstream in(s);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("time_ms", 0) == 0 || line.rfind("generation_ms", 0) == 0) continue;
    out += line + "\n";
  }
  return out;
}

void criterion_9(const std::string& cli) {
  Verdict v;
  constexpr int kRepeats = 10;
  struct Case {
    BenchFamily family;
    std::size_t size;
  };
  const std::vector<Case> cases = {{BenchFamily::concat, 1000},  {BenchFamily::fillsep, 1000},
                                   {BenchFamily::flatten, 500},  {BenchFamily::sexpfull, 8},
                                   {BenchFamily::randfit, 100},  {BenchFamily::randover, 1000},
                                   {BenchFamily::json, 200}};
  for (const Case& c : cases) {
    const std::string first = stable_report(bench(c.family, c.size, 80, 100, 1, 5));
    for (int k = 1; k < kRepeats; ++k) {
      if (stable_report(bench(c.family, c.size, 80, 100, 1, 5)) != first) {
        v.fail(bench_family_name(c.family) + " differs between runs");
      }
    }
  }

  std::string cli_note = "command line not checked";
  if (!cli.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("pretty_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const fs::path json = dir / "input.json";
    const fs::path sexp = dir / "input.sexp";
    std::ofstream(json) << R"({"name": "demo", "items": [1, 2, 3, {"deep": [true, false, null]}], "n": 4})";
    std::ofstream(sexp) << "(define (f x) (if (zero? x) 1 (* x (f (- x 1)))))";
    std::vector<std::string> commands;
    for (const Case& c : cases) {
      commands.push_back("'" + cli + "' bench " + bench_family_name(c.family) + " " + std::to_string(c.size) +
                         " --seed 5 --repeats 1");
    }
    commands.push_back("'" + cli + "' fmt --syntax json --page-width 20 '" + json.string() + "'");
    commands.push_back("'" + cli + "' fmt --syntax sexp --page-width 16 --report-tainted '" + sexp.string() + "' 2>&1");
    commands.push_back("'" + cli + "' check-factory invalid-maxlex --seed 3");
    for (const std::string& cmd : commands) {
      const Run first = run_command(cmd);
      const std::string want = strip_timing(first.out);
      if (first.status == -1 || want.empty()) v.fail("could not run " + cmd);
      for (int k = 1; k < kRepeats; ++k) {
        const Run again = run_command(cmd);
        if (again.status != first.status || strip_timing(again.out) != want) v.fail("output differs: " + cmd);
      }
    }
    fs::remove_all(dir);
    cli_note = std::to_string(commands.size()) + " commands";
  }
  report(9, "determinism", v,
         std::to_string(cases.size()) + " families x " + std::to_string(kRepeats) + " runs, " + cli_note);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  try {
    with_deep_stack([&] {
      criteria_1_to_3();
      criterion_4();
      criterion_5();
      criterion_6();
      const Layout sx = criterion_7();
      criterion_8(sx);
      criterion_9(cli);
    });
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance run aborted: " << e.what() << std::endl;
    return 1;
  }
  return g_all_pass ? 0 : 1;
}
