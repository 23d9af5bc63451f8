// Command line front end for the library: enumeration, rank tables,
// canonical-form reduction, rewriting, comultiplication, verification
// suites and graph export. All output is deterministic for fixed inputs;
// exit code 0 = success, 1 = a verification failed, 2 = bad usage/input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnskein/io.hpp"

using namespace bnskein;
using io::json;

namespace {

struct Range {
  int lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
  Range r;
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoi(s);
    } else {
      r.lo = std::stoi(s.substr(0, dots));
      r.hi = std::stoi(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("--n expects N or A..B");
  }
  if (r.lo < 1 || r.hi < r.lo)
    throw std::invalid_argument("--n expects N or A..B with 1 <= A <= B");
  return r;
}

int parse_single(const std::string& s) {
  Range r = parse_range(s);
  if (r.lo != r.hi)
    throw std::invalid_argument("this subcommand takes a single --n");
  return r.lo;
}

Matching parse_matching(int n, const std::string& label) {
  std::istringstream in(label);
  std::vector<Arc> arcs;
  std::string tok;
  while (in >> tok) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size())
      throw std::invalid_argument("--matching expects arcs like \"1-4 2-3\"");
    arcs.emplace_back(std::stoi(tok.substr(0, dash)),
                      std::stoi(tok.substr(dash + 1)));
  }
  return Matching(n, std::move(arcs));
}

json read_json_input(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return json::parse(in);
}

/* stdout unless --output names a file */
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw std::invalid_argument("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void require_format(const std::string& fmt,
                    std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (fmt == a) return;
  throw std::invalid_argument("unsupported --format for this subcommand: " +
                              fmt);
}

struct CheckLine {
  std::string suite;
  int n = 0;
  bool pass = false;
  std::string detail;
};

void emit_checks(std::ostream& out, const std::string& fmt,
                 const std::vector<CheckLine>& lines) {
  bool all = true;
  for (const auto& l : lines) all = all && l.pass;
  if (fmt == "json") {
    json checks = json::array();
    for (const auto& l : lines)
      checks.push_back({{"suite", l.suite},
                        {"n", l.n},
                        {"pass", l.pass},
                        {"detail", l.detail}});
    out << json{{"checks", checks}, {"all_pass", all}}.dump(2) << '\n';
  } else {
    for (const auto& l : lines)
      out << (l.pass ? "PASS" : "FAIL") << ' ' << l.suite << " n=" << l.n
          << ": " << l.detail << '\n';
    out << (all ? "all checks passed" : "some checks FAILED") << '\n';
  }
}

int run_matchings(int lo, int hi, const std::string& fmt, std::ostream& out) {
  json docs = json::array();
  for (int n = lo; n <= hi; ++n) {
    auto order = total_order(n);
    auto arrows = all_arrows(n);
    if (fmt == "json") {
      std::map<Matching, std::size_t> pos;
      for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], i);
      json ms = json::array(), as = json::array();
      for (const auto& m : order) ms.push_back(io::to_json(m));
      for (const auto& ar : arrows)
        as.push_back({{"source", pos.at(ar.source)},
                      {"target", pos.at(ar.target)}});
      docs.push_back({{"n", n},
                      {"count", order.size()},
                      {"matchings", ms},
                      {"arrows", as}});
    } else {
      std::map<Matching, std::size_t> pos;
      for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], i);
      out << "n=" << n << " matchings=" << order.size()
          << " arrows=" << arrows.size() << '\n';
      for (std::size_t i = 0; i < order.size(); ++i)
        out << "  " << i << ": " << io::matching_label(order[i]) << '\n';
      for (const auto& ar : arrows)
        out << "  arrow " << pos.at(ar.source) << " -> " << pos.at(ar.target)
            << '\n';
    }
  }
  if (fmt == "json") out << docs.dump(2) << '\n';
  return 0;
}

int run_ranks(int lo, int hi, const std::string& fmt, std::ostream& out) {
  if (fmt == "csv") {
    out << io::ranks_csv(lo, hi);
    return 0;
  }
  json docs = json::array();
  for (int n = lo; n <= hi; ++n) {
    auto g = graded_ranks(n);
    auto ring = ring_graded_ranks(n);
    bool reversed = true;
    for (int d = 0; d <= n; ++d)
      reversed = reversed && g.ranks.at(d) == ring.at(n - d);
    if (fmt == "json") {
      docs.push_back({{"n", n},
                      {"module_ranks", g.ranks},
                      {"ring_ranks", ring},
                      {"reversal_holds", reversed},
                      {"invariant_factors_all_one", g.all_factors_one()}});
    } else {
      out << "n=" << n << (reversed ? " reversal holds" : " REVERSAL FAILS")
          << '\n';
      for (int d = 0; d <= n; ++d)
        out << "  degree " << 2 * d << ": module " << g.ranks.at(d)
            << ", ring degree " << 2 * (n - d) << ": " << ring.at(n - d)
            << '\n';
    }
  }
  if (fmt == "json") out << docs.dump(2) << '\n';
  return 0;
}

int run_reduce(int n, const std::string& input, const std::string& fmt,
               std::ostream& out) {
  SkeinVector v = io::vector_from_json(read_json_input(input));
  if (v.n != n)
    throw std::invalid_argument("input vector has a different n than --n");
  SkeinQuotient q(n);
  auto coords = q.reduce(v);
  auto nf = q.normal_form(v);
  if (fmt == "json") {
    out << json{{"n", n},
                {"coordinates", io::coords_json(coords)},
                {"normal_form", io::to_json(nf)},
                {"zero_in_quotient", nf.terms.empty()}}
               .dump(2)
        << '\n';
  } else {
    out << "coordinates:";
    for (const Int& c : coords) out << ' ' << c;
    out << '\n' << "normal form: " << io::to_text(nf) << '\n';
  }
  return 0;
}

int run_rewrite(int n, const std::string& matching, const std::string& fmt,
                std::ostream& out) {
  Matching m = parse_matching(n, matching);
  auto moves = rewrite_all_dotted(m);
  if (fmt == "json") {
    json ms = json::array();
    for (const auto& mv : moves) ms.push_back(io::to_json(mv));
    json result = moves.empty() ? io::to_json(all_dotted(m))
                                : io::to_json(moves.back().after);
    out << json{{"n", n},
                {"start", io::to_json(all_dotted(m))},
                {"moves", ms},
                {"result", result}}
               .dump(2)
        << '\n';
  } else {
    out << "start: " << io::to_text(all_dotted(m)) << '\n';
    for (std::size_t i = 0; i < moves.size(); ++i)
      out << "move " << i + 1 << ": " << io::to_text(moves[i].before)
          << " => " << io::to_text(moves[i].after) << '\n';
    const auto& final_cfg = moves.empty() ? all_dotted(m) : moves.back().after;
    out << "result: " << io::to_text(final_cfg) << '\n';
  }
  return 0;
}

int run_comult(int n, const std::string& input, const std::string& fmt,
               std::ostream& out) {
  SkeinVector v = io::vector_from_json(read_json_input(input));
  if (v.n != n)
    throw std::invalid_argument("input vector has a different n than --n");
  TensorVector t = comult(v);
  if (fmt == "json") {
    out << io::to_json(t).dump(2) << '\n';
  } else {
    for (const auto& [k, x] : t.terms)
      out << x << "  " << io::to_text(k.first) << " (x) "
          << io::to_text(k.second) << '\n';
  }
  return 0;
}

int run_frobenius(int n, const std::string& fmt, std::ostream& out) {
  auto rep = frobenius_obstruction(n);
  if (fmt == "json") {
    out << io::to_json(rep).dump(2) << '\n';
  } else {
    out << "n=" << n << " top degree " << rep.top_degree << " has rank "
        << rep.top_rank << " (degree zero rank " << rep.degree_zero_rank
        << ")\n";
    out << "claimed top rank two: " << (rep.top_rank_is_two ? "yes" : "NO")
        << '\n';
    out << "at least two top generators: "
        << (rep.has_two_generators ? "yes" : "no") << '\n';
    out << "positive-degree times top vanishes: "
        << (rep.annihilation_verified ? "yes" : "NO") << " ("
        << rep.annihilation_checks << " products)\n";
    if (rep.degenerate)
      out << "n=1 is degenerate: a single top class, no obstruction\n";
    else
      out << "admits a dual-basis pairing: "
          << (rep.not_frobenius ? "no" : "undetermined") << '\n';
  }
  return 0;
}

void verify_ranks(int lo, int hi, std::vector<CheckLine>& lines) {
  for (int n = lo; n <= std::min(hi, max_ring_n); ++n) {
    auto g = graded_ranks(n);
    auto ring = ring_graded_ranks(n);
    bool ok = g.all_factors_one();
    for (int d = 0; d <= n; ++d)
      ok = ok && g.ranks.at(d) == ring.at(n - d);
    ok = ok && g.ranks.front() == static_cast<std::size_t>(catalan(n)) &&
         g.ranks.back() == 1;
    std::ostringstream det;
    det << "graded ranks";
    for (auto r : g.ranks) det << ' ' << r;
    det << " match the reversed ring ranks, free, ends " << g.ranks.front()
        << " and " << g.ranks.back();
    lines.push_back({"ranks", n, ok, det.str()});
  }
}

void verify_image(int lo, int hi, std::vector<CheckLine>& lines) {
  for (int n = std::max(lo, 2); n <= std::min(hi, max_lattice_check_n); ++n) {
    auto rep = image_equals_relations_check(n);
    std::ostringstream det;
    det << "difference-map image rank " << rep.image_rank
        << " vs relation rank " << rep.relation_rank << ", lattices "
        << (rep.equal ? "equal" : "DIFFER");
    lines.push_back({"image", n, rep.equal, det.str()});
  }
}

void verify_kernel(int lo, int hi, std::vector<CheckLine>& lines) {
  for (int n = lo; n <= std::min(hi, max_lattice_check_n); ++n) {
    auto rep = kernel_equality_check(n);
    std::ostringstream det;
    det << "all-pairs kernel rank " << rep.all_pairs_kernel_rank
        << " vs arrow kernel rank " << rep.arrow_kernel_rank << ", "
        << (rep.equal ? "equal" : "DIFFER");
    lines.push_back({"kernel", n, rep.equal, det.str()});
  }
}

void verify_comult(int lo, int hi, std::vector<CheckLine>& lines) {
  for (int n = lo; n <= std::min(hi, max_comult_check_n); ++n) {
    auto rep = comult_well_defined_check(n);
    bool ok = rep.well_defined &&
              rep.certificates.size() == rep.relation_count;
    auto rels = relations(n).all();
    for (const auto& cert : rep.certificates)
      ok = ok && certificate_expansion(n, cert) ==
                     comult(rels[cert.relation_index].vec);
    std::ostringstream det;
    det << rep.relation_count
        << " relation images certified inside the two-sided relation span";
    lines.push_back({"comult", n, ok, det.str()});
  }
}

void verify_identities(int lo, int hi, std::uint64_t seed,
                       std::vector<CheckLine>& lines) {
  for (int n = lo; n <= std::min(hi, max_lattice_check_n); ++n) {
    SkeinQuotient q(n);
    bool ok = true;
    for (const auto& m : total_order(n)) {
      ok = ok && check_sum_identity(q, m).holds;
      auto moves = rewrite_all_dotted(m);
      for (const auto& mv : moves)
        ok = ok && q.is_zero_in_quotient(mv.relation);
      const auto& final_cfg =
          moves.empty() ? all_dotted(m) : moves.back().after;
      ok = ok && final_cfg.matching == outermost_matching(n);
    }
    // reduction is invariant under adding relation multiples
    auto gens = generators(n);
    auto rels = relations(n).all();
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int trial = 0; trial < 10 && !rels.empty(); ++trial) {
      SkeinVector v(n);
      for (int k = 0; k < 3; ++k)
        v += Int(coeff(rng)) *
             SkeinVector::unit(gens[rng() % gens.size()]);
      SkeinVector w = v;
      for (int k = 0; k < 2; ++k)
        w += Int(coeff(rng)) * rels[rng() % rels.size()].vec;
      ok = ok && q.reduce(v) == q.reduce(w);
    }
    std::ostringstream det;
    det << "sum identity, rewrite moves and relation invariance over "
        << total_order(n).size() << " matchings";
    lines.push_back({"identities", n, ok, det.str()});
  }
}

void verify_frobenius(int lo, int hi, std::vector<CheckLine>& lines) {
  for (int n = lo; n <= std::min(hi, max_ring_n); ++n) {
    auto rep = frobenius_obstruction(n);
    // the literal claim: two top generators and total annihilation
    bool ok = rep.annihilation_verified &&
              (rep.degenerate || rep.top_rank_is_two);
    std::ostringstream det;
    det << "top rank " << rep.top_rank << " (claim: 2), annihilation "
        << (rep.annihilation_verified ? "verified" : "FAILED") << " over "
        << rep.annihilation_checks << " products";
    lines.push_back({"frobenius", n, ok, det.str()});
  }
}

int run_verify(const std::string& suite, int lo, int hi, std::uint64_t seed,
               const std::string& fmt, std::ostream& out) {
  std::vector<CheckLine> lines;
  const bool all = suite == "all";
  if (all || suite == "ranks") verify_ranks(lo, hi, lines);
  if (all || suite == "image") verify_image(lo, hi, lines);
  if (all || suite == "kernel") verify_kernel(lo, hi, lines);
  if (all || suite == "comult") verify_comult(lo, hi, lines);
  if (all || suite == "identities") verify_identities(lo, hi, seed, lines);
  if (all || suite == "frobenius") verify_frobenius(lo, hi, lines);
  if (lines.empty())
    throw std::invalid_argument(
        "no checks to run: --n range outside every ceiling for " + suite);
  emit_checks(out, fmt, lines);
  for (const auto& l : lines)
    if (!l.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crossingless matching calculator: skein module, cohomology"
               " ring and sphere-product homology checks"};
  app.require_subcommand(1);

  std::string n_arg, fmt, output, input = "-", matching_arg, suite;
  std::uint64_t seed = 12345;
  bool limit_override = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-n,--n", n_arg, "size parameter: N or A..B")->required();
    sub->add_option("-f,--format", fmt, "output format");
    sub->add_option("-o,--output", output, "write to a file instead of stdout");
    sub->add_flag("--limit-override", limit_override,
                  "raise the default size ceiling to the library limit");
    return sub;
  };
  auto pick = [&](const char* default_fmt) {
    if (fmt.empty()) fmt = default_fmt;
  };

  auto* sc_match = add_common(
      app.add_subcommand("matchings", "enumerate matchings and arrows"));
  auto* sc_ranks = add_common(
      app.add_subcommand("ranks", "graded rank table with ring comparison"));
  auto* sc_reduce = add_common(
      app.add_subcommand("reduce", "canonical coordinates of a vector"));
  sc_reduce->add_option("-i,--input", input, "vector json file, - for stdin");
  auto* sc_rewrite = add_common(
      app.add_subcommand("rewrite", "normalize an all-dotted configuration"));
  sc_rewrite
      ->add_option("-m,--matching", matching_arg, "arcs, e.g. \"1-4 2-3\"")
      ->required();
  auto* sc_comult = add_common(
      app.add_subcommand("comult", "comultiplication of a vector"));
  sc_comult->add_option("-i,--input", input, "vector json file, - for stdin");
  auto* sc_verify =
      add_common(app.add_subcommand("verify", "run a verification suite"));
  sc_verify
      ->add_option("-s,--suite", suite,
                   "ranks|image|kernel|comult|identities|frobenius|all")
      ->required();
  sc_verify->add_option("--seed", seed, "seed for randomized invariance runs");
  auto* sc_frob = add_common(
      app.add_subcommand("frobenius", "dual-basis obstruction report"));
  auto* sc_graph = add_common(
      app.add_subcommand("export-graph", "DOT digraph of surgery arrows"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Sink sink(output);
    std::ostream& out = sink.stream();
    if (sc_match->parsed()) {
      pick("json");
      require_format(fmt, {"json", "text"});
      Range r = parse_range(n_arg);
      const int cap = limit_override ? max_enumerate_n : 5;
      if (r.hi > cap)
        throw std::out_of_range("matchings: --n above the ceiling");
      return run_matchings(r.lo, r.hi, fmt, out);
    }
    if (sc_ranks->parsed()) {
      pick("json");
      require_format(fmt, {"json", "csv", "text"});
      Range r = parse_range(n_arg);
      if (r.hi > max_ring_n)
        throw std::out_of_range("ranks: --n above the ceiling");
      return run_ranks(r.lo, r.hi, fmt, out);
    }
    if (sc_reduce->parsed()) {
      pick("json");
      require_format(fmt, {"json", "text"});
      const int n = parse_single(n_arg);
      if (n > max_quotient_n)
        throw std::out_of_range("reduce: --n above the ceiling");
      return run_reduce(n, input, fmt, out);
    }
    if (sc_rewrite->parsed()) {
      pick("json");
      require_format(fmt, {"json", "text"});
      const int n = parse_single(n_arg);
      if (n > max_skein_n)
        throw std::out_of_range("rewrite: --n above the ceiling");
      return run_rewrite(n, matching_arg, fmt, out);
    }
    if (sc_comult->parsed()) {
      pick("json");
      require_format(fmt, {"json", "text"});
      const int n = parse_single(n_arg);
      if (n > max_skein_n)
        throw std::out_of_range("comult: --n above the ceiling");
      return run_comult(n, input, fmt, out);
    }
    if (sc_verify->parsed()) {
      pick("text");
      require_format(fmt, {"json", "text"});
      Range r = parse_range(n_arg);
      return run_verify(suite, r.lo, r.hi, seed, fmt, out);
    }
    if (sc_frob->parsed()) {
      pick("json");
      require_format(fmt, {"json", "text"});
      const int n = parse_single(n_arg);
      if (n > max_ring_n)
        throw std::out_of_range("frobenius: --n above the ceiling");
      return run_frobenius(n, fmt, out);
    }
    if (sc_graph->parsed()) {
      pick("dot");
      require_format(fmt, {"dot"});
      const int n = parse_single(n_arg);
      const int cap = limit_override ? max_enumerate_n : 5;
      if (n > cap)
        throw std::out_of_range("export-graph: --n above the ceiling");
      out << io::arrow_graph_dot(n);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
