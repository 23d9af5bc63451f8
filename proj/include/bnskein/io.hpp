#pragma once

// Serialization for the library types: JSON (ordered keys, so output is
// deterministic and diff-friendly), DOT for the arrow digraph, CSV for the
// rank comparison table, and short text renderings for terminal output.
//
// JSON coefficients are 64-bit; anything wider throws rather than silently
// truncating. Arcs and variables are 1-based everywhere, matching the rest
// of the library. Dots are named by their arc, not by its index, so files
// stay readable and independent of the internal arc ordering.

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bnskein/homology.hpp"
#include "bnskein/matchings.hpp"
#include "bnskein/skein.hpp"
#include "bnskein/springer.hpp"

namespace bnskein::io {

using json = nlohmann::ordered_json;

inline std::int64_t to_int64(const Int& x) {
  if (x > std::numeric_limits<std::int64_t>::max() ||
      x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("serialization: coefficient exceeds 64 bits");
  return x.convert_to<std::int64_t>();
}

inline json to_json(const Matching& m) {
  json arcs = json::array();
  for (const auto& [a, b] : m.arcs) arcs.push_back({a, b});
  return json{{"n", m.n}, {"arcs", arcs}};
}

inline Matching matching_from_json(const json& j) {
  std::vector<Arc> arcs;
  for (const auto& a : j.at("arcs"))
    arcs.emplace_back(a.at(0).get<int>(), a.at(1).get<int>());
  return Matching(j.at("n").get<int>(), std::move(arcs));
}

inline json to_json(const DottedConfig& c) {
  json out = to_json(c.matching);
  json dots = json::array();
  for (const auto& [a, b] : c.dotted_arcs()) dots.push_back({a, b});
  out["dots"] = dots;
  return out;
}

inline DottedConfig config_from_json(const json& j) {
  Matching m = matching_from_json(j);
  unsigned dots = 0;
  for (const auto& a : j.at("dots"))
    dots |= 1u << m.arc_index({a.at(0).get<int>(), a.at(1).get<int>()});
  return DottedConfig(std::move(m), dots);
}

inline json to_json(const SkeinVector& v) {
  json terms = json::array();
  for (const auto& [cfg, x] : v.terms)
    terms.push_back({{"config", to_json(cfg)}, {"coeff", to_int64(x)}});
  return json{{"n", v.n}, {"terms", terms}};
}

inline SkeinVector vector_from_json(const json& j) {
  SkeinVector v(j.at("n").get<int>());
  for (const auto& t : j.at("terms"))
    v.add_term(config_from_json(t.at("config")),
               Int(t.at("coeff").get<std::int64_t>()));
  return v;
}

inline json to_json(const TensorVector& t) {
  json terms = json::array();
  for (const auto& [k, x] : t.terms)
    terms.push_back({{"left", to_json(k.first)},
                     {"right", to_json(k.second)},
                     {"coeff", to_int64(x)}});
  return json{{"n", t.n}, {"terms", terms}};
}

inline TensorVector tensor_from_json(const json& j) {
  TensorVector t(j.at("n").get<int>());
  for (const auto& term : j.at("terms"))
    t.add_term(config_from_json(term.at("left")),
               config_from_json(term.at("right")),
               Int(term.at("coeff").get<std::int64_t>()));
  return t;
}

inline json to_json(const SetPartition& p) {
  json blocks = json::array();
  for (const auto& b : p.blocks) blocks.push_back(b);
  return json{{"n", p.n}, {"blocks", blocks}};
}

inline json to_json(const HomologyClass& h) {
  json out;
  if (std::holds_alternative<Matching>(h.carrier))
    out["carrier"] = to_json(std::get<Matching>(h.carrier));
  else
    out["carrier"] = to_json(std::get<SetPartition>(h.carrier));
  json labels = json::array();
  for (auto l : h.labels)
    labels.push_back(l == CellLabel::point ? "p" : "c");
  out["labels"] = labels;
  return out;
}

inline HomologyClass homology_from_json(const json& j) {
  const json& c = j.at("carrier");
  std::vector<CellLabel> labels;
  for (const auto& l : j.at("labels")) {
    const auto s = l.get<std::string>();
    if (s != "p" && s != "c")
      throw std::invalid_argument("class label must be \"p\" or \"c\"");
    labels.push_back(s == "p" ? CellLabel::point : CellLabel::cell);
  }
  if (c.contains("arcs"))
    return HomologyClass(matching_from_json(c), std::move(labels));
  SetPartition p;
  p.n = c.at("n").get<int>();
  for (const auto& b : c.at("blocks"))
    p.blocks.push_back(b.get<std::vector<int>>());
  return HomologyClass(std::move(p), std::move(labels));
}

inline json to_json(const RingElement& f) {
  json terms = json::array();
  for (const auto& [mask, x] : f.terms) {
    json support = json::array();
    for (int v = 0; v < 2 * f.n; ++v)
      if (mask >> v & 1u) support.push_back(v + 1);
    terms.push_back({{"support", support}, {"coeff", to_int64(x)}});
  }
  return json{{"n", f.n}, {"terms", terms}};
}

inline RingElement ring_from_json(const json& j) {
  RingElement f(j.at("n").get<int>());
  for (const auto& t : j.at("terms")) {
    unsigned mask = 0;
    for (const auto& v : t.at("support")) {
      const int var = v.get<int>();
      if (var < 1 || var > 2 * f.n)
        throw std::invalid_argument("ring element: variable out of range");
      if (mask >> (var - 1) & 1u)
        throw std::invalid_argument("ring element: repeated variable");
      mask |= 1u << (var - 1);
    }
    f.add_term(mask, Int(t.at("coeff").get<std::int64_t>()));
  }
  return f;
}

inline json coords_json(const std::vector<Int>& coords) {
  json out = json::array();
  for (const Int& x : coords) out.push_back(to_int64(x));
  return out;
}

inline json to_json(const GradedRanks& g) {
  return json{{"n", g.n},
              {"ranks", g.ranks},
              {"invariant_factors_all_one", g.all_factors_one()}};
}

inline json to_json(const RewriteMove& mv) {
  return json{{"before", to_json(mv.before)},
              {"after", to_json(mv.after)},
              {"relation", to_json(mv.relation)}};
}

inline json to_json(const ImageCheckReport& r) {
  return json{{"n", r.n},
              {"equal", r.equal},
              {"image_rank", r.image_rank},
              {"relation_rank", r.relation_rank}};
}

inline json to_json(const KernelCheckReport& r) {
  return json{{"n", r.n},
              {"equal", r.equal},
              {"total_generators", r.total_generators},
              {"all_pairs_rows", r.all_pairs_rows},
              {"arrow_rows", r.arrow_rows},
              {"all_pairs_kernel_rank", r.all_pairs_kernel_rank},
              {"arrow_kernel_rank", r.arrow_kernel_rank}};
}

inline json to_json(const ComultCertificate& c) {
  json coeffs = json::array();
  for (const auto& [idx, x] : c.coefficients)
    coeffs.push_back({idx, to_int64(x)});
  return json{{"relation_index", c.relation_index},
              {"coefficients", coeffs}};
}

inline json to_json(const ComultReport& r) {
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  return json{{"n", r.n},
              {"well_defined", r.well_defined},
              {"generator_count", r.generator_count},
              {"relation_count", r.relation_count},
              {"certificates", certs}};
}

inline json to_json(const FrobeniusReport& r) {
  return json{{"n", r.n},
              {"top_degree", r.top_degree},
              {"top_rank", r.top_rank},
              {"degree_zero_rank", r.degree_zero_rank},
              {"top_rank_is_two", r.top_rank_is_two},
              {"has_two_generators", r.has_two_generators},
              {"annihilation_checks", r.annihilation_checks},
              {"annihilation_verified", r.annihilation_verified},
              {"degenerate", r.degenerate},
              {"not_frobenius", r.not_frobenius}};
}

inline json to_json(const SumIdentityResult& r) {
  return json{{"holds", r.holds},
              {"difference", to_json(r.difference)},
              {"residual", coords_json(r.residual)}};
}

/* "1-2 3-4" style node names for the arrow digraph */
inline std::string matching_label(const Matching& m) {
  std::string out;
  for (const auto& [a, b] : m.arcs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(a) + '-' + std::to_string(b);
  }
  return out;
}

inline std::string to_text(const DottedConfig& c) {
  std::string out = "[" + matching_label(c.matching);
  auto dotted = c.dotted_arcs();
  if (!dotted.empty()) {
    out += " dots:";
    for (std::size_t i = 0; i < dotted.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(dotted[i].first) + '-' +
             std::to_string(dotted[i].second);
    }
  }
  return out + "]";
}

inline std::string to_text(const SkeinVector& v) {
  if (v.terms.empty()) return "0";
  std::string out;
  for (const auto& [cfg, x] : v.terms) {
    if (!out.empty()) out += x >= 0 ? " + " : " - ";
    else if (x < 0) out += "-";
    const Int mag = x >= 0 ? x : Int(-x);
    if (mag != 1) out += mag.str() + "*";
    out += to_text(cfg);
  }
  return out;
}

/* All matchings as nodes (total order) and one edge per surgery arrow. */
inline std::string arrow_graph_dot(int n) {
  auto order = total_order(n);
  std::ostringstream out;
  out << "digraph arrows {\n  rankdir=LR;\n";
  for (const auto& m : order)
    out << "  \"" << matching_label(m) << "\";\n";
  for (const auto& ar : all_arrows(n))
    out << "  \"" << matching_label(ar.source) << "\" -> \""
        << matching_label(ar.target) << "\";\n";
  out << "}\n";
  return out.str();
}

/* Rank table: one row per degree, module ranks against the reversed ring
   ranks. The degree column is the actual grading (even). */
inline std::string ranks_csv(int lo, int hi) {
  if (lo < 1 || lo > hi)
    throw std::invalid_argument("ranks_csv: bad range");
  std::ostringstream out;
  out << "n,degree,skein_rank,ring_rank_reversed,match\n";
  for (int n = lo; n <= hi; ++n) {
    auto skein = graded_ranks(n).ranks;
    auto ring = ring_graded_ranks(n);
    for (int d = 0; d <= n; ++d) {
      const std::size_t reversed = ring.at(n - d);
      out << n << ',' << 2 * d << ',' << skein.at(d) << ',' << reversed << ','
          << (skein.at(d) == reversed ? "true" : "false") << '\n';
    }
  }
  return out.str();
}

}  // namespace bnskein::io
