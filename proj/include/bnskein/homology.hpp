#pragma once

// The homology side of the rank correspondence: cell-basis classes on
// sphere products, the inclusion-induced maps, the signed difference map
// whose image matches the relation lattice, its kernel comparison against
// the all-pairs version, and the comultiplication with its membership
// certificate for well-definedness.
//
// Conventions: a class on a matching carrier is a point/cell label per arc
// (point <-> dot under the generator correspondence); a class on a partition
// carrier is a label per block, blocks in their sorted order. Label masks
// set a bit for "point". The global generator index of a configuration is
// (position of its matching in the total order) * 2^n + dot mask, so skein
// generators and homology classes share one indexing.

#include <bit>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "bnskein/intlinalg.hpp"
#include "bnskein/matchings.hpp"
#include "bnskein/skein.hpp"

namespace bnskein {

inline constexpr int max_lattice_check_n = 4;  // image / kernel comparisons
inline constexpr int max_comult_check_n = 3;   // tensor-space membership

enum class CellLabel : unsigned char { point, cell };

struct HomologyClass {
  std::variant<Matching, SetPartition> carrier;
  std::vector<CellLabel> labels;  // one per arc (matching) or block (partition)

  HomologyClass() = default;
  HomologyClass(std::variant<Matching, SetPartition> carrier_,
                std::vector<CellLabel> labels_)
      : carrier(std::move(carrier_)), labels(std::move(labels_)) {
    std::size_t slots =
        std::holds_alternative<Matching>(carrier)
            ? std::get<Matching>(carrier).arcs.size()
            : std::get<SetPartition>(carrier).blocks.size();
    if (labels.size() != slots)
      throw std::invalid_argument("homology class: one label per arc/block");
  }

  int degree() const {
    int cells = 0;
    for (auto l : labels) cells += l == CellLabel::cell;
    return 2 * cells;
  }

  friend bool operator==(const HomologyClass&, const HomologyClass&) = default;
};

/* dot -> point, undotted -> cell */
inline HomologyClass to_homology(const DottedConfig& cfg) {
  std::vector<CellLabel> labels;
  for (std::size_t t = 0; t < cfg.matching.arcs.size(); ++t)
    labels.push_back(cfg.dotted(t) ? CellLabel::point : CellLabel::cell);
  return HomologyClass(cfg.matching, std::move(labels));
}

inline DottedConfig to_config(const HomologyClass& h) {
  if (!std::holds_alternative<Matching>(h.carrier))
    throw std::invalid_argument("to_config: needs a matching carrier");
  const auto& m = std::get<Matching>(h.carrier);
  unsigned dots = 0;
  for (std::size_t t = 0; t < h.labels.size(); ++t)
    if (h.labels[t] == CellLabel::point) dots |= 1u << t;
  return DottedConfig(m, dots);
}

/* The map H(S_a cap S_b) -> H(S_a) induced by inclusion, in the label-mask
   bases: rows are classes on a (bit = point on that arc), columns classes
   on the blocks of the intersection partition (bit = point on that block).
   A point block puts points on all its arcs in a; a cell block contributes
   the sum over its arcs of (cell there, points on its other arcs);
   blocks combine multilinearly. */
inline IntMatrix induced_map(const Matching& a, const Matching& b) {
  SetPartition part = intersection_partition({a, b});
  const int n = a.n;
  std::vector<std::vector<std::size_t>> block_arcs(part.blocks.size());
  for (std::size_t k = 0; k < part.blocks.size(); ++k)
    for (std::size_t t = 0; t < a.arcs.size(); ++t)
      for (int node : part.blocks[k])
        if (a.arcs[t].first == node) block_arcs[k].push_back(t);

  IntMatrix m(std::size_t{1} << n, std::size_t{1} << part.blocks.size());
  const unsigned full = (1u << n) - 1u;
  for (unsigned beta = 0; beta < (1u << part.blocks.size()); ++beta) {
    std::vector<std::size_t> cell_blocks;
    for (std::size_t k = 0; k < part.blocks.size(); ++k)
      if (!(beta >> k & 1u)) cell_blocks.push_back(k);
    // one summand per way of placing the cell of each cell block on one arc
    std::vector<std::size_t> choice(cell_blocks.size(), 0);
    while (true) {
      unsigned row = full;
      for (std::size_t c = 0; c < cell_blocks.size(); ++c)
        row &= ~(1u << block_arcs[cell_blocks[c]][choice[c]]);
      m.at(row, beta) += 1;
      std::size_t c = 0;
      while (c < choice.size() &&
             ++choice[c] == block_arcs[cell_blocks[c]].size())
        choice[c++] = 0;
      if (c == choice.size()) break;
    }
  }
  return m;
}

namespace detail {

inline std::map<Matching, std::size_t> order_positions(int n) {
  std::map<Matching, std::size_t> pos;
  auto order = total_order(n);
  for (std::size_t i = 0; i < order.size(); ++i) pos.emplace(order[i], i);
  return pos;
}

}  // namespace detail

inline std::size_t generator_index(const std::map<Matching, std::size_t>& pos,
                                   const DottedConfig& cfg) {
  return (pos.at(cfg.matching) << cfg.matching.n) + cfg.dots;
}

/* Signed difference of the two inclusion maps, one column per (arrow,
   intersection class), rows over the shared generator index. */
inline IntMatrix psi_tilde_matrix(int n) {
  if (n < 1 || n > max_lattice_check_n)
    throw std::out_of_range("psi matrix: supported range is 1..4");
  auto pos = detail::order_positions(n);
  auto arrows = all_arrows(n);
  const std::size_t gens = pos.size() << n;
  std::size_t cols = 0;
  std::vector<IntMatrix> into_a, into_b;
  for (const auto& ar : arrows) {
    into_a.push_back(induced_map(ar.source, ar.target));
    into_b.push_back(induced_map(ar.target, ar.source));
    cols += into_a.back().cols();
  }
  IntMatrix m(gens, cols);
  std::size_t col = 0;
  for (std::size_t w = 0; w < arrows.size(); ++w) {
    const std::size_t ga = pos.at(arrows[w].source) << n;
    const std::size_t gb = pos.at(arrows[w].target) << n;
    for (std::size_t beta = 0; beta < into_a[w].cols(); ++beta, ++col)
      for (std::size_t r = 0; r < (std::size_t{1} << n); ++r) {
        m.at(ga + r, col) += into_a[w].at(r, beta);
        m.at(gb + r, col) -= into_b[w].at(r, beta);
      }
  }
  return m;
}

/* All generated relations as columns over the global generator index,
   first family then second. */
inline IntMatrix skein_relation_matrix(int n) {
  if (n < 1 || n > max_lattice_check_n)
    throw std::out_of_range("relation matrix: supported range is 1..4");
  auto pos = detail::order_positions(n);
  auto rels = relations(n).all();
  IntMatrix m(pos.size() << n, rels.size());
  for (std::size_t c = 0; c < rels.size(); ++c)
    for (const auto& [cfg, x] : rels[c].vec.terms)
      m.at(generator_index(pos, cfg), c) = x;
  return m;
}

struct ImageCheckReport {
  int n = 0;
  bool equal = false;
  std::size_t image_rank = 0;
  std::size_t relation_rank = 0;
};

/* The computational heart of the correspondence: the column lattice of the
   signed difference map equals the relation lattice. */
inline ImageCheckReport image_equals_relations_check(int n) {
  ImageCheckReport rep;
  rep.n = n;
  Lattice image = image_lattice(psi_tilde_matrix(n));
  Lattice rel = image_lattice(skein_relation_matrix(n));
  rep.image_rank = image.rank();
  rep.relation_rank = rel.rank();
  rep.equal = lattice_equal(image, rel);
  return rep;
}

struct KernelCheckReport {
  int n = 0;
  bool equal = false;
  std::size_t total_generators = 0;
  std::size_t all_pairs_rows = 0;
  std::size_t arrow_rows = 0;
  std::size_t all_pairs_kernel_rank = 0;
  std::size_t arrow_kernel_rank = 0;
};

namespace detail {

/* Rows of the dual (restriction) map for the given pairs: the transpose of
   each inclusion matrix lands in its matching's column block, the second
   with a minus sign. */
inline IntMatrix restriction_rows(
    int n, const std::map<Matching, std::size_t>& pos,
    const std::vector<std::pair<Matching, Matching>>& pairs) {
  std::vector<IntMatrix> maps_a, maps_b;
  std::size_t rows = 0;
  for (const auto& [a, b] : pairs) {
    maps_a.push_back(induced_map(a, b));
    maps_b.push_back(induced_map(b, a));
    rows += maps_a.back().cols();
  }
  IntMatrix m(rows, pos.size() << n);
  std::size_t row = 0;
  for (std::size_t w = 0; w < pairs.size(); ++w) {
    const std::size_t ga = pos.at(pairs[w].first) << n;
    const std::size_t gb = pos.at(pairs[w].second) << n;
    for (std::size_t beta = 0; beta < maps_a[w].cols(); ++beta, ++row)
      for (std::size_t r = 0; r < (std::size_t{1} << n); ++r) {
        m.at(row, ga + r) += maps_a[w].at(r, beta);
        m.at(row, gb + r) -= maps_b[w].at(r, beta);
      }
  }
  return m;
}

}  // namespace detail

/* Kernel comparison: the dual map over every pair of distinct matchings
   (in total-order positions) against the dual map over arrows only. */
inline KernelCheckReport kernel_equality_check(int n) {
  if (n < 1 || n > max_lattice_check_n)
    throw std::out_of_range("kernel check: supported range is 1..4");
  auto pos = detail::order_positions(n);
  auto order = total_order(n);

  std::vector<std::pair<Matching, Matching>> all_pairs;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      all_pairs.emplace_back(order[i], order[j]);
  std::vector<std::pair<Matching, Matching>> arrow_pairs;
  for (const auto& ar : all_arrows(n))
    arrow_pairs.emplace_back(ar.source, ar.target);

  IntMatrix full = detail::restriction_rows(n, pos, all_pairs);
  IntMatrix restricted = detail::restriction_rows(n, pos, arrow_pairs);

  KernelCheckReport rep;
  rep.n = n;
  rep.total_generators = pos.size() << n;
  rep.all_pairs_rows = full.rows();
  rep.arrow_rows = restricted.rows();
  Lattice kf = kernel_lattice(full);
  Lattice kr = kernel_lattice(restricted);
  rep.all_pairs_kernel_rank = kf.rank();
  rep.arrow_kernel_rank = kr.rank();
  rep.equal = lattice_equal(kf, kr);
  return rep;
}

struct TensorVector {
  int n = 0;
  std::map<std::pair<DottedConfig, DottedConfig>, Int> terms;

  TensorVector() = default;
  explicit TensorVector(int n_) : n(n_) {}

  bool is_zero() const { return terms.empty(); }

  void add_term(const DottedConfig& l, const DottedConfig& r, const Int& x) {
    if (l.matching.n != n || r.matching.n != n)
      throw std::invalid_argument("tensor vector: mismatched n");
    auto key = std::make_pair(l, r);
    auto it = terms.find(key);
    if (it == terms.end()) {
      if (x != 0) terms.emplace(std::move(key), x);
    } else {
      it->second += x;
      if (it->second == 0) terms.erase(it);
    }
  }

  TensorVector& operator+=(const TensorVector& o) {
    if (o.n != n) throw std::invalid_argument("tensor vector: mismatched n");
    for (const auto& [k, x] : o.terms) add_term(k.first, k.second, x);
    return *this;
  }
  TensorVector& operator-=(const TensorVector& o) {
    if (o.n != n) throw std::invalid_argument("tensor vector: mismatched n");
    for (const auto& [k, x] : o.terms) add_term(k.first, k.second, -x);
    return *this;
  }
  friend TensorVector operator+(TensorVector a, const TensorVector& b) {
    a += b;
    return a;
  }
  friend TensorVector operator-(TensorVector a, const TensorVector& b) {
    a -= b;
    return a;
  }
  friend bool operator==(const TensorVector&, const TensorVector&) = default;
};

inline TensorVector tensor_of(const SkeinVector& a, const SkeinVector& b) {
  if (a.n != b.n) throw std::invalid_argument("tensor: mismatched n");
  TensorVector out(a.n);
  for (const auto& [ca, xa] : a.terms)
    for (const auto& [cb, xb] : b.terms) out.add_term(ca, cb, xa * xb);
  return out;
}

/* Per-arc diagonal rule, multiplicative across arcs, linear in the input:
   dotted -> dotted (x) dotted; undotted -> dotted (x) undotted
                                          + undotted (x) dotted. */
inline TensorVector comult(const SkeinVector& v) {
  TensorVector out(v.n);
  for (const auto& [cfg, coeff] : v.terms) {
    const int arcs = cfg.matching.n;
    std::vector<std::pair<unsigned, unsigned>> split{{0u, 0u}};
    for (int t = 0; t < arcs; ++t) {
      const unsigned bit = 1u << t;
      if (cfg.dotted(t)) {
        for (auto& [l, r] : split) {
          l |= bit;
          r |= bit;
        }
      } else {
        std::vector<std::pair<unsigned, unsigned>> next;
        next.reserve(split.size() * 2);
        for (const auto& [l, r] : split) {
          next.emplace_back(l | bit, r);
          next.emplace_back(l, r | bit);
        }
        split = std::move(next);
      }
    }
    for (const auto& [l, r] : split)
      out.add_term(DottedConfig(cfg.matching, l),
                   DottedConfig(cfg.matching, r), coeff);
  }
  return out;
}

inline TensorVector swap_factors(const TensorVector& t) {
  TensorVector out(t.n);
  for (const auto& [k, x] : t.terms) out.add_term(k.second, k.first, x);
  return out;
}

/* counit: 1 on the fully dotted configurations, 0 elsewhere */
inline Int counit(const SkeinVector& v) {
  Int out = 0;
  const unsigned full = (1u << v.n) - 1u;
  for (const auto& [cfg, x] : v.terms)
    if (cfg.dots == full) out += x;
  return out;
}

/* (counit (x) id) applied to a tensor vector */
inline SkeinVector contract_left(const TensorVector& t) {
  SkeinVector out(t.n);
  const unsigned full = (1u << t.n) - 1u;
  for (const auto& [k, x] : t.terms)
    if (k.first.dots == full) out.add_term(k.second, x);
  return out;
}

/* (id (x) counit) */
inline SkeinVector contract_right(const TensorVector& t) {
  SkeinVector out(t.n);
  const unsigned full = (1u << t.n) - 1u;
  for (const auto& [k, x] : t.terms)
    if (k.second.dots == full) out.add_term(k.first, x);
  return out;
}

struct ComultCertificate {
  std::size_t relation_index = 0;  // over the first-then-second family order
  // (global column index, coefficient); columns are relation (x) generator
  // pairs laid out as rel*G + gen, then generator (x) relation pairs laid
  // out as R*G + gen*G + rel, with G generators and R relations
  std::vector<std::pair<std::size_t, Int>> coefficients;
};

struct ComultReport {
  int n = 0;
  bool well_defined = false;
  std::size_t generator_count = 0;
  std::size_t relation_count = 0;
  std::vector<ComultCertificate> certificates;
};

namespace detail {

struct BidegreeBlock {
  std::vector<std::size_t> col_globals;
  IntMatrix columns;           // rows = (left gen, right gen) pairs in block
  HnfResult hnf_result;
  Lattice lattice;
};

}  // namespace detail

/* Certifies that the comultiplication of every generated relation lies in
   (relation lattice) (x) (free module) + (free module) (x) (relation
   lattice), block by block in the bidegree splitting, and returns the
   expressing coefficients over the family columns. */
inline ComultReport comult_well_defined_check(int n) {
  if (n < 1 || n > max_comult_check_n)
    throw std::out_of_range("comult check: supported range is 1..3");
  const auto gens = generators(n);
  const auto rels = relations(n).all();
  const std::size_t G = gens.size(), R = rels.size();

  // degree -> local indices
  std::vector<std::vector<std::size_t>> gens_of(n + 1), rels_of(n + 1);
  std::map<DottedConfig, std::size_t> gen_local;
  for (std::size_t j = 0; j < G; ++j) {
    gens_of[gens[j].degree() / 2].push_back(j);
    gen_local.emplace(gens[j], gens_of[gens[j].degree() / 2].size() - 1);
  }
  for (std::size_t i = 0; i < R; ++i)
    rels_of[rels[i].vec.terms.begin()->first.degree() / 2].push_back(i);

  std::map<std::pair<int, int>, detail::BidegreeBlock> blocks;
  auto block_for = [&](int dl, int dr) -> detail::BidegreeBlock& {
    auto it = blocks.find({dl, dr});
    if (it != blocks.end()) return it->second;
    detail::BidegreeBlock blk;
    const auto& lg = gens_of[dl], &rg = gens_of[dr];
    const std::size_t rows = lg.size() * rg.size();
    std::vector<std::vector<std::pair<std::size_t, Int>>> cols;
    auto row_of = [&](const DottedConfig& l, const DottedConfig& r) {
      return gen_local.at(l) * rg.size() + gen_local.at(r);
    };
    for (std::size_t i : rels_of[dl])  // relation (x) generator
      for (std::size_t j : rg) {
        std::vector<std::pair<std::size_t, Int>> col;
        for (const auto& [cfg, x] : rels[i].vec.terms)
          col.emplace_back(row_of(cfg, gens[j]), x);
        blk.col_globals.push_back(i * G + j);
        cols.push_back(std::move(col));
      }
    for (std::size_t i : lg)  // generator (x) relation
      for (std::size_t j : rels_of[dr]) {
        std::vector<std::pair<std::size_t, Int>> col;
        for (const auto& [cfg, x] : rels[j].vec.terms)
          col.emplace_back(row_of(gens[i], cfg), x);
        blk.col_globals.push_back(R * G + i * G + j);
        cols.push_back(std::move(col));
      }
    blk.columns = IntMatrix(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [r, x] : cols[c]) blk.columns.at(r, c) += x;
    blk.hnf_result = hnf(blk.columns);
    IntMatrix basis(rows, blk.hnf_result.rank);
    for (std::size_t c = 0; c < blk.hnf_result.rank; ++c)
      for (std::size_t r = 0; r < rows; ++r)
        basis.at(r, c) = blk.hnf_result.h.at(r, c);
    blk.lattice = Lattice{rows, std::move(basis), blk.hnf_result.pivot_rows};
    return blocks.emplace(std::make_pair(dl, dr), std::move(blk))
        .first->second;
  };

  ComultReport rep;
  rep.n = n;
  rep.generator_count = G;
  rep.relation_count = R;
  rep.well_defined = true;
  for (std::size_t ri = 0; ri < R; ++ri) {
    TensorVector image = comult(rels[ri].vec);
    std::map<std::pair<int, int>, std::map<std::size_t, Int>> components;
    for (const auto& [k, x] : image.terms) {
      const int dl = k.first.degree() / 2, dr = k.second.degree() / 2;
      auto& blk = block_for(dl, dr);
      const std::size_t row = gen_local.at(k.first) * gens_of[dr].size() +
                              gen_local.at(k.second);
      components[{dl, dr}][row] = x;
    }
    ComultCertificate cert;
    cert.relation_index = ri;
    std::map<std::size_t, Int> found;
    bool ok = true;
    for (const auto& [bd, sparse] : components) {
      auto& blk = blocks.at(bd);
      std::vector<Int> v(blk.columns.rows(), 0);
      for (const auto& [r, x] : sparse) v[r] = x;
      auto coords = member(blk.lattice, v);
      if (!coords) {
        ok = false;
        break;
      }
      // lift coordinates over the Hermite basis back to the family columns
      std::vector<Int> padded(blk.columns.cols(), 0);
      for (std::size_t i = 0; i < coords->size(); ++i)
        padded[i] = (*coords)[i];
      std::vector<Int> over_columns = blk.hnf_result.u.apply(padded);
      for (std::size_t c = 0; c < over_columns.size(); ++c)
        if (over_columns[c] != 0) found[blk.col_globals[c]] += over_columns[c];
    }
    if (!ok) {
      rep.well_defined = false;
      continue;
    }
    for (auto& [idx, x] : found)
      if (x != 0) cert.coefficients.emplace_back(idx, x);
    rep.certificates.push_back(std::move(cert));
  }
  return rep;
}

/* Rebuilds the combination a certificate describes, for independent
   comparison with the comultiplied relation. */
inline TensorVector certificate_expansion(int n, const ComultCertificate& cert) {
  const auto gens = generators(n);
  const auto rels = relations(n).all();
  const std::size_t G = gens.size(), R = rels.size();
  TensorVector out(n);
  for (const auto& [idx, x] : cert.coefficients) {
    if (idx < R * G) {  // relation (x) generator: rel*G + gen
      const std::size_t i = idx / G, j = idx % G;
      for (const auto& [cfg, y] : rels[i].vec.terms)
        out.add_term(cfg, gens[j], x * y);
    } else {  // generator (x) relation: R*G + gen*G + rel
      const std::size_t local = idx - R * G;
      const std::size_t i = local / G, j = local % G;
      if (i >= G || j >= R)
        throw std::invalid_argument("certificate: column index out of range");
      for (const auto& [cfg, y] : rels[j].vec.terms)
        out.add_term(gens[i], cfg, x * y);
    }
  }
  return out;
}

}  // namespace bnskein
