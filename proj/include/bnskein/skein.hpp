#pragma once

// Dotted configurations on crossingless matchings, the free module they
// span, the two relation families attached to surgery arrows, graded rank
// computation, the quotient with its canonical basis and reduction, and the
// constructive rewriting results (all-dotted normalization, one-undotted
// expansion, sum identity).
//
// Conventions: dots are a bitmask over the arcs sorted by left endpoint
// (bit t set = arc t dotted); a configuration with d dots sits in degree 2d;
// generators are ordered by (position in total_order, dot mask); relations
// are ordered Type I first, then Type II, each family by (arrow, marking).

#include <bit>
#include <cstddef>
#include <iterator>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bnskein/intlinalg.hpp"
#include "bnskein/matchings.hpp"

namespace bnskein {

inline constexpr int max_skein_n = 8;     // generators / relations
inline constexpr int max_quotient_n = 6;  // ranks / basis / reduction

struct DottedConfig {
  Matching matching;
  unsigned dots = 0;  // bit t = arc t (sorted by left endpoint) carries a dot

  DottedConfig() = default;
  DottedConfig(Matching m, unsigned dots_) : matching(std::move(m)), dots(dots_) {
    if (matching.n > 0 && dots >> matching.n)
      throw std::invalid_argument("config: dot mask out of range");
  }

  int degree() const { return 2 * std::popcount(dots); }

  bool dotted(std::size_t arc) const { return dots >> arc & 1u; }

  std::vector<Arc> dotted_arcs() const {
    std::vector<Arc> out;
    for (std::size_t t = 0; t < matching.arcs.size(); ++t)
      if (dotted(t)) out.push_back(matching.arcs[t]);
    return out;
  }

  friend auto operator<=>(const DottedConfig&, const DottedConfig&) = default;
};

struct SkeinVector {
  int n = 0;
  std::map<DottedConfig, Int> terms;

  SkeinVector() = default;
  explicit SkeinVector(int n_) : n(n_) {}

  static SkeinVector unit(const DottedConfig& c, Int coeff = 1) {
    SkeinVector v(c.matching.n);
    if (coeff != 0) v.terms.emplace(c, std::move(coeff));
    return v;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const DottedConfig& c, const Int& coeff) {
    if (c.matching.n != n)
      throw std::invalid_argument("skein vector: mismatched n");
    auto it = terms.find(c);
    if (it == terms.end()) {
      if (coeff != 0) terms.emplace(c, coeff);
    } else {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  SkeinVector& operator+=(const SkeinVector& o) {
    if (o.n != n) throw std::invalid_argument("skein vector: mismatched n");
    for (const auto& [c, x] : o.terms) add_term(c, x);
    return *this;
  }

  SkeinVector& operator-=(const SkeinVector& o) {
    if (o.n != n) throw std::invalid_argument("skein vector: mismatched n");
    for (const auto& [c, x] : o.terms) add_term(c, -x);
    return *this;
  }

  friend SkeinVector operator+(SkeinVector a, const SkeinVector& b) {
    a += b;
    return a;
  }
  friend SkeinVector operator-(SkeinVector a, const SkeinVector& b) {
    a -= b;
    return a;
  }
  friend SkeinVector operator*(const Int& s, const SkeinVector& v) {
    SkeinVector out(v.n);
    if (s != 0)
      for (const auto& [c, x] : v.terms) out.terms.emplace(c, s * x);
    return out;
  }
  friend bool operator==(const SkeinVector&, const SkeinVector&) = default;
};

/* Free module generators: every dotted configuration, ordered by the total
   order on matchings and a binary counter over the dot mask. */
inline std::vector<DottedConfig> generators(int n) {
  if (n < 1 || n > max_skein_n)
    throw std::out_of_range("generators: supported range is 1..8");
  std::vector<DottedConfig> out;
  out.reserve(static_cast<std::size_t>(catalan(n)) << n);
  for (const auto& m : total_order(n))
    for (unsigned mask = 0; mask < (1u << n); ++mask)
      out.emplace_back(m, mask);
  return out;
}

enum class RelationType { type_i, type_ii };

struct TaggedRelation {
  SkeinVector vec;
  Arrow arrow;
  unsigned common_dots = 0;  // marking over the n-2 shared arcs, sorted
  RelationType type = RelationType::type_i;
};

struct RelationSet {
  int n = 0;
  std::vector<TaggedRelation> type_i, type_ii;

  std::vector<TaggedRelation> all() const {
    std::vector<TaggedRelation> out = type_i;
    out.insert(out.end(), type_ii.begin(), type_ii.end());
    return out;
  }
};

/* The two relation families. For an arrow a -> b over the quadruple
   i<j<k<l and each dot marking Q of the shared arcs:
     Type I:  [a, Q + dot(i,j)] + [a, Q + dot(k,l)]
                - [b, Q + dot(i,l)] - [b, Q + dot(j,k)]
     Type II: [a, Q + dots(i,j),(k,l)] - [b, Q + dots(i,l),(j,k)]
   n=1 has no arrows and yields the empty set. */
inline RelationSet relations(int n) {
  if (n < 1 || n > max_skein_n)
    throw std::out_of_range("relations: supported range is 1..8");
  RelationSet rs;
  rs.n = n;
  for (const auto& ar : all_arrows(n)) {
    auto [i, j, k, l] = ar.quad;
    std::vector<Arc> common;
    for (const auto& arc : ar.source.arcs)
      if (arc != Arc{i, j} && arc != Arc{k, l}) common.push_back(arc);
    const unsigned a_ij = 1u << ar.source.arc_index({i, j});
    const unsigned a_kl = 1u << ar.source.arc_index({k, l});
    const unsigned b_il = 1u << ar.target.arc_index({i, l});
    const unsigned b_jk = 1u << ar.target.arc_index({j, k});
    for (unsigned q = 0; q < (1u << (n - 2)); ++q) {
      unsigned qa = 0, qb = 0;
      for (int t = 0; t < n - 2; ++t)
        if (q >> t & 1u) {
          qa |= 1u << ar.source.arc_index(common[t]);
          qb |= 1u << ar.target.arc_index(common[t]);
        }
      SkeinVector r1(n);
      r1.add_term({ar.source, qa | a_ij}, 1);
      r1.add_term({ar.source, qa | a_kl}, 1);
      r1.add_term({ar.target, qb | b_il}, -1);
      r1.add_term({ar.target, qb | b_jk}, -1);
      rs.type_i.push_back({std::move(r1), ar, q, RelationType::type_i});
      SkeinVector r2(n);
      r2.add_term({ar.source, qa | a_ij | a_kl}, 1);
      r2.add_term({ar.target, qb | b_il | b_jk}, -1);
      rs.type_ii.push_back({std::move(r2), ar, q, RelationType::type_ii});
    }
  }
  return rs;
}

namespace detail {

struct DegreeBlock {
  std::vector<DottedConfig> gens;
  std::map<DottedConfig, std::size_t> index;
  std::vector<SkeinVector> rels;
};

/* Splits generators and relations into homogeneous degree blocks 0..n
   (degree 2d stored at slot d). Both families are homogeneous. */
inline std::vector<DegreeBlock> degree_blocks(int n) {
  std::vector<DegreeBlock> blocks(n + 1);
  for (auto& g : generators(n)) {
    auto& blk = blocks[g.degree() / 2];
    blk.index.emplace(g, blk.gens.size());
    blk.gens.push_back(std::move(g));
  }
  for (auto& r : relations(n).all()) {
    int d = r.vec.terms.begin()->first.degree();
    blocks[d / 2].rels.push_back(std::move(r.vec));
  }
  return blocks;
}

inline IntMatrix relation_matrix(const DegreeBlock& blk) {
  IntMatrix m(blk.gens.size(), blk.rels.size());
  for (std::size_t c = 0; c < blk.rels.size(); ++c)
    for (const auto& [cfg, coeff] : blk.rels[c].terms)
      m.at(blk.index.at(cfg), c) = coeff;
  return m;
}

}  // namespace detail

struct GradedRanks {
  int n = 0;
  std::vector<std::size_t> ranks;              // slot d = degree 2d
  std::vector<std::vector<Int>> factors;       // invariant factors per degree

  bool all_factors_one() const {
    for (const auto& f : factors)
      for (const Int& x : f)
        if (x != 1) return false;
    return true;
  }
};

/* Graded ranks of the quotient by both relation families, one Smith normal
   form per degree; also records every invariant factor. */
inline GradedRanks graded_ranks(int n) {
  if (n < 1 || n > max_quotient_n)
    throw std::out_of_range("graded_ranks: supported range is 1..6");
  GradedRanks out;
  out.n = n;
  for (const auto& blk : detail::degree_blocks(n)) {
    auto f = snf_factors(detail::relation_matrix(blk));
    out.ranks.push_back(blk.gens.size() - f.size());
    out.factors.push_back(std::move(f));
  }
  return out;
}

/* The quotient module with its canonical graded basis: per degree, the
   generators not hit by a pivot of the relation lattice's column Hermite
   form. Construction fails loudly if any pivot is not one (it never is for
   the supported range; freeness is part of the verified contract). */
class SkeinQuotient {
 public:
  explicit SkeinQuotient(int n) : n_(n) {
    if (n < 1 || n > max_quotient_n)
      throw std::out_of_range("quotient: supported range is 1..6");
    blocks_ = detail::degree_blocks(n);
    for (auto& blk : blocks_) {
      QuotientPresentation qp(image_lattice(detail::relation_matrix(blk)));
      if (!qp.pivots_all_one)
        throw std::logic_error("quotient: relation block with non-unit pivot");
      for (std::size_t r : qp.basis_rows) basis_.push_back(blk.gens[r]);
      pres_.push_back(std::move(qp));
    }
  }

  int n() const { return n_; }

  /* flattened by ascending degree */
  const std::vector<DottedConfig>& basis() const { return basis_; }

  std::vector<DottedConfig> basis_of_degree(int degree) const {
    check_degree(degree);
    const auto& qp = pres_[degree / 2];
    std::vector<DottedConfig> out;
    for (std::size_t r : qp.basis_rows)
      out.push_back(blocks_[degree / 2].gens[r]);
    return out;
  }

  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> out;
    for (const auto& qp : pres_) out.push_back(qp.rank());
    return out;
  }

  /* canonical coordinates over basis() */
  std::vector<Int> reduce(const SkeinVector& v) const {
    if (v.n != n_) throw std::invalid_argument("reduce: mismatched n");
    std::vector<std::vector<Int>> ambient(blocks_.size());
    for (std::size_t d = 0; d < blocks_.size(); ++d)
      ambient[d].assign(blocks_[d].gens.size(), 0);
    for (const auto& [cfg, coeff] : v.terms) {
      std::size_t d = static_cast<std::size_t>(cfg.degree() / 2);
      auto it = blocks_[d].index.find(cfg);
      if (it == blocks_[d].index.end())
        throw std::invalid_argument("reduce: configuration not on 1..2n");
      ambient[d][it->second] = coeff;
    }
    std::vector<Int> out;
    out.reserve(basis_.size());
    for (std::size_t d = 0; d < blocks_.size(); ++d) {
      auto coords = pres_[d].coords(ambient[d]);
      out.insert(out.end(), coords.begin(), coords.end());
    }
    return out;
  }

  /* canonical representative as a vector supported on the basis */
  SkeinVector normal_form(const SkeinVector& v) const {
    auto coords = reduce(v);
    SkeinVector out(n_);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0) out.terms.emplace(basis_[i], coords[i]);
    return out;
  }

  bool is_zero_in_quotient(const SkeinVector& v) const {
    for (const Int& x : reduce(v))
      if (x != 0) return false;
    return true;
  }

 private:
  void check_degree(int degree) const {
    if (degree < 0 || degree % 2 != 0 || degree / 2 >= std::ssize(pres_))
      throw std::invalid_argument("quotient: bad degree");
  }

  int n_;
  std::vector<detail::DegreeBlock> blocks_;
  std::vector<QuotientPresentation> pres_;
  std::vector<DottedConfig> basis_;
};

inline DottedConfig all_dotted(const Matching& m) {
  return DottedConfig(m, (1u << m.n) - 1u);
}

inline Matching outermost_matching(int n) {
  std::vector<Arc> arcs;
  for (int i = 1; i <= n; ++i) arcs.emplace_back(2 * i - 1, 2 * i);
  return Matching(n, std::move(arcs));
}

struct RewriteMove {
  DottedConfig before, after;
  SkeinVector relation;  // before - after, a signed Type II vector
};

/* Normalizes the all-dotted configuration on a matching to the all-dotted
   outermost configuration by moves that each apply one Type II relation
   (the marking with every shared arc dotted). Strategy: fix positions left
   to right; when (p,p+1) is missing, the arcs (p,v) and (p+1,t) with t < v
   are replaced by (p,p+1) and (t,v). At most n-1 moves. */
inline std::vector<RewriteMove> rewrite_all_dotted(const Matching& a) {
  std::vector<RewriteMove> moves;
  Matching cur = a;
  const int n = a.n;
  for (int p = 1; p <= 2 * n - 1; p += 2) {
    if (cur.has_arc({p, p + 1})) continue;
    int v = 0, t = 0;
    for (const auto& [x, y] : cur.arcs) {
      if (x == p) v = y;
      if (x == p + 1) t = y;
    }
    if (v == 0 || t == 0 || !(p + 1 < t && t < v))
      throw std::logic_error("rewrite: unexpected arc layout");
    std::vector<Arc> next_arcs;
    for (const auto& arc : cur.arcs)
      if (arc != Arc{p, v} && arc != Arc{p + 1, t}) next_arcs.push_back(arc);
    next_arcs.emplace_back(p, p + 1);
    next_arcs.emplace_back(t, v);
    Matching next(n, std::move(next_arcs));
    RewriteMove mv;
    mv.before = all_dotted(cur);
    mv.after = all_dotted(next);
    mv.relation = SkeinVector::unit(mv.before) - SkeinVector::unit(mv.after);
    moves.push_back(std::move(mv));
    cur = std::move(next);
  }
  if (!(cur == outermost_matching(n)))
    throw std::logic_error("rewrite: did not reach the outermost matching");
  return moves;
}

/* Canonical representative of the class with a single undotted arc (i,j):
   the nodes inside the arc are paired consecutively (staying inside), the
   nodes outside likewise (each such pair avoids the arc or encloses it), and
   every complement arc is dotted. */
inline DottedConfig one_undotted_rep(int n, Arc arc) {
  auto [i, j] = arc;
  if (i > j) std::swap(i, j);
  if (i < 1 || j > 2 * n || (j - i) % 2 == 0)
    throw std::invalid_argument("one_undotted_rep: bad arc");
  std::vector<Arc> arcs{{i, j}};
  auto pair_consecutively = [&arcs](const std::vector<int>& nodes) {
    for (std::size_t t = 0; t + 1 < nodes.size(); t += 2)
      arcs.emplace_back(nodes[t], nodes[t + 1]);
  };
  std::vector<int> inside, outside;
  for (int x = 1; x <= 2 * n; ++x) {
    if (x == i || x == j) continue;
    (i < x && x < j ? inside : outside).push_back(x);
  }
  pair_consecutively(inside);
  pair_consecutively(outside);
  Matching m(n, std::move(arcs));
  unsigned dots = (1u << n) - 1u;
  dots &= ~(1u << m.arc_index({i, j}));
  return DottedConfig(std::move(m), dots);
}

/* Expansion of the single-undotted class on (i,j) into the alternating sum
   of neighbouring-arc classes (i,i+1), (i+1,i+2), ..., (j-1,j). The context
   matching must contain (i,j); the input class representative is the context
   with everything but (i,j) dotted. */
inline SkeinVector expand_one_undotted(int n, Arc arc, const Matching& context) {
  auto [i, j] = arc;
  if (i > j) std::swap(i, j);
  if (context.n != n) throw std::invalid_argument("expand: mismatched n");
  if (!context.has_arc({i, j}))
    throw std::invalid_argument("expand: arc not in context");
  SkeinVector out(n);
  for (int t = i; t < j; ++t) {
    Int sign = (t - i) % 2 == 0 ? 1 : -1;
    out += sign * SkeinVector::unit(one_undotted_rep(n, {t, t + 1}));
  }
  return out;
}

struct SumIdentityResult {
  bool holds = false;
  SkeinVector difference;      // lhs - rhs in the free module
  std::vector<Int> residual;   // its canonical quotient coordinates
};

/* Sum identity: over any matching a, the sum of single-undotted classes of
   its arcs equals the sum over the outermost arcs (2i-1,2i). */
inline SumIdentityResult check_sum_identity(const SkeinQuotient& q,
                                            const Matching& a) {
  if (a.n != q.n())
    throw std::invalid_argument("sum identity: mismatched n");
  SkeinVector diff(a.n);
  for (const auto& arc : a.arcs)
    diff += SkeinVector::unit(one_undotted_rep(a.n, arc));
  for (int i = 1; i <= a.n; ++i)
    diff -= SkeinVector::unit(one_undotted_rep(a.n, {2 * i - 1, 2 * i}));
  SumIdentityResult res;
  res.difference = diff;
  res.residual = q.reduce(diff);
  res.holds = true;
  for (const Int& x : res.residual)
    if (x != 0) res.holds = false;
  return res;
}

inline SumIdentityResult check_sum_identity(const Matching& a) {
  return check_sum_identity(SkeinQuotient(a.n), a);
}

}  // namespace bnskein
