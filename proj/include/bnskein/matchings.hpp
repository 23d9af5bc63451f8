#pragma once

// Crossingless perfect matchings on the nodes 1..2n, the elementary surgery
// arrows between them, the induced partial order and its completion to a
// total order, arrow-graph distance, and common-refinement partitions of the
// node set. Matchings are kept canonical: arcs (i,j) with i < j, sorted by
// left endpoint; comparisons are lexicographic on that arc list.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bnskein {

using Arc = std::pair<int, int>;

inline constexpr int max_enumerate_n = 12;

inline long long catalan(int n) {
  if (n < 0 || n > 16) throw std::out_of_range("catalan: n out of range");
  long long c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

namespace detail {

inline std::vector<Arc> normalize_arcs(int n, std::vector<Arc> arcs) {
  if (n < 1) throw std::invalid_argument("matching: n must be positive");
  if (arcs.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("matching: expected n arcs");
  for (auto& [a, b] : arcs) {
    if (a > b) std::swap(a, b);
    if (a < 1 || b > 2 * n || a == b)
      throw std::invalid_argument("matching: arc endpoint out of range");
  }
  std::sort(arcs.begin(), arcs.end());
  std::vector<char> seen(2 * n + 1, 0);
  for (const auto& [a, b] : arcs) {
    if (seen[a] || seen[b])
      throw std::invalid_argument("matching: node used twice");
    seen[a] = seen[b] = 1;
  }
  return arcs;
}

inline bool arcs_cross(const std::vector<Arc>& arcs) {
  // crossing pattern: i < j < k < l with arcs (i,k) and (j,l)
  for (std::size_t x = 0; x < arcs.size(); ++x)
    for (std::size_t y = x + 1; y < arcs.size(); ++y) {
      auto [i, k] = arcs[x];
      auto [j, l] = arcs[y];
      if (i < j && j < k && k < l) return true;
    }
  return false;
}

}  // namespace detail

/* Validates that the arcs form a perfect pair-partition of 1..2n (throws
   otherwise) and reports whether no two arcs cross. */
inline bool is_crossingless(int n, const std::vector<Arc>& arcs) {
  return !detail::arcs_cross(detail::normalize_arcs(n, arcs));
}

struct Matching {
  int n = 0;
  std::vector<Arc> arcs;

  Matching() = default;
  Matching(int n_, std::vector<Arc> arcs_) : n(n_) {
    arcs = detail::normalize_arcs(n_, std::move(arcs_));
    if (detail::arcs_cross(arcs))
      throw std::invalid_argument("matching: arcs cross");
  }

  bool has_arc(const Arc& a) const {
    return std::binary_search(arcs.begin(), arcs.end(), a);
  }

  // index of the arc with the given left endpoint rank, arcs sorted
  std::size_t arc_index(const Arc& a) const {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), a);
    if (it == arcs.end() || *it != a)
      throw std::invalid_argument("matching: no such arc");
    return static_cast<std::size_t>(it - arcs.begin());
  }

  friend auto operator<=>(const Matching&, const Matching&) = default;
};

/* All crossingless matchings on 1..2n in lexicographic order of their sorted
   arc lists. Generated by pairing the smallest unmatched node with each
   feasible partner in increasing order, which emits lexicographic order
   directly. */
inline std::vector<Matching> enumerate_matchings(int n) {
  if (n < 1 || n > max_enumerate_n)
    throw std::out_of_range("enumerate_matchings: supported range is 1..12");
  std::vector<Matching> out;
  std::vector<Arc> arcs;
  std::vector<char> used(2 * n + 1, 0);
  auto rec = [&](auto&& self, int matched) -> void {
    if (matched == n) {
      Matching m;
      m.n = n;
      m.arcs = arcs;  // already sorted and crossingless by construction
      out.push_back(std::move(m));
      return;
    }
    int i = 1;
    while (used[i]) ++i;
    // partner candidates: same nesting region, even gap inside
    int bound = 2 * n + 1;
    for (const auto& [a, b] : arcs)
      if (a < i && i < b) bound = std::min(bound, b);
    for (int j = i + 1; j < bound; j += 2) {
      if (used[j]) break;  // nodes between i and bound are all unmatched
      used[i] = used[j] = 1;
      arcs.emplace_back(i, j);
      self(self, matched + 1);
      arcs.pop_back();
      used[i] = used[j] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

struct Arrow {
  Matching source, target;
  std::array<int, 4> quad{};  // i < j < k < l: (i,j),(k,l) -> (i,l),(j,k)

  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

/* Surgery arrows out of one matching: for every interval-disjoint arc pair
   (i,j),(k,l) with i<j<k<l, replace them by (i,l),(j,k) and keep the result
   when it is crossingless. The filter is required: surgery crosses exactly
   when some arc contains one of the pair but not the other. Ordered by the
   positions of the surgered pair in the sorted arc list. */
inline std::vector<Arrow> arrows_from(const Matching& a) {
  std::vector<Arrow> out;
  const auto& arcs = a.arcs;
  for (std::size_t x = 0; x < arcs.size(); ++x)
    for (std::size_t y = x + 1; y < arcs.size(); ++y) {
      auto [i, j] = arcs[x];
      auto [k, l] = arcs[y];
      if (j > k) continue;  // nested or interleaved, not side by side
      std::vector<Arc> surgered;
      surgered.reserve(arcs.size());
      for (std::size_t t = 0; t < arcs.size(); ++t)
        if (t != x && t != y) surgered.push_back(arcs[t]);
      surgered.emplace_back(i, l);
      surgered.emplace_back(j, k);
      std::sort(surgered.begin(), surgered.end());
      if (detail::arcs_cross(surgered)) continue;
      Matching b;
      b.n = a.n;
      b.arcs = std::move(surgered);
      out.push_back(Arrow{a, std::move(b), {i, j, k, l}});
    }
  return out;
}

/* Every arrow at a given n, sources in enumeration order. */
inline std::vector<Arrow> all_arrows(int n) {
  std::vector<Arrow> out;
  for (const auto& m : enumerate_matchings(n)) {
    auto local = arrows_from(m);
    out.insert(out.end(), std::make_move_iterator(local.begin()),
               std::make_move_iterator(local.end()));
  }
  return out;
}

/* Completion of the arrow partial order to a total order: Kahn's algorithm
   with lexicographic tie-break. Since every arrow strictly increases the
   lexicographic order of the arc list, the completion coincides with the
   enumeration order; it is still computed from the arrow digraph. */
inline std::vector<Matching> total_order(int n) {
  auto ms = enumerate_matchings(n);
  std::map<Matching, std::size_t> idx;
  for (std::size_t i = 0; i < ms.size(); ++i) idx[ms[i]] = i;
  std::vector<std::size_t> indeg(ms.size(), 0);
  std::vector<std::vector<std::size_t>> outs(ms.size());
  for (const auto& ar : all_arrows(n)) {
    std::size_t s = idx.at(ar.source), t = idx.at(ar.target);
    ++indeg[t];
    outs[s].push_back(t);
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>,
                      std::greater<std::size_t>>
      ready;  // index order = lexicographic order
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<Matching> out;
  out.reserve(ms.size());
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    out.push_back(ms[i]);
    for (std::size_t t : outs[i])
      if (--indeg[t] == 0) ready.push(t);
  }
  if (out.size() != ms.size())
    throw std::logic_error("total_order: arrow digraph has a cycle");
  return out;
}

/* BFS distances in the undirected arrow graph from one source index. */
inline std::vector<int> arrow_graph_distances(
    const std::vector<Matching>& ms, const std::vector<Arrow>& arrows,
    std::size_t source) {
  std::map<Matching, std::size_t> idx;
  for (std::size_t i = 0; i < ms.size(); ++i) idx[ms[i]] = i;
  std::vector<std::vector<std::size_t>> adj(ms.size());
  for (const auto& ar : arrows) {
    std::size_t s = idx.at(ar.source), t = idx.at(ar.target);
    adj[s].push_back(t);
    adj[t].push_back(s);
  }
  std::vector<int> dist(ms.size(), -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : adj[x])
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return dist;
}

/* Arrow-graph distance between two matchings on the same n. */
inline int distance(const Matching& a, const Matching& b) {
  if (a.n != b.n) throw std::invalid_argument("distance: mismatched n");
  auto ms = enumerate_matchings(a.n);
  auto arrows = all_arrows(a.n);
  std::size_t sa = static_cast<std::size_t>(
      std::lower_bound(ms.begin(), ms.end(), a) - ms.begin());
  std::size_t sb = static_cast<std::size_t>(
      std::lower_bound(ms.begin(), ms.end(), b) - ms.begin());
  auto dist = arrow_graph_distances(ms, arrows, sa);
  if (dist[sb] < 0)
    throw std::logic_error("distance: arrow graph not connected");
  return dist[sb];
}

struct SetPartition {
  int n = 0;                            // partition of 1..2n
  std::vector<std::vector<int>> blocks;  // each sorted, ordered by minimum

  friend auto operator<=>(const SetPartition&, const SetPartition&) = default;
};

/* Common refinement closure: the partition of 1..2n generated by the arcs of
   all given matchings. Blocks generated from matchings always have even
   size. */
inline SetPartition intersection_partition(const std::vector<Matching>& ms) {
  if (ms.empty())
    throw std::invalid_argument("intersection_partition: empty input");
  int n = ms[0].n;
  for (const auto& m : ms)
    if (m.n != n)
      throw std::invalid_argument("intersection_partition: mismatched n");
  std::vector<int> parent(2 * n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& m : ms)
    for (const auto& [a, b] : m.arcs) parent[find(a)] = find(b);
  std::map<int, std::vector<int>> groups;
  for (int x = 1; x <= 2 * n; ++x) groups[find(x)].push_back(x);
  SetPartition p;
  p.n = n;
  for (auto& [root, block] : groups) {
    if (block.size() % 2 != 0)
      throw std::logic_error("intersection_partition: odd block");
    p.blocks.push_back(std::move(block));
  }
  std::sort(p.blocks.begin(), p.blocks.end());
  return p;
}

}  // namespace bnskein
