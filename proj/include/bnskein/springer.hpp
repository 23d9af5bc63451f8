#pragma once

// The ring Z[x_1,...,x_2n] / (x_i^2, e_1,...,e_2n): square-free monomials,
// per-degree normal forms over an integral column Hermite presentation, ring
// multiplication, graded ranks, and the dual-basis obstruction report.
//
// Monomials are support masks (bit b = variable x_{b+1}); a monomial of
// support size d has degree 2d (each variable weighs 2). Nothing survives
// above support size n; that and the unit pivots behind exact coordinates
// are asserted when a ring is constructed.

#include <bit>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bnskein/intlinalg.hpp"

namespace bnskein {

inline constexpr int max_ring_n = 5;

struct RingElement {
  int n = 0;
  std::map<unsigned, Int> terms;  // support mask -> coefficient

  RingElement() = default;
  explicit RingElement(int n_) : n(n_) {}

  bool is_zero() const { return terms.empty(); }

  void add_term(unsigned support, const Int& coeff) {
    if (n < 1 || support >> (2 * n))
      throw std::invalid_argument("ring element: support out of range");
    auto it = terms.find(support);
    if (it == terms.end()) {
      if (coeff != 0) terms.emplace(support, coeff);
    } else {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  RingElement& operator+=(const RingElement& o) {
    if (o.n != n) throw std::invalid_argument("ring element: mismatched n");
    for (const auto& [s, x] : o.terms) add_term(s, x);
    return *this;
  }
  RingElement& operator-=(const RingElement& o) {
    if (o.n != n) throw std::invalid_argument("ring element: mismatched n");
    for (const auto& [s, x] : o.terms) add_term(s, -x);
    return *this;
  }
  friend RingElement operator+(RingElement a, const RingElement& b) {
    a += b;
    return a;
  }
  friend RingElement operator-(RingElement a, const RingElement& b) {
    a -= b;
    return a;
  }
  friend RingElement operator*(const Int& s, const RingElement& v) {
    RingElement out(v.n);
    if (s != 0)
      for (const auto& [m, x] : v.terms) out.terms.emplace(m, s * x);
    return out;
  }
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

inline RingElement ring_one(int n) {
  RingElement e(n);
  e.add_term(0u, 1);
  return e;
}

/* x_i, 1-based */
inline RingElement ring_variable(int n, int i) {
  if (i < 1 || i > 2 * n)
    throw std::invalid_argument("ring variable: index out of range");
  RingElement e(n);
  e.add_term(1u << (i - 1), 1);
  return e;
}

/* e_k, the sum of all square-free monomials of support size k; e_0 = 1 */
inline RingElement elementary_symmetric(int n, int k) {
  if (n < 1 || k < 0 || k > 2 * n)
    throw std::invalid_argument("elementary symmetric: bad degree");
  RingElement e(n);
  for (unsigned m = 0; m < (1u << (2 * n)); ++m)
    if (std::popcount(m) == k) e.add_term(m, 1);
  return e;
}

/* raw product in the square-free polynomial ring: x_i^2 = 0, no other
   relations applied */
inline RingElement square_free_product(const RingElement& a,
                                       const RingElement& b) {
  if (a.n != b.n) throw std::invalid_argument("product: mismatched n");
  RingElement out(a.n);
  for (const auto& [ma, xa] : a.terms)
    for (const auto& [mb, xb] : b.terms) {
      if (ma & mb) continue;  // a repeated variable kills the term
      out.add_term(ma | mb, xa * xb);
    }
  return out;
}

class SpringerRing {
 public:
  explicit SpringerRing(int n) : n_(n) {
    if (n < 1 || n > max_ring_n)
      throw std::out_of_range("ring: supported range is 1..5");
    const int vars = 2 * n;
    std::vector<RingElement> sym;
    for (int k = 1; k <= vars; ++k) sym.push_back(elementary_symmetric(n, k));
    monomials_.resize(vars + 1);
    index_.resize(vars + 1);
    for (unsigned m = 0; m < (1u << vars); ++m) {
      auto& mons = monomials_[std::popcount(m)];
      index_[std::popcount(m)].emplace(m, mons.size());
      mons.push_back(m);
    }
    for (int d = 0; d <= vars; ++d) {
      std::vector<std::vector<std::pair<std::size_t, Int>>> cols;
      for (int k = 1; k <= std::min(d, vars); ++k)
        for (unsigned m : monomials_[d - k]) {
          std::vector<std::pair<std::size_t, Int>> col;
          for (const auto& [s, x] : sym[k - 1].terms)
            if (!(s & m)) col.emplace_back(index_[d].at(s | m), x);
          if (!col.empty()) cols.push_back(std::move(col));
        }
      IntMatrix rel(monomials_[d].size(), cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, x] : cols[c]) rel.at(r, c) += x;
      QuotientPresentation qp(image_lattice(rel));
      if (!qp.pivots_all_one)
        throw std::logic_error("ring: relation block with non-unit pivot");
      if (d > n && qp.rank() != 0)
        throw std::logic_error("ring: class survives above the top degree");
      pres_.push_back(std::move(qp));
    }
  }

  int n() const { return n_; }

  /* all square-free monomials of support size d, increasing mask order */
  const std::vector<unsigned>& monomials(int d) const {
    check_support(d);
    return monomials_[d];
  }

  /* basis monomials of support size d (empty above d = n) */
  std::vector<unsigned> basis(int d) const {
    check_support(d);
    std::vector<unsigned> out;
    for (std::size_t r : pres_[d].basis_rows) out.push_back(monomials_[d][r]);
    return out;
  }

  /* ranks by support size 0..n; sizes above n are zero by construction */
  std::vector<std::size_t> graded_ranks() const {
    std::vector<std::size_t> out;
    for (int d = 0; d <= n_; ++d) out.push_back(pres_[d].rank());
    return out;
  }

  /* coordinates over the flattened basis, support sizes ascending */
  std::vector<Int> coords(const RingElement& f) const {
    check_element(f);
    std::vector<std::vector<Int>> ambient(pres_.size());
    for (std::size_t d = 0; d < pres_.size(); ++d)
      ambient[d].assign(monomials_[d].size(), 0);
    for (const auto& [m, x] : f.terms)
      ambient[std::popcount(m)][index_[std::popcount(m)].at(m)] = x;
    std::vector<Int> out;
    for (std::size_t d = 0; d < pres_.size(); ++d) {
      auto c = pres_[d].coords(ambient[d]);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }

  /* canonical representative supported on basis monomials */
  RingElement normal_form(const RingElement& f) const {
    check_element(f);
    RingElement out(n_);
    std::map<int, std::vector<Int>> by_degree;
    for (const auto& [m, x] : f.terms) {
      int d = std::popcount(m);
      auto& amb = by_degree.try_emplace(d, monomials_[d].size(), 0).first->second;
      amb[index_[d].at(m)] = x;
    }
    for (const auto& [d, amb] : by_degree) {
      auto c = pres_[d].coords(amb);
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) out.terms.emplace(monomials_[d][pres_[d].basis_rows[i]], c[i]);
    }
    return out;
  }

  bool is_zero(const RingElement& f) const { return normal_form(f).is_zero(); }

  /* product, reduced to normal form */
  RingElement multiply(const RingElement& a, const RingElement& b) const {
    check_element(a);
    return normal_form(square_free_product(a, b));
  }

 private:
  void check_support(int d) const {
    if (d < 0 || d > 2 * n_) throw std::invalid_argument("ring: bad support size");
  }
  void check_element(const RingElement& f) const {
    if (f.n != n_) throw std::invalid_argument("ring: mismatched n");
    for (const auto& [m, x] : f.terms)
      if (m >> (2 * n_)) throw std::invalid_argument("ring: support out of range");
  }

  int n_;
  std::vector<std::vector<unsigned>> monomials_;
  std::vector<std::map<unsigned, std::size_t>> index_;
  std::vector<QuotientPresentation> pres_;
};

inline std::vector<std::size_t> ring_graded_ranks(int n) {
  return SpringerRing(n).graded_ranks();
}

/* Dual-basis obstruction: the degree-0 piece has rank one while the top
   piece carries at least two independent classes, each killed by every
   positive-degree element, so no functional admits a dual basis under the
   multiplication pairing. The report certifies the computed premises; it
   also records the literal claimed top rank of two, which the rank tables
   contradict beyond n = 2. */
struct FrobeniusReport {
  int n = 0;
  int top_degree = 0;              // 2n, with each variable of degree 2
  std::size_t top_rank = 0;
  std::size_t degree_zero_rank = 0;
  bool top_rank_is_two = false;    // the claimed value; computed rank decides
  bool has_two_generators = false; // what the argument actually needs
  std::size_t annihilation_checks = 0;
  bool annihilation_verified = false;
  bool degenerate = false;         // n = 1: a single top class, no obstruction
  bool not_frobenius = false;      // inference from the verified premises
};

inline FrobeniusReport frobenius_obstruction(int n) {
  SpringerRing ring(n);
  FrobeniusReport rep;
  rep.n = n;
  rep.top_degree = 2 * n;
  rep.top_rank = ring.basis(n).size();
  rep.degree_zero_rank = ring.basis(0).size();
  rep.top_rank_is_two = rep.top_rank == 2;
  rep.has_two_generators = rep.top_rank >= 2;
  rep.degenerate = !rep.has_two_generators;

  std::vector<RingElement> top;
  for (unsigned m : ring.basis(n)) {
    RingElement v(n);
    v.add_term(m, 1);
    top.push_back(std::move(v));
  }
  rep.annihilation_verified = true;
  for (int d = 1; d <= n; ++d)
    for (unsigned m : ring.basis(d)) {
      RingElement u(n);
      u.add_term(m, 1);
      for (const auto& v : top) {
        ++rep.annihilation_checks;
        if (!ring.multiply(u, v).is_zero()) rep.annihilation_verified = false;
      }
    }
  rep.not_frobenius = rep.has_two_generators && rep.degree_zero_rank == 1 &&
                      rep.annihilation_verified;
  return rep;
}

}  // namespace bnskein
