#pragma once

// Exact linear algebra over the integers: dense matrices of arbitrary
// precision integers, column-style Hermite normal form, Smith normal form,
// and lattice operations (image, kernel, membership). All pivot choices are
// deterministic: smallest absolute value wins, lowest index breaks ties.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bnskein {

using Int = boost::multiprecision::cpp_int;

/* floor division; cpp_int's operator/ truncates toward zero */
inline Int fdiv(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --q;
  return q;
}

/* toggles the h == m*u and m == p*d*q reconstruction checks inside hnf/snf */
inline bool& self_checks() {
  static bool enabled = true;
  return enabled;
}

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), d_(rows * cols) {}

  static IntMatrix identity(std::size_t k) {
    IntMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  // column-major storage: columns are contiguous
  Int& at(std::size_t r, std::size_t c) { return d_[c * rows_ + r]; }
  const Int& at(std::size_t r, std::size_t c) const { return d_[c * rows_ + r]; }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(d_.begin() + a * rows_, d_.begin() + (a + 1) * rows_,
                     d_.begin() + b * rows_);
  }

  void negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) {
      Int& x = d_[c * rows_ + r];
      if (x != 0) x = -x;
    }
  }

  // col_dst -= q * col_src
  void sub_col_multiple(std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    Int* a = &d_[dst * rows_];
    const Int* b = &d_[src * rows_];
    for (std::size_t r = 0; r < rows_; ++r)
      if (b[r] != 0) a[r] -= q * b[r];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }

  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      Int& x = at(r, c);
      if (x != 0) x = -x;
    }
  }

  // row_dst -= q * row_src
  void sub_row_multiple(std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(src, c) != 0) at(dst, c) -= q * at(src, c);
  }

  // moves columns [first, cols) to the front, preserving order
  void rotate_cols_front(std::size_t first) {
    if (first == 0 || first == cols_) return;
    std::rotate(d_.begin(), d_.begin() + first * rows_, d_.end());
  }

  IntMatrix mul(const IntMatrix& o) const {
    if (cols_ != o.rows_)
      throw std::invalid_argument("IntMatrix::mul: shape mismatch");
    IntMatrix out(rows_, o.cols_);
    for (std::size_t j = 0; j < o.cols_; ++j) {
      Int* dst = &out.d_[j * rows_];
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& x = o.at(k, j);
        if (x == 0) continue;
        const Int* src = &d_[k * rows_];
        for (std::size_t i = 0; i < rows_; ++i)
          if (src[i] != 0) dst[i] += src[i] * x;
      }
    }
    return out;
  }

  IntMatrix transposed() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) out.at(c, r) = at(r, c);
    return out;
  }

  std::vector<Int> column(std::size_t c) const {
    return std::vector<Int>(d_.begin() + c * rows_, d_.begin() + (c + 1) * rows_);
  }

  // matrix * vector
  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (v.size() != cols_)
      throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
    std::vector<Int> out(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
      if (v[c] == 0) continue;
      const Int* src = &d_[c * rows_];
      for (std::size_t r = 0; r < rows_; ++r)
        if (src[r] != 0) out[r] += src[r] * v[c];
    }
    return out;
  }

  bool is_zero() const {
    for (const Int& x : d_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> d_;
};

namespace detail {

/* Column echelon core, bottom-pivot convention: the pivot of a column is its
   last nonzero row; pivot rows are strictly increasing across the pivot
   block; pivots are positive; entries at a pivot row in later columns are
   reduced into [0, pivot). Rows are processed bottom-up, pivot columns
   accumulate at the right end of the active range and are rotated to the
   front afterwards, so the result has the pivot block first and zero columns
   last. Column operations are mirrored on *u when present. */
inline void hnf_core(IntMatrix& h, IntMatrix* u,
                     std::vector<std::size_t>& pivot_rows) {
  using boost::multiprecision::abs;
  const std::size_t rows = h.rows(), cols = h.cols();
  std::size_t ae = cols;  // columns [0, ae) still active
  pivot_rows.clear();
  std::vector<std::size_t> nz;
  for (std::size_t rr = rows; rr-- > 0 && ae > 0;) {
    for (;;) {
      nz.clear();
      for (std::size_t c = 0; c < ae; ++c)
        if (h.at(rr, c) != 0) nz.push_back(c);
      if (nz.size() <= 1) break;
      std::size_t piv = nz[0];
      for (std::size_t c : nz)
        if (abs(h.at(rr, c)) < abs(h.at(rr, piv))) piv = c;
      for (std::size_t c : nz) {
        if (c == piv) continue;
        Int q = fdiv(h.at(rr, c), h.at(rr, piv));
        h.sub_col_multiple(c, piv, q);
        if (u) u->sub_col_multiple(c, piv, q);
      }
    }
    if (nz.empty()) continue;
    std::size_t piv = nz[0];
    --ae;
    if (piv != ae) {
      h.swap_cols(piv, ae);
      if (u) u->swap_cols(piv, ae);
    }
    if (h.at(rr, ae) < 0) {
      h.negate_col(ae);
      if (u) u->negate_col(ae);
    }
    for (std::size_t c = ae + 1; c < cols; ++c) {
      if (h.at(rr, c) == 0) continue;
      Int q = fdiv(h.at(rr, c), h.at(rr, ae));
      h.sub_col_multiple(c, ae, q);
      if (u) u->sub_col_multiple(c, ae, q);
    }
    pivot_rows.push_back(rr);
  }
  h.rotate_cols_front(ae);
  if (u) u->rotate_cols_front(ae);
  std::reverse(pivot_rows.begin(), pivot_rows.end());
}

}  // namespace detail

struct HnfResult {
  IntMatrix h;  // pivot block first, zero columns at the end
  IntMatrix u;  // unimodular; h == m * u
  std::vector<std::size_t> pivot_rows;  // strictly increasing
  std::size_t rank = 0;
};

inline HnfResult hnf(const IntMatrix& m) {
  HnfResult r;
  r.h = m;
  r.u = IntMatrix::identity(m.cols());
  detail::hnf_core(r.h, &r.u, r.pivot_rows);
  r.rank = r.pivot_rows.size();
  if (self_checks() && !(r.h == m.mul(r.u)))
    throw std::logic_error("hnf: h == m*u reconstruction failed");
  return r;
}

/* A sublattice of Z^ambient presented by the pivot block of its column HNF. */
struct Lattice {
  std::size_t ambient = 0;
  IntMatrix basis;  // ambient x rank
  std::vector<std::size_t> pivot_rows;
  std::size_t rank() const { return pivot_rows.size(); }
};

inline Lattice image_lattice(const IntMatrix& m) {
  IntMatrix h = m;
  std::vector<std::size_t> pr;
  detail::hnf_core(h, nullptr, pr);
  Lattice l;
  l.ambient = m.rows();
  l.pivot_rows = std::move(pr);
  l.basis = IntMatrix(m.rows(), l.pivot_rows.size());
  for (std::size_t c = 0; c < l.basis.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) l.basis.at(r, c) = h.at(r, c);
  return l;
}

inline Lattice kernel_lattice(const IntMatrix& m) {
  HnfResult r = hnf(m);
  IntMatrix ker(m.cols(), m.cols() - r.rank);
  for (std::size_t c = 0; c < ker.cols(); ++c)
    for (std::size_t i = 0; i < m.cols(); ++i)
      ker.at(i, c) = r.u.at(i, r.rank + c);
  return image_lattice(ker);
}

/* Exact membership: returns the coefficients over l.basis columns, or
   nullopt. Back-substitutes pivot rows bottom-up; columns left of a pivot
   column vanish at its pivot row, so each coefficient is forced. */
inline std::optional<std::vector<Int>> member(const Lattice& l,
                                              const std::vector<Int>& v) {
  if (v.size() != l.ambient)
    throw std::invalid_argument("member: dimension mismatch");
  std::vector<Int> w = v;
  const std::size_t k = l.rank();
  std::vector<Int> coeffs(k);
  for (std::size_t j = k; j-- > 0;) {
    const std::size_t r = l.pivot_rows[j];
    const Int& p = l.basis.at(r, j);
    if (w[r] % p != 0) return std::nullopt;
    Int x = w[r] / p;
    coeffs[j] = x;
    if (x != 0)
      for (std::size_t i = 0; i <= r; ++i)
        if (l.basis.at(i, j) != 0) w[i] -= x * l.basis.at(i, j);
  }
  for (const Int& x : w)
    if (x != 0) return std::nullopt;
  return coeffs;
}

inline bool lattice_equal(const Lattice& a, const Lattice& b) {
  if (a.ambient != b.ambient || a.rank() != b.rank()) return false;
  for (std::size_t c = 0; c < a.rank(); ++c)
    if (!member(b, a.basis.column(c))) return false;
  for (std::size_t c = 0; c < b.rank(); ++c)
    if (!member(a, b.basis.column(c))) return false;
  return true;
}

namespace detail {

inline void snf_core(IntMatrix& d, IntMatrix* p, IntMatrix* q) {
  using boost::multiprecision::abs;
  const std::size_t rows = d.rows(), cols = d.cols();
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // min-abs nonzero pivot in the trailing submatrix
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows; ++r)
      for (std::size_t c = t; c < cols; ++c)
        if (d.at(r, c) != 0 &&
            (pr == rows || abs(d.at(r, c)) < abs(d.at(pr, pc)))) {
          pr = r;
          pc = c;
        }
    if (pr == rows) break;  // trailing submatrix is zero
    d.swap_rows(t, pr);
    if (p) p->swap_cols(t, pr);
    d.swap_cols(t, pc);
    if (q) q->swap_rows(t, pc);
    for (;;) {
      bool again = false;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (d.at(r, t) == 0) continue;
        Int qq = fdiv(d.at(r, t), d.at(t, t));
        d.sub_row_multiple(r, t, qq);         // D <- E*D
        if (p) {
          Int mq = -qq;
          p->sub_col_multiple(t, r, mq);      // P <- P*E^-1: col_t += qq*col_r
        }
        if (d.at(r, t) != 0) {                // remainder beats the pivot
          d.swap_rows(t, r);
          if (p) p->swap_cols(t, r);
          again = true;
        }
      }
      if (again) continue;
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (d.at(t, c) == 0) continue;
        Int qq = fdiv(d.at(t, c), d.at(t, t));
        d.sub_col_multiple(c, t, qq);         // D <- D*F
        if (q) {
          Int mq = -qq;
          q->sub_row_multiple(t, c, mq);      // Q <- F^-1*Q: row_t += qq*row_c
        }
        if (d.at(t, c) != 0) {
          d.swap_cols(t, c);
          if (q) q->swap_rows(t, c);
          again = true;
        }
      }
      if (again) continue;
      // pivot now alone in its row and column; enforce divisibility
      bool fixed = false;
      for (std::size_t r = t + 1; r < rows && !fixed; ++r)
        for (std::size_t c = t + 1; c < cols && !fixed; ++c)
          if (d.at(r, c) % d.at(t, t) != 0) {
            Int mone = -1;
            d.sub_row_multiple(t, r, mone);   // row_t += row_r
            if (p) p->sub_col_multiple(r, t, Int(1));  // col_r -= col_t
            fixed = true;
          }
      if (!fixed) break;
    }
    if (d.at(t, t) < 0) {
      d.negate_row(t);
      if (p) p->negate_col(t);
    }
    ++t;
  }
}

}  // namespace detail

struct SnfResult {
  std::vector<Int> factors;  // nonzero invariant factors, each divides the next
  IntMatrix p, d, q;         // m == p * d * q with p, q unimodular
};

inline SnfResult snf(const IntMatrix& m) {
  SnfResult r;
  r.d = m;
  r.p = IntMatrix::identity(m.rows());
  r.q = IntMatrix::identity(m.cols());
  detail::snf_core(r.d, &r.p, &r.q);
  for (std::size_t t = 0; t < std::min(m.rows(), m.cols()); ++t) {
    if (r.d.at(t, t) == 0) break;
    r.factors.push_back(r.d.at(t, t));
  }
  for (std::size_t i = 0; i + 1 < r.factors.size(); ++i)
    if (r.factors[i + 1] % r.factors[i] != 0)
      throw std::logic_error("snf: divisibility chain broken");
  if (self_checks() && !(r.p.mul(r.d).mul(r.q) == m))
    throw std::logic_error("snf: m == p*d*q reconstruction failed");
  return r;
}

inline std::vector<Int> snf_factors(const IntMatrix& m) {
  IntMatrix d = m;
  detail::snf_core(d, nullptr, nullptr);
  std::vector<Int> factors;
  for (std::size_t t = 0; t < std::min(m.rows(), m.cols()); ++t) {
    if (d.at(t, t) == 0) break;
    factors.push_back(d.at(t, t));
  }
  return factors;
}

/* Reduces an ambient vector modulo a lattice, clearing pivot rows bottom-up
   by floored division. With all pivots equal to one (the situation for every
   graded relation block this library produces) the result is the canonical
   representative supported on non-pivot rows. */
inline std::vector<Int> reduce_mod_lattice(const Lattice& l,
                                           std::vector<Int> w) {
  if (w.size() != l.ambient)
    throw std::invalid_argument("reduce_mod_lattice: dimension mismatch");
  for (std::size_t j = l.rank(); j-- > 0;) {
    const std::size_t r = l.pivot_rows[j];
    Int q = fdiv(w[r], l.basis.at(r, j));
    if (q != 0)
      for (std::size_t i = 0; i <= r; ++i)
        if (l.basis.at(i, j) != 0) w[i] -= q * l.basis.at(i, j);
  }
  return w;
}

/* Free quotient of Z^ambient by a relation lattice. Valid (and checked) only
   when every HNF pivot is one, which makes the non-pivot rows a genuine
   basis of the quotient. */
struct QuotientPresentation {
  Lattice rel;
  std::vector<std::size_t> basis_rows;
  bool pivots_all_one = false;

  QuotientPresentation() = default;
  explicit QuotientPresentation(Lattice l) : rel(std::move(l)) {
    pivots_all_one = true;
    for (std::size_t j = 0; j < rel.rank(); ++j)
      if (rel.basis.at(rel.pivot_rows[j], j) != 1) pivots_all_one = false;
    std::size_t next = 0;
    for (std::size_t r = 0; r < rel.ambient; ++r) {
      if (next < rel.pivot_rows.size() && rel.pivot_rows[next] == r)
        ++next;
      else
        basis_rows.push_back(r);
    }
  }

  std::size_t rank() const { return basis_rows.size(); }

  std::vector<Int> coords(const std::vector<Int>& v) const {
    if (!pivots_all_one)
      throw std::logic_error("quotient: non-unit pivot, no free coordinates");
    std::vector<Int> w = reduce_mod_lattice(rel, v);
    std::vector<Int> out(basis_rows.size());
    for (std::size_t i = 0; i < basis_rows.size(); ++i)
      out[i] = w[basis_rows[i]];
    return out;
  }
};

}  // namespace bnskein
