#pragma once

#include "k3lat/numeric.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace k3lat {

// Dense row-major matrix over an exact scalar type (Int or Rat).
template <class T>
struct Mat {
  long rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(long r, long c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  T& operator()(long i, long j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& operator()(long i, long j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(long n) {
    Mat m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  Mat transposed() const {
    Mat m(cols, rows);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  void swap_rows(long i, long j) {
    if (i == j) return;
    for (long k = 0; k < cols; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }

  void scale_row(long i, const T& s) {
    for (long k = 0; k < cols; ++k) (*this)(i, k) *= s;
  }

  // row i += s * row j
  void addmul_row(long i, long j, const T& s) {
    if (s == 0) return;
    for (long k = 0; k < cols; ++k) (*this)(i, k) += s * (*this)(j, k);
  }

  std::vector<T> row(long i) const {
    return std::vector<T>(a.begin() + static_cast<size_t>(i) * cols,
                          a.begin() + static_cast<size_t>(i + 1) * cols);
  }
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
  if (x.cols != y.rows) throw error("matrix product shape mismatch");
  Mat<T> z(x.rows, y.cols);
  for (long i = 0; i < x.rows; ++i)
    for (long k = 0; k < x.cols; ++k) {
      const T& s = x(i, k);
      if (s == 0) continue;
      for (long j = 0; j < y.cols; ++j) z(i, j) += s * y(k, j);
    }
  return z;
}

inline RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = Rat(m.a[i]);
  return r;
}

// exact determinant, fraction-free Bareiss
inline Int det(const IntMat& m) {
  if (m.rows != m.cols) throw error("determinant of non-square matrix");
  long n = m.rows;
  if (n == 0) return 1;
  IntMat w = m;
  Int prev(1);
  int sgn = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (w(k, k) == 0) {
      long p = -1;
      for (long i = k + 1; i < n; ++i)
        if (w(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      w.swap_rows(k, p);
      sgn = -sgn;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j)
        w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
    prev = w(k, k);
  }
  return sgn > 0 ? w(n - 1, n - 1) : Int(-w(n - 1, n - 1));
}

inline RatMat inverse(const RatMat& m) {
  if (m.rows != m.cols) throw error("inverse of non-square matrix");
  long n = m.rows;
  RatMat w = m, inv = RatMat::identity(n);
  for (long k = 0; k < n; ++k) {
    long p = -1;
    for (long i = k; i < n; ++i)
      if (w(i, k) != 0) { p = i; break; }
    if (p < 0) throw error("matrix is singular");
    w.swap_rows(k, p);
    inv.swap_rows(k, p);
    Rat s = Rat(1) / w(k, k);
    w.scale_row(k, s);
    inv.scale_row(k, s);
    for (long i = 0; i < n; ++i) {
      if (i == k || w(i, k) == 0) continue;
      Rat f = -w(i, k);
      w.addmul_row(i, k, f);
      inv.addmul_row(i, k, f);
    }
  }
  return inv;
}

inline IntMat to_int(const RatMat& m) {
  IntMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) {
    if (den(m.a[i]) != 1) throw error("matrix entry is not an integer");
    r.a[i] = num(m.a[i]);
  }
  return r;
}

struct HermiteForm {
  IntMat h;  // row echelon, U * a = h
  IntMat u;  // unimodular
  long rank = 0;
};

// Row-style Hermite normal form: pivots positive, entries above pivots reduced
// into [0, pivot), zero rows at the bottom.
inline HermiteForm hermite_form(const IntMat& a) {
  HermiteForm out{a, IntMat::identity(a.rows), 0};
  IntMat& h = out.h;
  IntMat& u = out.u;
  long r = 0;
  for (long c = 0; c < a.cols && r < a.rows; ++c) {
    // eliminate below row r in column c by gcd steps
    while (true) {
      long p = -1;
      for (long i = r; i < a.rows; ++i)
        if (h(i, c) != 0) {
          if (p < 0 || abs_int(h(i, c)) < abs_int(h(p, c))) p = i;
        }
      if (p < 0) break;
      h.swap_rows(r, p);
      u.swap_rows(r, p);
      bool clean = true;
      for (long i = r + 1; i < a.rows; ++i) {
        if (h(i, c) == 0) continue;
        Int q = floor_div(h(i, c), h(r, c));
        h.addmul_row(i, r, -q);
        u.addmul_row(i, r, -q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.scale_row(r, Int(-1));
      u.scale_row(r, Int(-1));
    }
    for (long i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      if (q != 0) {
        h.addmul_row(i, r, -q);
        u.addmul_row(i, r, -q);
      }
    }
    ++r;
  }
  out.rank = r;
  return out;
}

struct SmithForm {
  IntMat d;  // u * a * v = d, diagonal with d1 | d2 | ...
  IntMat u, v;
  long rank = 0;
};

inline SmithForm smith_form(const IntMat& a) {
  SmithForm out{a, IntMat::identity(a.rows), IntMat::identity(a.cols), 0};
  IntMat& d = out.d;
  IntMat& u = out.u;
  IntMat& v = out.v;
  long n = std::min(a.rows, a.cols);

  auto col_addmul = [&](IntMat& m, long i, long j, const Int& s) {
    for (long k = 0; k < m.rows; ++k) m(k, i) += s * m(k, j);
  };
  auto col_swap = [&](IntMat& m, long i, long j) {
    for (long k = 0; k < m.rows; ++k) std::swap(m(k, i), m(k, j));
  };

  for (long t = 0; t < n; ++t) {
    // find a pivot
    long pi = -1, pj = -1;
    for (long i = t; i < d.rows; ++i)
      for (long j = t; j < d.cols; ++j)
        if (d(i, j) != 0 && (pi < 0 || abs_int(d(i, j)) < abs_int(d(pi, pj)))) { pi = i; pj = j; }
    if (pi < 0) break;
    d.swap_rows(t, pi);
    u.swap_rows(t, pi);
    col_swap(d, t, pj);
    col_swap(v, t, pj);

    bool again = true;
    while (again) {
      again = false;
      for (long i = t + 1; i < d.rows; ++i) {
        if (d(i, t) == 0) continue;
        Int q = floor_div(d(i, t), d(t, t));
        d.addmul_row(i, t, -q);
        u.addmul_row(i, t, -q);
        if (d(i, t) != 0) {  // remainder smaller than pivot: swap up
          d.swap_rows(t, i);
          u.swap_rows(t, i);
          again = true;
        }
      }
      for (long j = t + 1; j < d.cols; ++j) {
        if (d(t, j) == 0) continue;
        Int q = floor_div(d(t, j), d(t, t));
        col_addmul(d, j, t, -q);
        col_addmul(v, j, t, -q);
        if (d(t, j) != 0) {
          col_swap(d, t, j);
          col_swap(v, t, j);
          again = true;
        }
      }
      if (!again) {
        // pivot must divide the rest of the block
        for (long i = t + 1; i < d.rows && !again; ++i)
          for (long j = t + 1; j < d.cols && !again; ++j)
            if (d(i, j) % d(t, t) != 0) {
              d.addmul_row(t, i, Int(1));
              u.addmul_row(t, i, Int(1));
              again = true;
            }
      }
    }
    if (d(t, t) < 0) {
      d.scale_row(t, Int(-1));
      u.scale_row(t, Int(-1));
    }
  }
  long r = 0;
  while (r < n && d(r, r) != 0) ++r;
  out.rank = r;
  return out;
}

// Basis of { x : x * a = 0 } as rows; saturated by construction.
inline IntMat left_kernel(const IntMat& a) {
  HermiteForm hf = hermite_form(a);
  IntMat k(a.rows - hf.rank, a.rows);
  for (long i = hf.rank; i < a.rows; ++i)
    for (long j = 0; j < a.rows; ++j) k(i - hf.rank, j) = hf.u(i, j);
  return k;
}

// Solve x * a = b exactly over Q, a square nonsingular.
inline RatMat solve_right(const RatMat& b, const RatMat& a) { return b * inverse(a); }

}  // namespace k3lat
