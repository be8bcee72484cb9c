#include "tstruct/zmodules.hpp"

#include <limits>

namespace tstruct {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, int cols) {
  int c = cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  Matrix m(static_cast<int>(rows.size()), c);
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw ModuleError("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (auto& x : a)
    if (x != 0) return false;
  return true;
}

Matrix operator*(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw ModuleError("matrix shape mismatch");
  Matrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

namespace {

struct Overflow {};

// Checked 64-bit arithmetic for the fast path.
struct I64 {
  using T = long long;
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T add(T a, T b) {
    T r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T neg(T a) {
    if (a == std::numeric_limits<T>::min()) throw Overflow{};
    return -a;
  }
  static T abs(T a) { return a < 0 ? neg(a) : a; }
};

struct Big {
  using T = BigInt;
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T add(const T& a, const T& b) { return a + b; }
  static T neg(const T& a) { return -a; }
  static T abs(const T& a) { return boost::multiprecision::abs(a); }
};

template <class Ops>
struct Dense {
  using T = typename Ops::T;
  int r, c;
  std::vector<T> v;
  Dense(int r_, int c_) : r(r_), c(c_), v(static_cast<std::size_t>(r_) * c_, T(0)) {}
  T& at(int i, int j) { return v[static_cast<std::size_t>(i) * c + j]; }

  void swap_rows(int i, int k) {
    for (int j = 0; j < c; ++j) std::swap(at(i, j), at(k, j));
  }
  void swap_cols(int j, int k) {
    for (int i = 0; i < r; ++i) std::swap(at(i, j), at(i, k));
  }
  // row_i += q * row_k
  void add_row(int i, int k, const T& q) {
    for (int j = 0; j < c; ++j)
      if (at(k, j) != 0) at(i, j) = Ops::add(at(i, j), Ops::mul(q, at(k, j)));
  }
  void add_col(int j, int k, const T& q) {
    for (int i = 0; i < r; ++i)
      if (at(i, k) != 0) at(i, j) = Ops::add(at(i, j), Ops::mul(q, at(i, k)));
  }
  void neg_row(int i) {
    for (int j = 0; j < c; ++j) at(i, j) = Ops::neg(at(i, j));
  }
  void neg_col(int j) {
    for (int i = 0; i < r; ++i) at(i, j) = Ops::neg(at(i, j));
  }
};

template <class Ops>
Dense<Ops> identity_dense(int n) {
  Dense<Ops> d(n, n);
  for (int i = 0; i < n; ++i) d.at(i, i) = 1;
  return d;
}

template <class Ops>
Matrix to_matrix(Dense<Ops>& d) {
  Matrix m(d.r, d.c);
  for (int i = 0; i < d.r; ++i)
    for (int j = 0; j < d.c; ++j) m(i, j) = BigInt(d.at(i, j));
  return m;
}

template <class Ops>
SmithForm smith_impl(const Matrix& m, bool transforms) {
  using T = typename Ops::T;
  const int R = m.rows, C = m.cols;
  Dense<Ops> a(R, C);
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < C; ++j) {
      if constexpr (std::is_same_v<T, long long>) {
        if (m(i, j) > std::numeric_limits<long long>::max() || m(i, j) < std::numeric_limits<long long>::min())
          throw Overflow{};
        a.at(i, j) = static_cast<long long>(m(i, j));
      } else {
        a.at(i, j) = m(i, j);
      }
    }
  const int tr = transforms ? R : 0, tc = transforms ? C : 0;
  Dense<Ops> U = identity_dense<Ops>(tr), Ui = identity_dense<Ops>(tr);
  Dense<Ops> V = identity_dense<Ops>(tc), Vi = identity_dense<Ops>(tc);

  // Row op on a: row_i += q row_k. U gets the same op, Uinv the inverse column op.
  auto row_op = [&](int i, int k, const T& q) {
    a.add_row(i, k, q);
    if (transforms) {
      U.add_row(i, k, q);
      Ui.add_col(k, i, Ops::neg(q));
    }
  };
  auto col_op = [&](int j, int k, const T& q) {
    a.add_col(j, k, q);
    if (transforms) {
      V.add_col(j, k, q);
      Vi.add_row(k, j, Ops::neg(q));
    }
  };
  auto row_swap = [&](int i, int k) {
    if (i == k) return;
    a.swap_rows(i, k);
    if (transforms) {
      U.swap_rows(i, k);
      Ui.swap_cols(i, k);
    }
  };
  auto col_swap = [&](int j, int k) {
    if (j == k) return;
    a.swap_cols(j, k);
    if (transforms) {
      V.swap_cols(j, k);
      Vi.swap_rows(j, k);
    }
  };

  SmithForm out;
  const int n = std::min(R, C);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      T best = 0;
      for (int i = t; i < R; ++i)
        for (int j = t; j < C; ++j) {
          if (a.at(i, j) == 0) continue;
          T v = Ops::abs(a.at(i, j));
          if (pi < 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) goto done;
      row_swap(t, pi);
      col_swap(t, pj);
      bool clean = true;
      const T piv = a.at(t, t);
      for (int i = t + 1; i < R; ++i) {
        if (a.at(i, t) == 0) continue;
        T q = a.at(i, t) / piv;
        if (q != 0) row_op(i, t, Ops::neg(q));
        if (a.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < C; ++j) {
        if (a.at(t, j) == 0) continue;
        T q = a.at(t, j) / piv;
        if (q != 0) col_op(j, t, Ops::neg(q));
        if (a.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      int bad = -1;
      for (int i = t + 1; i < R && bad < 0; ++i)
        for (int j = t + 1; j < C; ++j)
          if (a.at(i, j) % piv != 0) {
            bad = i;
            break;
          }
      if (bad >= 0) {
        row_op(t, bad, T(1));
        continue;
      }
      break;
    }
    if (a.at(t, t) < 0) {
      a.neg_row(t);
      if (transforms) {
        U.neg_row(t);
        Ui.neg_col(t);
      }
    }
    out.invariants.push_back(BigInt(a.at(t, t)));
  }
done:
  if (transforms) {
    out.U = to_matrix(U);
    out.Uinv = to_matrix(Ui);
    out.V = to_matrix(V);
    out.Vinv = to_matrix(Vi);
  }
  return out;
}

}  // namespace

SmithForm smith_normal_form(const Matrix& m, bool transforms) {
  try {
    return smith_impl<I64>(m, transforms);
  } catch (const Overflow&) {
    return smith_impl<Big>(m, transforms);
  }
}

int rank_rational(const Matrix& m) {
  std::vector<std::vector<Rational>> a(m.rows, std::vector<Rational>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) a[i][j] = m(i, j);
  int rank = 0;
  for (int j = 0; j < m.cols && rank < m.rows; ++j) {
    int p = -1;
    for (int i = rank; i < m.rows; ++i)
      if (a[i][j] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[rank]);
    for (int i = rank + 1; i < m.rows; ++i) {
      if (a[i][j] == 0) continue;
      Rational f = a[i][j] / a[rank][j];
      for (int k = j; k < m.cols; ++k) a[i][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

int rank_mod_p(const Matrix& m, Prime p) {
  using u128 = unsigned __int128;
  std::vector<std::vector<std::uint64_t>> a(m.rows, std::vector<std::uint64_t>(m.cols));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      BigInt x = m(i, j) % p;
      if (x < 0) x += p;
      a[i][j] = static_cast<std::uint64_t>(x);
    }
  auto inv = [p](std::uint64_t x) { return static_cast<std::uint64_t>(inverse_mod(BigInt(x), BigInt(p))); };
  int rank = 0;
  for (int j = 0; j < m.cols && rank < m.rows; ++j) {
    int piv = -1;
    for (int i = rank; i < m.rows; ++i)
      if (a[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    std::uint64_t iv = inv(a[rank][j]);
    for (int i = rank + 1; i < m.rows; ++i) {
      if (a[i][j] == 0) continue;
      std::uint64_t f = static_cast<std::uint64_t>(static_cast<u128>(a[i][j]) * iv % p);
      for (int k = j; k < m.cols; ++k) {
        std::uint64_t s = static_cast<std::uint64_t>(static_cast<u128>(f) * a[rank][k] % p);
        a[i][k] = (a[i][k] + p - s) % p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace tstruct
