#include "rigidity/linalg.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace rigidity {

IntMatrix::IntMatrix(int rows, int cols, Int fill)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, int rows) {
  IntMatrix m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j) {
    if (static_cast<int>(cols[j].size()) != rows) throw std::invalid_argument("column length mismatch");
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVector IntMatrix::row(int r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r) * cols_,
                   data_.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols_);
}

IntVector IntMatrix::column(int c) const {
  IntVector out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(std::span<const Int> v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("dimension mismatch in apply");
  IntVector out(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    Int acc = 0;
    for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<IntVector> IntMatrix::to_rows() const {
  std::vector<IntVector> out;
  out.reserve(rows_);
  for (int i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in product");
  IntMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Int x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += x * b(k, j);
    }
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("dimension mismatch in difference");
  IntMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

IntMatrix scaled(const IntMatrix& a, Int factor) {
  IntMatrix out = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) *= factor;
  return out;
}

Int mod(Int value, Int modulus) {
  if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
  Int r = value % modulus;
  return r < 0 ? r + modulus : r;
}

IntVector mod(const IntVector& v, Int modulus) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = mod(v[i], modulus);
  return out;
}

Int inverse_mod(Int value, Int modulus) {
  Int r0 = modulus, r1 = mod(value, modulus);
  Int t0 = 0, t1 = 1;
  while (r1 != 0) {
    const Int q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0 != 1) throw std::domain_error("value is not invertible modulo the given modulus");
  return mod(t0, modulus);
}

namespace {

// Elementary operations applied to the working matrix and mirrored on the
// transform matrices so that u * a * v == s holds throughout.
struct SmithState {
  IntMatrix s, u, ui, v, vi;

  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < s.cols(); ++j) std::swap(s(a, j), s(b, j));
    for (int j = 0; j < u.cols(); ++j) std::swap(u(a, j), u(b, j));
    for (int i = 0; i < ui.rows(); ++i) std::swap(ui(i, a), ui(i, b));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < s.rows(); ++i) std::swap(s(i, a), s(i, b));
    for (int i = 0; i < v.rows(); ++i) std::swap(v(i, a), v(i, b));
    for (int j = 0; j < vi.cols(); ++j) std::swap(vi(a, j), vi(b, j));
  }
  // row[target] += factor * row[source]
  void add_row(int target, int source, Int factor) {
    if (factor == 0) return;
    for (int j = 0; j < s.cols(); ++j) s(target, j) += factor * s(source, j);
    for (int j = 0; j < u.cols(); ++j) u(target, j) += factor * u(source, j);
    for (int i = 0; i < ui.rows(); ++i) ui(i, source) -= factor * ui(i, target);
  }
  // col[target] += factor * col[source]
  void add_col(int target, int source, Int factor) {
    if (factor == 0) return;
    for (int i = 0; i < s.rows(); ++i) s(i, target) += factor * s(i, source);
    for (int i = 0; i < v.rows(); ++i) v(i, target) += factor * v(i, source);
    for (int j = 0; j < vi.cols(); ++j) vi(source, j) -= factor * vi(target, j);
  }
  void negate_row(int r) {
    for (int j = 0; j < s.cols(); ++j) s(r, j) = -s(r, j);
    for (int j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
    for (int i = 0; i < ui.rows(); ++i) ui(i, r) = -ui(i, r);
  }
};

// Pick the nonzero entry of smallest absolute value in the trailing block.
bool find_pivot(const IntMatrix& s, int t, int& pr, int& pc) {
  Int best = 0;
  for (int i = t; i < s.rows(); ++i)
    for (int j = t; j < s.cols(); ++j) {
      const Int x = std::llabs(s(i, j));
      if (x != 0 && (best == 0 || x < best)) {
        best = x;
        pr = i;
        pc = j;
      }
    }
  return best != 0;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const int m = a.rows(), n = a.cols();
  SmithState st{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n)};
  const int steps = std::min(m, n);
  for (int t = 0; t < steps; ++t) {
    int pr = t, pc = t;
    if (!find_pivot(st.s, t, pr, pc)) break;
    st.swap_rows(t, pr);
    st.swap_cols(t, pc);
    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        const Int q = st.s(i, t) / st.s(t, t);
        st.add_row(i, t, -q);
        if (st.s(i, t) != 0) {
          clean = false;
          st.swap_rows(t, i);
        }
      }
      for (int j = t + 1; j < n; ++j) {
        const Int q = st.s(t, j) / st.s(t, t);
        st.add_col(j, t, -q);
        if (st.s(t, j) != 0) {
          clean = false;
          st.swap_cols(t, j);
        }
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      bool divisible = true;
      for (int i = t + 1; i < m && divisible; ++i)
        for (int j = t + 1; j < n; ++j)
          if (st.s(i, j) % st.s(t, t) != 0) {
            st.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (st.s(t, t) < 0) st.negate_row(t);
  }
  SmithForm out{st.u, st.ui, st.v, st.vi, st.s, {}};
  for (int t = 0; t < steps; ++t) out.diagonal.push_back(st.s(t, t));
  return out;
}

CyclicDecomposition kernel_mod(const IntMatrix& b, Int modulus) {
  const int n = b.cols();
  const SmithForm sf = smith_normal_form(b);
  CyclicDecomposition out{sf.v, sf.v_inverse, std::vector<Int>(n, modulus)};
  for (int i = 0; i < static_cast<int>(sf.diagonal.size()); ++i)
    out.orders[i] = std::gcd(sf.diagonal[i], modulus);
  return out;
}

}  // namespace rigidity
