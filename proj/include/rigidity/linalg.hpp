#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rigidity {

using Int = std::int64_t;
using IntVector = std::vector<Int>;

// Dense row-major integer matrix. Sizes here never exceed 8x16.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols, Int fill = 0);
  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);
  static IntMatrix from_columns(const std::vector<IntVector>& cols, int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  Int operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  IntVector row(int r) const;
  IntVector column(int c) const;
  IntMatrix transpose() const;
  IntVector apply(std::span<const Int> v) const;
  std::vector<IntVector> to_rows() const;

  bool operator==(const IntMatrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix scaled(const IntMatrix& a, Int factor);

// Non-negative residue.
Int mod(Int value, Int modulus);
IntVector mod(const IntVector& v, Int modulus);

// Modular inverse of an odd residue modulo a power of two (or any coprime pair).
Int inverse_mod(Int value, Int modulus);

// U * A * V = S with U, V unimodular, S diagonal, s_0 | s_1 | ... and s_i >= 0.
struct SmithForm {
  IntMatrix u;
  IntMatrix u_inverse;
  IntMatrix v;
  IntMatrix v_inverse;
  IntMatrix s;
  std::vector<Int> diagonal;  // length min(rows, cols)
};
SmithForm smith_normal_form(const IntMatrix& a);

// Solutions of B x = 0 over (Z/m)^n, as a direct sum of cyclic pieces:
// x = sum_i t_i * frame[:, i] * (m / orders[i]), t_i in Z/orders[i].
// frame is unimodular; pieces with order 1 are kept so frame stays square.
struct CyclicDecomposition {
  IntMatrix frame;
  IntMatrix frame_inverse;
  std::vector<Int> orders;
};
CyclicDecomposition kernel_mod(const IntMatrix& b, Int modulus);

}  // namespace rigidity
