#include "ambient_oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace testing_support {
namespace {

using rigidity::Family;

IntVector unit(int dim, int i, Int scale) {
  IntVector v(dim, 0);
  v[i] = scale;
  return v;
}

IntVector add(IntVector a, const IntVector& b, Int sign = 1) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += sign * b[i];
  return a;
}

Int dot(const IntVector& a, const IntVector& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// +-2e_i +-2e_j, i < j.
void push_pairs(std::vector<IntVector>& out, int dim, int count) {
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j)
      for (Int si : {1, -1})
        for (Int sj : {1, -1}) out.push_back(add(unit(dim, i, 2 * si), unit(dim, j, 2 * sj)));
}

std::vector<IntVector> e8_roots() {
  std::vector<IntVector> out;
  push_pairs(out, 8, 8);
  for (int mask = 0; mask < 256; ++mask) {
    if (std::popcount(static_cast<unsigned>(mask)) % 2 != 0) continue;
    IntVector v(8);
    for (int i = 0; i < 8; ++i) v[i] = (mask >> i & 1) ? -1 : 1;
    out.push_back(v);
  }
  return out;
}

std::vector<IntVector> orthogonal_to(const std::vector<IntVector>& roots, const std::vector<IntVector>& against) {
  std::vector<IntVector> out;
  for (const IntVector& r : roots)
    if (std::all_of(against.begin(), against.end(), [&](const IntVector& a) { return dot(r, a) == 0; }))
      out.push_back(r);
  return out;
}

struct Fraction {
  Int num = 0;
  Int den = 1;
  Fraction(Int n = 0, Int d = 1) : num(n), den(d) { normalize(); }
  void normalize() {
    if (den < 0) num = -num, den = -den;
    const Int g = std::gcd(num, den);
    if (g > 1) num /= g, den /= g;
  }
  Fraction operator-(const Fraction& o) const { return {num * o.den - o.num * den, den * o.den}; }
  Fraction operator*(const Fraction& o) const { return {num * o.num, den * o.den}; }
  Fraction operator/(const Fraction& o) const { return {num * o.den, den * o.num}; }
};

// Solves gram * x = rhs exactly; gram is positive definite.
std::vector<Fraction> solve(const std::vector<IntVector>& gram, const IntVector& rhs) {
  const int n = static_cast<int>(gram.size());
  std::vector<std::vector<Fraction>> m(n, std::vector<Fraction>(n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = Fraction(gram[i][j]);
    m[i][n] = Fraction(rhs[i]);
  }
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    while (m[pivot][c].num == 0) ++pivot;
    std::swap(m[pivot], m[c]);
    for (int r = 0; r < n; ++r) {
      if (r == c || m[r][c].num == 0) continue;
      const Fraction f = m[r][c] / m[c][c];
      for (int j = c; j <= n; ++j) m[r][j] = m[r][j] - f * m[c][j];
    }
  }
  std::vector<Fraction> x(n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

struct Base {
  std::vector<IntVector> simple;
};

Base find_base(const std::vector<IntVector>& roots) {
  const int dim = static_cast<int>(roots.front().size());
  IntVector functional(dim);
  for (int i = 0; i < dim; ++i) functional[i] = Int{1} << (dim - 1 - i);
  std::vector<IntVector> positive;
  for (const IntVector& r : roots) {
    const Int f = dot(functional, r);
    if (f == 0) throw std::logic_error("functional vanishes on a root");
    if (f > 0) positive.push_back(r);
  }
  std::set<IntVector> positive_set(positive.begin(), positive.end());
  Base base;
  for (const IntVector& r : positive) {
    bool decomposable = false;
    for (const IntVector& s : positive)
      if (s != r && positive_set.count(add(r, s, -1))) {
        decomposable = true;
        break;
      }
    if (!decomposable) base.simple.push_back(r);
  }
  return base;
}

IntMatrix cartan_of(const std::vector<IntVector>& simple) {
  const int n = static_cast<int>(simple.size());
  IntMatrix c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = 2 * dot(simple[j], simple[i]) / dot(simple[i], simple[i]);
  return c;
}

}  // namespace

AmbientRoots ambient_roots(Family family, int n) {
  AmbientRoots out;
  auto& roots = out.roots;
  switch (family) {
    case Family::A:
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          if (i != j) roots.push_back(add(unit(n + 1, i, 2), unit(n + 1, j, 2), -1));
      break;
    case Family::B:
      push_pairs(roots, n, n);
      for (int i = 0; i < n; ++i)
        for (Int s : {2, -2}) roots.push_back(unit(n, i, s));
      break;
    case Family::C:
      push_pairs(roots, n, n);
      for (int i = 0; i < n; ++i)
        for (Int s : {4, -4}) roots.push_back(unit(n, i, s));
      break;
    case Family::D:
      push_pairs(roots, n, n);
      break;
    case Family::G:
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          if (i == j) continue;
          roots.push_back(add(unit(3, i, 2), unit(3, j, 2), -1));
          const int l = 3 - i - j;
          for (Int s : {1, -1}) {
            if (j > l) continue;
            IntVector v(3, -2 * s);
            v[i] = 4 * s;
            roots.push_back(v);
          }
        }
      break;
    case Family::F:
      push_pairs(roots, 4, 4);
      for (int i = 0; i < 4; ++i)
        for (Int s : {2, -2}) roots.push_back(unit(4, i, s));
      for (int mask = 0; mask < 16; ++mask) {
        IntVector v(4);
        for (int i = 0; i < 4; ++i) v[i] = (mask >> i & 1) ? -1 : 1;
        roots.push_back(v);
      }
      break;
    case Family::E: {
      const auto e8 = e8_roots();
      const IntVector theta = add(unit(8, 6, 2), unit(8, 7, 2));
      const IntVector theta2 = add(unit(8, 5, 2), unit(8, 6, 2), -1);
      if (n == 8) roots = e8;
      else if (n == 7) roots = orthogonal_to(e8, {theta});
      else if (n == 6) roots = orthogonal_to(e8, {theta, theta2});
      else throw std::invalid_argument("E rank must be 6, 7 or 8");
      break;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return out;
}

IntMatrix ambient_cartan(const AmbientRoots& system) { return cartan_of(find_base(system.roots).simple); }

std::optional<std::vector<IntVector>> simple_coordinates(const AmbientRoots& system, const IntMatrix& target) {
  const Base base = find_base(system.roots);
  const int n = static_cast<int>(base.simple.size());
  if (n != target.rows()) return std::nullopt;
  const IntMatrix found = cartan_of(base.simple);

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  bool matched = false;
  do {
    matched = true;
    for (int i = 0; i < n && matched; ++i)
      for (int j = 0; j < n && matched; ++j) matched = found(perm[i], perm[j]) == target(i, j);
  } while (!matched && std::next_permutation(perm.begin(), perm.end()));
  if (!matched) return std::nullopt;

  std::vector<IntVector> simple(n);
  for (int i = 0; i < n; ++i) simple[i] = base.simple[perm[i]];
  std::vector<IntVector> gram(n, IntVector(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram[i][j] = dot(simple[i], simple[j]);

  std::vector<IntVector> out;
  for (const IntVector& r : system.roots) {
    IntVector rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = dot(r, simple[i]);
    IntVector coeffs(n);
    for (int i = 0; auto& f : solve(gram, rhs)) {
      if (f.den != 1) throw std::logic_error("root is not an integral combination of the base");
      coeffs[i++] = f.num;
    }
    out.push_back(coeffs);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testing_support
