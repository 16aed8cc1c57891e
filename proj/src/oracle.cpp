#include "rigidity/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rigidity::oracle {

namespace {

using Perm = std::vector<int>;

struct Fraction {
  Int num = 0;
  Int den = 1;

  static Fraction make(Int n, Int d) {
    if (d < 0) n = -n, d = -d;
    const Int g = std::gcd(n < 0 ? -n : n, d);
    return g == 0 ? Fraction{0, 1} : Fraction{n / g, d / g};
  }
  Fraction operator-(const Fraction& o) const { return make(num * o.den - o.num * den, den * o.den); }
  Fraction operator*(const Fraction& o) const { return make(num * o.num, den * o.den); }
  Fraction operator/(const Fraction& o) const { return make(num * o.den, den * o.num); }
};

Int reduce(Int v, Int m) { return ((v % m) + m) % m; }

// Roots, their co-roots and the simple reflections, rebuilt from the Cartan matrix and root list.
struct Lattice {
  int n = 0;
  IntMatrix cartan;
  std::vector<IntVector> roots;
  std::map<IntVector, int> index;
  std::vector<IntVector> coroots;
  std::vector<int> simple;

  explicit Lattice(const RootSystem& rs) : n(rs.rank), cartan(rs.cartan), roots(rs.roots) {
    for (int r = 0; r < static_cast<int>(roots.size()); ++r) index[roots[r]] = r;
    for (int i = 0; i < n; ++i) {
      IntVector e(n, 0);
      e[i] = 1;
      simple.push_back(index.at(e));
    }
    const std::vector<Fraction> d = symmetrizer();
    for (const IntVector& root : roots) coroots.push_back(solve_coroot(d, root));
  }

  // d_i C(i, j) = d_j C(j, i), propagated along the diagram from node 0.
  std::vector<Fraction> symmetrizer() const {
    std::vector<Fraction> d(n);
    std::vector<char> known(n, 0);
    d[0] = {1, 1};
    known[0] = 1;
    for (bool changed = true; changed;) {
      changed = false;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (known[i] && !known[j] && cartan(i, j) != 0) {
            d[j] = d[i] * Fraction::make(cartan(i, j), cartan(j, i));
            known[j] = 1;
            changed = true;
          }
    }
    return d;
  }

  Fraction inner(const std::vector<Fraction>& d, const IntVector& x, const IntVector& y) const {
    Fraction total{0, 1};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        total = total - d[i] * Fraction::make(-x[i] * y[j] * cartan(i, j), 1);
    return total;
  }

  // Solve sum_i c_i C(i, j) = 2 (alpha_j, alpha) / (alpha, alpha) by exact elimination.
  IntVector solve_coroot(const std::vector<Fraction>& d, const IntVector& root) const {
    const Fraction len = inner(d, root, root);
    std::vector<std::vector<Fraction>> aug(n, std::vector<Fraction>(n + 1));
    for (int j = 0; j < n; ++j) {
      IntVector e(n, 0);
      e[j] = 1;
      for (int i = 0; i < n; ++i) aug[j][i] = Fraction::make(cartan(i, j), 1);
      aug[j][n] = Fraction::make(2, 1) * inner(d, e, root) / len;
    }
    for (int c = 0; c < n; ++c) {
      int pivot = c;
      while (aug[pivot][c].num == 0) ++pivot;
      std::swap(aug[c], aug[pivot]);
      for (int r = 0; r < n; ++r) {
        if (r == c || aug[r][c].num == 0) continue;
        const Fraction f = aug[r][c] / aug[c][c];
        for (int t = c; t <= n; ++t) aug[r][t] = aug[r][t] - f * aug[c][t];
      }
    }
    IntVector out(n);
    for (int i = 0; i < n; ++i) {
      const Fraction v = aug[i][n] / aug[i][i];
      if (v.den != 1) throw std::logic_error("oracle co-root is not integral");
      out[i] = v.num;
    }
    return out;
  }

  Perm reflection(int i) const {
    Perm p(roots.size());
    for (std::size_t r = 0; r < roots.size(); ++r) {
      IntVector v = roots[r];
      Int pairing = 0;
      for (int j = 0; j < n; ++j) pairing += v[j] * cartan(i, j);
      v[i] -= pairing;
      p[r] = index.at(v);
    }
    return p;
  }

  std::vector<Perm> graph_perms() const {
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::vector<Perm> out;
    do {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i)
        for (int j = 0; j < n && ok; ++j) ok = cartan(pi[i], pi[j]) == cartan(i, j);
      if (!ok) continue;
      Perm p(roots.size());
      for (std::size_t r = 0; r < roots.size(); ++r) {
        IntVector v(n, 0);
        for (int i = 0; i < n; ++i) v[pi[i]] = roots[r][i];
        p[r] = index.at(v);
      }
      out.push_back(std::move(p));
    } while (std::next_permutation(pi.begin(), pi.end()));
    return out;
  }

  std::vector<Perm> weyl_group(std::size_t guard) const {
    Perm id(roots.size());
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> gens;
    for (int i = 0; i < n; ++i) gens.push_back(reflection(i));
    std::set<Perm> seen{id};
    std::deque<Perm> queue{id};
    std::vector<Perm> out;
    while (!queue.empty()) {
      Perm p = std::move(queue.front());
      queue.pop_front();
      for (const Perm& g : gens) {
        Perm next(p.size());
        for (std::size_t r = 0; r < p.size(); ++r) next[r] = g[p[r]];
        if (seen.insert(next).second) {
          if (seen.size() > guard) throw GuardExceeded("Weyl group exceeds the oracle guard");
          queue.push_back(std::move(next));
        }
      }
      out.push_back(std::move(p));
    }
    return out;
  }

  std::vector<IntVector> columns_mod(const Perm& p, Int m) const {
    std::vector<IntVector> cols;
    for (int j = 0; j < n; ++j) {
      IntVector c = coroots[p[simple[j]]];
      for (Int& x : c) x = reduce(x, m);
      cols.push_back(std::move(c));
    }
    return cols;
  }
};

std::set<IntVector> span_mod(const std::vector<IntVector>& gens, int n, Int m) {
  std::set<IntVector> seen{IntVector(n, 0)};
  std::deque<IntVector> queue{IntVector(n, 0)};
  while (!queue.empty()) {
    const IntVector x = queue.front();
    queue.pop_front();
    for (const IntVector& g : gens) {
      IntVector y(n);
      for (int i = 0; i < n; ++i) y[i] = reduce(x[i] + g[i], m);
      if (seen.insert(y).second) queue.push_back(y);
    }
  }
  return seen;
}

// (M - r I) e_j lies in the center for every j.
bool acts_as(const std::vector<IntVector>& cols, Int r, const std::set<IntVector>& center, Int m) {
  for (std::size_t j = 0; j < cols.size(); ++j) {
    IntVector v = cols[j];
    v[j] -= r;
    for (Int& x : v) x = reduce(x, m);
    if (!center.count(v)) return false;
  }
  return true;
}

}  // namespace

std::uint64_t brute_kernel_perm(const RootSystem& rs, int k, const std::vector<IntVector>& z, std::size_t guard) {
  const Lattice lat(rs);
  const Int m = Int{1} << k;
  const std::set<IntVector> center = span_mod(z, lat.n, m);
  std::uint64_t kernel = 0;
  for (const Perm& w : lat.weyl_group(guard))
    if (acts_as(lat.columns_mod(w, m), 1, center, m)) ++kernel;
  return kernel;
}

SigmaScan brute_sigma_fixed(const RootSystem& ambient, const std::vector<int>& rho_nodes, Int q_mod, int k,
                            std::uint64_t guard) {
  const int n = ambient.rank;
  const Int m = Int{1} << (k + 1);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= static_cast<std::uint64_t>(m);
    if (total > guard) throw GuardExceeded("torus scan exceeds the oracle guard");
  }
  SigmaScan out;
  IntVector x(n, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    bool fixed = true;
    for (int i = 0; i < n && fixed; ++i) fixed = reduce(q_mod * x[i], m) == x[rho_nodes[i]];
    if (fixed) out.elements.push_back(x);
    for (int i = n - 1; i >= 0; --i) {
      if (++x[i] < m) break;
      x[i] = 0;
    }
  }
  out.order = out.elements.size();
  return out;
}

std::vector<ScalarHit> brute_scalar_search(const RootSystem& rs, int k, const std::vector<IntVector>& z,
                                           bool with_graph, std::size_t guard) {
  const Lattice lat(rs);
  const Int m = Int{1} << k;
  const std::set<IntVector> center = span_mod(z, lat.n, m);
  // Exponent of the quotient: least 2^t killing every basis vector modulo the center.
  Int exp_q = 1;
  for (;; exp_q *= 2) {
    bool kills = true;
    for (int j = 0; j < lat.n && kills; ++j) {
      IntVector v(lat.n, 0);
      v[j] = reduce(exp_q, m);
      kills = center.count(v) > 0;
    }
    if (kills) break;
  }
  std::vector<Perm> graphs;
  if (with_graph) {
    graphs = lat.graph_perms();
  } else {
    Perm id(lat.roots.size());
    std::iota(id.begin(), id.end(), 0);
    graphs.push_back(id);
  }
  std::vector<ScalarHit> hits;
  for (const Perm& w : lat.weyl_group(guard))
    for (const Perm& g : graphs) {
      Perm p(w.size());
      bool identity = true;
      for (std::size_t r = 0; r < p.size(); ++r) {
        p[r] = w[g[r]];
        identity = identity && p[r] == static_cast<int>(r);
      }
      const auto cols = lat.columns_mod(p, m);
      for (Int r = 1; r < std::max<Int>(exp_q, 2); r += 2) {
        if (!acts_as(cols, r, center, m)) continue;
        ScalarHit hit;
        hit.matrix.assign(lat.n, IntVector(lat.n));
        for (int i = 0; i < lat.n; ++i)
          for (int j = 0; j < lat.n; ++j) hit.matrix[i][j] = cols[j][i];
        hit.scalar = reduce(r, exp_q);
        hit.identity = identity;
        hits.push_back(std::move(hit));
        break;
      }
    }
  std::sort(hits.begin(), hits.end());
  return hits;
}

std::vector<ScalarHit> brute_scalar_search(const LieTypeLabel& label, int k, bool with_graph) {
  const RootSystem rs = build(label);
  std::vector<IntVector> z;
  for (const TorusElement& g : center_subgroup(label, k).generators) z.push_back(g.coords);
  return brute_scalar_search(rs, k, z, with_graph);
}

}  // namespace rigidity::oracle
