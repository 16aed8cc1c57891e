#include "rigidity/rootsys.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rigidity {

namespace {

void link(IntMatrix& c, int i, int j) {
  c(i, j) = -1;
  c(j, i) = -1;
}

// Squared lengths of the simple roots, normalized so the shortest is 2.
// Uses d_i * C(i, j) = d_j * C(j, i) propagated over the Dynkin diagram.
std::vector<Int> symmetrizer(const IntMatrix& cartan) {
  const int n = cartan.rows();
  std::vector<Int> d(n, 0);
  for (int start = 0; start < n; ++start) {
    if (d[start] != 0) continue;
    d[start] = 36;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      for (int j = 0; j < n; ++j) {
        if (j == i || cartan(i, j) == 0) continue;
        if (cartan(j, i) == 0) throw std::invalid_argument("Cartan matrix is not symmetrizable");
        const Int num = d[i] * cartan(i, j);
        if (num % cartan(j, i) != 0) throw std::invalid_argument("Cartan matrix is not symmetrizable");
        const Int dj = num / cartan(j, i);
        if (d[j] == 0) {
          d[j] = dj;
          queue.push_back(j);
        } else if (d[j] != dj) {
          throw std::invalid_argument("Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  const Int smallest = *std::min_element(d.begin(), d.end());
  for (Int& x : d) {
    if ((2 * x) % smallest != 0) throw std::invalid_argument("unsupported length ratio");
    x = 2 * x / smallest;
  }
  return d;
}

}  // namespace

IntMatrix bourbaki_cartan(Family family, int n) {
  if (n < 1) throw std::invalid_argument("rank must be positive");
  IntMatrix c = IntMatrix::identity(n);
  for (int i = 0; i < n; ++i) c(i, i) = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) link(c, i, i + 1);
  };
  switch (family) {
    case Family::A:
      chain(n);
      break;
    case Family::B:
      chain(n);
      if (n >= 2) c(n - 1, n - 2) = -2;  // alpha_n short
      break;
    case Family::C:
      chain(n);
      if (n >= 2) c(n - 2, n - 1) = -2;  // alpha_n long
      break;
    case Family::D:
      if (n < 3) throw std::invalid_argument("D needs rank >= 3");
      chain(n - 1);
      link(c, n - 3, n - 1);
      break;
    case Family::E:
      if (n < 6 || n > 8) throw std::invalid_argument("E needs rank 6, 7 or 8");
      link(c, 0, 2);
      link(c, 1, 3);
      for (int i = 2; i + 1 < n; ++i) link(c, i, i + 1);
      break;
    case Family::F:
      if (n != 4) throw std::invalid_argument("F needs rank 4");
      chain(4);
      c(2, 1) = -2;  // alpha_1, alpha_2 long
      break;
    case Family::G:
      if (n != 2) throw std::invalid_argument("G needs rank 2");
      c(0, 1) = -3;  // alpha_1 short
      c(1, 0) = -1;
      break;
  }
  return c;
}

int RootSystem::index_of(const IntVector& v) const {
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

bool RootSystem::is_positive(int root) const {
  for (Int x : roots[root])
    if (x != 0) return x > 0;
  return false;
}

Int RootSystem::inner(const IntVector& x, const IntVector& y) const {
  // (alpha_i, alpha_j) = C(i, j) * d_i / 2; d_i is even so this stays integral.
  Int acc = 0;
  for (int i = 0; i < rank; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < rank; ++j) acc += x[i] * y[j] * cartan(i, j) * (simple_length_sq[i] / 2);
  }
  return acc;
}

IntVector reflect(const RootSystem& rs, int node, const IntVector& v) {
  if (node < 0 || node >= rs.rank) throw std::out_of_range("node index out of range");
  Int pairing = 0;
  for (int j = 0; j < rs.rank; ++j) pairing += v[j] * rs.cartan(node, j);
  IntVector out = v;
  out[node] -= pairing;
  return out;
}

IntVector coroot(const RootSystem& rs, const IntVector& root) {
  const int idx = rs.index_of(root);
  if (idx < 0) throw std::invalid_argument("vector is not a root");
  return rs.coroots[idx];
}

RootSystem build_from_cartan(const LieTypeLabel& label, const IntMatrix& cartan) {
  const int n = cartan.rows();
  RootSystem rs;
  rs.label = label;
  rs.rank = n;
  rs.cartan = cartan;
  rs.simple_length_sq = symmetrizer(cartan);

  std::set<IntVector> seen;
  std::deque<IntVector> queue;
  for (int i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    if (seen.insert(e).second) queue.push_back(e);
  }
  while (!queue.empty()) {
    IntVector v = std::move(queue.front());
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      IntVector w = reflect(rs, i, v);
      if (seen.insert(w).second) queue.push_back(std::move(w));
    }
    if (seen.size() > 100000) throw std::invalid_argument("Cartan matrix is not of finite type");
  }
  rs.roots.assign(seen.begin(), seen.end());
  for (int r = 0; r < rs.num_roots(); ++r) rs.index_[rs.roots[r]] = r;

  rs.negated_.resize(rs.roots.size());
  for (int r = 0; r < rs.num_roots(); ++r) {
    IntVector neg = rs.roots[r];
    for (Int& x : neg) x = -x;
    rs.negated_[r] = rs.index_of(neg);
    if (rs.negated_[r] < 0) throw std::logic_error("root set not closed under negation");
  }
  for (const IntVector& root : rs.roots) {
    const Int len = rs.inner(root, root);
    rs.length_sq.push_back(len);
    IntVector co(n);
    for (int i = 0; i < n; ++i) {
      const Int num = root[i] * rs.simple_length_sq[i];
      if (num % len != 0) throw std::logic_error("co-root is not integral");
      co[i] = num / len;
    }
    rs.coroots.push_back(std::move(co));
  }
  for (int i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    rs.simple_index.push_back(rs.index_of(e));
  }
  return rs;
}

RootSystem build(const LieTypeLabel& label) {
  if (label.twisted()) throw std::invalid_argument("build expects an untwisted label, got " + label.str());
  if (!is_admissible(label)) throw std::invalid_argument("inadmissible label " + label.str());
  return build_from_cartan(label, bourbaki_cartan(label.family, label.rank));
}

LieTypeLabel dual_label(const LieTypeLabel& label) {
  LieTypeLabel out = label;
  if (label.family == Family::B && label.rank >= 2) out.family = Family::C;
  else if (label.family == Family::C && label.rank >= 2) out.family = Family::B;
  return out;
}

DualSystem dual(const RootSystem& rs) {
  // Co-roots obey the transposed Cartan matrix.
  DualSystem ds{build_from_cartan(dual_label(rs.label), rs.cartan.transpose()), {}};
  if (ds.system.num_roots() != rs.num_roots()) throw std::logic_error("dual root count mismatch");
  for (const IntVector& co : rs.coroots) {
    const int idx = ds.system.index_of(co);
    if (idx < 0) throw std::logic_error("co-root missing from dual closure");
    ds.to_dual.push_back(idx);
  }
  return ds;
}

Support support(const RootSystem& rs, const IntVector& root) {
  Support s;
  for (int i = 0; i < rs.rank; ++i)
    if (root[i] != 0) s.nodes.push_back(i);
  if (s.nodes.empty()) return s;
  std::vector<char> reached(rs.rank, 0);
  std::deque<int> queue{s.nodes.front()};
  reached[s.nodes.front()] = 1;
  std::size_t count = 1;
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (int j : s.nodes)
      if (!reached[j] && rs.cartan(i, j) != 0) {
        reached[j] = 1;
        ++count;
        queue.push_back(j);
      }
  }
  s.connected = count == s.nodes.size();
  return s;
}

bool is_root_mod(const DualSystem& ds, const IntVector& v, Int m) {
  if (m < 3) throw std::invalid_argument("is_root_mod requires modulus >= 3");
  const IntVector target = mod(v, m);
  for (const IntVector& root : ds.system.roots)
    if (mod(root, m) == target) return true;
  return false;
}

nlohmann::ordered_json to_json(const RootSystem& rs) {
  nlohmann::ordered_json doc;
  doc["label"] = rs.label.str();
  doc["rank"] = rs.rank;
  doc["cartan"] = rs.cartan.to_rows();
  doc["roots"] = rs.roots;
  doc["length_sq"] = rs.length_sq;
  doc["coroots"] = rs.coroots;
  return doc;
}

}  // namespace rigidity
