#include "rigidity/twist.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rigidity {

DiagramAuto make_diagram_auto(const RootSystem& rs, const std::vector<int>& node_perm) {
  const int n = rs.rank;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rs.cartan(node_perm[i], node_perm[j]) != rs.cartan(i, j))
        throw std::invalid_argument("node permutation does not preserve the Cartan matrix");
  DiagramAuto a;
  a.node_perm = node_perm;
  a.matrix = IntMatrix(n, n);
  for (int i = 0; i < n; ++i) a.matrix(node_perm[i], i) = 1;
  a.root_perm.resize(rs.num_roots());
  for (int r = 0; r < rs.num_roots(); ++r) {
    IntVector img(n, 0);
    for (int i = 0; i < n; ++i) img[node_perm[i]] = rs.roots[r][i];
    a.root_perm[r] = static_cast<std::uint8_t>(rs.index_of(img));
  }
  std::vector<int> power = node_perm;
  a.order = 1;
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  while (power != identity) {
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i) next[i] = node_perm[power[i]];
    power = std::move(next);
    ++a.order;
  }
  return a;
}

std::vector<DiagramAuto> diagram_autos(const RootSystem& rs) {
  std::vector<int> perm(rs.rank);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<DiagramAuto> out;
  do {
    bool ok = true;
    for (int i = 0; i < rs.rank && ok; ++i)
      for (int j = 0; j < rs.rank; ++j)
        if (rs.cartan(perm[i], perm[j]) != rs.cartan(i, j)) {
          ok = false;
          break;
        }
    if (ok) out.push_back(make_diagram_auto(rs, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

std::vector<int> rho_nodes(const LieTypeLabel& label) {
  const int n = label.rank;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  switch (label.family) {
    case Family::A:
      for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
      break;
    case Family::D:
      std::swap(p[n - 2], p[n - 1]);
      break;
    case Family::E:
      std::swap(p[0], p[5]);
      std::swap(p[2], p[4]);
      break;
    default:
      throw std::invalid_argument("no order-2 graph automorphism for " + label.str());
  }
  return p;
}

std::vector<std::vector<int>> folded_orbits(const LieTypeLabel& label, const std::vector<int>& rho) {
  if (label.family == Family::E) return {{1}, {3}, {2, 4}, {0, 5}};
  std::vector<std::vector<int>> orbits;
  std::vector<char> seen(rho.size(), 0);
  for (int i = 0; i < static_cast<int>(rho.size()); ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit{i};
    seen[i] = 1;
    if (rho[i] != i) {
      orbit.push_back(rho[i]);
      seen[rho[i]] = 1;
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

LieTypeLabel folded_label(const LieTypeLabel& label) {
  const int n = label.rank;
  switch (label.family) {
    case Family::A:
      if (n % 2 == 1) return untwisted(Family::C, (n + 1) / 2);
      return n == 2 ? untwisted(Family::A, 1) : untwisted(Family::B, n / 2);
    case Family::D: return untwisted(Family::B, n - 1);
    case Family::E: return untwisted(Family::F, 4);
    default: throw std::invalid_argument("no folding for " + label.str());
  }
}

}  // namespace

TwistedSetup build_twisted(const LieTypeLabel& requested) {
  const LieTypeLabel label = canonical(requested);
  if (!label.twisted() || !is_admissible(label))
    throw std::invalid_argument("inadmissible twisted label " + requested.str());
  TwistedSetup ts;
  ts.label = label;
  const LieTypeLabel ambient_label = untwisted(label.family, label.rank);
  ts.ambient = build_from_cartan(ambient_label, bourbaki_cartan(label.family, label.rank));
  ts.ambient_dual = dual(ts.ambient);
  ts.rho = make_diagram_auto(ts.ambient, rho_nodes(label));
  const int n = ts.ambient.rank;

  ts.v0_projection.numerator = IntMatrix::identity(n);
  for (int i = 0; i < n; ++i) ts.v0_projection.numerator(ts.rho.node_perm[i], i) += 1;
  ts.v0_projection.denominator = 2;

  ts.hat_base = folded_orbits(label, ts.rho.node_perm);
  const int m = static_cast<int>(ts.hat_base.size());

  // Twice the projected simple roots stay integral.
  std::vector<IntVector> doubled;
  for (const auto& orbit : ts.hat_base) {
    IntVector x(n, 0);
    for (int i : orbit) x[i] += orbit.size() == 1 ? 2 : 1;
    doubled.push_back(std::move(x));
  }
  IntMatrix hat_cartan(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const Int num = 2 * ts.ambient.inner(doubled[b], doubled[a]);
      const Int den = ts.ambient.inner(doubled[a], doubled[a]);
      if (num % den != 0) throw std::logic_error("folded Cartan entry is not integral");
      hat_cartan(a, b) = num / den;
    }
  const LieTypeLabel hat_label = folded_label(label);
  if (hat_cartan != bourbaki_cartan(hat_label.family, hat_label.rank))
    throw std::logic_error("folded Cartan matrix does not match " + hat_label.str());
  ts.hat_system = build_from_cartan(hat_label, hat_cartan);
  ts.hat_dual = dual(ts.hat_system);

  for (const IntVector& x : doubled) {
    // beta^vee = 4x / (x, x) with x = 2 beta, then rescale to co-root coordinates.
    const Int len = ts.ambient.inner(x, x);
    IntVector co(n);
    for (int i = 0; i < n; ++i) {
      const Int num = 4 * x[i] * ts.ambient.simple_length_sq[i];
      if (num % (2 * len) != 0) throw std::logic_error("hat co-root is not integral");
      co[i] = num / (2 * len);
    }
    ts.hat_coroots.push_back(std::move(co));
  }

  std::vector<RootPerm> simple;
  for (int i = 0; i < n; ++i) simple.push_back(simple_reflection_perm(ts.ambient, i));
  for (const auto& orbit : ts.hat_base) {
    std::vector<int> word;
    if (orbit.size() == 1) word = {orbit[0]};
    else if (ts.ambient.cartan(orbit[0], orbit[1]) == 0) word = {orbit[0], orbit[1]};
    else word = {orbit[0], orbit[1], orbit[0]};
    RootPerm p(ts.ambient.num_roots());
    std::iota(p.begin(), p.end(), 0);
    for (auto it = word.rbegin(); it != word.rend(); ++it) p = compose_perms(simple[*it], p);
    ts.w0_generators.push_back(std::move(p));
    ts.w0_words.push_back(std::move(word));
  }
  return ts;
}

nlohmann::ordered_json to_json(const TwistedSetup& ts) {
  nlohmann::ordered_json doc = to_json(ts.ambient);
  doc["label"] = ts.label.str();
  std::vector<int> rho;
  for (int p : ts.rho.node_perm) rho.push_back(p + 1);
  doc["rho"] = rho;
  std::vector<std::vector<int>> base;
  for (const auto& orbit : ts.hat_base) {
    std::vector<int> nodes;
    for (int i : orbit) nodes.push_back(i + 1);
    base.push_back(std::move(nodes));
  }
  doc["hat_base"] = base;
  doc["hat_coroots"] = ts.hat_coroots;
  doc["hat_system"] = ts.hat_system.label.str();
  return doc;
}

}  // namespace rigidity
