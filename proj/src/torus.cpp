#include "rigidity/torus.hpp"

#include "rigidity/arith.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace rigidity {

std::string to_string(TorusBasis basis) {
  switch (basis) {
    case TorusBasis::Ambient: return "ambient";
    case TorusBasis::Hat: return "hat";
    case TorusBasis::Quotient: return "quotient";
  }
  return "ambient";
}

std::string to_string(ActionKind kind) {
  switch (kind) {
    case ActionKind::Weyl: return "weyl";
    case ActionKind::Graph: return "graph";
    case ActionKind::FieldScalar: return "field-scalar";
    case ActionKind::Composite: return "composite";
  }
  return "composite";
}

namespace {

Int pow2(int e) { return Int{1} << e; }

void require_k(int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
}

bool is_power_of_two(Int x) { return x > 0 && (x & (x - 1)) == 0; }

// Inverse of a unimodular matrix via its Smith form: U M V = I.
IntMatrix unimodular_inverse(const IntMatrix& m) {
  const SmithForm sf = smith_normal_form(m);
  for (Int d : sf.diagonal)
    if (d != 1) throw std::logic_error("frame is not unimodular");
  return sf.v * sf.u;
}

IntMatrix reduce_rows(IntMatrix m, const std::vector<Int>& orders) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j), orders[i]);
  return m;
}

// Rank of a matrix over GF(2).
int rank_mod2(IntMatrix m) {
  int rank = 0;
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (mod(m(r, c), 2) == 1) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int j = 0; j < m.cols(); ++j) std::swap(m(rank, j), m(pivot, j));
    for (int r = 0; r < m.rows(); ++r)
      if (r != rank && mod(m(r, c), 2) == 1)
        for (int j = 0; j < m.cols(); ++j) m(r, j) = mod(m(r, j) + m(rank, j), 2);
    ++rank;
  }
  return rank;
}

TorusModel framed_model(IntMatrix frame, std::vector<int> columns, std::vector<Int> divisors, Int modulus,
                        TorusBasis basis) {
  TorusModel model;
  model.basis = basis;
  model.ambient_modulus = modulus;
  model.frame_inverse = unimodular_inverse(frame);
  model.frame = std::move(frame);
  model.frame_columns = std::move(columns);
  model.divisors = std::move(divisors);
  for (Int d : model.divisors) model.orders.push_back(modulus / d);
  return model;
}

// Relation matrix [diag(orders) | generators] of the subgroup's quotient.
IntMatrix relation_matrix(const TorusModel& model, const std::vector<TorusElement>& generators) {
  const int r = model.rank();
  IntMatrix rel(r, r + static_cast<int>(generators.size()));
  for (int i = 0; i < r; ++i) rel(i, i) = model.orders[i];
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (static_cast<int>(generators[g].coords.size()) != r)
      throw std::invalid_argument("generator does not lie in the model");
    for (int i = 0; i < r; ++i) rel(i, r + static_cast<int>(g)) = generators[g].coords[i];
  }
  return rel;
}

}  // namespace

std::uint64_t TorusModel::order() const {
  std::uint64_t total = 1;
  for (Int o : orders) total *= static_cast<std::uint64_t>(o);
  return total;
}

Int TorusModel::exponent() const {
  Int e = 1;
  for (Int o : orders) e = std::max(e, o);
  return e;
}

TorusElement TorusModel::element(const IntVector& coords) const {
  if (coords.size() != orders.size()) throw std::invalid_argument("coordinate count does not match the model");
  TorusElement x{coords};
  for (std::size_t i = 0; i < coords.size(); ++i) x.coords[i] = mod(coords[i], orders[i]);
  return x;
}

IntVector TorusModel::embed(const TorusElement& x) const {
  if (is_quotient()) throw std::logic_error("quotient models have no ambient embedding");
  IntVector out(frame.rows(), 0);
  for (int j = 0; j < rank(); ++j) {
    const Int scale = x.coords[j] * divisors[j];
    for (int i = 0; i < frame.rows(); ++i) out[i] += scale * frame(i, frame_columns[j]);
  }
  return mod(out, ambient_modulus);
}

std::optional<TorusElement> TorusModel::read(const IntVector& ambient) const {
  if (is_quotient()) throw std::logic_error("quotient models have no ambient embedding");
  if (static_cast<int>(ambient.size()) != frame.rows()) throw std::invalid_argument("ambient vector has wrong length");
  const IntVector y = mod(frame_inverse.apply(ambient), ambient_modulus);
  std::vector<char> used(y.size(), 0);
  IntVector coords(orders.size());
  for (int j = 0; j < rank(); ++j) {
    const int c = frame_columns[j];
    used[c] = 1;
    if (y[c] % divisors[j] != 0) return std::nullopt;
    coords[j] = mod(y[c] / divisors[j], orders[j]);
  }
  for (std::size_t c = 0; c < y.size(); ++c)
    if (!used[c] && y[c] != 0) return std::nullopt;
  return element(coords);
}

TorusElement TorusModel::project(const TorusElement& parent_element) const {
  if (!is_quotient()) throw std::logic_error("project requires a quotient model");
  return element(transform.apply(parent_element.coords));
}

ActionMap ActionMap::make(const TorusModel& model, IntMatrix matrix, ActionKind kind, Int scalar) {
  const int r = model.rank();
  if (matrix.rows() != r || matrix.cols() != r) throw std::invalid_argument("action matrix has wrong shape");
  matrix = reduce_rows(std::move(matrix), model.orders);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (mod(matrix(i, j) * model.orders[j], model.orders[i]) != 0)
        throw std::logic_error("action matrix is not well defined on mixed moduli");
  if (rank_mod2(matrix) != r) throw std::logic_error("action matrix is not invertible");
  return ActionMap{std::move(matrix), kind, scalar};
}

bool ActionMap::is_identity(const TorusModel& model) const {
  return matrix == reduce_rows(IntMatrix::identity(model.rank()), model.orders);
}

std::optional<Int> ActionMap::as_scalar(const TorusModel& model) const {
  const int r = model.rank();
  if (r == 0) return Int{1};
  const Int e = model.exponent();
  int top = 0;
  for (int i = 0; i < r; ++i)
    if (model.orders[i] == e) top = i;
  const Int s = mod(matrix(top, top), e);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (mod(matrix(i, j) - (i == j ? s : 0), model.orders[i]) != 0) return std::nullopt;
  return s;
}

TorusElement ActionMap::apply(const TorusModel& model, const TorusElement& x) const {
  return model.element(matrix.apply(x.coords));
}

ActionMap compose(const TorusModel& model, const ActionMap& left, const ActionMap& right) {
  return ActionMap::make(model, left.matrix * right.matrix, ActionKind::Composite);
}

TorusModel untwisted_model(const DualSystem& ds, int k) {
  require_k(k);
  const int n = ds.system.rank;
  std::vector<int> columns(n);
  std::iota(columns.begin(), columns.end(), 0);
  return framed_model(IntMatrix::identity(n), std::move(columns), std::vector<Int>(n, 1), pow2(k),
                      TorusBasis::Ambient);
}

TorusModel sigma_fixed(const DualSystem& ds, const DiagramAuto& rho, Int q_mod, int k) {
  require_k(k);
  const int n = ds.system.rank;
  const Int m = pow2(k + 1);
  const IntMatrix b = scaled(rho.matrix, q_mod) - IntMatrix::identity(n);
  const CyclicDecomposition cd = kernel_mod(b, m);
  std::vector<int> columns;
  std::vector<Int> divisors;
  for (int i = 0; i < n; ++i)
    if (cd.orders[i] > 1) {
      columns.push_back(i);
      divisors.push_back(m / cd.orders[i]);
    }
  TorusModel model;
  model.basis = TorusBasis::Hat;
  model.ambient_modulus = m;
  model.frame = cd.frame;
  model.frame_inverse = cd.frame_inverse;
  model.frame_columns = std::move(columns);
  model.divisors = std::move(divisors);
  for (Int d : model.divisors) model.orders.push_back(m / d);
  return model;
}

TorusModel twisted_model(const TwistedSetup& ts, int k) {
  require_k(k);
  const int n = ts.ambient.rank;
  const Int m = pow2(k + 1);
  const Int q = pow2(k) + 1;
  if (ts.label.family == Family::D) {
    // Fixed nodes e_i (divisor 2), mixed e_{n-1} + q e_n, completion e_n.
    std::vector<IntVector> cols;
    for (int i = 0; i < n - 2; ++i) {
      IntVector c(n, 0);
      c[i] = 1;
      cols.push_back(c);
    }
    IntVector mixed(n, 0);
    mixed[n - 2] = 1;
    mixed[n - 1] = q;
    cols.push_back(mixed);
    IntVector last(n, 0);
    last[n - 1] = 1;
    cols.push_back(last);
    std::vector<int> used(n - 1);
    std::iota(used.begin(), used.end(), 0);
    std::vector<Int> divisors(n - 2, 2);
    divisors.push_back(1);
    return framed_model(IntMatrix::from_columns(cols, n), std::move(used), std::move(divisors), m, TorusBasis::Hat);
  }
  if (ts.label.family == Family::A && n % 2 == 1) {
    const int half = (n + 1) / 2;
    std::vector<IntVector> cols;
    for (int i = 0; i < half - 1; ++i) {
      IntVector c(n, 0);
      c[i] = 1;
      c[n - 1 - i] = q;
      cols.push_back(c);
    }
    IntVector middle(n, 0);
    middle[half - 1] = 1;
    cols.push_back(middle);
    for (int i = 0; i < half - 1; ++i) {
      IntVector c(n, 0);
      c[n - 1 - i] = 1;
      cols.push_back(c);
    }
    std::vector<int> used(half);
    std::iota(used.begin(), used.end(), 0);
    std::vector<Int> divisors(half - 1, 1);
    divisors.push_back(2);
    return framed_model(IntMatrix::from_columns(cols, n), std::move(used), std::move(divisors), m, TorusBasis::Hat);
  }
  return sigma_fixed(ts.ambient_dual, ts.rho, q, k);
}

TorusModel quotient(std::shared_ptr<const TorusModel> model, const CentralData& z) {
  if (!model) throw std::invalid_argument("null model");
  const int r = model->rank();
  const SmithForm sf = smith_normal_form(relation_matrix(*model, z.generators));
  TorusModel out;
  out.basis = TorusBasis::Quotient;
  std::vector<int> kept;
  for (int i = 0; i < r; ++i)
    if (sf.diagonal[i] != 1) {
      if (!is_power_of_two(sf.diagonal[i])) throw std::logic_error("quotient order is not a power of two");
      kept.push_back(i);
      out.orders.push_back(sf.diagonal[i]);
    }
  const int s = static_cast<int>(kept.size());
  out.transform = IntMatrix(s, r);
  out.lift = IntMatrix(r, s);
  for (int a = 0; a < s; ++a) {
    for (int j = 0; j < r; ++j) out.transform(a, j) = mod(sf.u(kept[a], j), out.orders[a]);
    for (int i = 0; i < r; ++i) out.lift(i, a) = mod(sf.u_inverse(i, kept[a]), model->orders[i]);
  }
  out.parent = std::move(model);
  return out;
}

ActionMap induce_action(const TorusModel& model, const IntMatrix& ambient_matrix, ActionKind kind) {
  if (model.is_quotient()) return push_forward(model, induce_action(*model.parent, ambient_matrix, kind));
  // Ambient models use the identity frame.
  if (model.basis == TorusBasis::Ambient) return ActionMap::make(model, ambient_matrix, kind);
  IntMatrix matrix(model.rank(), model.rank());
  for (int j = 0; j < model.rank(); ++j) {
    IntVector unit(model.rank(), 0);
    unit[j] = 1;
    const IntVector image = ambient_matrix.apply(model.embed(model.element(unit)));
    const auto coords = model.read(image);
    if (!coords) throw std::invalid_argument("map does not preserve the model");
    for (int i = 0; i < model.rank(); ++i) matrix(i, j) = coords->coords[i];
  }
  return ActionMap::make(model, std::move(matrix), kind);
}

ActionMap induce_action(const TorusModel& model, const WeylElement& w) {
  return induce_action(model, w.matrix, ActionKind::Weyl);
}

ActionMap induce_action(const TorusModel& model, const DiagramAuto& a) {
  return induce_action(model, a.matrix, ActionKind::Graph);
}

ActionMap induce_action(const TorusModel& model, FieldScalar f) {
  if (f.r % 2 == 0) throw std::invalid_argument("even field exponent is not an automorphism of a 2-group");
  return ActionMap::make(model, scaled(IntMatrix::identity(model.rank()), f.r), ActionKind::FieldScalar,
                         mod(f.r, model.exponent()));
}

ActionMap push_forward(const TorusModel& quotient_model, const ActionMap& parent_action) {
  if (!quotient_model.is_quotient()) throw std::logic_error("push_forward requires a quotient model");
  return ActionMap::make(quotient_model, quotient_model.transform * parent_action.matrix * quotient_model.lift,
                         parent_action.kind, parent_action.scalar);
}

std::uint64_t subgroup_order(const TorusModel& model, const std::vector<TorusElement>& generators) {
  const SmithForm sf = smith_normal_form(relation_matrix(model, generators));
  std::uint64_t index = 1;
  for (Int d : sf.diagonal) index *= static_cast<std::uint64_t>(d);
  return model.order() / index;
}

std::vector<TorusElement> subgroup_elements(const TorusModel& model, const std::vector<TorusElement>& generators) {
  std::set<IntVector> seen{model.zero().coords};
  std::vector<TorusElement> frontier{model.zero()};
  std::vector<TorusElement> out{model.zero()};
  while (!frontier.empty()) {
    std::vector<TorusElement> next;
    for (const TorusElement& x : frontier)
      for (const TorusElement& g : generators) {
        IntVector sum = x.coords;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += g.coords[i];
        TorusElement y = model.element(sum);
        if (seen.insert(y.coords).second) {
          out.push_back(y);
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const TorusElement& a, const TorusElement& b) { return a.coords < b.coords; });
  return out;
}

std::vector<TorusElement> fixed_subgroup(const TorusModel& model, const std::vector<ActionMap>& maps) {
  const int r = model.rank();
  const int t = static_cast<int>(maps.size());
  if (t == 0) {
    std::vector<TorusElement> all;
    for (int j = 0; j < r; ++j) {
      IntVector unit(r, 0);
      unit[j] = 1;
      all.push_back(model.element(unit));
    }
    return all;
  }
  // Integer solutions of (M - I) x = diag(orders) y, projected to x.
  IntMatrix sys(t * r, r + t * r);
  for (int a = 0; a < t; ++a)
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) sys(a * r + i, j) = maps[a].matrix(i, j) - (i == j ? 1 : 0);
      sys(a * r + i, r + a * r + i) = -model.orders[i];
    }
  const SmithForm sf = smith_normal_form(sys);
  int rank = 0;
  for (Int d : sf.diagonal)
    if (d != 0) ++rank;
  std::vector<TorusElement> gens;
  std::set<IntVector> seen;
  for (int c = rank; c < sys.cols(); ++c) {
    IntVector x(r);
    for (int i = 0; i < r; ++i) x[i] = sf.v(i, c);
    TorusElement e = model.element(x);
    if (e == model.zero() || !seen.insert(e.coords).second) continue;
    gens.push_back(std::move(e));
  }
  return gens;
}

namespace {

IntVector on_nodes(int n, const std::vector<int>& nodes_1based, Int value) {
  IntVector v(n, 0);
  for (int node : nodes_1based) v[node - 1] = value;
  return v;
}

std::vector<int> odd_nodes(int last) {
  std::vector<int> nodes;
  for (int i = 1; i <= last; i += 2) nodes.push_back(i);
  return nodes;
}

struct Reading {
  std::string name;
  std::vector<IntVector> generators;  // ambient vectors
};

// Candidate generators of O2(Z(G)) at ambient modulus 2^k, most trusted reading first.
std::vector<Reading> untwisted_readings(const LieTypeLabel& label, int k, std::uint64_t& claimed) {
  const int n = label.rank;
  const Int m = pow2(k);
  claimed = 1;
  std::vector<Reading> out;
  switch (label.family) {
    case Family::A: {
      const Int d = std::min<Int>(pow2(static_cast<int>(val2(static_cast<std::uint64_t>(n + 1)))), m);
      claimed = static_cast<std::uint64_t>(d);
      if (d == 1) break;
      IntVector v(n);
      for (int j = 1; j <= n; ++j) v[j - 1] = mod(j * (m / d), m);
      out.push_back({"table", {v}});
      break;
    }
    case Family::B:
      claimed = 2;
      out.push_back({"table", {on_nodes(n, {n}, m / 2)}});
      break;
    case Family::C: {
      claimed = 2;
      out.push_back({"table", {on_nodes(n, odd_nodes(2 * ((n - 1) / 2) + 1), m / 2)}});
      const int alt = 2 * ((n + 1) / 2) + 1;
      if (alt <= n) out.push_back({"case-proof", {on_nodes(n, odd_nodes(alt), m / 2)}});
      break;
    }
    case Family::D:
      claimed = 4;
      if (n % 2 == 0) {
        out.push_back({"table", {on_nodes(n, odd_nodes(n - 1), m / 2), on_nodes(n, {n - 1, n}, m / 2)}});
      } else {
        IntVector v = on_nodes(n, odd_nodes(n - 2), m / 2);
        v[n - 2] = m / 4;
        v[n - 1] = 3 * m / 4;
        out.push_back({"table", {v}});
      }
      break;
    case Family::E:
      if (n == 7) {
        claimed = 2;
        out.push_back({"table-bourbaki", {on_nodes(n, {2, 5, 7}, m / 2)}});
        out.push_back({"table-raw", {on_nodes(n, {4, 5, 7}, m / 2)}});
      }
      break;
    default: break;
  }
  return out;
}

std::vector<TorusElement> read_all(const TorusModel& model, const std::vector<IntVector>& ambient) {
  std::vector<TorusElement> out;
  for (const IntVector& v : ambient) {
    const auto x = model.read(v);
    if (!x) throw std::logic_error("central candidate lies outside the model");
    out.push_back(*x);
  }
  return out;
}

std::vector<ActionMap> simple_reflection_actions(const TorusModel& model, const RootSystem& rs) {
  std::vector<ActionMap> maps;
  for (const WeylElement& s : generators(rs)) maps.push_back(induce_action(model, s));
  return maps;
}

bool fixed_by_all(const TorusModel& model, const std::vector<ActionMap>& maps, const std::vector<TorusElement>& xs) {
  for (const ActionMap& a : maps)
    for (const TorusElement& x : xs)
      if (a.apply(model, x) != x) return false;
  return true;
}

CentralData untwisted_center(const LieTypeLabel& label, int k) {
  const RootSystem rs = build(label);
  const DualSystem ds = dual(rs);
  const TorusModel model = untwisted_model(ds, k);
  const auto maps = simple_reflection_actions(model, rs);
  const std::uint64_t fixed_order = subgroup_order(model, fixed_subgroup(model, maps));
  std::uint64_t claimed = 1;
  const auto readings = untwisted_readings(label, k, claimed);
  CentralData z;
  z.claimed_order = claimed;
  if (readings.empty() && fixed_order == claimed) {
    z.reading = "trivial";
    return z;
  }
  for (const Reading& reading : readings) {
    const auto gens = read_all(model, reading.generators);
    if (fixed_by_all(model, maps, gens) && subgroup_order(model, gens) == claimed && claimed == fixed_order) {
      z.generators = gens;
      z.reading = reading.name;
      return z;
    }
  }
  z.generators = fixed_subgroup(model, maps);
  z.claimed_order = fixed_order;
  z.reading = "fixed-subgroup";
  z.table_validated = false;
  return z;
}

CentralData twisted_center(const LieTypeLabel& label, int k) {
  const TwistedSetup ts = build_twisted(label);
  const int n = ts.ambient.rank;
  const Int m = pow2(k + 1);
  const Int q = pow2(k) + 1;
  const TorusModel model = twisted_model(ts, k);

  // Z(G-bar) up to 2^(k+1)-torsion, then its sigma-fixed part.
  const TorusModel outer = untwisted_model(ts.ambient_dual, k + 1);
  const auto maps = simple_reflection_actions(outer, ts.ambient);
  std::vector<IntVector> fixed_center;
  for (const TorusElement& x : subgroup_elements(outer, fixed_subgroup(outer, maps))) {
    const IntVector image = mod(scaled(ts.rho.matrix, q).apply(x.coords), m);
    if (image == x.coords) fixed_center.push_back(x.coords);
  }
  const auto fixed_order = static_cast<std::uint64_t>(fixed_center.size());

  CentralData z;
  std::vector<IntVector> candidate;
  if (label.family == Family::D) {
    z.claimed_order = 2;
    candidate.push_back(on_nodes(n, {n - 1, n}, m / 2));
  } else if (label.family == Family::A && n % 2 == 1) {
    z.claimed_order = 2;
    candidate.push_back(on_nodes(n, odd_nodes(n), m / 2));
  }
  if (candidate.empty() && fixed_order == 1) {
    z.reading = "trivial";
    return z;
  }
  const bool inside = std::all_of(candidate.begin(), candidate.end(), [&](const IntVector& v) {
    return std::find(fixed_center.begin(), fixed_center.end(), v) != fixed_center.end();
  });
  if (inside && z.claimed_order == fixed_order) {
    z.generators = read_all(model, candidate);
    if (subgroup_order(model, z.generators) == z.claimed_order) {
      z.reading = "table";
      return z;
    }
  }
  z.generators.clear();
  for (const IntVector& v : fixed_center)
    if (std::any_of(v.begin(), v.end(), [](Int c) { return c != 0; })) z.generators.push_back(*model.read(v));
  z.claimed_order = fixed_order;
  z.reading = "fixed-subgroup";
  z.table_validated = false;
  return z;
}

}  // namespace

CentralData center_subgroup(const LieTypeLabel& requested, int k) {
  require_k(k);
  const LieTypeLabel label = canonical(requested);
  if (!is_admissible(label)) throw std::invalid_argument("inadmissible label " + requested.str());
  return label.twisted() ? twisted_center(label, k) : untwisted_center(label, k);
}

TorusSetup make_torus_setup(const LieTypeLabel& requested, int k) {
  require_k(k);
  const LieTypeLabel label = canonical(requested);
  TorusSetup setup;
  setup.label = label;
  setup.k = k;
  setup.q_mod = pow2(k) + 1;
  if (label.twisted()) {
    setup.twisted = build_twisted(label);
    setup.ambient = setup.twisted->ambient;
    setup.ambient_dual = setup.twisted->ambient_dual;
    setup.model = std::make_shared<const TorusModel>(twisted_model(*setup.twisted, k));
    setup.w0_generators = setup.twisted->w0_generators;
    setup.graph_autos = {make_diagram_auto(setup.ambient, [&] {
      std::vector<int> id(setup.ambient.rank);
      std::iota(id.begin(), id.end(), 0);
      return id;
    }())};
  } else {
    setup.ambient = build(label);
    setup.ambient_dual = dual(setup.ambient);
    setup.model = std::make_shared<const TorusModel>(untwisted_model(setup.ambient_dual, k));
    for (int i = 0; i < setup.ambient.rank; ++i)
      setup.w0_generators.push_back(simple_reflection_perm(setup.ambient, i));
    setup.graph_autos = diagram_autos(setup.ambient);
  }
  setup.center = center_subgroup(label, k);
  setup.quotient = std::make_shared<const TorusModel>(quotient(setup.model, setup.center));
  return setup;
}

nlohmann::ordered_json to_json(const TorusModel& model) {
  nlohmann::ordered_json doc;
  doc["orders"] = model.orders;
  doc["basis"] = to_string(model.basis);
  if (model.is_quotient()) doc["transform"] = model.transform.to_rows();
  return doc;
}

}  // namespace rigidity
