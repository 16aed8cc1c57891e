#include "rigidity/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

namespace rigidity {

BaseKey pack_key(const std::vector<int>& images) {
  BaseKey key = 0;
  for (int img : images) key = (key << 8) | static_cast<BaseKey>(img & 0xff);
  return key;
}

std::vector<int> unpack_key(BaseKey key, int rank) {
  std::vector<int> images(rank);
  for (int j = rank - 1; j >= 0; --j) {
    images[j] = static_cast<int>(key & 0xff);
    key >>= 8;
  }
  return images;
}

BaseKey identity_key(const RootSystem& rs) { return pack_key(rs.simple_index); }

BaseKey compose(const RootPerm& left, BaseKey right, int rank) {
  BaseKey key = 0;
  for (int j = rank - 1, shift = 0; j >= 0; --j, shift += 8) {
    const auto img = static_cast<std::uint8_t>((right >> shift) & 0xff);
    key |= static_cast<BaseKey>(left[img]) << shift;
  }
  return key;
}

RootPerm simple_reflection_perm(const RootSystem& rs, int node) {
  RootPerm p(rs.num_roots());
  for (int r = 0; r < rs.num_roots(); ++r) {
    const int img = rs.index_of(reflect(rs, node, rs.roots[r]));
    if (img < 0) throw std::logic_error("reflection left the root set");
    p[r] = static_cast<std::uint8_t>(img);
  }
  return p;
}

RootPerm perm_from_key(const RootSystem& rs, BaseKey key) {
  const std::vector<int> images = unpack_key(key, rs.rank);
  RootPerm p(rs.num_roots());
  for (int r = 0; r < rs.num_roots(); ++r) {
    IntVector v(rs.rank, 0);
    for (int j = 0; j < rs.rank; ++j) {
      const Int c = rs.roots[r][j];
      if (c == 0) continue;
      const IntVector& img = rs.roots[images[j]];
      for (int i = 0; i < rs.rank; ++i) v[i] += c * img[i];
    }
    const int idx = rs.index_of(v);
    if (idx < 0) throw std::logic_error("key does not define a root-set isometry");
    p[r] = static_cast<std::uint8_t>(idx);
  }
  return p;
}

RootPerm compose_perms(const RootPerm& left, const RootPerm& right) {
  RootPerm out(right.size());
  for (std::size_t r = 0; r < right.size(); ++r) out[r] = left[right[r]];
  return out;
}

RootPerm inverse_perm(const RootPerm& p) {
  RootPerm out(p.size());
  for (std::size_t r = 0; r < p.size(); ++r) out[p[r]] = static_cast<std::uint8_t>(r);
  return out;
}

BaseKey key_of(const RootSystem& rs, const RootPerm& p) {
  std::vector<int> images(rs.rank);
  for (int j = 0; j < rs.rank; ++j) images[j] = p[rs.simple_index[j]];
  return pack_key(images);
}

IntMatrix coroot_matrix(const RootSystem& rs, BaseKey key) {
  const std::vector<int> images = unpack_key(key, rs.rank);
  IntMatrix m(rs.rank, rs.rank);
  for (int j = 0; j < rs.rank; ++j) {
    const IntVector& co = rs.coroots[images[j]];
    for (int i = 0; i < rs.rank; ++i) m(i, j) = co[i];
  }
  return m;
}

std::vector<int> reduced_word(const RootSystem& rs, BaseKey key) {
  std::vector<int> images = unpack_key(key, rs.rank);
  std::vector<int> peeled;
  const auto limit = static_cast<std::size_t>(rs.num_roots());
  for (;;) {
    int descent = -1;
    for (int j = 0; j < rs.rank; ++j)
      if (!rs.is_positive(images[j])) {
        descent = j;
        break;
      }
    if (descent < 0) break;
    // (w s_j)(alpha_i) = w(alpha_i) - C(j, i) w(alpha_j)
    const IntVector wj = rs.roots[images[descent]];
    std::vector<int> next(rs.rank);
    for (int i = 0; i < rs.rank; ++i) {
      IntVector v = rs.roots[images[i]];
      const Int c = rs.cartan(descent, i);
      for (int t = 0; t < rs.rank; ++t) v[t] -= c * wj[t];
      next[i] = rs.index_of(v);
      if (next[i] < 0) throw std::logic_error("element is not in the Weyl group");
    }
    images = std::move(next);
    peeled.push_back(descent);
    if (peeled.size() > limit) throw std::logic_error("element is not in the Weyl group");
  }
  if (pack_key(images) != identity_key(rs)) throw std::logic_error("element is not in the Weyl group");
  std::reverse(peeled.begin(), peeled.end());
  return peeled;
}

WeylElement materialize(const RootSystem& rs, BaseKey key, bool in_weyl_group) {
  WeylElement e;
  e.matrix = coroot_matrix(rs, key);
  const RootPerm p = perm_from_key(rs, key);
  e.perm.assign(p.begin(), p.end());
  if (in_weyl_group) e.word = reduced_word(rs, key);
  return e;
}

WeylGroup::WeylGroup(RootSystem system, std::vector<BaseKey> keys, std::vector<std::size_t> layer_offsets)
    : system_(std::move(system)), keys_(std::move(keys)), offsets_(std::move(layer_offsets)) {}

std::vector<WeylElement> generators(const RootSystem& rs) {
  std::vector<WeylElement> out;
  for (int i = 0; i < rs.rank; ++i) {
    const RootPerm p = simple_reflection_perm(rs, i);
    WeylElement e = materialize(rs, key_of(rs, p), false);
    e.word = {i};
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

WeylGroup layered_closure(const RootSystem& rs, const std::vector<RootPerm>& gens, std::size_t cap) {
  std::vector<BaseKey> all;
  std::vector<std::size_t> offsets{0};
  std::vector<BaseKey> previous;
  std::vector<BaseKey> current{identity_key(rs)};
  while (!current.empty()) {
    all.insert(all.end(), current.begin(), current.end());
    offsets.push_back(all.size());
    if (all.size() > cap) throw CapExceeded(cap);
    std::vector<BaseKey> next;
    next.reserve(current.size() * gens.size());
    for (BaseKey k : current)
      for (const RootPerm& g : gens) next.push_back(compose(g, k, rs.rank));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    std::vector<BaseKey> fresh;
    fresh.reserve(next.size());
    for (BaseKey k : next)
      if (!std::binary_search(previous.begin(), previous.end(), k) &&
          !std::binary_search(current.begin(), current.end(), k))
        fresh.push_back(k);
    previous = std::move(current);
    current = std::move(fresh);
  }
  offsets.pop_back();
  return WeylGroup(rs, std::move(all), std::move(offsets));
}

constexpr char kCacheMagic[4] = {'R', 'W', 'G', 'C'};
constexpr std::uint32_t kCacheVersion = 1;

std::filesystem::path cache_path(const RootSystem& rs) {
  const char* dir = std::getenv("RIGIDITY_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  // Keys depend on root ordering, so only Bourbaki-numbered systems are cached.
  if (rs.label.twisted() || rs.cartan != bourbaki_cartan(rs.label.family, rs.label.rank)) return {};
  return std::filesystem::path(dir) / ("weyl-" + rs.label.str() + ".bin");
}

template <typename T>
void write_pod(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
bool read_pod(std::istream& in, T& value) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&value), sizeof(T)));
}

std::optional<WeylGroup> load_cache(const RootSystem& rs, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[4];
  std::uint32_t version = 0, label_len = 0, rank = 0;
  std::uint64_t count = 0, layers = 0;
  if (!in.read(magic, 4) || std::memcmp(magic, kCacheMagic, 4) != 0) return std::nullopt;
  if (!read_pod(in, version) || version != kCacheVersion) return std::nullopt;
  if (!read_pod(in, label_len) || label_len > 16) return std::nullopt;
  std::string label(label_len, '\0');
  if (!in.read(label.data(), label_len) || label != rs.label.str()) return std::nullopt;
  if (!read_pod(in, rank) || static_cast<int>(rank) != rs.rank) return std::nullopt;
  if (!read_pod(in, count) || !read_pod(in, layers)) return std::nullopt;
  std::vector<std::size_t> offsets(layers);
  for (auto& o : offsets) {
    std::uint64_t v = 0;
    if (!read_pod(in, v)) return std::nullopt;
    o = v;
  }
  std::vector<BaseKey> keys(count);
  std::vector<std::uint8_t> packed(rank);
  for (auto& k : keys) {
    if (!in.read(reinterpret_cast<char*>(packed.data()), rank)) return std::nullopt;
    k = 0;
    for (auto b : packed) k = (k << 8) | b;
  }
  return WeylGroup(rs, std::move(keys), std::move(offsets));
}

void store_cache(const WeylGroup& group, const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return;
    const RootSystem& rs = group.system();
    const std::string label = rs.label.str();
    out.write(kCacheMagic, 4);
    write_pod(out, kCacheVersion);
    write_pod(out, static_cast<std::uint32_t>(label.size()));
    out.write(label.data(), static_cast<std::streamsize>(label.size()));
    write_pod(out, static_cast<std::uint32_t>(rs.rank));
    write_pod(out, static_cast<std::uint64_t>(group.size()));
    write_pod(out, static_cast<std::uint64_t>(group.layer_offsets().size()));
    for (auto o : group.layer_offsets()) write_pod(out, static_cast<std::uint64_t>(o));
    std::vector<std::uint8_t> packed(rs.rank);
    for (BaseKey k : group.keys()) {
      for (int j = rs.rank - 1; j >= 0; --j, k >>= 8) packed[j] = static_cast<std::uint8_t>(k & 0xff);
      out.write(reinterpret_cast<const char*>(packed.data()), rs.rank);
    }
  }
  std::filesystem::rename(tmp, path, ec);
}

}  // namespace

WeylGroup enumerate(const RootSystem& rs, std::size_t cap) {
  const auto path = cache_path(rs);
  if (!path.empty()) {
    if (auto cached = load_cache(rs, path); cached && cached->size() <= cap) return std::move(*cached);
  }
  std::vector<RootPerm> gens;
  for (int i = 0; i < rs.rank; ++i) gens.push_back(simple_reflection_perm(rs, i));
  WeylGroup group = layered_closure(rs, gens, cap);
  if (!path.empty()) store_cache(group, path);
  return group;
}

WeylGroup enumerate_subgroup(const RootSystem& rs, const std::vector<RootPerm>& gens, std::size_t cap) {
  for (const RootPerm& g : gens)
    if (key_of(rs, compose_perms(g, g)) != identity_key(rs))
      throw std::invalid_argument("subgroup generators must be involutions");
  return layered_closure(rs, gens, cap);
}

WeylElement longest_element(const RootSystem& rs) {
  std::vector<RootPerm> gens;
  for (int i = 0; i < rs.rank; ++i) gens.push_back(simple_reflection_perm(rs, i));
  RootPerm w(rs.num_roots());
  for (int r = 0; r < rs.num_roots(); ++r) w[r] = static_cast<std::uint8_t>(r);
  // Right-multiply by s_j while w(alpha_j) > 0; terminates at the unique
  // element with no such j, which sends every positive root to a negative one.
  for (;;) {
    int ascent = -1;
    for (int j = 0; j < rs.rank; ++j)
      if (rs.is_positive(w[rs.simple_index[j]])) {
        ascent = j;
        break;
      }
    if (ascent < 0) break;
    w = compose_perms(w, gens[ascent]);
  }
  return materialize(rs, key_of(rs, w));
}

std::uint64_t weyl_order_closed_form(const LieTypeLabel& label) {
  const int n = label.rank;
  auto factorial = [](int m) {
    std::uint64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  switch (label.family) {
    case Family::A: return factorial(n + 1);
    case Family::B:
    case Family::C: return (std::uint64_t{1} << n) * factorial(n);
    case Family::D: return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case Family::E: return n == 6 ? 51840 : n == 7 ? 2903040 : 696729600;
    case Family::F: return 1152;
    case Family::G: return 12;
  }
  return 0;
}

ParabolicChain::ParabolicChain(const RootSystem& rs) : system_(rs) {
  const int n = rs.rank;
  std::vector<RootPerm> gens;
  for (int i = 0; i < n; ++i) gens.push_back(simple_reflection_perm(rs, i));
  RootPerm identity(rs.num_roots());
  for (int r = 0; r < rs.num_roots(); ++r) identity[r] = static_cast<std::uint8_t>(r);
  for (int top = 0; top < n; ++top) {
    // Orbit of the fundamental weight of node `top` under W(nodes 0..top),
    // in coordinates <lambda, alpha_l^vee> for l <= top.
    std::map<IntVector, RootPerm> orbit;
    std::deque<IntVector> queue;
    IntVector start(top + 1, 0);
    start[top] = 1;
    orbit.emplace(start, identity);
    queue.push_back(start);
    while (!queue.empty()) {
      const IntVector lambda = queue.front();
      queue.pop_front();
      const RootPerm rep = orbit.at(lambda);
      for (int j = 0; j <= top; ++j) {
        if (lambda[j] == 0) continue;
        IntVector next = lambda;
        for (int l = 0; l <= top; ++l) next[l] -= lambda[j] * rs.cartan(l, j);
        if (orbit.count(next)) continue;
        orbit.emplace(next, compose_perms(gens[j], rep));
        queue.push_back(next);
      }
    }
    std::vector<RootPerm> reps;
    for (auto& [lambda, rep] : orbit) reps.push_back(rep);
    levels_.push_back(std::move(reps));
  }
}

std::uint64_t ParabolicChain::order() const {
  std::uint64_t total = 1;
  for (const auto& level : levels_) total *= level.size();
  return total;
}

BaseKey ParabolicChain::sample(std::mt19937_64& rng) const {
  RootPerm w(system_.num_roots());
  for (int r = 0; r < system_.num_roots(); ++r) w[r] = static_cast<std::uint8_t>(r);
  for (const auto& level : levels_) {
    std::uniform_int_distribution<std::size_t> pick(0, level.size() - 1);
    w = compose_perms(level[pick(rng)], w);
  }
  return key_of(system_, w);
}

}  // namespace rigidity
