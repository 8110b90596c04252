#include "rmetric/structure.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "rmetric/errors.hpp"

namespace rmetric {

bool star_less(const VertexSet& x, const VertexSet& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return x.front() < y.front();
}

int ComponentDecomposition::small_count() const {
  return static_cast<int>(std::count_if(components.begin(), components.end(),
                                        [&](const VertexSet& c) { return !is_large(c); }));
}

int ComponentDecomposition::large_count() const {
  return static_cast<int>(components.size()) - small_count();
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

ComponentDecomposition component_decomposition(const MetricColoring& g,
                                               std::span<const Vertex> vertices) {
  const Color link = m_of(g.r()) - 1;
  const int k = static_cast<int>(vertices.size());
  UnionFind uf(k);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (g.dist(vertices[a], vertices[b]) == link) uf.unite(a, b);
    }
  }
  std::vector<VertexSet> by_root(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) by_root[uf.find(a)].push_back(vertices[a]);

  ComponentDecomposition out;
  out.large_threshold = 2 * g.r();
  for (auto& c : by_root) {
    if (c.empty()) continue;
    std::sort(c.begin(), c.end());
    out.components.push_back(std::move(c));
  }
  std::sort(out.components.begin(), out.components.end(), star_less);
  return out;
}

ComponentDecomposition component_decomposition(const MetricColoring& g) {
  std::vector<Vertex> all(static_cast<std::size_t>(g.n()));
  std::iota(all.begin(), all.end(), 0);
  return component_decomposition(g, all);
}

std::optional<VertexSet> minimal_large_component(const ComponentDecomposition& d) {
  for (const auto& c : d.components) {
    if (d.is_large(c)) return c;
  }
  return std::nullopt;
}

namespace {

// Lexicographically least shortest path from `from` to `to` over edges of
// color `link`, or empty if unreachable.
std::vector<Vertex> shortest_link_path(const MetricColoring& g, Color link, Vertex from,
                                       Vertex to) {
  const int n = g.n();
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::deque<Vertex> queue{to};
  dist[to] = 0;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w = 0; w < n; ++w) {
      if (w != v && dist[w] < 0 && g.dist(v, w) == link) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  if (dist[from] < 0) return {};
  std::vector<Vertex> path{from};
  Vertex cur = from;
  while (cur != to) {
    for (Vertex w = 0; w < n; ++w) {
      if (w != cur && dist[w] == dist[cur] - 1 && g.dist(cur, w) == link) {
        cur = w;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

}  // namespace

std::optional<BadCycle> find_bad_cycle(const MetricColoring& g) {
  const Color link = m_of(g.r()) - 1;
  std::optional<BadCycle> best;
  for (std::size_t p = 0; p < g.pair_count(); ++p) {
    if (g.at(p) != g.r()) continue;
    const auto [x, y] = pair_vertices(g.n(), p);
    auto path = shortest_link_path(g, link, x, y);
    if (path.empty()) continue;
    if (!best || path.size() < best->vertices.size() ||
        (path.size() == best->vertices.size() && path < best->vertices)) {
      best = BadCycle{std::move(path)};
    }
  }
  return best;
}

namespace {

std::optional<LowPair> first_pair_below(const MetricColoring& g, Color floor) {
  for (std::size_t p = 0; p < g.pair_count(); ++p) {
    if (g.at(p) < floor) {
      const auto [x, y] = pair_vertices(g.n(), p);
      return LowPair{x, y, g.at(p)};
    }
  }
  return std::nullopt;
}

}  // namespace

CrMembershipCertificate cr_membership(const MetricColoring& g) {
  const int r = g.r();
  CrMembershipCertificate cert;
  if (r % 2 == 0) {
    if (auto low = first_pair_below(g, r / 2)) {
      cert.violation = *low;
    } else {
      cert.member = true;
    }
    return cert;
  }
  if (auto low = first_pair_below(g, (r - 1) / 2)) {
    cert.violation = *low;
    return cert;
  }
  if (auto cycle = find_bad_cycle(g)) {
    cert.violation = std::move(*cycle);
    return cert;
  }
  cert.member = true;
  cert.partition = component_decomposition(g).components;
  return cert;
}

bool is_cr_member(const MetricColoring& g) {
  const int r = g.r();
  if (r % 2 == 0) {
    for (std::size_t p = 0; p < g.pair_count(); ++p) {
      if (g.at(p) < r / 2) return false;
    }
    return true;
  }
  const Color link = m_of(r) - 1;
  const int n = g.n();
  UnionFind uf(n);
  for (std::size_t p = 0; p < g.pair_count(); ++p) {
    if (g.at(p) < link) return false;
    if (g.at(p) == link) {
      const auto [x, y] = pair_vertices(n, p);
      uf.unite(x, y);
    }
  }
  for (std::size_t p = 0; p < g.pair_count(); ++p) {
    if (g.at(p) != r) continue;
    const auto [x, y] = pair_vertices(n, p);
    if (uf.find(x) == uf.find(y)) return false;
  }
  return true;
}

namespace {

bool legal_under_blocks(int r, Color c, bool same_block) {
  if (same_block) return (r - 1) / 2 <= c && c <= r - 1;
  return (r + 1) / 2 <= c && c <= r;
}

}  // namespace

bool verify_certificate(const MetricColoring& g, const CrMembershipCertificate& cert) {
  const int r = g.r();
  const int n = g.n();
  if (cert.member) {
    if (cert.violation) return false;
    if (r % 2 == 0) {
      for (std::size_t p = 0; p < g.pair_count(); ++p) {
        if (g.at(p) < r / 2) return false;
      }
      return true;
    }
    if (!cert.partition) return false;
    std::vector<int> block(static_cast<std::size_t>(n), -1);
    for (std::size_t b = 0; b < cert.partition->size(); ++b) {
      for (Vertex v : (*cert.partition)[b]) {
        if (v < 0 || v >= n || block[v] >= 0) return false;
        block[v] = static_cast<int>(b);
      }
    }
    if (std::find(block.begin(), block.end(), -1) != block.end()) return false;
    for (std::size_t p = 0; p < g.pair_count(); ++p) {
      const auto [x, y] = pair_vertices(n, p);
      if (!legal_under_blocks(r, g.at(p), block[x] == block[y])) return false;
    }
    return true;
  }
  if (!cert.violation || cert.partition) return false;
  if (const auto* low = std::get_if<LowPair>(&*cert.violation)) {
    const Color floor = (r % 2 == 0) ? r / 2 : (r - 1) / 2;
    return low->x != low->y && g.dist(low->x, low->y) == low->color && low->color < floor;
  }
  const auto& cycle = std::get<BadCycle>(*cert.violation).vertices;
  if (cycle.size() < 2 || r % 2 == 0) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Vertex v : cycle) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  const Color link = m_of(r) - 1;
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i) {
    if (g.dist(cycle[i], cycle[i + 1]) != link) return false;
  }
  return g.dist(cycle.front(), cycle.back()) == r;
}

void for_each_set_partition(int n, const std::function<bool(std::span<const int>)>& visit) {
  if (n <= 0) {
    visit({});
    return;
  }
  std::vector<int> block(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  while (true) {
    if (!visit(block)) return;
    // Next restricted growth string: bump the rightmost position that can grow.
    int i = n - 1;
    while (i > 0 && block[i] > prefix_max[i - 1]) --i;
    if (i == 0) return;
    ++block[i];
    prefix_max[i] = std::max(prefix_max[i - 1], block[i]);
    for (int j = i + 1; j < n; ++j) {
      block[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

NearestCr nearest_cr_distance(const MetricColoring& g, int brute_force_limit) {
  const int r = g.r();
  const int n = g.n();
  if (r % 2 == 0) {
    std::vector<Color> d = g.distances();
    int edits = 0;
    for (Color& c : d) {
      if (c < r / 2) {
        c = r / 2;
        ++edits;
      }
    }
    return {edits, MetricColoring(g.params(), d)};
  }
  if (n > brute_force_limit) {
    throw CapacityError("nearest C_r search for odd r enumerates set partitions; n=" +
                        std::to_string(n) + " exceeds the limit " +
                        std::to_string(brute_force_limit));
  }
  int best = std::numeric_limits<int>::max();
  std::vector<int> best_blocks;
  for_each_set_partition(n, [&](std::span<const int> block) {
    int bad = 0;
    for (std::size_t p = 0; p < g.pair_count() && bad < best; ++p) {
      const auto [x, y] = pair_vertices(n, p);
      if (!legal_under_blocks(r, g.at(p), block[x] == block[y])) ++bad;
    }
    if (bad < best) {
      best = bad;
      best_blocks.assign(block.begin(), block.end());
    }
    return best > 0;
  });
  const Color fix = (r + 1) / 2;  // legal both inside and across blocks
  std::vector<Color> d = g.distances();
  for (std::size_t p = 0; p < d.size(); ++p) {
    const auto [x, y] = pair_vertices(n, p);
    if (!legal_under_blocks(r, d[p], best_blocks[x] == best_blocks[y])) d[p] = fix;
  }
  return {best, MetricColoring(g.params(), d)};
}

std::optional<Hub> low_color_hub(const MetricColoring& g, const Rational& eps) {
  if (eps <= 0 || eps > 1) throw DomainError("epsilon must lie in (0, 1]");
  const int top = m_of(g.r()) - 2;
  const int n = g.n();
  const Rational threshold = eps * n;
  for (Vertex x = 0; x < n; ++x) {
    std::vector<int> degree(static_cast<std::size_t>(top + 1), 0);
    for (Vertex y = 0; y < n; ++y) {
      if (y == x) continue;
      const Color c = g.dist(x, y);
      if (c <= top) ++degree[c];
    }
    for (Color l = 1; l <= top; ++l) {
      if (Rational(degree[l]) >= threshold) return Hub{x, l, degree[l]};
    }
  }
  return std::nullopt;
}

HubClass hub_class(const MetricColoring& g, const Rational& eps) {
  if (low_color_hub(g, eps)) return HubClass::InA;
  const int top = m_of(g.r()) - 2;
  for (std::size_t p = 0; p < g.pair_count(); ++p) {
    if (g.at(p) <= top) return HubClass::InAPrime;
  }
  return HubClass::Neither;
}

}  // namespace rmetric
