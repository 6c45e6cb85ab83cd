#pragma once

// Tour construction for waypoint ordering: Christofides with a greedy
// odd-vertex matching, guarded by the MST double-tree tour.

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "codesign/geometry.hpp"

namespace codesign {

/// Prim's algorithm on the complete Euclidean graph; parent[0] = SIZE_MAX.
inline std::vector<std::size_t> mst_parents(const std::vector<Vec2>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> parent(n, SIZE_MAX);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<char> in(n, 0);
  if (n == 0) return parent;
  best[0] = 0;
  for (std::size_t it = 0; it < n; ++it) {
    std::size_t u = SIZE_MAX;
    for (std::size_t v = 0; v < n; ++v)
      if (!in[v] && (u == SIZE_MAX || best[v] < best[u])) u = v;
    in[u] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (in[v]) continue;
      const double d = dist(pts[u], pts[v]);
      if (d < best[v]) {
        best[v] = d;
        parent[v] = u;
      }
    }
  }
  return parent;
}

inline double mst_length(const std::vector<Vec2>& pts) {
  const auto parent = mst_parents(pts);
  double len = 0;
  for (std::size_t v = 0; v < pts.size(); ++v)
    if (parent[v] != SIZE_MAX) len += dist(pts[v], pts[parent[v]]);
  return len;
}

inline double tour_length(const std::vector<Vec2>& pts, const std::vector<std::size_t>& order, bool closed = true) {
  double len = 0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) len += dist(pts[order[i]], pts[order[i + 1]]);
  if (closed && order.size() > 1) len += dist(pts[order.back()], pts[order.front()]);
  return len;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> tree_children(const std::vector<std::size_t>& parent) {
  std::vector<std::vector<std::size_t>> ch(parent.size());
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (parent[v] != SIZE_MAX) ch[parent[v]].push_back(v);
  return ch;
}

inline std::vector<std::size_t> double_tree_tour(const std::vector<std::size_t>& parent) {
  const auto ch = tree_children(parent);
  std::vector<std::size_t> order, stack{0};
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (auto it = ch[u].rbegin(); it != ch[u].rend(); ++it) stack.push_back(*it);
  }
  return order;
}

inline std::vector<std::size_t> christofides_greedy(const std::vector<Vec2>& pts, const std::vector<std::size_t>& parent) {
  const std::size_t n = pts.size();
  std::vector<std::vector<std::size_t>> adj(n);  // multigraph
  for (std::size_t v = 0; v < n; ++v)
    if (parent[v] != SIZE_MAX) {
      adj[v].push_back(parent[v]);
      adj[parent[v]].push_back(v);
    }
  std::vector<std::size_t> odd;
  for (std::size_t v = 0; v < n; ++v)
    if (adj[v].size() % 2 == 1) odd.push_back(v);

  struct Pair { double d; std::size_t a, b; };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < odd.size(); ++i)
    for (std::size_t j = i + 1; j < odd.size(); ++j) pairs.push_back({dist(pts[odd[i]], pts[odd[j]]), odd[i], odd[j]});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& p, const Pair& q) {
    if (p.d != q.d) return p.d < q.d;
    return std::tie(p.a, p.b) < std::tie(q.a, q.b);
  });
  std::vector<char> matched(n, 0);
  for (const auto& p : pairs) {
    if (matched[p.a] || matched[p.b]) continue;
    matched[p.a] = matched[p.b] = 1;
    adj[p.a].push_back(p.b);
    adj[p.b].push_back(p.a);
  }

  // Hierholzer, then shortcut repeated vertices.
  std::vector<std::size_t> next(n, 0);
  std::vector<std::vector<char>> used(n);
  for (std::size_t v = 0; v < n; ++v) used[v].assign(adj[v].size(), 0);
  auto take_edge = [&](std::size_t u, std::size_t k) {
    const std::size_t v = adj[u][k];
    used[u][k] = 1;
    for (std::size_t m = 0; m < adj[v].size(); ++m)
      if (adj[v][m] == u && !used[v][m]) {
        used[v][m] = 1;
        break;
      }
    return v;
  };
  std::vector<std::size_t> stack{0}, circuit;
  while (!stack.empty()) {
    const auto u = stack.back();
    while (next[u] < adj[u].size() && used[u][next[u]]) ++next[u];
    if (next[u] == adj[u].size()) {
      circuit.push_back(u);
      stack.pop_back();
    } else {
      stack.push_back(take_edge(u, next[u]));
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> tour;
  for (auto v : circuit)
    if (!seen[v]) {
      seen[v] = 1;
      tour.push_back(v);
    }
  return tour;
}

}  // namespace detail

/// Closed tour over all points starting at index 0; length at most twice the MST.
inline std::vector<std::size_t> tsp_order(const std::vector<Vec2>& pts) {
  if (pts.size() <= 2) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    return order;
  }
  const auto parent = mst_parents(pts);
  auto chr = detail::christofides_greedy(pts, parent);
  auto dbl = detail::double_tree_tour(parent);
  return tour_length(pts, chr) <= tour_length(pts, dbl) ? chr : dbl;
}

/// The tour opened at its longest edge.
inline std::vector<std::size_t> open_path_order(const std::vector<Vec2>& pts) {
  auto tour = tsp_order(pts);
  if (tour.size() < 3) return tour;
  std::size_t cut = 0;  // edge tour[cut] -> tour[cut+1 mod n] is removed
  double longest = -1;
  for (std::size_t i = 0; i < tour.size(); ++i) {
    const double d = dist(pts[tour[i]], pts[tour[(i + 1) % tour.size()]]);
    if (d > longest + 1e-12) {
      longest = d;
      cut = i;
    }
  }
  std::rotate(tour.begin(), tour.begin() + static_cast<std::ptrdiff_t>((cut + 1) % tour.size()), tour.end());
  return tour;
}

}  // namespace codesign
