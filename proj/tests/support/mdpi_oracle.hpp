#pragma once

// Exhaustive oracles for composite design problems. Every implementation
// tuple is enumerated and checked against all wires, then the extreme points
// are filtered pairwise. Shares only the data types with the solver.

#include <map>
#include <vector>

#include "codesign/mdpi.hpp"

namespace codesign::testing {

struct OracleFront {
  std::vector<Point> points;  // sorted
  std::map<Point, std::vector<std::vector<std::size_t>>> ties;  // all tuples per point, sorted
  std::size_t tuples = 0;
};

inline bool wire_ok(const CompositeGraph& g, const std::vector<std::size_t>& t, const Wire& w) {
  const double offer = g.nodes()[w.provider.node].implementations()[t[w.provider.node]].provides[w.provider.port];
  const double need = g.nodes()[w.consumer.node].implementations()[t[w.consumer.node]].requires_[w.consumer.port];
  switch (g.fun_dir(w.provider)) {
    case Direction::Maximize: return offer >= need;
    case Direction::Minimize: return offer <= need;
    case Direction::Categorical: return offer == need;
  }
  return false;
}

template <class Visit>
void for_each_tuple(const CompositeGraph& g, Visit&& visit) {
  const std::size_t n = g.nodes().size();
  std::vector<std::size_t> t(n, 0);
  for (const auto& node : g.nodes())
    if (node.size() == 0) return;
  while (true) {
    visit(t);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++t[k] < g.nodes()[k].size()) break;
      t[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

inline bool better_or_equal(double a, double b, Direction d) {
  if (d == Direction::Maximize) return a >= b;
  if (d == Direction::Minimize) return a <= b;
  return a == b;
}

inline std::vector<Point> pareto_filter(const std::vector<Point>& pts, const std::vector<Direction>& dirs) {
  std::vector<Point> out;
  for (const auto& p : pts) {
    bool dominated = false;
    for (const auto& q : pts) {
      if (q == p) continue;
      bool all = true;
      for (std::size_t k = 0; k < dirs.size(); ++k) all = all && better_or_equal(q[k], p[k], dirs[k]);
      if (all) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline OracleFront brute_min_res(const CompositeGraph& g, const Point& demand) {
  OracleFront out;
  std::vector<Point> pts;
  for_each_tuple(g, [&](const std::vector<std::size_t>& t) {
    ++out.tuples;
    for (const auto& w : g.wires())
      if (!wire_ok(g, t, w)) return;
    for (std::size_t k = 0; k < g.exposed_functionalities().size(); ++k) {
      const auto p = g.exposed_functionalities()[k];
      const double v = g.nodes()[p.node].implementations()[t[p.node]].provides[p.port];
      if (!better_or_equal(v, demand[k], g.fun_dir(p))) return;
    }
    Point r;
    for (const auto p : g.exposed_resources())
      r.push_back(g.nodes()[p.node].implementations()[t[p.node]].requires_[p.port]);
    out.ties[r].push_back(t);
    pts.push_back(std::move(r));
  });
  out.points = pareto_filter(pts, g.res_order().directions());
  return out;
}

inline OracleFront brute_max_fun(const CompositeGraph& g, const Point& budget) {
  OracleFront out;
  std::vector<Point> pts;
  for_each_tuple(g, [&](const std::vector<std::size_t>& t) {
    ++out.tuples;
    for (const auto& w : g.wires())
      if (!wire_ok(g, t, w)) return;
    for (std::size_t k = 0; k < g.exposed_resources().size(); ++k) {
      const auto p = g.exposed_resources()[k];
      const double v = g.nodes()[p.node].implementations()[t[p.node]].requires_[p.port];
      if (!better_or_equal(v, budget[k], g.res_dir(p))) return;
    }
    Point f;
    for (const auto p : g.exposed_functionalities())
      f.push_back(g.nodes()[p.node].implementations()[t[p.node]].provides[p.port]);
    out.ties[f].push_back(t);
    pts.push_back(std::move(f));
  });
  out.points = pareto_filter(pts, g.fun_order().directions());
  return out;
}

}  // namespace codesign::testing
