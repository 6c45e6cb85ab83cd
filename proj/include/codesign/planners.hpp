#pragma once

// Coverage planners for rectangular maps: AGD-style adaptive grid, DARP with
// spanning-tree coverage routes, and a boustrophedon sweep ("MRTA-lite").

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "json.hpp"

#include "codesign/fleet.hpp"
#include "codesign/geometry.hpp"
#include "codesign/tsp.hpp"

namespace codesign {

enum class PlannerKind { AGD, DARP, MRTA_LITE };

inline const std::vector<PlannerKind>& all_planners() {
  static const std::vector<PlannerKind> p{PlannerKind::AGD, PlannerKind::DARP, PlannerKind::MRTA_LITE};
  return p;
}

inline std::string to_string(PlannerKind p) {
  switch (p) {
    case PlannerKind::AGD: return "AGD";
    case PlannerKind::DARP: return "DARP";
    case PlannerKind::MRTA_LITE: return "MRTA_LITE";
  }
  return "?";
}

inline PlannerKind planner_from_string(const std::string& s) {
  for (auto p : all_planners())
    if (to_string(p) == s) return p;
  throw ConfigError("unknown planner '" + s + "'");
}

using WaypointSequence = std::vector<Vec2>;

struct WaypointCollection {
  std::string planner;
  std::string map_id;
  std::vector<WaypointSequence> robots;  // indexed like Fleet::expanded()
  bool fallback = false;                 // DARP did not converge and used strips

  std::size_t total_waypoints() const {
    std::size_t n = 0;
    for (const auto& r : robots) n += r.size();
    return n;
  }
};

/// What the planners need to know about one robot.
struct PlannerRobot {
  double v_max = 0;
  double r_sensing = 0;
};

inline std::vector<PlannerRobot> planner_robots(const Fleet& f) {
  std::vector<PlannerRobot> out;
  for (const auto& d : f.expanded()) out.push_back({d.actuation.v_max, d.sensing.r_sensing});
  return out;
}

// ---------------------------------------------------------------------------
// Strip partition

/// Splits the map along its longer side into strips with lengths proportional to `weights`.
inline std::vector<Rect> strip_partition(const RectMap& map, const std::vector<double>& weights) {
  double total = 0;
  for (double w : weights) {
    if (!(w >= 0)) throw ConfigError("strip weights must be non-negative");
    total += w;
  }
  if (!(total > 0)) throw ConfigError("strip weights sum to zero");
  const Rect& m = map.rect;
  const bool along_x = m.w >= m.h;
  const double len = along_x ? m.w : m.h;
  const double start = along_x ? m.x0 : m.y0;
  std::vector<Rect> out;
  double acc = 0, lo = start;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    const double hi = (i + 1 == weights.size()) ? start + len : start + len * (acc / total);
    if (along_x) out.push_back({lo, m.y0, hi - lo, m.h});
    else out.push_back({m.x0, lo, m.w, hi - lo});
    lo = hi;
  }
  return out;
}

inline std::vector<double> sweep_weights(const std::vector<PlannerRobot>& robots) {
  std::vector<double> w;
  for (const auto& r : robots) w.push_back(r.v_max * r.r_sensing);
  return w;
}

// ---------------------------------------------------------------------------
// AGD

/// Cell centers of the square tiling with side at most sqrt(2)*r, in row-major order.
inline std::vector<Vec2> agd_cell_centers(const Rect& strip, double r_sensing) {
  if (!(r_sensing > 0)) throw ConfigError("sensing radius must be positive");
  const double side = std::sqrt(2.0) * r_sensing;
  const auto nx = cells_along(strip.w, side), ny = cells_along(strip.h, side);
  const double cw = strip.w / static_cast<double>(nx), ch = strip.h / static_cast<double>(ny);
  std::vector<Vec2> pts;
  pts.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      pts.push_back({strip.x0 + (static_cast<double>(i) + 0.5) * cw, strip.y0 + (static_cast<double>(j) + 0.5) * ch});
  return pts;
}

inline WaypointSequence agd_strip_route(const Rect& strip, double r_sensing) {
  if (strip.w <= 0 || strip.h <= 0) return {};
  const auto pts = agd_cell_centers(strip, r_sensing);
  WaypointSequence seq;
  for (auto i : open_path_order(pts)) seq.push_back(pts[i]);
  return seq;
}

inline WaypointCollection agd_plan(const std::vector<PlannerRobot>& robots, const RectMap& map) {
  if (robots.empty()) throw ConfigError("planner needs at least one robot");
  WaypointCollection wc{"AGD", map.id, {}, false};
  const auto strips = strip_partition(map, sweep_weights(robots));
  for (std::size_t i = 0; i < robots.size(); ++i) wc.robots.push_back(agd_strip_route(strips[i], robots[i].r_sensing));
  return wc;
}

// ---------------------------------------------------------------------------
// DARP

struct CellGrid {
  Rect area;
  std::size_t nx = 0, ny = 0;

  std::size_t size() const { return nx * ny; }
  double cell_w() const { return area.w / static_cast<double>(nx); }
  double cell_h() const { return area.h / static_cast<double>(ny); }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  std::size_t col(std::size_t c) const { return c % nx; }
  std::size_t row(std::size_t c) const { return c / nx; }
  Vec2 center(std::size_t c) const {
    return {area.x0 + (static_cast<double>(col(c)) + 0.5) * cell_w(), area.y0 + (static_cast<double>(row(c)) + 0.5) * cell_h()};
  }
  /// 4-neighbors in the order east, north, west, south.
  std::vector<std::size_t> neighbors(std::size_t c) const {
    std::vector<std::size_t> out;
    const auto i = col(c), j = row(c);
    if (i + 1 < nx) out.push_back(index(i + 1, j));
    if (j + 1 < ny) out.push_back(index(i, j + 1));
    if (i > 0) out.push_back(index(i - 1, j));
    if (j > 0) out.push_back(index(i, j - 1));
    return out;
  }
};

struct DarpOptions {
  std::size_t max_sweeps = 1000;
  std::size_t assignment_sweeps = 200;  // weighted-distance phase before boundary transfers
};

struct DarpPartition {
  CellGrid grid;
  std::vector<std::size_t> owner;  // robot per cell
  std::vector<std::size_t> start;  // start cell per robot
  std::size_t sweeps = 0;
  bool converged = false;
};

namespace detail {

// Cells of robot r reachable from `from` inside its region.
inline std::vector<char> region_reach(const CellGrid& g, const std::vector<std::size_t>& owner, std::size_t r,
                                      std::size_t from, std::size_t skip = SIZE_MAX) {
  std::vector<char> seen(g.size(), 0);
  if (from == skip || owner[from] != r) return seen;
  std::deque<std::size_t> q{from};
  seen[from] = 1;
  while (!q.empty()) {
    const auto c = q.front();
    q.pop_front();
    for (auto d : g.neighbors(c))
      if (!seen[d] && d != skip && owner[d] == r) {
        seen[d] = 1;
        q.push_back(d);
      }
  }
  return seen;
}

inline std::vector<std::size_t> region_counts(const std::vector<std::size_t>& owner, std::size_t n) {
  std::vector<std::size_t> k(n, 0);
  for (auto o : owner) ++k[o];
  return k;
}

inline bool region_connected(const CellGrid& g, const std::vector<std::size_t>& owner, std::size_t r,
                             std::size_t start) {
  const auto seen = region_reach(g, owner, r, start);
  for (std::size_t c = 0; c < g.size(); ++c)
    if (owner[c] == r && !seen[c]) return false;
  return true;
}

inline bool darp_done(const CellGrid& g, const std::vector<std::size_t>& owner, const std::vector<std::size_t>& start) {
  const auto k = region_counts(owner, start.size());
  const auto [lo, hi] = std::minmax_element(k.begin(), k.end());
  if (*hi - *lo > 1) return false;
  for (std::size_t r = 0; r < start.size(); ++r)
    if (k[r] > 0 && !region_connected(g, owner, r, start[r])) return false;
  return true;
}


// Hands cells outside each robot's start component to neighboring regions.
inline void repair_connectivity(const CellGrid& g, std::vector<std::size_t>& owner,
                                const std::vector<std::size_t>& start) {
  constexpr std::size_t kFree = SIZE_MAX;
  std::vector<std::size_t> k(start.size(), 0);
  for (std::size_t r = 0; r < start.size(); ++r) {
    const auto seen = region_reach(g, owner, r, start[r]);
    for (std::size_t c = 0; c < g.size(); ++c)
      if (owner[c] == r && !seen[c]) owner[c] = kFree;
  }
  for (auto o : owner)
    if (o != kFree) ++k[o];
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < g.size(); ++c) {
      if (owner[c] != kFree) continue;
      std::size_t best = kFree;
      for (auto d : g.neighbors(c))
        if (owner[d] != kFree && (best == kFree || k[owner[d]] < k[best])) best = owner[d];
      if (best != kFree) {
        owner[c] = best;
        ++k[best];
        changed = true;
      }
    }
  }
}

// A cell of region a next to region b whose removal leaves a connected; farthest from a's start first.
inline std::size_t movable_cell(const CellGrid& g, const std::vector<std::size_t>& owner,
                                const std::vector<std::size_t>& start, std::size_t a, std::size_t b) {
  std::vector<std::size_t> cand;
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (owner[c] != a || c == start[a]) continue;
    for (auto d : g.neighbors(c))
      if (owner[d] == b) {
        cand.push_back(c);
        break;
      }
  }
  const Vec2 s = g.center(start[a]);
  std::stable_sort(cand.begin(), cand.end(),
                   [&](std::size_t x, std::size_t y) { return dist(g.center(x), s) > dist(g.center(y), s); });
  std::size_t size_a = 0;
  for (auto o : owner) size_a += (o == a);
  for (auto c : cand) {
    const auto seen = region_reach(g, owner, a, start[a], c);
    const auto reached = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 1));
    if (reached + 1 == size_a) return c;
  }
  return SIZE_MAX;
}

// Moves one cell along a chain of regions from the largest region towards a
// smaller one. Returns false when no chain exists.
inline bool transfer_chain(const CellGrid& g, std::vector<std::size_t>& owner, const std::vector<std::size_t>& start) {
  const std::size_t n = start.size();
  const auto k = region_counts(owner, n);
  const auto hi = static_cast<std::size_t>(std::max_element(k.begin(), k.end()) - k.begin());
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  for (std::size_t c = 0; c < g.size(); ++c)
    for (auto d : g.neighbors(c))
      if (owner[c] != owner[d]) adjacent[owner[c]][owner[d]] = 1;
  std::vector<std::size_t> prev(n, SIZE_MAX);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> q{hi};
  seen[hi] = 1;
  std::size_t target = SIZE_MAX;
  while (!q.empty() && target == SIZE_MAX) {
    const auto a = q.front();
    q.pop_front();
    for (std::size_t b = 0; b < n; ++b) {
      if (seen[b] || !adjacent[a][b] || movable_cell(g, owner, start, a, b) == SIZE_MAX) continue;
      seen[b] = 1;
      prev[b] = a;
      if (k[b] + 2 <= k[hi]) {
        target = b;
        break;
      }
      q.push_back(b);
    }
  }
  if (target == SIZE_MAX) return false;
  std::vector<std::size_t> chain{target};
  while (chain.back() != hi) chain.push_back(prev[chain.back()]);
  // chain runs target .. hi; move cells starting next to the target
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const auto to = chain[i], from = chain[i + 1];
    const auto c = movable_cell(g, owner, start, from, to);
    if (c == SIZE_MAX) return true;  // partial chain; the next sweep continues
    owner[c] = to;
  }
  return true;
}

// Multi-source grid distances to the cells flagged in `src`.
inline std::vector<double> grid_distance(const CellGrid& g, const std::vector<char>& src) {
  std::vector<double> d(g.size(), std::numeric_limits<double>::infinity());
  std::deque<std::size_t> q;
  for (std::size_t c = 0; c < g.size(); ++c)
    if (src[c]) {
      d[c] = 0;
      q.push_back(c);
    }
  while (!q.empty()) {
    const auto c = q.front();
    q.pop_front();
    for (auto e : g.neighbors(c))
      if (d[e] > d[c] + 1) {
        d[e] = d[c] + 1;
        q.push_back(e);
      }
  }
  return d;
}

}  // namespace detail

inline CellGrid darp_grid(const RectMap& map, double r_min) {
  if (!(r_min > 0)) throw ConfigError("sensing radius must be positive");
  const double side = std::sqrt(2.0) * r_min;
  return {map.rect, cells_along(map.width(), side), cells_along(map.height(), side)};
}

/// Equitable connected partition of the grid cells among `n` robots.
inline DarpPartition darp_partition(const CellGrid& g, std::size_t n, const DarpOptions& opt = {}) {
  if (n == 0) throw ConfigError("planner needs at least one robot");
  DarpPartition p{g, std::vector<std::size_t>(g.size(), 0), {}, 0, false};
  const std::size_t N = g.size();

  // Boustrophedon row-major striping seeds the start cells.
  std::vector<std::size_t> snake;
  for (std::size_t j = 0; j < g.ny; ++j)
    for (std::size_t t = 0; t < g.nx; ++t) snake.push_back(g.index(j % 2 == 0 ? t : g.nx - 1 - t, j));
  if (n >= N) {
    for (std::size_t c = 0; c < N; ++c) {
      p.owner[snake[c]] = c;
      p.start.push_back(snake[c]);
    }
    for (std::size_t r = N; r < n; ++r) p.start.push_back(SIZE_MAX);
    p.converged = true;
    return p;
  }
  for (std::size_t r = 0; r < n; ++r) {
    const auto lo = r * N / n, hi = (r + 1) * N / n;
    for (auto c = lo; c < hi; ++c) p.owner[snake[c]] = r;
    p.start.push_back(snake[(lo + hi - 1) / 2]);
  }
  if (n == 1) {
    p.converged = true;
    return p;
  }

  // Weighted-distance assignment with per-robot scale factors.
  const double fair = static_cast<double>(N) / static_cast<double>(n);
  std::vector<double> m(n, 1.0);
  std::vector<std::vector<double>> conn(n, std::vector<double>(N, 1.0));
  std::vector<std::vector<double>> d0(n, std::vector<double>(N));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < N; ++c) d0[r][c] = dist(g.center(c), g.center(p.start[r])) + 1e-9;
  for (; p.sweeps < opt.assignment_sweeps && p.sweeps < opt.max_sweeps; ++p.sweeps) {
    for (std::size_t c = 0; c < N; ++c) {
      std::size_t best = 0;
      double best_e = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < n; ++r) {
        const double e = m[r] * conn[r][c] * d0[r][c];
        if (e < best_e) {
          best_e = e;
          best = r;
        }
      }
      p.owner[c] = best;
    }
    for (std::size_t r = 0; r < n; ++r) p.owner[p.start[r]] = r;
    if (detail::darp_done(g, p.owner, p.start)) {
      p.converged = true;
      return p;
    }
    const auto k = detail::region_counts(p.owner, n);
    for (std::size_t r = 0; r < n; ++r) {
      m[r] = std::max(1e-3, m[r] + 0.02 * (static_cast<double>(k[r]) - fair) / fair);
      const auto main = detail::region_reach(g, p.owner, r, p.start[r]);
      std::vector<char> frag(N, 0);
      bool split = false;
      for (std::size_t c = 0; c < N; ++c)
        if (p.owner[c] == r && !main[c]) frag[c] = 1, split = true;
      if (!split) {
        std::fill(conn[r].begin(), conn[r].end(), 1.0);
        continue;
      }
      const auto dm = detail::grid_distance(g, main), df = detail::grid_distance(g, frag);
      for (std::size_t c = 0; c < N; ++c) conn[r][c] = 1.0 + 0.1 * (dm[c] - df[c]) / (dm[c] + df[c] + 1.0);
    }
  }

  // Repair connectivity, then balance by moving boundary cells.
  detail::repair_connectivity(g, p.owner, p.start);
  for (; p.sweeps < opt.max_sweeps; ++p.sweeps) {
    if (detail::darp_done(g, p.owner, p.start)) {
      p.converged = true;
      return p;
    }
    if (!detail::transfer_chain(g, p.owner, p.start)) break;
  }
  p.converged = detail::darp_done(g, p.owner, p.start);
  return p;
}

/// Equal-width strips over the grid; used when DARP does not converge.
inline DarpPartition strip_fallback(const CellGrid& g, const RectMap& map, std::size_t n) {
  DarpPartition p{g, std::vector<std::size_t>(g.size(), 0), std::vector<std::size_t>(n, SIZE_MAX), 0, false};
  const auto strips = strip_partition(map, std::vector<double>(n, 1.0));
  for (std::size_t c = 0; c < g.size(); ++c) {
    const Vec2 x = g.center(c);
    for (std::size_t r = 0; r < n; ++r)
      if (strips[r].contains(x, 0)) {
        p.owner[c] = r;
        break;
      }
    if (p.start[p.owner[c]] == SIZE_MAX) p.start[p.owner[c]] = c;
  }
  return p;
}

/// Spanning-tree coverage route of robot r's region: the closed walk around a
/// BFS tree of the region cells, through the centers of the 2x2 subcells.
inline WaypointSequence stc_route(const DarpPartition& p, std::size_t r) {
  const CellGrid& g = p.grid;
  if (r >= p.start.size() || p.start[r] == SIZE_MAX) return {};
  std::vector<std::size_t> parent(g.size(), SIZE_MAX);
  std::vector<char> in(g.size(), 0);
  std::deque<std::size_t> q{p.start[r]};
  in[p.start[r]] = 1;
  std::size_t cells = 0;
  while (!q.empty()) {
    const auto c = q.front();
    q.pop_front();
    ++cells;
    for (auto d : g.neighbors(c))
      if (!in[d] && p.owner[d] == r) {
        in[d] = 1;
        parent[d] = c;
        q.push_back(d);
      }
  }
  auto tree = [&](std::size_t a, std::size_t b) { return parent[a] == b || parent[b] == a; };
  const std::size_t sw = 2 * g.nx;
  auto sub = [&](std::size_t sx, std::size_t sy) { return sy * sw + sx; };
  std::vector<std::vector<std::size_t>> adj(4 * g.size());
  auto link = [&](std::size_t a, std::size_t b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (!in[c]) continue;
    const auto i = g.col(c), j = g.row(c);
    const auto x0 = 2 * i, x1 = 2 * i + 1, y0 = 2 * j, y1 = 2 * j + 1;
    if (i + 1 < g.nx && in[g.index(i + 1, j)] && tree(c, g.index(i + 1, j))) {
      link(sub(x1, y0), sub(x1 + 1, y0));
      link(sub(x1, y1), sub(x1 + 1, y1));
    } else {
      link(sub(x1, y0), sub(x1, y1));
    }
    if (!(i > 0 && in[g.index(i - 1, j)] && tree(c, g.index(i - 1, j)))) link(sub(x0, y0), sub(x0, y1));
    if (j + 1 < g.ny && in[g.index(i, j + 1)] && tree(c, g.index(i, j + 1))) {
      link(sub(x0, y1), sub(x0, y1 + 1));
      link(sub(x1, y1), sub(x1, y1 + 1));
    } else {
      link(sub(x0, y1), sub(x1, y1));
    }
    if (!(j > 0 && in[g.index(i, j - 1)] && tree(c, g.index(i, j - 1)))) link(sub(x0, y0), sub(x1, y0));
  }
  const double hw = g.cell_w() / 2, hh = g.cell_h() / 2;
  auto center = [&](std::size_t s) {
    return Vec2{g.area.x0 + (static_cast<double>(s % sw) + 0.5) * hw, g.area.y0 + (static_cast<double>(s / sw) + 0.5) * hh};
  };
  const std::size_t first = sub(2 * g.col(p.start[r]), 2 * g.row(p.start[r]));
  WaypointSequence route{center(first)};
  std::size_t prev = first, cur = adj[first].front();
  while (cur != first && route.size() <= 4 * cells) {
    route.push_back(center(cur));
    const auto nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    prev = cur;
    cur = nxt;
  }
  return route;
}

inline WaypointCollection darp_plan(const std::vector<PlannerRobot>& robots, const RectMap& map,
                                    const DarpOptions& opt = {}) {
  if (robots.empty()) throw ConfigError("planner needs at least one robot");
  double r_min = std::numeric_limits<double>::infinity();
  for (const auto& r : robots) r_min = std::min(r_min, r.r_sensing);
  const auto g = darp_grid(map, r_min);
  auto part = darp_partition(g, robots.size(), opt);
  WaypointCollection wc{"DARP", map.id, {}, false};
  if (!part.converged) {
    part = strip_fallback(g, map, robots.size());
    wc.fallback = true;
  }
  for (std::size_t r = 0; r < robots.size(); ++r) wc.robots.push_back(stc_route(part, r));
  return wc;
}

// ---------------------------------------------------------------------------
// MRTA-lite

struct SweepOptions {
  double row_overlap = std::sqrt(0.5);
};

inline double row_pitch(double r_sensing, const SweepOptions& opt = {}) {
  const double pitch = 2.0 * r_sensing * std::cos(std::asin(std::min(1.0, opt.row_overlap)));
  if (!(pitch > 1e-9 * r_sensing)) throw ConfigError("row overlap leaves zero row pitch");
  return pitch;
}

/// Boustrophedon rows parallel to the strip's longer side.
inline WaypointSequence sweep_route(const Rect& strip, double r_sensing, const SweepOptions& opt = {}) {
  if (strip.w <= 0 || strip.h <= 0) return {};
  if (!(r_sensing > 0)) throw ConfigError("sensing radius must be positive");
  const double pitch = row_pitch(r_sensing, opt);
  const bool rows_along_x = strip.w >= strip.h;
  const double len = rows_along_x ? strip.w : strip.h, across = rows_along_x ? strip.h : strip.w;
  const auto rows = cells_along(across, pitch);
  const double spacing = across / static_cast<double>(rows);
  const double half = spacing / 2;
  const double inset = std::min({len / 2, half, std::sqrt(std::max(0.0, r_sensing * r_sensing - half * half))});
  WaypointSequence seq;
  auto put = [&](double along, double off) {
    const Vec2 p = rows_along_x ? Vec2{strip.x0 + along, strip.y0 + off} : Vec2{strip.x0 + off, strip.y0 + along};
    if (seq.empty() || !(seq.back() == p)) seq.push_back(p);
  };
  for (std::size_t k = 0; k < rows; ++k) {
    const double off = (static_cast<double>(k) + 0.5) * spacing;
    if (k % 2 == 0) {
      put(inset, off);
      put(len - inset, off);
    } else {
      put(len - inset, off);
      put(inset, off);
    }
  }
  return seq;
}

inline WaypointCollection mrta_lite_plan(const std::vector<PlannerRobot>& robots, const RectMap& map,
                                         const SweepOptions& opt = {}) {
  if (robots.empty()) throw ConfigError("planner needs at least one robot");
  WaypointCollection wc{"MRTA_LITE", map.id, {}, false};
  const auto strips = strip_partition(map, sweep_weights(robots));
  for (std::size_t i = 0; i < robots.size(); ++i) wc.robots.push_back(sweep_route(strips[i], robots[i].r_sensing, opt));
  return wc;
}

inline WaypointCollection plan(PlannerKind kind, const std::vector<PlannerRobot>& robots, const RectMap& map) {
  switch (kind) {
    case PlannerKind::AGD: return agd_plan(robots, map);
    case PlannerKind::DARP: return darp_plan(robots, map);
    case PlannerKind::MRTA_LITE: return mrta_lite_plan(robots, map);
  }
  throw ConfigError("unknown planner");
}

inline WaypointCollection plan(PlannerKind kind, const Fleet& fleet, const RectMap& map) {
  return plan(kind, planner_robots(fleet), map);
}

// ---------------------------------------------------------------------------
// Waypoint order

inline bool is_subsequence(const WaypointSequence& a, const WaypointSequence& b, double tol = 1e-9) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < b.size() && i < a.size(); ++j)
    if (dist(a[i], b[j]) <= tol) ++i;
  return i == a.size();
}

/// True iff the robots of `a` map injectively to robots of `b` whose sequences contain theirs in order.
inline bool waypoint_leq(const WaypointCollection& a, const WaypointCollection& b) {
  if (a.robots.size() > b.robots.size()) return false;
  std::vector<std::vector<std::size_t>> adj(a.robots.size());
  for (std::size_t i = 0; i < a.robots.size(); ++i)
    for (std::size_t j = 0; j < b.robots.size(); ++j)
      if (is_subsequence(a.robots[i], b.robots[j])) adj[i].push_back(j);
  return detail::max_bipartite_matching(adj, b.robots.size()) == a.robots.size();
}

inline nlohmann::json to_json(const WaypointCollection& wc) {
  nlohmann::json w = nlohmann::json::object();
  for (std::size_t i = 0; i < wc.robots.size(); ++i) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : wc.robots[i]) pts.push_back({p.x, p.y});
    w[std::to_string(i)] = pts;
  }
  return {{"planner", wc.planner}, {"map_id", wc.map_id}, {"fallback", wc.fallback}, {"waypoints", w}};
}

inline WaypointCollection waypoints_from_json(const nlohmann::json& j) {
  WaypointCollection wc;
  wc.planner = j.at("planner").get<std::string>();
  wc.map_id = j.at("map_id").get<std::string>();
  wc.fallback = j.value("fallback", false);
  const auto& w = j.at("waypoints");
  wc.robots.resize(w.size());
  for (auto it = w.begin(); it != w.end(); ++it) {
    const auto idx = std::stoul(it.key());
    if (idx >= wc.robots.size()) throw ConfigError("waypoint robot index " + it.key() + " out of range");
    for (const auto& p : it.value()) wc.robots[idx].push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return wc;
}

}  // namespace codesign
