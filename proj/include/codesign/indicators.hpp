#pragma once

// Front quality indicators on all-minimize objective vectors: hypervolume,
// GD+ and IGD+, computed after normalizing every compared front to [0,1]^k.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <fmt/format.h>
#include "json.hpp"

#include "codesign/errors.hpp"
#include "codesign/order.hpp"

namespace codesign {

struct NormalizationBounds {
  std::vector<double> lo, hi;
};

/// Per-dimension min and max over the union of `fronts`.
inline NormalizationBounds normalization_bounds(const std::vector<std::vector<Point>>& fronts) {
  NormalizationBounds b;
  for (const auto& f : fronts)
    for (const auto& p : f) {
      if (b.lo.empty()) {
        b.lo = b.hi = p;
        continue;
      }
      if (p.size() != b.lo.size()) throw ShapeError("fronts mix objective arities");
      for (std::size_t i = 0; i < p.size(); ++i) {
        b.lo[i] = std::min(b.lo[i], p[i]);
        b.hi[i] = std::max(b.hi[i], p[i]);
      }
    }
  return b;
}

/// Maps into [0,1]^k; a dimension with no spread maps to 0.
inline std::vector<Point> normalize(const std::vector<Point>& front, const NormalizationBounds& b) {
  std::vector<Point> out;
  for (const auto& p : front) {
    if (p.size() != b.lo.size()) throw ShapeError("point arity does not match the normalization bounds");
    Point q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double span = b.hi[i] - b.lo[i];
      q[i] = span > 0 ? std::clamp((p[i] - b.lo[i]) / span, 0.0, 1.0) : 0.0;
    }
    out.push_back(std::move(q));
  }
  return out;
}

namespace detail {

// Slices along the last coordinate and recurses on the remaining ones.
inline double hv_slice(std::vector<Point> pts, const Point& ref, std::size_t k) {
  if (pts.empty()) return 0;
  if (k == 1) {
    double best = ref[0];
    for (const auto& p : pts) best = std::min(best, p[0]);
    return ref[0] - best;
  }
  const std::size_t d = k - 1;
  std::sort(pts.begin(), pts.end(), [d](const Point& a, const Point& b) { return a[d] < b[d]; });
  double vol = 0;
  std::vector<Point> active;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    active.push_back(pts[i]);
    const double next = i + 1 < pts.size() ? pts[i + 1][d] : ref[d];
    const double depth = next - pts[i][d];
    if (depth > 0) vol += depth * hv_slice(active, ref, d);
  }
  return vol;
}

}  // namespace detail

/// Measure of the union of boxes [p, ref].
inline double hypervolume(const std::vector<Point>& front, const Point& ref) {
  for (const auto& p : front) {
    if (p.size() != ref.size()) throw ShapeError("point arity does not match the reference point");
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] > ref[i]) throw ConfigError("front point lies beyond the reference point");
  }
  if (ref.empty()) return 0;
  return detail::hv_slice(front, ref, ref.size());
}

enum class Aggregate { Max, Mean };

namespace detail {

/// ||max(a - z, 0)||: how far `a` falls short of `z`.
inline double d_plus(const Point& a, const Point& z) {
  if (a.size() != z.size()) throw ShapeError("point arities differ");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::max(a[i] - z[i], 0.0);
    s += d * d;
  }
  return std::sqrt(s);
}

inline double aggregate(const std::vector<double>& v, Aggregate how) {
  if (how == Aggregate::Max) return *std::max_element(v.begin(), v.end());
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace detail

/// Over candidate points a: distance to the nearest reference point z, measured as d+(a, z).
inline double gd_plus(const std::vector<Point>& front, const std::vector<Point>& reference,
                      Aggregate how = Aggregate::Max) {
  if (front.empty() || reference.empty()) throw ConfigError("GD+ needs two nonempty fronts");
  std::vector<double> d;
  for (const auto& a : front) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& z : reference) best = std::min(best, detail::d_plus(a, z));
    d.push_back(best);
  }
  return detail::aggregate(d, how);
}

/// Over reference points z: distance to the nearest candidate point a, measured as d+(a, z).
inline double igd_plus(const std::vector<Point>& front, const std::vector<Point>& reference,
                       Aggregate how = Aggregate::Max) {
  if (front.empty() || reference.empty()) throw ConfigError("IGD+ needs two nonempty fronts");
  std::vector<double> d;
  for (const auto& z : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : front) best = std::min(best, detail::d_plus(a, z));
    d.push_back(best);
  }
  return detail::aggregate(d, how);
}

struct IndicatorReport {
  std::string front;
  std::string reference;
  double hv = 0;
  double gd_plus = 0;
  double igd_plus = 0;
};

struct IndicatorComparison {
  NormalizationBounds bounds;
  std::vector<IndicatorReport> reports;
};

/// Normalizes all fronts together, then scores each against `fronts[reference]` with ref point (1,...,1).
inline IndicatorComparison compare_fronts(const std::vector<std::string>& names,
                                          const std::vector<std::vector<Point>>& fronts, std::size_t reference,
                                          Aggregate how = Aggregate::Max) {
  if (names.size() != fronts.size()) throw ShapeError("one name per front expected");
  if (reference >= fronts.size()) throw ConfigError("reference front index out of range");
  for (std::size_t i = 0; i < fronts.size(); ++i)
    if (fronts[i].empty()) throw ConfigError("front '" + names[i] + "' is empty");
  IndicatorComparison out;
  out.bounds = normalization_bounds(fronts);
  const auto ref_front = normalize(fronts[reference], out.bounds);
  const Point ref_point(out.bounds.lo.size(), 1.0);
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    const auto f = normalize(fronts[i], out.bounds);
    out.reports.push_back(
        {names[i], names[reference], hypervolume(f, ref_point), gd_plus(f, ref_front, how), igd_plus(f, ref_front, how)});
  }
  return out;
}

inline nlohmann::json to_json(const IndicatorComparison& c) {
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& r : c.reports)
    reps.push_back({{"front", r.front}, {"reference", r.reference}, {"hv", r.hv}, {"gd_plus", r.gd_plus},
                    {"igd_plus", r.igd_plus}});
  return {{"bounds", {{"min", c.bounds.lo}, {"max", c.bounds.hi}}}, {"reports", reps}};
}

/// True when every point of `b` is weakly dominated by some point of `a` (all-minimize).
inline bool front_weakly_dominates(const std::vector<Point>& a, const std::vector<Point>& b) {
  for (const auto& q : b) {
    bool covered = false;
    for (const auto& p : a) {
      bool leq = p.size() == q.size();
      for (std::size_t i = 0; leq && i < p.size(); ++i) leq = p[i] <= q[i];
      if (leq) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace codesign
