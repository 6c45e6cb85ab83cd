#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "codesign/errors.hpp"

namespace codesign {

struct Vec2 {
  double x = 0;
  double y = 0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

/// Axis-aligned rectangle [x0, x0+w] x [y0, y0+h].
struct Rect {
  double x0 = 0, y0 = 0, w = 0, h = 0;

  double x1() const { return x0 + w; }
  double y1() const { return y0 + h; }
  double area() const { return w * h; }
  Vec2 center() const { return {x0 + 0.5 * w, y0 + 0.5 * h}; }
  bool contains(Vec2 p, double tol = 1e-9) const {
    return p.x >= x0 - tol && p.x <= x1() + tol && p.y >= y0 - tol && p.y <= y1() + tol;
  }
  bool contains(const Rect& r, double tol = 1e-9) const {
    return r.x0 >= x0 - tol && r.y0 >= y0 - tol && r.x1() <= x1() + tol && r.y1() <= y1() + tol;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct RectMap {
  std::string id;
  Rect rect;

  RectMap() = default;
  RectMap(std::string id_, double width, double height, Vec2 origin = {}) : id(std::move(id_)) {
    if (!(width > 0) || !(height > 0)) throw ConfigError("map '" + id + "' needs positive width and height");
    rect = {origin.x, origin.y, width, height};
  }

  double width() const { return rect.w; }
  double height() const { return rect.h; }
};

/// Number of equal parts of length at most `cell` that tile `len`.
inline std::size_t cells_along(double len, double cell) {
  if (!(cell > 0)) throw ConfigError("cell size must be positive");
  const double n = std::ceil(len / cell - 1e-9);
  return n < 1 ? 1 : static_cast<std::size_t>(n);
}

}  // namespace codesign
