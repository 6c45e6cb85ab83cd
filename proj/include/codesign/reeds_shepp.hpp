#pragma once

// Reeds-Shepp shortest paths for a car with minimum turning radius.
// Formulas follow the usual normalized construction (unit radius, start at the
// origin facing +x) with time-flip, reflection and backwards symmetries.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "codesign/errors.hpp"

namespace codesign {

struct Pose {
  double x = 0, y = 0, theta = 0;
};

enum class SegmentKind { Left, Right, Straight };

struct RsSegment {
  SegmentKind kind = SegmentKind::Straight;
  double length = 0;  // metres along the path; negative means reversing
};

struct RsPath {
  std::vector<RsSegment> segments;
  std::string word;  // e.g. "LSL"

  double length() const {
    double l = 0;
    for (const auto& s : segments) l += std::abs(s.length);
    return l;
  }
};

/// Pose after travelling `s` metres (signed) along one segment of radius `r`.
inline Pose advance(const Pose& p, SegmentKind k, double s, double r) {
  switch (k) {
    case SegmentKind::Straight:
      return {p.x + s * std::cos(p.theta), p.y + s * std::sin(p.theta), p.theta};
    case SegmentKind::Left: {
      const double phi = s / r;
      return {p.x + r * (std::sin(p.theta + phi) - std::sin(p.theta)),
              p.y + r * (std::cos(p.theta) - std::cos(p.theta + phi)), p.theta + phi};
    }
    case SegmentKind::Right: {
      const double phi = s / r;
      return {p.x + r * (std::sin(p.theta) - std::sin(p.theta - phi)),
              p.y + r * (std::cos(p.theta - phi) - std::cos(p.theta)), p.theta - phi};
    }
  }
  return p;
}

inline Pose path_end(const Pose& start, const RsPath& path, double r) {
  Pose p = start;
  for (const auto& s : path.segments) p = advance(p, s.kind, s.length, r);
  return p;
}

namespace detail::rs {

constexpr double kPi = std::numbers::pi;
constexpr double kZero = 10 * std::numeric_limits<double>::epsilon();

inline double mod2pi(double x) {
  double v = std::fmod(x, 2 * kPi);
  if (v < -kPi) v += 2 * kPi;
  else if (v > kPi) v -= 2 * kPi;
  return v;
}

inline void polar(double x, double y, double& r, double& theta) {
  r = std::sqrt(x * x + y * y);
  theta = std::atan2(y, x);
}

inline void tau_omega(double u, double v, double xi, double eta, double phi, double& tau, double& omega) {
  const double delta = mod2pi(u - v);
  const double a = std::sin(u) - std::sin(delta);
  const double b = std::cos(u) - std::cos(delta) - 1.;
  const double t1 = std::atan2(eta * a - xi * b, xi * a + eta * b);
  const double t2 = 2. * (std::cos(delta) - std::cos(v) - std::cos(u)) + 3;
  tau = (t2 < 0) ? mod2pi(t1 + kPi) : mod2pi(t1);
  omega = mod2pi(tau - u + v - phi);
}

inline bool LpSpLp(double x, double y, double phi, double& t, double& u, double& v) {
  polar(x - std::sin(phi), y - 1. + std::cos(phi), u, t);
  if (t >= -kZero) {
    v = mod2pi(phi - t);
    if (v >= -kZero) return true;
  }
  return false;
}

inline bool LpSpRp(double x, double y, double phi, double& t, double& u, double& v) {
  double t1, u1;
  polar(x + std::sin(phi), y - 1. - std::cos(phi), u1, t1);
  u1 = u1 * u1;
  if (u1 >= 4.) {
    u = std::sqrt(u1 - 4.);
    const double theta = std::atan2(2., u);
    t = mod2pi(t1 + theta);
    v = mod2pi(t - phi);
    return t >= -kZero && v >= -kZero;
  }
  return false;
}

inline bool LpRmL(double x, double y, double phi, double& t, double& u, double& v) {
  double u1, theta;
  polar(x - std::sin(phi), y - 1. + std::cos(phi), u1, theta);
  if (u1 <= 4.) {
    u = -2. * std::asin(.25 * u1);
    t = mod2pi(theta + .5 * u + kPi);
    v = mod2pi(phi - t + u);
    return t >= -kZero && u <= kZero;
  }
  return false;
}

inline bool LpRupLumRm(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x + std::sin(phi), eta = y - 1. - std::cos(phi);
  const double rho = .25 * (2. + std::sqrt(xi * xi + eta * eta));
  if (rho <= 1.) {
    u = std::acos(rho);
    tau_omega(u, -u, xi, eta, phi, t, v);
    return t >= -kZero && v <= kZero;
  }
  return false;
}

inline bool LpRumLumRp(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x + std::sin(phi), eta = y - 1. - std::cos(phi);
  const double rho = (20. - xi * xi - eta * eta) / 16.;
  if (rho >= 0 && rho <= 1) {
    u = -std::acos(rho);
    if (u >= -.5 * kPi) {
      tau_omega(u, u, xi, eta, phi, t, v);
      return t >= -kZero && v >= -kZero;
    }
  }
  return false;
}

inline bool LpRmSmLm(double x, double y, double phi, double& t, double& u, double& v) {
  double rho, theta;
  polar(x - std::sin(phi), y - 1. + std::cos(phi), rho, theta);
  if (rho >= 2.) {
    const double r = std::sqrt(rho * rho - 4.);
    u = 2. - r;
    t = mod2pi(theta + std::atan2(r, -2.));
    v = mod2pi(phi - .5 * kPi - t);
    return t >= -kZero && u <= kZero && v <= kZero;
  }
  return false;
}

inline bool LpRmSmRm(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x + std::sin(phi), eta = y - 1. - std::cos(phi);
  double rho, theta;
  polar(-eta, xi, rho, theta);
  if (rho >= 2.) {
    t = theta;
    u = 2. - rho;
    v = mod2pi(t + .5 * kPi - phi);
    return t >= -kZero && u <= kZero && v <= kZero;
  }
  return false;
}

inline bool LpRmSLmRp(double x, double y, double phi, double& t, double& u, double& v) {
  const double xi = x + std::sin(phi), eta = y - 1. - std::cos(phi);
  double rho, theta;
  polar(xi, eta, rho, theta);
  if (rho >= 2.) {
    u = 4. - std::sqrt(rho * rho - 4.);
    if (u <= kZero) {
      t = mod2pi(std::atan2((4 - u) * xi - 2 * eta, -2 * xi + (u - 4) * eta));
      v = mod2pi(t - phi);
      return t >= -kZero && v >= -kZero;
    }
  }
  return false;
}

using Formula = bool (*)(double, double, double, double&, double&, double&);

struct Word {
  std::string letters;      // L, R or S per segment
  std::vector<double> len;  // normalized signed lengths
};

inline SegmentKind kind_of(char c) {
  return c == 'L' ? SegmentKind::Left : c == 'R' ? SegmentKind::Right : SegmentKind::Straight;
}

inline std::string swap_lr(std::string w) {
  for (auto& c : w) c = c == 'L' ? 'R' : c == 'R' ? 'L' : c;
  return w;
}

// Builds the segment lengths of a word from (t, u, v) for each family layout.
enum class Layout { TUV, TUmUV, TUUV, THalfUV, VUHalfT, THalfUHalfV, VUT };

inline std::vector<double> lengths(Layout l, double t, double u, double v, double sgn) {
  const double h = .5 * kPi;
  switch (l) {
    case Layout::TUV: return {sgn * t, sgn * u, sgn * v};
    case Layout::VUT: return {sgn * v, sgn * u, sgn * t};
    case Layout::TUmUV: return {sgn * t, sgn * u, -sgn * u, sgn * v};
    case Layout::TUUV: return {sgn * t, sgn * u, sgn * u, sgn * v};
    case Layout::THalfUV: return {sgn * t, -sgn * h, sgn * u, sgn * v};
    case Layout::VUHalfT: return {sgn * v, sgn * u, -sgn * h, sgn * t};
    case Layout::THalfUHalfV: return {sgn * t, -sgn * h, sgn * u, -sgn * h, sgn * v};
  }
  return {};
}

// Applies the four symmetries (identity, time flip, reflect, both) to one formula.
inline void family(std::vector<Word>& out, Formula f, double x, double y, double phi, const std::string& word,
                   Layout layout) {
  double t, u, v;
  if (f(x, y, phi, t, u, v)) out.push_back({word, lengths(layout, t, u, v, 1)});
  if (f(-x, y, -phi, t, u, v)) out.push_back({word, lengths(layout, t, u, v, -1)});
  if (f(x, -y, -phi, t, u, v)) out.push_back({swap_lr(word), lengths(layout, t, u, v, 1)});
  if (f(-x, -y, phi, t, u, v)) out.push_back({swap_lr(word), lengths(layout, t, u, v, -1)});
}

inline std::vector<Word> all_words(double x, double y, double phi) {
  std::vector<Word> out;
  const double xb = x * std::cos(phi) + y * std::sin(phi), yb = x * std::sin(phi) - y * std::cos(phi);
  // CSC
  family(out, LpSpLp, x, y, phi, "LSL", Layout::TUV);
  family(out, LpSpRp, x, y, phi, "LSR", Layout::TUV);
  // CCC
  family(out, LpRmL, x, y, phi, "LRL", Layout::TUV);
  family(out, LpRmL, xb, yb, phi, "LRL", Layout::VUT);
  // CCCC
  family(out, LpRupLumRm, x, y, phi, "LRLR", Layout::TUmUV);
  family(out, LpRumLumRp, x, y, phi, "LRLR", Layout::TUUV);
  // CCSC
  family(out, LpRmSmLm, x, y, phi, "LRSL", Layout::THalfUV);
  family(out, LpRmSmRm, x, y, phi, "LRSR", Layout::THalfUV);
  family(out, LpRmSmLm, xb, yb, phi, "LSRL", Layout::VUHalfT);
  family(out, LpRmSmRm, xb, yb, phi, "RSRL", Layout::VUHalfT);
  // CCSCC
  family(out, LpRmSLmRp, x, y, phi, "LRSLR", Layout::THalfUHalfV);
  return out;
}

}  // namespace detail::rs

/// Every admissible word between the two poses, scaled to turning radius `r`.
inline std::vector<RsPath> reeds_shepp_candidates(const Pose& q0, const Pose& q1, double r) {
  if (!(r > 0)) throw ConfigError("turning radius must be positive");
  const double dx = q1.x - q0.x, dy = q1.y - q0.y;
  const double c = std::cos(q0.theta), s = std::sin(q0.theta);
  const double x = (c * dx + s * dy) / r, y = (-s * dx + c * dy) / r;
  const double phi = q1.theta - q0.theta;
  std::vector<RsPath> out;
  for (const auto& w : detail::rs::all_words(x, y, phi)) {
    RsPath p;
    p.word = w.letters;
    for (std::size_t i = 0; i < w.letters.size(); ++i)
      p.segments.push_back({detail::rs::kind_of(w.letters[i]), w.len[i] * r});
    out.push_back(std::move(p));
  }
  return out;
}

/// Shortest path; zero-length segments are dropped.
inline RsPath reeds_shepp_path(const Pose& q0, const Pose& q1, double r) {
  const auto cands = reeds_shepp_candidates(q0, q1, r);
  const RsPath* best = nullptr;
  for (const auto& p : cands)
    if (!best || p.length() < best->length() - 1e-12) best = &p;
  RsPath out;
  if (!best) return out;
  out.word = best->word;
  for (const auto& s : best->segments)
    if (std::abs(s.length) > 1e-10 * r) out.segments.push_back(s);
  return out;
}

}  // namespace codesign
