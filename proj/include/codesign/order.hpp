#pragma once

// Partial-order algebra shared by every layer of the co-design engine.
//
// All comparisons are expressed in *preference* form: `a LessEq b` means a is
// at least as good as b in every coordinate (smaller for minimized
// coordinates, larger for maximized ones). Minimal elements under this order
// are the Pareto-optimal ones, so one antichain type serves both the
// minimal-resource and the maximal-functionality queries.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "codesign/errors.hpp"

namespace codesign {

enum class Ordering { LessEq, GreaterEq, Equal, Incomparable };

enum class Direction { Minimize, Maximize, Categorical };

using Point = std::vector<double>;

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::LessEq: return "LessEq";
    case Ordering::GreaterEq: return "GreaterEq";
    case Ordering::Equal: return "Equal";
    case Ordering::Incomparable: return "Incomparable";
  }
  return "?";
}

/// Swaps the roles of the two operands.
inline Ordering flip(Ordering o) {
  if (o == Ordering::LessEq) return Ordering::GreaterEq;
  if (o == Ordering::GreaterEq) return Ordering::LessEq;
  return o;
}

inline bool is_leq(Ordering o) { return o == Ordering::LessEq || o == Ordering::Equal; }
inline bool is_geq(Ordering o) { return o == Ordering::GreaterEq || o == Ordering::Equal; }

/// Compares one coordinate. `eps` widens only the Equal band.
inline Ordering compare_scalar(double a, double b, Direction dir, double eps = 0.0) {
  if (dir == Direction::Categorical) return a == b ? Ordering::Equal : Ordering::Incomparable;
  if (std::abs(a - b) <= eps) return Ordering::Equal;
  const bool a_better = dir == Direction::Minimize ? a < b : a > b;
  return a_better ? Ordering::LessEq : Ordering::GreaterEq;
}

/// Folds per-coordinate outcomes into a product outcome.
inline Ordering combine(Ordering acc, Ordering next) {
  if (acc == Ordering::Incomparable || next == Ordering::Incomparable) return Ordering::Incomparable;
  if (acc == Ordering::Equal) return next;
  if (next == Ordering::Equal) return acc;
  return acc == next ? acc : Ordering::Incomparable;
}

/// Componentwise order over fixed-arity real vectors.
class ProductOrder {
public:
  ProductOrder() = default;
  explicit ProductOrder(std::vector<Direction> dirs, double eps = 0.0)
      : dirs_(std::move(dirs)), eps_(eps) {}

  static ProductOrder all(std::size_t arity, Direction d, double eps = 0.0) {
    return ProductOrder(std::vector<Direction>(arity, d), eps);
  }

  std::size_t arity() const { return dirs_.size(); }
  const std::vector<Direction>& directions() const { return dirs_; }
  double tolerance() const { return eps_; }

  Ordering compare(std::span<const double> a, std::span<const double> b) const {
    if (a.size() != dirs_.size() || b.size() != dirs_.size()) {
      throw ShapeError("product order of arity " + std::to_string(dirs_.size()) +
                       " cannot compare points of arity " + std::to_string(a.size()) + " and " +
                       std::to_string(b.size()));
    }
    Ordering acc = Ordering::Equal;
    for (std::size_t i = 0; i < dirs_.size(); ++i) {
      acc = combine(acc, compare_scalar(a[i], b[i], dirs_[i], eps_));
      if (acc == Ordering::Incomparable) break;
    }
    return acc;
  }

  bool leq(std::span<const double> a, std::span<const double> b) const {
    return is_leq(compare(a, b));
  }

private:
  std::vector<Direction> dirs_;
  double eps_ = 0.0;
};

inline Ordering compare_product(std::span<const double> a, std::span<const double> b,
                                std::span<const Direction> dirs, double eps = 0.0) {
  return ProductOrder(std::vector<Direction>(dirs.begin(), dirs.end()), eps).compare(a, b);
}

/// Set of mutually incomparable elements, kept minimal under `Order`.
///
/// `Order` must expose `Ordering compare(const T&, const T&) const`. `Less` is a
/// strict total order used for the stored sequence and to decide which of two
/// Equal elements survives, which keeps merge results independent of
/// insertion order.
template <class T, class Order = ProductOrder, class Less = std::less<T>>
class Antichain {
public:
  Antichain() = default;
  explicit Antichain(Order order, Less less = {}) : order_(std::move(order)), less_(std::move(less)) {}

  const std::vector<T>& elements() const { return elems_; }
  const Order& order() const { return order_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  /// Adds `x` unless some element is at least as good; evicts elements `x` beats.
  /// Returns true when `x` ends up in the set.
  bool insert(T x) {
    for (auto it = elems_.begin(); it != elems_.end(); ++it) {
      const Ordering o = order_.compare(*it, x);
      if (o == Ordering::LessEq) return false;
      if (o == Ordering::Equal) {
        if (!less_(x, *it)) return false;
        elems_.erase(it);
        break;
      }
    }
    std::erase_if(elems_, [&](const T& e) { return order_.compare(x, e) == Ordering::LessEq; });
    auto pos = std::lower_bound(elems_.begin(), elems_.end(), x, less_);
    elems_.insert(pos, std::move(x));
    return true;
  }

  void merge(const Antichain& other) {
    for (const auto& e : other.elems_) insert(e);
  }

  /// True iff some element is at least as good as `x`.
  bool dominates(const T& x) const {
    return std::any_of(elems_.begin(), elems_.end(),
                       [&](const T& e) { return is_leq(order_.compare(e, x)); });
  }

  friend bool operator==(const Antichain& a, const Antichain& b) { return a.elems_ == b.elems_; }

private:
  Order order_{};
  Less less_{};
  std::vector<T> elems_;
};

using PointAntichain = Antichain<Point>;

template <class T, class Order, class Less>
Antichain<T, Order, Less> antichain_insert(Antichain<T, Order, Less> ac, T x) {
  ac.insert(std::move(x));
  return ac;
}

template <class T, class Order, class Less>
Antichain<T, Order, Less> antichain_merge(Antichain<T, Order, Less> a,
                                          const Antichain<T, Order, Less>& b) {
  a.merge(b);
  return a;
}

/// Upward closure of a minimal frontier.
template <class T, class Order = ProductOrder, class Less = std::less<T>>
class UpperSet {
public:
  UpperSet() = default;
  explicit UpperSet(Antichain<T, Order, Less> frontier) : frontier_(std::move(frontier)) {}

  const Antichain<T, Order, Less>& frontier() const { return frontier_; }
  bool contains(const T& x) const { return frontier_.dominates(x); }

  /// `*this` sits above `other`: every point of this set is also in `other`.
  bool within(const UpperSet& other) const {
    return std::all_of(frontier_.begin(), frontier_.end(),
                       [&](const T& f) { return other.contains(f); });
  }

private:
  Antichain<T, Order, Less> frontier_;
};

using PointUpperSet = UpperSet<Point>;

template <class T, class Order, class Less>
bool upper_membership(const UpperSet<T, Order, Less>& u, const T& x) {
  return u.contains(x);
}

}  // namespace codesign
