#pragma once

// Monotone design problems with implementations (MDPIs), their composition
// into graphs, and the two dual queries.
//
// Composite queries propagate antichains of partial states through the graph
// in dependency order and prune dominated states at every step. Feedback wires
// are cut open and closed again by an ascending (or, for the dual query,
// descending) fixed-point iteration starting from the loop's bottom (top).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "codesign/errors.hpp"
#include "codesign/order.hpp"

namespace codesign {

struct Implementation {
  std::string name;
  Point provides;
  Point requires_;
};

/// Atomic design problem: a finite catalog of implementations.
class DesignProblem {
public:
  DesignProblem() = default;
  DesignProblem(std::string name, ProductOrder fun_order, ProductOrder res_order,
                std::vector<Implementation> impls = {})
      : name_(std::move(name)), fun_(std::move(fun_order)), res_(std::move(res_order)) {
    for (auto& i : impls) add(std::move(i));
  }

  void add(Implementation impl) {
    if (impl.provides.size() != fun_.arity() || impl.requires_.size() != res_.arity()) {
      throw ShapeError("implementation '" + impl.name + "' of '" + name_ +
                       "' does not match the problem's port arity");
    }
    impls_.push_back(std::move(impl));
  }

  const std::string& name() const { return name_; }
  const ProductOrder& fun_order() const { return fun_; }
  const ProductOrder& res_order() const { return res_; }
  const std::vector<Implementation>& implementations() const { return impls_; }
  std::size_t size() const { return impls_.size(); }

private:
  std::string name_;
  ProductOrder fun_;
  ProductOrder res_;
  std::vector<Implementation> impls_;
};

/// Implementations providing at least `demand` while requiring at most `budget`.
inline std::vector<std::size_t> feasible_set(const DesignProblem& d, const Point& demand,
                                             const Point& budget) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& impl = d.implementations()[i];
    if (d.fun_order().leq(impl.provides, demand) && d.res_order().leq(impl.requires_, budget)) {
      out.push_back(i);
    }
  }
  return out;
}

struct FrontierPoint {
  Point value;
  /// Chosen implementation index per node, in node order.
  std::vector<std::size_t> choice;

  friend bool operator==(const FrontierPoint&, const FrontierPoint&) = default;
};

struct QueryResult {
  std::vector<FrontierPoint> frontier;  // sorted by value
  bool infeasible = true;
  std::size_t iterations = 0;  // fixed-point rounds, 0 for loop-free problems

  PointAntichain as_antichain(const ProductOrder& order) const {
    PointAntichain ac(order);
    for (const auto& p : frontier) ac.insert(p.value);
    return ac;
  }
};

struct SolveOptions {
  std::size_t iteration_cap = 10'000;
};

namespace detail {

struct State {
  Point value;
  std::vector<std::size_t> choice;
};

struct StateOrder {
  ProductOrder order;
  Ordering compare(const State& a, const State& b) const { return order.compare(a.value, b.value); }
};

struct StateLess {
  bool operator()(const State& a, const State& b) const {
    if (a.value != b.value) return a.value < b.value;
    return a.choice < b.choice;
  }
};

using StateFront = Antichain<State, StateOrder, StateLess>;

// Propagation front. A state is dropped only when another state is at least
// as good *and* carries a lexicographically smaller partial choice, so the
// smallest witness of every final point survives pruning.
class PartialFront {
public:
  explicit PartialFront(ProductOrder order) : order_(std::move(order)) {}

  void insert(State x) {
    for (const auto& e : elems_)
      if (e.choice <= x.choice && order_.leq(e.value, x.value)) return;
    std::erase_if(elems_, [&](const State& e) {
      return x.choice < e.choice && order_.leq(x.value, e.value);
    });
    elems_.push_back(std::move(x));
  }

  bool empty() const { return elems_.empty(); }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

private:
  ProductOrder order_;
  std::vector<State> elems_;
};

inline QueryResult to_result(const StateFront& front) {
  QueryResult r;
  for (const auto& s : front) r.frontier.push_back({s.value, s.choice});
  r.infeasible = r.frontier.empty();
  return r;
}

inline bool satisfies(double provided, double demanded, Direction dir, double eps) {
  return is_leq(compare_scalar(provided, demanded, dir, eps));
}

inline double least_demand(Direction d) {
  return d == Direction::Minimize ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
}

}  // namespace detail

struct PortRef {
  std::size_t node = 0;
  std::size_t port = 0;
  friend bool operator==(const PortRef&, const PortRef&) = default;
};

/// A wire feeds a functionality port of `provider` into a resource port of
/// `consumer`; it is satisfied when the consumer requires no more than the
/// provider offers.
struct Wire {
  PortRef provider;
  PortRef consumer;
  bool feedback = false;
};

class CompositeGraph {
public:
  std::size_t add_node(DesignProblem dp) {
    nodes_.push_back(std::move(dp));
    return nodes_.size() - 1;
  }

  void connect(PortRef provider_fun, PortRef consumer_res, bool feedback = false) {
    wires_.push_back({provider_fun, consumer_res, feedback});
  }

  void expose_functionality(PortRef fun) { exposed_fun_.push_back(fun); }
  void expose_resource(PortRef res) { exposed_res_.push_back(res); }

  const std::vector<DesignProblem>& nodes() const { return nodes_; }
  const std::vector<Wire>& wires() const { return wires_; }
  const std::vector<PortRef>& exposed_functionalities() const { return exposed_fun_; }
  const std::vector<PortRef>& exposed_resources() const { return exposed_res_; }

  bool has_feedback() const {
    return std::any_of(wires_.begin(), wires_.end(), [](const Wire& w) { return w.feedback; });
  }

  ProductOrder fun_order() const {
    std::vector<Direction> dirs;
    for (auto p : exposed_fun_) dirs.push_back(fun_dir(p));
    return ProductOrder(dirs, eps());
  }

  ProductOrder res_order() const {
    std::vector<Direction> dirs;
    for (auto p : exposed_res_) dirs.push_back(res_dir(p));
    return ProductOrder(dirs, eps());
  }

  Direction fun_dir(PortRef p) const { return nodes_.at(p.node).fun_order().directions().at(p.port); }
  Direction res_dir(PortRef p) const { return nodes_.at(p.node).res_order().directions().at(p.port); }

  double eps() const {
    double e = 0.0;
    for (const auto& n : nodes_) e = std::max({e, n.fun_order().tolerance(), n.res_order().tolerance()});
    return e;
  }

  std::string describe(const Wire& w) const {
    return nodes_.at(w.provider.node).name() + ".f" + std::to_string(w.provider.port) + " -> " +
           nodes_.at(w.consumer.node).name() + ".r" + std::to_string(w.consumer.port);
  }

  /// Throws ConfigError on dangling ports, direction mismatches or arity errors.
  void validate() const {
    auto check_fun = [&](PortRef p) {
      if (p.node >= nodes_.size() || p.port >= nodes_[p.node].fun_order().arity())
        throw ConfigError("functionality port out of range");
    };
    auto check_res = [&](PortRef p) {
      if (p.node >= nodes_.size() || p.port >= nodes_[p.node].res_order().arity())
        throw ConfigError("resource port out of range");
    };
    std::vector<std::vector<int>> fun_use(nodes_.size()), res_use(nodes_.size());
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      fun_use[n].assign(nodes_[n].fun_order().arity(), 0);
      res_use[n].assign(nodes_[n].res_order().arity(), 0);
    }
    for (const auto& w : wires_) {
      check_fun(w.provider);
      check_res(w.consumer);
      const Direction f = fun_dir(w.provider);
      const Direction r = res_dir(w.consumer);
      const bool ok = (f == Direction::Maximize && r == Direction::Minimize) ||
                      (f == Direction::Minimize && r == Direction::Maximize) ||
                      (f == Direction::Categorical && r == Direction::Categorical && !w.feedback);
      if (!ok) throw ConfigError("wire " + describe(w) + " joins ports of incompatible order");
      ++fun_use[w.provider.node][w.provider.port];
      ++res_use[w.consumer.node][w.consumer.port];
    }
    for (auto p : exposed_fun_) {
      check_fun(p);
      ++fun_use[p.node][p.port];
    }
    for (auto p : exposed_res_) {
      check_res(p);
      ++res_use[p.node][p.port];
    }
    for (std::size_t n = 0; n < nodes_.size(); ++n) {
      for (std::size_t k = 0; k < fun_use[n].size(); ++k)
        if (fun_use[n][k] > 1)
          throw ConfigError(nodes_[n].name() + ".f" + std::to_string(k) + " is used more than once");
      for (std::size_t k = 0; k < res_use[n].size(); ++k)
        if (res_use[n][k] != 1)
          throw ConfigError(nodes_[n].name() + ".r" + std::to_string(k) +
                            " must be wired or exposed exactly once");
    }
  }

  /// Node order in which every non-feedback consumer precedes its provider.
  std::vector<std::size_t> demand_order() const {
    const std::size_t n = nodes_.size();
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& w : wires_) {
      if (w.feedback) continue;
      succ[w.consumer.node].push_back(w.provider.node);
      ++indeg[w.provider.node];
    }
    std::set<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
      if (indeg[i] == 0) ready.insert(i);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
      const std::size_t v = *ready.begin();
      ready.erase(ready.begin());
      order.push_back(v);
      for (auto s : succ[v])
        if (--indeg[s] == 0) ready.insert(s);
    }
    if (order.size() != n) throw ConfigError("graph has a cycle that is not marked as feedback");
    return order;
  }

private:
  std::vector<DesignProblem> nodes_;
  std::vector<Wire> wires_;
  std::vector<PortRef> exposed_fun_;
  std::vector<PortRef> exposed_res_;
};

// ---------------------------------------------------------------------------
// Atomic queries

inline QueryResult fix_fun_min_res(const DesignProblem& d, const Point& demand) {
  if (demand.size() != d.fun_order().arity()) throw ShapeError("demand arity mismatch");
  detail::StateFront front(detail::StateOrder{d.res_order()});
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& impl = d.implementations()[i];
    if (d.fun_order().leq(impl.provides, demand)) front.insert({impl.requires_, {i}});
  }
  return detail::to_result(front);
}

inline QueryResult fix_res_max_fun(const DesignProblem& d, const Point& budget) {
  if (budget.size() != d.res_order().arity()) throw ShapeError("budget arity mismatch");
  detail::StateFront front(detail::StateOrder{d.fun_order()});
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& impl = d.implementations()[i];
    if (d.res_order().leq(impl.requires_, budget)) front.insert({impl.provides, {i}});
  }
  return detail::to_result(front);
}

namespace detail {

// Slot layout of a partial state during minimal-resource propagation:
//   [one slot per non-feedback wire | exposed resources | one slot per feedback wire]
// Wire slots carry the consumer's requirement until the provider consumes it.
inline PartialFront propagate_min_res(const CompositeGraph& g, const Point& demand,
                                    const std::vector<double>& loop_supply) {
  const auto& wires = g.wires();
  const auto& exposed_res = g.exposed_resources();
  const auto& exposed_fun = g.exposed_functionalities();
  const std::size_t n_wires = wires.size();
  const std::size_t res_base = n_wires;
  const std::size_t loop_base = res_base + exposed_res.size();

  std::vector<std::size_t> loop_index(n_wires, 0);
  std::size_t n_loops = 0;
  for (std::size_t w = 0; w < n_wires; ++w)
    if (wires[w].feedback) loop_index[w] = n_loops++;

  std::vector<Direction> dirs(loop_base + n_loops, Direction::Minimize);
  for (std::size_t w = 0; w < n_wires; ++w) {
    const Direction d = g.res_dir(wires[w].consumer);
    if (wires[w].feedback) dirs[loop_base + loop_index[w]] = d;
    else dirs[w] = d;
  }
  for (std::size_t k = 0; k < exposed_res.size(); ++k) dirs[res_base + k] = g.res_dir(exposed_res[k]);
  const ProductOrder order(dirs, g.eps());
  const double eps = g.eps();

  const std::size_t n_nodes = g.nodes().size();
  PartialFront front(order);
  front.insert({Point(dirs.size(), 0.0), std::vector<std::size_t>(n_nodes, SIZE_MAX)});

  for (std::size_t node : g.demand_order()) {
    const auto& dp = g.nodes()[node];
    const auto& fdirs = dp.fun_order().directions();

    struct Need { std::size_t port; std::size_t slot; bool from_state; double fixed; };
    std::vector<Need> needs;
    for (std::size_t w = 0; w < n_wires; ++w) {
      if (wires[w].provider.node != node) continue;
      if (wires[w].feedback)
        needs.push_back({wires[w].provider.port, 0, false, loop_supply[loop_index[w]]});
      else
        needs.push_back({wires[w].provider.port, w, true, 0.0});
    }
    for (std::size_t k = 0; k < exposed_fun.size(); ++k)
      if (exposed_fun[k].node == node) needs.push_back({exposed_fun[k].port, 0, false, demand[k]});

    // Destination slot for each resource port of this node.
    std::vector<std::size_t> dest(dp.res_order().arity(), SIZE_MAX);
    for (std::size_t w = 0; w < n_wires; ++w) {
      if (wires[w].consumer.node != node) continue;
      dest[wires[w].consumer.port] = wires[w].feedback ? loop_base + loop_index[w] : w;
    }
    for (std::size_t k = 0; k < exposed_res.size(); ++k)
      if (exposed_res[k].node == node) dest[exposed_res[k].port] = res_base + k;

    PartialFront next(order);
    for (const auto& s : front) {
      for (std::size_t i = 0; i < dp.size(); ++i) {
        const auto& impl = dp.implementations()[i];
        bool ok = true;
        for (const auto& nd : needs) {
          const double want = nd.from_state ? s.value[nd.slot] : nd.fixed;
          if (!satisfies(impl.provides[nd.port], want, fdirs[nd.port], eps)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        State t = s;
        for (const auto& nd : needs)
          if (nd.from_state) t.value[nd.slot] = 0.0;  // consumed
        for (std::size_t q = 0; q < dest.size(); ++q) t.value[dest[q]] = impl.requires_[q];
        t.choice[node] = i;
        next.insert(std::move(t));
      }
    }
    front = std::move(next);
    if (front.empty()) break;
  }
  return front;
}

// Dual layout for maximal-functionality propagation:
//   [one slot per non-feedback wire | exposed functionalities | one slot per feedback wire]
// Wire slots carry what the provider offers until the consumer draws on it.
inline PartialFront propagate_max_fun(const CompositeGraph& g, const Point& budget,
                                    const std::vector<double>& loop_demand) {
  const auto& wires = g.wires();
  const auto& exposed_res = g.exposed_resources();
  const auto& exposed_fun = g.exposed_functionalities();
  const std::size_t n_wires = wires.size();
  const std::size_t fun_base = n_wires;
  const std::size_t loop_base = fun_base + exposed_fun.size();

  std::vector<std::size_t> loop_index(n_wires, 0);
  std::size_t n_loops = 0;
  for (std::size_t w = 0; w < n_wires; ++w)
    if (wires[w].feedback) loop_index[w] = n_loops++;

  std::vector<Direction> dirs(loop_base + n_loops, Direction::Maximize);
  for (std::size_t w = 0; w < n_wires; ++w) {
    const Direction d = g.fun_dir(wires[w].provider);
    if (wires[w].feedback) dirs[loop_base + loop_index[w]] = d;
    else dirs[w] = d;
  }
  for (std::size_t k = 0; k < exposed_fun.size(); ++k) dirs[fun_base + k] = g.fun_dir(exposed_fun[k]);
  const ProductOrder order(dirs, g.eps());
  const double eps = g.eps();

  auto supply_order = g.demand_order();
  std::reverse(supply_order.begin(), supply_order.end());

  const std::size_t n_nodes = g.nodes().size();
  PartialFront front(order);
  front.insert({Point(dirs.size(), 0.0), std::vector<std::size_t>(n_nodes, SIZE_MAX)});

  for (std::size_t node : supply_order) {
    const auto& dp = g.nodes()[node];
    const auto& rdirs = dp.res_order().directions();

    struct Draw { std::size_t port; std::size_t slot; Direction dir; int kind; double fixed; };
    // kind 0: wire slot (compare against provider's offer), 1: exposed budget, 2: loop supply
    std::vector<Draw> draws;
    for (std::size_t w = 0; w < n_wires; ++w) {
      if (wires[w].consumer.node != node) continue;
      const Direction pd = g.fun_dir(wires[w].provider);
      if (wires[w].feedback)
        draws.push_back({wires[w].consumer.port, 0, pd, 2, loop_demand[loop_index[w]]});
      else
        draws.push_back({wires[w].consumer.port, w, pd, 0, 0.0});
    }
    for (std::size_t k = 0; k < exposed_res.size(); ++k)
      if (exposed_res[k].node == node)
        draws.push_back({exposed_res[k].port, 0, rdirs[exposed_res[k].port], 1, budget[k]});

    std::vector<std::size_t> dest(dp.fun_order().arity(), SIZE_MAX);
    for (std::size_t w = 0; w < n_wires; ++w) {
      if (wires[w].provider.node != node) continue;
      dest[wires[w].provider.port] = wires[w].feedback ? loop_base + loop_index[w] : w;
    }
    for (std::size_t k = 0; k < exposed_fun.size(); ++k)
      if (exposed_fun[k].node == node) dest[exposed_fun[k].port] = fun_base + k;

    PartialFront next(order);
    for (const auto& s : front) {
      for (std::size_t i = 0; i < dp.size(); ++i) {
        const auto& impl = dp.implementations()[i];
        bool ok = true;
        for (const auto& d : draws) {
          const double need = impl.requires_[d.port];
          bool sat = false;
          if (d.kind == 1) sat = satisfies(need, d.fixed, d.dir, eps);
          else sat = satisfies(d.kind == 0 ? s.value[d.slot] : d.fixed, need, d.dir, eps);
          if (!sat) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        State t = s;
        for (const auto& d : draws)
          if (d.kind == 0) t.value[d.slot] = 0.0;
        for (std::size_t p = 0; p < dest.size(); ++p)
          if (dest[p] != SIZE_MAX) t.value[dest[p]] = impl.provides[p];
        t.choice[node] = i;
        next.insert(std::move(t));
      }
    }
    front = std::move(next);
    if (front.empty()) break;
  }
  return front;
}

inline std::vector<const Wire*> feedback_wires(const CompositeGraph& g) {
  std::vector<const Wire*> out;
  for (const auto& w : g.wires())
    if (w.feedback) out.push_back(&w);
  return out;
}

inline std::string loop_names(const CompositeGraph& g) {
  std::string s;
  for (const Wire* w : feedback_wires(g)) s += (s.empty() ? "" : ", ") + g.describe(*w);
  return s;
}

}  // namespace detail

/// Least fixed point of the cut-open graph, ascending from the loop's bottom.
///
/// Each round solves the open graph under an assumed loop supply. States
/// whose loop requirement is already covered are solutions; the others raise
/// the assumption to the join of supply and requirement and are revisited.
inline QueryResult solve_loop(const CompositeGraph& g, const Point& demand, const SolveOptions& opts = {}) {
  g.validate();
  if (demand.size() != g.exposed_functionalities().size()) throw ShapeError("demand arity mismatch");
  const auto loops = detail::feedback_wires(g);
  if (loops.empty()) throw ConfigError("solve_loop needs at least one feedback wire");

  std::vector<Direction> loop_dirs;
  for (const Wire* w : loops) loop_dirs.push_back(g.fun_dir(w->provider));
  const std::size_t n_res = g.exposed_resources().size();
  const double eps = g.eps();

  detail::StateFront solutions(detail::StateOrder{g.res_order()});
  std::set<Point> pending, seen;
  Point bottom;
  for (auto d : loop_dirs) bottom.push_back(detail::least_demand(d));
  pending.insert(bottom);
  seen.insert(bottom);

  std::size_t rounds = 0;
  while (!pending.empty()) {
    if (++rounds > opts.iteration_cap) {
      throw IterationLimit("fixed-point iteration exceeded " + std::to_string(opts.iteration_cap) +
                           " rounds on loop wire(s) " + detail::loop_names(g));
    }
    const Point supply = *pending.begin();
    pending.erase(pending.begin());
    const auto open = detail::propagate_min_res(g, demand, supply);
    for (const auto& s : open) {
      const std::size_t base = s.value.size() - loops.size();
      bool closed = true;
      Point raised = supply;
      for (std::size_t j = 0; j < loops.size(); ++j) {
        const double need = s.value[base + j];
        if (!detail::satisfies(supply[j], need, loop_dirs[j], eps)) {
          closed = false;
          raised[j] = loop_dirs[j] == Direction::Maximize ? std::max(supply[j], need)
                                                          : std::min(supply[j], need);
        }
      }
      if (closed) {
        Point r(s.value.begin() + static_cast<std::ptrdiff_t>(base - n_res),
                s.value.begin() + static_cast<std::ptrdiff_t>(base));
        solutions.insert({std::move(r), s.choice});
      } else if (seen.insert(raised).second) {
        pending.insert(raised);
      }
    }
  }
  auto result = detail::to_result(solutions);
  result.iterations = rounds;
  return result;
}

inline QueryResult fix_fun_min_res(const CompositeGraph& g, const Point& demand,
                                   const SolveOptions& opts = {}) {
  if (g.has_feedback()) return solve_loop(g, demand, opts);
  g.validate();
  if (demand.size() != g.exposed_functionalities().size()) throw ShapeError("demand arity mismatch");
  const auto open = detail::propagate_min_res(g, demand, {});
  const std::size_t base = g.wires().size();
  detail::StateFront front(detail::StateOrder{g.res_order()});
  for (const auto& s : open) {
    Point r(s.value.begin() + static_cast<std::ptrdiff_t>(base), s.value.end());
    front.insert({std::move(r), s.choice});
  }
  return detail::to_result(front);
}

/// Dual of `fix_fun_min_res`: maximal functionality under a resource budget.
/// Feedback wires are resolved by descending from an unbounded loop supply.
inline QueryResult fix_res_max_fun(const CompositeGraph& g, const Point& budget,
                                   const SolveOptions& opts = {}) {
  g.validate();
  if (budget.size() != g.exposed_resources().size()) throw ShapeError("budget arity mismatch");
  const auto loops = detail::feedback_wires(g);
  const std::size_t base = g.wires().size();
  const std::size_t n_fun = g.exposed_functionalities().size();
  const double eps = g.eps();

  detail::StateFront solutions(detail::StateOrder{g.fun_order()});
  if (loops.empty()) {
    for (const auto& s : detail::propagate_max_fun(g, budget, {})) {
      Point f(s.value.begin() + static_cast<std::ptrdiff_t>(base), s.value.end());
      solutions.insert({std::move(f), s.choice});
    }
    return detail::to_result(solutions);
  }

  std::vector<Direction> loop_dirs;
  for (const Wire* w : loops) loop_dirs.push_back(g.fun_dir(w->provider));
  Point top;
  for (auto d : loop_dirs) top.push_back(-detail::least_demand(d));
  std::set<Point> pending{top}, seen{top};
  std::size_t rounds = 0;
  while (!pending.empty()) {
    if (++rounds > opts.iteration_cap) {
      throw IterationLimit("fixed-point iteration exceeded " + std::to_string(opts.iteration_cap) +
                           " rounds on loop wire(s) " + detail::loop_names(g));
    }
    const Point supply = *pending.begin();
    pending.erase(pending.begin());
    for (const auto& s : detail::propagate_max_fun(g, budget, supply)) {
      const std::size_t lb = base + n_fun;
      bool closed = true;
      Point lowered = supply;
      for (std::size_t j = 0; j < loops.size(); ++j) {
        const double offered = s.value[lb + j];
        if (!detail::satisfies(offered, supply[j], loop_dirs[j], eps)) {
          closed = false;
          lowered[j] = loop_dirs[j] == Direction::Maximize ? std::min(supply[j], offered)
                                                           : std::max(supply[j], offered);
        }
      }
      if (closed) {
        Point f(s.value.begin() + static_cast<std::ptrdiff_t>(base),
                s.value.begin() + static_cast<std::ptrdiff_t>(lb));
        solutions.insert({std::move(f), s.choice});
      } else if (seen.insert(lowered).second) {
        pending.insert(lowered);
      }
    }
  }
  auto result = detail::to_result(solutions);
  result.iterations = rounds;
  return result;
}

}  // namespace codesign
