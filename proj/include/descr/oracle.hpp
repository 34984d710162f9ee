#pragma once

// Brute-force ground truth for small dimensions: the sign of f is sampled on a
// regular grid in log coordinates y = log(x), and negative grid nodes are joined
// to their axis neighbours with union-find. Approximate by construction.

#include "polytope.hpp"
#include "signomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace descr {

struct GridSpec {
  std::vector<double> lo;
  std::vector<double> hi;
  std::size_t resolution = 400;  // samples per axis
  double tolerance = kDefaultRelTol;
  std::size_t max_cells = 20'000'000;

  std::size_t dimension() const { return lo.size(); }

  double coordinate(std::size_t axis, std::size_t k) const {
    return lo[axis] + (hi[axis] - lo[axis]) * static_cast<double>(k) / static_cast<double>(resolution - 1);
  }
};

inline std::size_t default_resolution(std::size_t n) {
  switch (n) {
    case 1: return 100000;
    case 2: return 400;
    case 3: return 60;
    default: return 24;
  }
}

inline GridSpec default_grid(std::size_t n, double lo = -8, double hi = 8) {
  GridSpec g;
  g.lo.assign(n, lo);
  g.hi.assign(n, hi);
  g.resolution = default_resolution(n);
  return g;
}

struct SamplePoint {
  std::vector<double> y;  // log coordinates
  std::vector<double> x;  // exp(y)
};

struct ComponentReport {
  std::size_t component_count = 0;
  std::size_t negative_cells = 0;
  std::vector<SamplePoint> witnesses;  // one per component
  GridSpec grid;
};

/// Caps internal parallelism; DESC_REGIONS_THREADS overrides the hardware count.
inline unsigned worker_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DESC_REGIONS_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

namespace detail {

inline void check_grid(const GridSpec& g, std::size_t n) {
  if (g.lo.size() != n || g.hi.size() != n) throw std::invalid_argument("grid dimension does not match signomial");
  if (g.resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  for (std::size_t i = 0; i < n; ++i)
    if (!(g.lo[i] < g.hi[i])) throw std::invalid_argument("grid box must have lo < hi");
}

inline std::size_t cell_count(const GridSpec& g) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    if (total > g.max_cells / g.resolution)
      throw BudgetExceeded("grid has more than " + std::to_string(g.max_cells) + " nodes");
    total *= g.resolution;
  }
  return total;
}

// Per-term, per-axis tables of exp(mu_i * y_k), so each node costs one product per term and axis.
class GridEvaluator {
 public:
  GridEvaluator(const Signomial& f, const GridSpec& g) : n_(f.dimension()), res_(g.resolution), tol_(g.tolerance) {
    for (const auto& t : f.terms()) {
      coeff_.push_back(to_double(t.coefficient));
      std::vector<double> table(n_ * res_);
      for (std::size_t i = 0; i < n_; ++i) {
        double e = to_double(t.exponent[i]);
        for (std::size_t k = 0; k < res_; ++k) table[i * res_ + k] = std::exp(e * g.coordinate(i, k));
      }
      tables_.push_back(std::move(table));
    }
  }

  /// -1, 0 or +1 at the node with linear index `idx` (axis 0 varies fastest).
  int sign(std::size_t idx) const {
    thread_local std::vector<std::size_t> k;
    k.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      k[i] = idx % res_;
      idx /= res_;
    }
    double value = 0, magnitude = 0;
    for (std::size_t t = 0; t < coeff_.size(); ++t) {
      double term = coeff_[t];
      for (std::size_t i = 0; i < n_; ++i) term *= tables_[t][i * res_ + k[i]];
      value += term;
      magnitude += std::abs(term);
    }
    if (!std::isfinite(value) || !std::isfinite(magnitude)) throw std::range_error("grid evaluation overflow");
    double tau = tol_ * magnitude;
    return value < -tau ? -1 : (value > tau ? 1 : 0);
  }

 private:
  std::size_t n_, res_;
  double tol_;
  std::vector<double> coeff_;
  std::vector<std::vector<double>> tables_;
};

inline SamplePoint node_point(const GridSpec& g, std::size_t idx) {
  SamplePoint p;
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    double y = g.coordinate(i, idx % g.resolution);
    idx /= g.resolution;
    p.y.push_back(y);
    p.x.push_back(std::exp(y));
  }
  return p;
}

inline std::vector<std::int8_t> negative_mask(const Signomial& f, const GridSpec& g) {
  check_grid(g, f.dimension());
  const std::size_t total = cell_count(g);
  GridEvaluator ev(f, g);
  std::vector<std::int8_t> neg(total, 0);
  unsigned threads = std::min<std::size_t>(worker_threads(), std::max<std::size_t>(1, total / 4096));
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) neg[i] = ev.sign(i) < 0;
  };
  if (threads <= 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t b = t * chunk, e = std::min(total, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  return neg;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Number of connected components of the sampled negative region.
inline ComponentReport count_negative_components(const Signomial& f, const GridSpec& g) {
  auto neg = detail::negative_mask(f, g);
  const std::size_t total = neg.size();
  const std::size_t n = g.dimension();
  detail::UnionFind uf(total);
  std::size_t stride = 1;
  for (std::size_t axis = 0; axis < n; ++axis) {
    for (std::size_t i = 0; i < total; ++i) {
      if (!neg[i]) continue;
      if ((i / stride) % g.resolution + 1 >= g.resolution) continue;
      if (neg[i + stride]) uf.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i + stride));
    }
    stride *= g.resolution;
  }
  ComponentReport r;
  r.grid = g;
  for (std::size_t i = 0; i < total; ++i) {
    if (!neg[i]) continue;
    ++r.negative_cells;
    if (uf.find(static_cast<std::uint32_t>(i)) == i) {
      ++r.component_count;
      r.witnesses.push_back(detail::node_point(g, i));
    }
  }
  return r;
}

/// A grid node where f < -tau, re-checked in extended precision.
inline std::optional<SamplePoint> negativity_witness(const Signomial& f, const GridSpec& g) {
  detail::check_grid(g, f.dimension());
  const std::size_t total = detail::cell_count(g);
  detail::GridEvaluator ev(f, g);
  for (std::size_t i = 0; i < total; ++i) {
    if (ev.sign(i) >= 0) continue;
    auto p = detail::node_point(g, i);
    if (evaluate_log_long(f, p.y) < 0) return p;
  }
  return std::nullopt;
}

/// A grid node where both f and g are negative.
inline std::optional<SamplePoint> intersection_witness(const Signomial& f, const Signomial& h, const GridSpec& g) {
  if (f.dimension() != h.dimension()) throw std::invalid_argument("intersection_witness: dimension mismatch");
  detail::check_grid(g, f.dimension());
  const std::size_t total = detail::cell_count(g);
  detail::GridEvaluator ef(f, g), eh(h, g);
  for (std::size_t i = 0; i < total; ++i) {
    if (ef.sign(i) >= 0 || eh.sign(i) >= 0) continue;
    auto p = detail::node_point(g, i);
    if (evaluate_log_long(f, p.y) < 0 && evaluate_log_long(h, p.y) < 0) return p;
  }
  return std::nullopt;
}

}  // namespace descr
