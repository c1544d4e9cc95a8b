#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "pwgraph/linalg.hpp"

namespace pwgraph {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Default vertex cap for explicit dense-matrix paths.
inline constexpr std::size_t kDefaultDenseCap = 4096;

/// Real-valued function on the vertices of a graph.
class Signal {
 public:
  Signal() = default;
  explicit Signal(std::size_t n, double fill = 0.0) : values_(n, fill) {}
  explicit Signal(std::vector<double> values) : values_(std::move(values)) {}

  /// Kronecker delta at `v`.
  static Signal delta(std::size_t n, Vertex v);

  std::size_t size() const noexcept { return values_.size(); }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  double norm() const noexcept;
  double dot(const Signal& other) const;

  Signal& operator+=(const Signal& other);
  Signal& operator-=(const Signal& other);
  Signal& operator*=(double s) noexcept;

  bool operator==(const Signal&) const = default;

 private:
  std::vector<double> values_;
};

Signal operator+(Signal a, const Signal& b);
Signal operator-(Signal a, const Signal& b);
Signal operator*(double s, Signal a);

/// Finite simple undirected connected graph on vertices 0..n-1.
class Graph {
 public:
  /// Validates and builds; pairs are unordered. Throws Error with
  /// SelfLoop, DuplicateEdge, IndexOutOfRange or Disconnected.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const noexcept { return adjacency_[v]; }
  std::size_t degree(Vertex v) const noexcept { return adjacency_[v].size(); }
  std::size_t max_degree() const noexcept { return max_degree_; }
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

 private:
  Graph() = default;

  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
  std::size_t max_degree_ = 0;
};

Graph cycle_graph(std::size_t m);
Graph path_graph(std::size_t m);
/// Cartesian product of cycles; vertex (i_0, ..., i_{r-1}) has row-major
/// index with the last coordinate varying fastest.
Graph torus_graph(std::span<const std::size_t> dims);

/// Edge-list text: first line `n m`, then m lines `u v`; `#` starts a comment.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

/// (Lf)(v) = f(v) - Σ_{u~v} f(u)/√(d(v)d(u)).
Signal apply_laplacian(const Graph& g, const Signal& f);

/// (√d(v))_v, the kernel direction of the normalized Laplacian.
Signal sqrt_degrees(const Graph& g);

/// Explicit I - D^{-1/2} A D^{-1/2}; throws TooLarge above `cap` vertices.
Matrix dense_laplacian(const Graph& g, std::size_t cap = kDefaultDenseCap);

}  // namespace pwgraph
