#include "pwgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "pwgraph/error.hpp"

namespace pwgraph {

namespace {

constexpr std::string_view kModule = "graph-core";

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(kModule, Errc::LengthMismatch,
                "signal length " + std::to_string(b) + " != " + std::to_string(a));
}

}  // namespace

Signal Signal::delta(std::size_t n, Vertex v) {
  Signal s(n);
  s[v] = 1.0;
  return s;
}

double Signal::norm() const noexcept {
  // Scaled accumulation keeps tiny and huge entries from under/overflowing.
  double scale = 0.0;
  double ssq = 1.0;
  for (double x : values_) {
    if (x == 0.0) continue;
    const double ax = std::abs(x);
    if (scale < ax) {
      ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
      scale = ax;
    } else {
      ssq += (ax / scale) * (ax / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

double Signal::dot(const Signal& other) const {
  require_same_length(size(), other.size());
  return std::inner_product(values_.begin(), values_.end(), other.values_.begin(), 0.0);
}

Signal& Signal::operator+=(const Signal& other) {
  require_same_length(size(), other.size());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

Signal& Signal::operator-=(const Signal& other) {
  require_same_length(size(), other.size());
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

Signal& Signal::operator*=(double s) noexcept {
  for (double& x : values_) x *= s;
  return *this;
}

Signal operator+(Signal a, const Signal& b) { return a += b; }
Signal operator-(Signal a, const Signal& b) { return a -= b; }
Signal operator*(double s, Signal a) { return a *= s; }

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw Error(kModule, Errc::TooSmall, "graph needs at least one vertex");
  Graph g;
  g.adjacency_.resize(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw Error(kModule, Errc::IndexOutOfRange,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) + ") with n=" +
                      std::to_string(n));
    if (u == v) throw Error(kModule, Errc::SelfLoop, "vertex " + std::to_string(u));
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& adj = g.adjacency_[v];
    std::sort(adj.begin(), adj.end());
    if (auto dup = std::adjacent_find(adj.begin(), adj.end()); dup != adj.end())
      throw Error(kModule, Errc::DuplicateEdge,
                  "(" + std::to_string(v) + "," + std::to_string(*dup) + ")");
    g.max_degree_ = std::max(g.max_degree_, adj.size());
  }
  g.edge_count_ = edges.size();

  // Breadth-first reachability from vertex 0.
  std::vector<char> seen(n, 0);
  std::vector<Vertex> frontier{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const Vertex v = frontier.back();
    frontier.pop_back();
    for (Vertex u : g.adjacency_[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        frontier.push_back(u);
      }
    }
  }
  if (reached != n)
    throw Error(kModule, Errc::Disconnected,
                std::to_string(reached) + " of " + std::to_string(n) +
                    " vertices reachable from vertex 0");
  return g;
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& adj = adjacency_.at(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adjacency_.size(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph cycle_graph(std::size_t m) {
  if (m < 3) throw Error(kModule, Errc::TooSmall, "cycle needs m >= 3, got " + std::to_string(m));
  std::vector<Edge> edges;
  for (Vertex i = 0; i < m; ++i) edges.emplace_back(i, (i + 1) % m);
  return Graph::from_edges(m, edges);
}

Graph path_graph(std::size_t m) {
  if (m < 2) throw Error(kModule, Errc::TooSmall, "path needs m >= 2, got " + std::to_string(m));
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(m, edges);
}

Graph torus_graph(std::span<const std::size_t> dims) {
  if (dims.empty()) throw Error(kModule, Errc::TooSmall, "torus needs at least one dimension");
  std::size_t n = 1;
  for (std::size_t d : dims) {
    if (d < 3) throw Error(kModule, Errc::TooSmall, "torus dimension " + std::to_string(d));
    n *= d;
  }
  // stride[a] = product of dims after axis a
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t a = dims.size() - 1; a-- > 0;) stride[a] = stride[a + 1] * dims[a + 1];

  std::vector<Edge> edges;
  edges.reserve(n * dims.size());
  for (Vertex v = 0; v < n; ++v) {
    for (std::size_t a = 0; a < dims.size(); ++a) {
      const std::size_t coord = (v / stride[a]) % dims[a];
      const std::size_t next = (coord + 1) % dims[a];
      edges.emplace_back(v, v - coord * stride[a] + next * stride[a]);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph read_edge_list(std::istream& in) {
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(raw);
  }
  auto fail = [](const std::string& what) { throw Error(kModule, Errc::ParseError, what); };
  if (lines.empty()) fail("missing header line `n m`");

  auto parse_pair = [&](const std::string& line, long long& a, long long& b) {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> a >> b) || (ls >> extra)) fail("expected two integers, got `" + line + "`");
    if (a < 0 || b < 0) fail("negative value in `" + line + "`");
  };

  long long n = 0, m = 0;
  parse_pair(lines[0], n, m);
  if (static_cast<std::size_t>(m) != lines.size() - 1)
    fail("header declares " + std::to_string(m) + " edges, found " +
         std::to_string(lines.size() - 1));
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    long long u = 0, v = 0;
    parse_pair(lines[i], u, v);
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Signal apply_laplacian(const Graph& g, const Signal& f) {
  require_same_length(g.vertex_count(), f.size());
  const std::size_t n = g.vertex_count();
  std::vector<double> inv_sqrt(n);
  for (Vertex v = 0; v < n; ++v) inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));

  Signal out(n);
  for (Vertex v = 0; v < n; ++v) {
    double acc = 0.0;
    for (Vertex u : g.neighbors(v)) acc += f[u] * inv_sqrt[u];
    out[v] = f[v] - inv_sqrt[v] * acc;
  }
  return out;
}

Signal sqrt_degrees(const Graph& g) {
  Signal s(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) s[v] = std::sqrt(static_cast<double>(g.degree(v)));
  return s;
}

Matrix dense_laplacian(const Graph& g, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  if (n > cap)
    throw Error(kModule, Errc::TooLarge,
                std::to_string(n) + " vertices exceeds dense cap " + std::to_string(cap));
  Matrix l = Matrix::identity(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex u : g.neighbors(v))
      l(v, u) = -1.0 / std::sqrt(static_cast<double>(g.degree(v) * g.degree(u)));
  return l;
}

}  // namespace pwgraph
