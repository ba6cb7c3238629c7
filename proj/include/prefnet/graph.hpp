#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "prefnet/errors.hpp"

namespace prefnet {

// Simple undirected graph over nodes 0..n-1, stored as sorted adjacency
// lists. Construction validates simplicity and symmetry; a built Graph is
// immutable and safe to share across threads.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adj_(static_cast<std::size_t>(check_n(n))) {}

  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return static_cast<int>(adj_.size()); }
  int degree(int i) const { return static_cast<int>(at(i).size()); }
  const std::vector<int>& neighbors(int i) const { return at(i); }

  std::size_t edge_count() const;
  int max_degree() const;
  int min_degree() const;

  // Edges as (i, j) with i < j, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  static int check_n(int n);
  const std::vector<int>& at(int i) const;

  std::vector<std::vector<int>> adj_;
};

enum class TopologyKind : std::uint8_t { ER, BA };

// Parameters of one network model instance. Use the named constructors;
// they validate the bounds.
struct TopologySpec {
  TopologyKind kind = TopologyKind::ER;
  int n = 0;
  double mean_degree = 0.0;  // ER only
  int m_attach = 0;          // BA only

  static TopologySpec er(int n, double mean_degree);
  static TopologySpec ba(int n, int m_attach);

  double degree_param() const { return kind == TopologyKind::ER ? mean_degree : m_attach; }

  bool operator==(const TopologySpec&) const = default;
};

// G(n, p) with p = mean_degree/(n-1); mean_degree may equal n-1 (p = 1).
Graph generate_er(int n, double mean_degree, std::uint64_t rng_seed);

// Preferential attachment starting from a complete core on m_attach + 1
// nodes; every later node attaches to m_attach distinct existing nodes with
// probability proportional to current degree (duplicate draws within one
// node's attachment step are rejected and redrawn).
Graph generate_ba(int n, int m_attach, std::uint64_t rng_seed);

Graph generate_graph(const TopologySpec& spec, std::uint64_t rng_seed);

// Edge-list text format: first line "n <count>", then one "i j" line per
// edge with i < j, ASCII decimal, newline-terminated.
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);

}  // namespace prefnet
