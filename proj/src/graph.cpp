#include "prefnet/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "prefnet/rng.hpp"

namespace prefnet {

int Graph::check_n(int n) {
  if (n < 0) throw ConfigError("node count must be nonnegative");
  return n;
}

const std::vector<int>& Graph::at(int i) const {
  if (i < 0 || i >= n()) {
    throw std::out_of_range("node index " + std::to_string(i) + " outside graph of size " +
                            std::to_string(n()));
  }
  return adj_[static_cast<std::size_t>(i)];
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw ConfigError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                        ") outside node range 0.." + std::to_string(n - 1));
    }
    if (a == b) {
      throw ConfigError("self-loop at node " + std::to_string(a));
    }
    g.adj_[static_cast<std::size_t>(a)].push_back(b);
    g.adj_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (int i = 0; i < n; ++i) {
    auto& nb = g.adj_[static_cast<std::size_t>(i)];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw ConfigError("duplicate edge at node " + std::to_string(i));
    }
  }
  return g;
}

std::size_t Graph::edge_count() const {
  std::size_t deg_sum = 0;
  for (const auto& nb : adj_) deg_sum += nb.size();
  return deg_sum / 2;
}

int Graph::max_degree() const {
  int m = 0;
  for (const auto& nb : adj_) m = std::max(m, static_cast<int>(nb.size()));
  return m;
}

int Graph::min_degree() const {
  if (adj_.empty()) return 0;
  int m = static_cast<int>(adj_.front().size());
  for (const auto& nb : adj_) m = std::min(m, static_cast<int>(nb.size()));
  return m;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count());
  for (int i = 0; i < n(); ++i) {
    for (int j : adj_[static_cast<std::size_t>(i)]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;  // adjacency is sorted, so this is lexicographic already
}

TopologySpec TopologySpec::er(int n, double mean_degree) {
  if (n < 2) throw ConfigError("ER graph needs n >= 2");
  if (!(mean_degree > 0.0 && mean_degree <= static_cast<double>(n - 1))) {
    throw ConfigError("ER mean_degree must satisfy 0 < mean_degree <= n-1");
  }
  TopologySpec s;
  s.kind = TopologyKind::ER;
  s.n = n;
  s.mean_degree = mean_degree;
  return s;
}

TopologySpec TopologySpec::ba(int n, int m_attach) {
  if (m_attach < 1 || n <= m_attach) {
    throw ConfigError("BA graph needs 1 <= m_attach < n");
  }
  TopologySpec s;
  s.kind = TopologyKind::BA;
  s.n = n;
  s.m_attach = m_attach;
  return s;
}

Graph generate_er(int n, double mean_degree, std::uint64_t rng_seed) {
  const TopologySpec spec = TopologySpec::er(n, mean_degree);  // validates
  const double p = spec.mean_degree / static_cast<double>(n - 1);
  Rng rng(rng_seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.uniform01() < p) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate_ba(int n, int m_attach, std::uint64_t rng_seed) {
  TopologySpec::ba(n, m_attach);  // validates
  Rng rng(rng_seed);
  std::vector<std::pair<int, int>> edges;
  // Degree-proportional sampling via the endpoint list: each node appears
  // once per unit of degree.
  std::vector<int> endpoints;
  const int core = m_attach + 1;
  for (int i = 0; i < core && i < n; ++i) {
    for (int j = i + 1; j < core; ++j) {
      edges.emplace_back(i, j);
      endpoints.push_back(i);
      endpoints.push_back(j);
    }
  }
  std::vector<int> targets;
  for (int v = core; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m_attach) {
      const int cand = endpoints[static_cast<std::size_t>(rng.uniform_int(endpoints.size()))];
      if (std::find(targets.begin(), targets.end(), cand) == targets.end()) {
        targets.push_back(cand);
      }
    }
    for (int t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate_graph(const TopologySpec& spec, std::uint64_t rng_seed) {
  return spec.kind == TopologyKind::ER ? generate_er(spec.n, spec.mean_degree, rng_seed)
                                       : generate_ba(spec.n, spec.m_attach, rng_seed);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "n " << g.n() << "\n";
  for (const auto& [i, j] : g.edges()) {
    out << i << " " << j << "\n";
  }
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError("edge list line " + std::to_string(lineno) + ": " + what);
  };
  if (!std::getline(in, line)) throw ParseError("edge list is empty");
  lineno = 1;
  std::istringstream head(line);
  std::string tag;
  int n = -1;
  if (!(head >> tag >> n) || tag != "n" || n < 0) {
    throw fail("expected header \"n <count>\"");
  }
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    int i = -1, j = -1;
    if (!(row >> i >> j)) throw fail("expected \"i j\"");
    std::string extra;
    if (row >> extra) throw fail("trailing content");
    if (i >= j) throw fail("edges must satisfy i < j");
    edges.emplace_back(i, j);
  }
  try {
    return Graph::from_edges(n, edges);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("edge list: ") + e.what());
  }
}

}  // namespace prefnet
