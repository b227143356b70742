#ifndef KEYGRAPH_CENTRALITY_HPP
#define KEYGRAPH_CENTRALITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "keygraph/graph.hpp"

namespace keygraph {

enum class Measure {
  kDegree,
  kStrength,
  kNeighborhoodSize,
  kCoreness,
  kClusteringCoefficient,
  kStructuralDiversity,
  kPageRank,
  kHubScore,
  kAuthorityScore,
  kBetweenness,
  kCloseness,
  kEigenvector,
};

enum class Mode { kIn, kOut, kAll };
enum class Interpretation { kDirected, kUndirected };
enum class RankDirection { kDescending, kAscending };

inline std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::kIn: return "in";
    case Mode::kOut: return "out";
    case Mode::kAll: return "all";
  }
  return "all";
}

/// One row of the centrality variant matrix: a measure plus whichever of
/// mode / weighting / graph interpretation applies to it.
struct Variant {
  Measure measure = Measure::kDegree;
  Mode mode = Mode::kAll;
  bool weighted = false;
  Interpretation interpretation = Interpretation::kDirected;

  bool uses_mode() const {
    switch (measure) {
      case Measure::kDegree:
      case Measure::kStrength:
      case Measure::kNeighborhoodSize:
      case Measure::kCoreness:
      case Measure::kCloseness:
        return true;
      default:
        return false;
    }
  }

  bool uses_weight() const {
    switch (measure) {
      case Measure::kClusteringCoefficient:
      case Measure::kPageRank:
      case Measure::kHubScore:
      case Measure::kAuthorityScore:
      case Measure::kBetweenness:
      case Measure::kCloseness:
      case Measure::kEigenvector:
        return true;
      default:
        return false;
    }
  }

  bool uses_interpretation() const {
    return measure == Measure::kPageRank || measure == Measure::kBetweenness ||
           measure == Measure::kEigenvector;
  }

  RankDirection direction() const {
    return measure == Measure::kStructuralDiversity ? RankDirection::kAscending
                                                    : RankDirection::kDescending;
  }

  /// Stable identifier, e.g. "out_degree", "directed_weighted_pagerank",
  /// "weighted_in_closeness", "structural_diversity_index".
  std::string id() const {
    const std::string mode_prefix = std::string(mode_name(mode)) + "_";
    const std::string weight_prefix = weighted ? "weighted_" : "unweighted_";
    const std::string interp_prefix =
        interpretation == Interpretation::kDirected ? "directed_" : "undirected_";
    switch (measure) {
      case Measure::kDegree: return mode_prefix + "degree";
      case Measure::kStrength: return mode_prefix + "strength";
      case Measure::kNeighborhoodSize: return mode_prefix + "neighborhood_size_order_1";
      case Measure::kCoreness: return mode_prefix + "coreness";
      case Measure::kClusteringCoefficient: return weight_prefix + "clustering_coefficient";
      case Measure::kStructuralDiversity: return "structural_diversity_index";
      case Measure::kPageRank: return interp_prefix + weight_prefix + "pagerank";
      case Measure::kHubScore: return weight_prefix + "hub_score";
      case Measure::kAuthorityScore: return weight_prefix + "authority_score";
      case Measure::kBetweenness: return interp_prefix + weight_prefix + "betweenness";
      case Measure::kCloseness: return (weighted ? "weighted_" : "") + mode_prefix + "closeness";
      case Measure::kEigenvector:
        return interp_prefix + weight_prefix + "eigenvector_centrality";
    }
    return {};
  }

  bool operator==(const Variant& o) const { return id() == o.id(); }
};

/// Every variant applicable to a network of the given orientation, in
/// catalog order. Undirected networks get only mode "all" and the
/// undirected interpretation.
inline std::vector<Variant> variant_catalog(bool directed_network = true) {
  std::vector<Variant> out;
  const std::vector<Mode> modes =
      directed_network ? std::vector<Mode>{Mode::kIn, Mode::kOut, Mode::kAll}
                       : std::vector<Mode>{Mode::kAll};
  const std::vector<Interpretation> interps =
      directed_network
          ? std::vector<Interpretation>{Interpretation::kDirected, Interpretation::kUndirected}
          : std::vector<Interpretation>{Interpretation::kUndirected};
  for (Measure m : {Measure::kDegree, Measure::kStrength, Measure::kNeighborhoodSize,
                    Measure::kCoreness})
    for (Mode mode : modes) out.push_back({m, mode, false, Interpretation::kDirected});
  for (bool w : {true, false})
    out.push_back({Measure::kClusteringCoefficient, Mode::kAll, w, Interpretation::kDirected});
  out.push_back({Measure::kStructuralDiversity, Mode::kAll, false, Interpretation::kDirected});
  for (Interpretation i : interps)
    for (bool w : {true, false}) out.push_back({Measure::kPageRank, Mode::kAll, w, i});
  for (bool w : {true, false}) {
    out.push_back({Measure::kHubScore, Mode::kAll, w, Interpretation::kDirected});
    out.push_back({Measure::kAuthorityScore, Mode::kAll, w, Interpretation::kDirected});
  }
  for (Interpretation i : interps)
    for (bool w : {true, false}) out.push_back({Measure::kBetweenness, Mode::kAll, w, i});
  for (bool w : {true, false})
    for (Mode mode : modes) out.push_back({Measure::kCloseness, mode, w, Interpretation::kDirected});
  for (Interpretation i : interps)
    for (bool w : {true, false}) out.push_back({Measure::kEigenvector, Mode::kAll, w, i});
  return out;
}

inline Variant parse_variant(std::string_view id) {
  for (const auto& v : variant_catalog(true))
    if (v.id() == id) return v;
  throw Error("unknown centrality variant '" + std::string(id) + "'");
}

struct CentralityResult {
  Variant variant;
  std::vector<double> scores;  // indexed by NodeId

  RankDirection direction() const { return variant.direction(); }
  std::string id() const { return variant.id(); }
};

struct DampingConfig {
  double damping = 0.85;
  double tolerance = 1e-10;
  std::size_t max_iterations = 200;
};

/// Power-iteration settings for HITS and eigenvector centrality.
struct IterationConfig {
  double tolerance = 1e-10;
  std::size_t max_iterations = 10000;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " did not converge (residual " + detail::format_number(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

namespace detail {

struct Arc {
  NodeId to;
  double weight;
};
using AdjacencyList = std::vector<std::vector<Arc>>;

inline void require_mode(const CollocationNetwork& net, Mode mode) {
  if (!net.directed() && mode != Mode::kAll)
    throw Error("in/out modes require a directed network");
}

inline void require_interpretation(const CollocationNetwork& net, Interpretation interp) {
  if (!net.directed() && interp == Interpretation::kDirected)
    throw Error("directed interpretation requires a directed network");
}

/// Arcs of the chosen graph view. The directed view follows stored edges
/// (reversed when `reverse`). The undirected view turns every stored edge
/// into arcs both ways; a loop yields two arcs so it counts twice, matching
/// the undirected degree convention.
inline AdjacencyList arcs(const CollocationNetwork& net, Interpretation interp, bool weighted,
                          bool reverse = false) {
  AdjacencyList adj(net.node_count());
  const bool undirected = !net.directed() || interp == Interpretation::kUndirected;
  for (const auto& [k, w] : net.edges()) {
    const double weight = weighted ? w : 1.0;
    auto [u, v] = k;
    if (undirected) {
      adj[u].push_back({v, weight});
      adj[v].push_back({u, weight});
    } else if (reverse) {
      adj[v].push_back({u, weight});
    } else {
      adj[u].push_back({v, weight});
    }
  }
  return adj;
}

/// Loop-free arcs with parallel arcs collapsed to the shortest one; the
/// view used by shortest-path measures (weights are lengths).
inline AdjacencyList distance_arcs(const CollocationNetwork& net, bool undirected, bool weighted,
                                   bool reverse = false) {
  std::vector<std::unordered_map<NodeId, double>> best(net.node_count());
  auto put = [&](NodeId a, NodeId b, double len) {
    auto [it, inserted] = best[a].emplace(b, len);
    if (!inserted) it->second = std::min(it->second, len);
  };
  for (const auto& [k, w] : net.edges()) {
    auto [u, v] = k;
    if (u == v) continue;
    const double len = weighted ? w : 1.0;
    if (undirected || !net.directed()) {
      put(u, v, len);
      put(v, u, len);
    } else if (reverse) {
      put(v, u, len);
    } else {
      put(u, v, len);
    }
  }
  AdjacencyList adj(net.node_count());
  for (NodeId u = 0; u < best.size(); ++u) {
    for (const auto& [v, len] : best[u]) adj[u].push_back({v, len});
    std::sort(adj[u].begin(), adj[u].end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
  return adj;
}

inline bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline void normalize_max(std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, v);
  if (m > 0.0)
    for (double& v : x) v /= m;
}

/// Single-source shortest path lengths; unreachable nodes get infinity.
inline std::vector<double> shortest_paths(const AdjacencyList& adj, NodeId source, bool weighted) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(adj.size(), inf);
  dist[source] = 0.0;
  if (!weighted) {
    std::queue<NodeId> q;
    q.push(source);
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      for (const auto& a : adj[v]) {
        if (dist[a.to] == inf) {
          dist[a.to] = dist[v] + 1.0;
          q.push(a.to);
        }
      }
    }
    return dist;
  }
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0.0, source});
  std::vector<bool> done(adj.size(), false);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (done[v]) continue;
    done[v] = true;
    for (const auto& a : adj[v]) {
      double nd = d + a.weight;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        pq.push({nd, a.to});
      }
    }
  }
  return dist;
}


/// Strongly connected components by an iterative Tarjan search. Ids are
/// assigned in completion order, so an arc between two components always
/// points from the higher id to the lower one.
inline std::vector<std::size_t> strong_components(const AdjacencyList& adj, std::size_t& count) {
  const std::size_t n = adj.size();
  const std::size_t unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> calls;  // node, next arc
  std::size_t next_index = 0;
  count = 0;
  auto visit = [&](NodeId v) {
    index[v] = low[v] = next_index++;
    stack.push_back(v);
    on_stack[v] = true;
    calls.push_back({v, 0});
  };
  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    visit(root);
    while (!calls.empty()) {
      const NodeId v = calls.back().first;
      const std::size_t i = calls.back().second;
      if (i < adj[v].size()) {
        ++calls.back().second;
        const NodeId w = adj[v][i].to;
        if (index[w] == unset)
          visit(w);
        else if (on_stack[w])
          low[v] = std::min(low[v], index[w]);
        continue;
      }
      if (low[v] == index[v]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      calls.pop_back();
      if (!calls.empty()) low[calls.back().first] = std::min(low[calls.back().first], low[v]);
    }
  }
  return comp;
}

/// Power iteration of (M + I) on the nodes flagged in `member`, where
/// (M x)_v sums w * x_u over arcs u -> v inside the set. Starts from ones,
/// rescales to max 1 each round. Returns the spectral radius estimate of M;
/// `x` holds the limit (zero outside the set).
inline double shifted_power_iteration(const AdjacencyList& out, const std::vector<NodeId>& nodes,
                                      const std::vector<char>& member, std::vector<double>& x,
                                      const IterationConfig& cfg, const std::string& what) {
  std::fill(x.begin(), x.end(), 0.0);
  for (NodeId v : nodes) x[v] = 1.0;
  std::vector<double> next(x.size(), 0.0);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    for (NodeId v : nodes) next[v] = x[v];
    for (NodeId u : nodes)
      for (const auto& a : out[u])
        if (member[a.to]) next[a.to] += a.weight * x[u];
    double top = 0.0;
    for (NodeId v : nodes) top = std::max(top, next[v]);
    residual = 0.0;
    for (NodeId v : nodes) {
      next[v] /= top;
      residual = std::max(residual, std::abs(next[v] - x[v]));
      x[v] = next[v];
    }
    if (residual < cfg.tolerance) return top - 1.0;
  }
  throw ConvergenceError(what, residual);
}

struct ComponentSpectrum {
  std::vector<std::size_t> comp;            // node -> component id
  std::vector<std::vector<NodeId>> members;  // component id -> nodes
  std::vector<double> radius;               // spectral radius of each diagonal block
  std::vector<std::vector<double>> perron;  // block Perron vector, max 1 (global indexing)
};

/// Spectral radius and Perron vector of every strongly connected block.
inline ComponentSpectrum component_spectrum(const AdjacencyList& out, const IterationConfig& cfg,
                                            const std::string& what) {
  ComponentSpectrum cs;
  std::size_t count = 0;
  cs.comp = strong_components(out, count);
  cs.members.resize(count);
  for (NodeId v = 0; v < out.size(); ++v) cs.members[cs.comp[v]].push_back(v);
  cs.radius.assign(count, 0.0);
  cs.perron.resize(count);
  std::vector<char> member(out.size(), 0);
  for (std::size_t c = 0; c < count; ++c) {
    bool has_arc = false;
    for (NodeId u : cs.members[c])
      for (const auto& a : out[u]) has_arc = has_arc || cs.comp[a.to] == c;
    if (!has_arc) continue;
    for (NodeId v : cs.members[c]) member[v] = 1;
    std::vector<double> x(out.size(), 0.0);
    cs.radius[c] = shifted_power_iteration(out, cs.members[c], member, x, cfg, what);
    cs.perron[c] = std::move(x);
    for (NodeId v : cs.members[c]) member[v] = 0;
  }
  return cs;
}

inline bool same_radius(double r, double top) { return r >= top * (1.0 - 1e-9); }

/// Principal eigenvector of the inflow operator (M x)_v = sum w * x_u over
/// arcs u -> v, max element 1, as the limit of power iteration from the
/// all-ones vector. When blocks of maximal spectral radius feed into each
/// other that limit is approached only like 1/k, so it is taken block-wise:
/// the iteration is rerun on the blocks reached by the longest chain of
/// maximal-radius blocks, where it converges geometrically. Zero spectral
/// radius gives all zeros.
inline std::vector<double> principal_eigenvector(const AdjacencyList& out,
                                                 const IterationConfig& cfg,
                                                 const std::string& what) {
  const std::size_t n = out.size();
  std::vector<double> x(n, 0.0);
  if (n == 0) return x;
  const auto cs = component_spectrum(out, cfg, what);
  const std::size_t count = cs.members.size();
  double top = 0.0;
  for (double r : cs.radius) top = std::max(top, r);
  if (top <= 0.0) return x;

  // Chain height: most maximal-radius blocks on any path ending in the block.
  // Ids descend along arcs, so visiting ids high to low is topological.
  std::vector<std::size_t> height(count, 0), inflow(count, 0);
  std::size_t tallest = 0;
  for (std::size_t c = count; c-- > 0;) {
    height[c] = inflow[c] + (same_radius(cs.radius[c], top) ? 1 : 0);
    tallest = std::max(tallest, height[c]);
    for (NodeId u : cs.members[c])
      for (const auto& a : out[u])
        if (cs.comp[a.to] != c) inflow[cs.comp[a.to]] = std::max(inflow[cs.comp[a.to]], height[c]);
  }
  std::vector<NodeId> support;
  std::vector<char> member(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (height[cs.comp[v]] == tallest) {
      support.push_back(v);
      member[v] = 1;
    }
  }
  shifted_power_iteration(out, support, member, x, cfg, what);
  return x;
}
}  // namespace detail

/// Number of incident edges. A self-loop adds 1 to in- and out-degree and
/// 2 to the total.
inline CentralityResult degree(const CollocationNetwork& net, Mode mode) {
  detail::require_mode(net, mode);
  std::vector<double> s(net.node_count(), 0.0);
  for (const auto& [k, w] : net.edges()) {
    if (mode != Mode::kIn) s[k.first] += 1.0;
    if (mode != Mode::kOut) s[k.second] += 1.0;
  }
  return {{Measure::kDegree, mode}, std::move(s)};
}

/// Weighted degree, same loop convention as degree().
inline CentralityResult strength(const CollocationNetwork& net, Mode mode) {
  detail::require_mode(net, mode);
  std::vector<double> s(net.node_count(), 0.0);
  for (const auto& [k, w] : net.edges()) {
    if (mode != Mode::kIn) s[k.first] += w;
    if (mode != Mode::kOut) s[k.second] += w;
  }
  return {{Measure::kStrength, mode}, std::move(s)};
}

/// Distinct adjacent nodes, the node itself excluded.
inline CentralityResult neighborhood_size(const CollocationNetwork& net, Mode mode) {
  detail::require_mode(net, mode);
  std::vector<std::unordered_set<NodeId>> nb(net.node_count());
  for (const auto& [k, w] : net.edges()) {
    auto [u, v] = k;
    if (u == v) continue;
    if (mode != Mode::kIn) nb[u].insert(v);
    if (mode != Mode::kOut) nb[v].insert(u);
  }
  std::vector<double> s(net.node_count());
  for (NodeId v = 0; v < s.size(); ++v) s[v] = static_cast<double>(nb[v].size());
  return {{Measure::kNeighborhoodSize, mode}, std::move(s)};
}

/// k-core index from unweighted degrees in the given mode, ignoring loops.
/// Nodes are peeled in order of current degree; removing v lowers the
/// degree of every node whose degree counted an edge to v.
inline CentralityResult coreness(const CollocationNetwork& net, Mode mode) {
  detail::require_mode(net, mode);
  const std::size_t n = net.node_count();
  std::vector<std::size_t> deg(n, 0);
  // affected[v]: nodes whose mode-degree counts an edge shared with v
  std::vector<std::vector<NodeId>> affected(n);
  for (const auto& [k, w] : net.edges()) {
    auto [u, v] = k;
    if (u == v) continue;
    if (!net.directed() || mode == Mode::kAll) {
      ++deg[u];
      ++deg[v];
      affected[u].push_back(v);
      affected[v].push_back(u);
    } else if (mode == Mode::kIn) {
      ++deg[v];
      affected[u].push_back(v);
    } else {
      ++deg[u];
      affected[v].push_back(u);
    }
  }
  std::set<std::pair<std::size_t, NodeId>> queue;
  for (NodeId v = 0; v < n; ++v) queue.insert({deg[v], v});
  std::vector<bool> removed(n, false);
  std::vector<double> core(n, 0.0);
  std::size_t k = 0;
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    removed[v] = true;
    k = std::max(k, d);
    core[v] = static_cast<double>(k);
    for (NodeId u : affected[v]) {
      if (removed[u]) continue;
      queue.erase({deg[u], u});
      --deg[u];
      queue.insert({deg[u], u});
    }
  }
  return {{Measure::kCoreness, mode}, std::move(core)};
}

/// Local clustering on the undirected, loop-free view. The weighted form
/// is Barrat's; a pair joined in both directions uses the mean of its two
/// weights. Nodes with fewer than two neighbors score 0.
inline CentralityResult clustering_coefficient(const CollocationNetwork& net, bool weighted) {
  const std::size_t n = net.node_count();
  std::vector<std::unordered_map<NodeId, std::pair<double, int>>> acc(n);
  for (const auto& [k, w] : net.edges()) {
    auto [u, v] = k;
    if (u == v) continue;
    auto& a = acc[u][v];
    a.first += w;
    a.second += 1;
    auto& b = acc[v][u];
    b.first += w;
    b.second += 1;
  }
  std::vector<std::unordered_map<NodeId, double>> nb(n);
  for (NodeId u = 0; u < n; ++u)
    for (const auto& [v, sw] : acc[u]) nb[u][v] = sw.first / sw.second;

  std::vector<double> s(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    const std::size_t k = nb[i].size();
    if (k < 2) continue;
    std::vector<std::pair<NodeId, double>> list(nb[i].begin(), nb[i].end());
    double strength_i = 0.0;
    for (const auto& [j, w] : list) strength_i += w;
    double numer = 0.0;
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = a + 1; b < list.size(); ++b) {
        if (!nb[list[a].first].contains(list[b].first)) continue;
        numer += weighted ? (list[a].second + list[b].second) : 1.0;
      }
    }
    const double kk = static_cast<double>(k);
    s[i] = weighted ? std::min(numer / (strength_i * (kk - 1.0)), 1.0)
                    : numer / (kk * (kk - 1.0) / 2.0);
  }
  return {{Measure::kClusteringCoefficient, Mode::kAll, weighted}, std::move(s)};
}

/// Normalized entropy of the weights of a node's incident edges (each
/// stored edge once, loops included). Fewer than two incident edges
/// scores 0. Ranked ascending.
inline CentralityResult structural_diversity(const CollocationNetwork& net) {
  const std::size_t n = net.node_count();
  std::vector<std::vector<double>> incident(n);
  for (const auto& [k, w] : net.edges()) {
    incident[k.first].push_back(w);
    if (k.first != k.second) incident[k.second].push_back(w);
  }
  std::vector<double> s(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    const auto& ws = incident[v];
    if (ws.size() < 2) continue;
    double total = 0.0;
    for (double w : ws) total += w;
    double entropy = 0.0;
    for (double w : ws) {
      const double p = w / total;
      entropy -= p * std::log(p);
    }
    s[v] = std::clamp(entropy / std::log(static_cast<double>(ws.size())), 0.0, 1.0);
  }
  return {{Measure::kStructuralDiversity}, std::move(s)};
}

/// Power-iteration PageRank. Nodes without outgoing weight spread their
/// mass uniformly. Scores sum to 1.
inline CentralityResult pagerank(const CollocationNetwork& net, Interpretation interp,
                                 bool weighted, const DampingConfig& cfg = {}) {
  detail::require_interpretation(net, interp);
  Variant variant{Measure::kPageRank, Mode::kAll, weighted, interp};
  const std::size_t n = net.node_count();
  if (n == 0) return {variant, {}};
  if (!(cfg.damping > 0.0 && cfg.damping < 1.0)) throw Error("damping must lie in (0,1)");

  const auto out = detail::arcs(net, interp, weighted);
  std::vector<double> out_weight(n, 0.0);
  for (NodeId u = 0; u < n; ++u)
    for (const auto& a : out[u]) out_weight[u] += a.weight;

  const double d = cfg.damping;
  const double nn = static_cast<double>(n);
  std::vector<double> x(n, 1.0 / nn), next(n);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    double dangling = 0.0;
    for (NodeId u = 0; u < n; ++u)
      if (out_weight[u] == 0.0) dangling += x[u];
    std::fill(next.begin(), next.end(), (1.0 - d) / nn + d * dangling / nn);
    for (NodeId u = 0; u < n; ++u) {
      if (out_weight[u] == 0.0) continue;
      const double share = d * x[u] / out_weight[u];
      for (const auto& a : out[u]) next[a.to] += share * a.weight;
    }
    residual = 0.0;
    double sum = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      residual += std::abs(next[v] - x[v]);
      sum += next[v];
    }
    for (double& v : next) v /= sum;
    x.swap(next);
    if (residual < cfg.tolerance) return {variant, std::move(x)};
  }
  throw ConvergenceError("pagerank", residual);
}

namespace detail {

/// HITS limit for a symmetric adjacency A. Hubs follow A^2 from the
/// all-ones start; its top eigenspace is spanned by the Perron vectors of
/// the components with the largest radius, plus their sign-alternated
/// copies when a component is bipartite. The limit is the projection of the
/// start vector onto that space; computing it from A directly avoids the
/// near-tie between the two largest eigenvalues of A^2 on near-bipartite
/// graphs.
inline void symmetric_hits(const CollocationNetwork& net, bool weighted,
                           const IterationConfig& cfg, std::vector<double>& hub,
                           std::vector<double>& authority) {
  const std::size_t n = net.node_count();
  const auto adj = arcs(net, Interpretation::kUndirected, weighted);
  const auto cs = component_spectrum(adj, cfg, "hits");
  double top = 0.0;
  for (double r : cs.radius) top = std::max(top, r);
  hub.assign(n, 0.0);
  authority.assign(n, 0.0);
  if (top <= 0.0) return;

  std::vector<int> side(n, -1);
  for (std::size_t c = 0; c < cs.members.size(); ++c) {
    if (cs.radius[c] <= 0.0 || !same_radius(cs.radius[c], top)) continue;
    const auto& nodes = cs.members[c];
    // two-colour the component; a loop or an odd cycle makes it non-bipartite
    bool bipartite = true;
    std::vector<NodeId> queue{nodes.front()};
    side[nodes.front()] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const NodeId u = queue[i];
      for (const auto& a : adj[u]) {
        if (side[a.to] < 0) {
          side[a.to] = 1 - side[u];
          queue.push_back(a.to);
        } else if (side[a.to] == side[u]) {
          bipartite = false;
        }
      }
    }
    const auto& v = cs.perron[c];
    double norm2 = 0.0, sum = 0.0, alternating = 0.0;
    for (NodeId u : nodes) {
      norm2 += v[u] * v[u];
      sum += v[u];
      alternating += side[u] == 0 ? v[u] : -v[u];
    }
    for (NodeId u : nodes) {
      const double sign = side[u] == 0 ? 1.0 : -1.0;
      const double even = sum * v[u] / norm2;
      const double odd = bipartite ? alternating * sign * v[u] / norm2 : 0.0;
      hub[u] = even + odd;
      authority[u] = even - odd;
    }
  }
  normalize_max(hub);
  normalize_max(authority);
}

}  // namespace detail

struct HitsResult {
  CentralityResult hub;
  CentralityResult authority;
};

/// Kleinberg hubs and authorities: authority = A^T hub, hub = A authority,
/// each rescaled so its maximum is 1. Undirected networks use the symmetric
/// adjacency, so hub and authority coincide. No edges gives all zeros.
inline HitsResult hits(const CollocationNetwork& net, bool weighted, const IterationConfig& cfg = {}) {
  const std::size_t n = net.node_count();
  HitsResult r{{{Measure::kHubScore, Mode::kAll, weighted}, std::vector<double>(n, 0.0)},
               {{Measure::kAuthorityScore, Mode::kAll, weighted}, std::vector<double>(n, 0.0)}};
  if (n == 0 || net.edge_count() == 0) return r;
  if (!net.directed()) {
    detail::symmetric_hits(net, weighted, cfg, r.hub.scores, r.authority.scores);
    return r;
  }

  const auto out = detail::arcs(net, Interpretation::kDirected, weighted);
  std::vector<double> hub(n, 1.0), auth(n, 0.0);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    std::vector<double> new_auth(n, 0.0), new_hub(n, 0.0);
    for (NodeId u = 0; u < n; ++u)
      for (const auto& a : out[u]) new_auth[a.to] += a.weight * hub[u];
    detail::normalize_max(new_auth);
    for (NodeId u = 0; u < n; ++u)
      for (const auto& a : out[u]) new_hub[u] += a.weight * new_auth[a.to];
    detail::normalize_max(new_hub);
    residual = std::max(detail::max_abs_diff(new_auth, auth), detail::max_abs_diff(new_hub, hub));
    auth.swap(new_auth);
    hub.swap(new_hub);
    if (residual < cfg.tolerance) {
      r.hub.scores = std::move(hub);
      r.authority.scores = std::move(auth);
      return r;
    }
  }
  throw ConvergenceError("hits", residual);
}

/// Brandes accumulation. Weights are path lengths; endpoints excluded.
/// Undirected views count each unordered pair once.
inline CentralityResult betweenness(const CollocationNetwork& net, Interpretation interp,
                                    bool weighted) {
  detail::require_interpretation(net, interp);
  const bool undirected = !net.directed() || interp == Interpretation::kUndirected;
  const auto adj = detail::distance_arcs(net, undirected, weighted);
  const std::size_t n = net.node_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cb(n, 0.0);

  std::vector<double> dist(n), sigma(n), delta(n);
  std::vector<std::vector<NodeId>> preds(n);
  std::vector<NodeId> order;
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();
    dist[s] = 0.0;
    sigma[s] = 1.0;

    if (!weighted) {
      std::queue<NodeId> q;
      q.push(s);
      while (!q.empty()) {
        NodeId v = q.front();
        q.pop();
        order.push_back(v);
        for (const auto& a : adj[v]) {
          if (dist[a.to] == inf) {
            dist[a.to] = dist[v] + 1.0;
            q.push(a.to);
          }
          if (dist[a.to] == dist[v] + 1.0) {
            sigma[a.to] += sigma[v];
            preds[a.to].push_back(v);
          }
        }
      }
    } else {
      using Item = std::pair<double, NodeId>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      std::vector<bool> settled(n, false);
      pq.push({0.0, s});
      while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (settled[v]) continue;
        settled[v] = true;
        order.push_back(v);
        for (const auto& a : adj[v]) {
          if (settled[a.to]) continue;
          const double nd = dist[v] + a.weight;
          if (dist[a.to] == inf || (nd < dist[a.to] && !detail::nearly_equal(nd, dist[a.to]))) {
            dist[a.to] = nd;
            sigma[a.to] = sigma[v];
            preds[a.to].assign(1, v);
            pq.push({nd, a.to});
          } else if (detail::nearly_equal(nd, dist[a.to])) {
            sigma[a.to] += sigma[v];
            preds[a.to].push_back(v);
          }
        }
      }
    }

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }
  if (undirected)
    for (double& v : cb) v /= 2.0;
  return {{Measure::kBetweenness, Mode::kAll, weighted, interp}, std::move(cb)};
}

/// 1 / sum of distances to (in) or from (out) every other node; "all" uses
/// the undirected view. An unreachable node costs |V|. Weights are lengths.
inline CentralityResult closeness(const CollocationNetwork& net, Mode mode, bool weighted) {
  detail::require_mode(net, mode);
  const std::size_t n = net.node_count();
  const auto adj = detail::distance_arcs(net, mode == Mode::kAll, weighted, mode == Mode::kIn);
  std::vector<double> s(n, 0.0);
  if (n > 1) {
    for (NodeId v = 0; v < n; ++v) {
      const auto dist = detail::shortest_paths(adj, v, weighted);
      double total = 0.0;
      for (NodeId u = 0; u < n; ++u) {
        if (u == v) continue;
        total += std::isinf(dist[u]) ? static_cast<double>(n) : dist[u];
      }
      s[v] = 1.0 / total;
    }
  }
  return {{Measure::kCloseness, mode, weighted}, std::move(s)};
}

/// Principal eigenvector of the adjacency matrix, max element 1. In the
/// directed view a node collects score from its in-neighbors. Graphs whose
/// spectral radius is zero (no edges, or an acyclic directed view) score 0.
inline CentralityResult eigenvector(const CollocationNetwork& net, Interpretation interp,
                                    bool weighted, const IterationConfig& cfg = {}) {
  detail::require_interpretation(net, interp);
  Variant variant{Measure::kEigenvector, Mode::kAll, weighted, interp};
  if (net.edge_count() == 0) return {variant, std::vector<double>(net.node_count(), 0.0)};
  const auto out = detail::arcs(net, interp, weighted);
  return {variant, detail::principal_eigenvector(out, cfg, "eigenvector centrality")};
}

struct CentralityConfig {
  DampingConfig pagerank;
  IterationConfig iteration;
};

/// Computes one variant.
inline CentralityResult compute(const CollocationNetwork& net, const Variant& v,
                                const CentralityConfig& cfg = {}) {
  switch (v.measure) {
    case Measure::kDegree: return degree(net, v.mode);
    case Measure::kStrength: return strength(net, v.mode);
    case Measure::kNeighborhoodSize: return neighborhood_size(net, v.mode);
    case Measure::kCoreness: return coreness(net, v.mode);
    case Measure::kClusteringCoefficient: return clustering_coefficient(net, v.weighted);
    case Measure::kStructuralDiversity: return structural_diversity(net);
    case Measure::kPageRank: return pagerank(net, v.interpretation, v.weighted, cfg.pagerank);
    case Measure::kHubScore: return hits(net, v.weighted, cfg.iteration).hub;
    case Measure::kAuthorityScore: return hits(net, v.weighted, cfg.iteration).authority;
    case Measure::kBetweenness: return betweenness(net, v.interpretation, v.weighted);
    case Measure::kCloseness: return closeness(net, v.mode, v.weighted);
    case Measure::kEigenvector:
      return eigenvector(net, v.interpretation, v.weighted, cfg.iteration);
  }
  throw Error("unhandled measure");
}

struct MeasureFailure {
  std::string variant_id;
  std::string message;
};

struct CentralityBatch {
  std::vector<CentralityResult> results;
  std::vector<MeasureFailure> failures;
};

/// Every applicable variant for the network. A failing variant is recorded
/// in `failures` and the batch carries on.
inline CentralityBatch compute_all(const CollocationNetwork& net, const CentralityConfig& cfg = {}) {
  CentralityBatch batch;
  if (net.empty()) return batch;
  std::unordered_map<bool, HitsResult> hits_cache;
  for (const auto& v : variant_catalog(net.directed())) {
    try {
      if (v.measure == Measure::kHubScore || v.measure == Measure::kAuthorityScore) {
        auto it = hits_cache.find(v.weighted);
        if (it == hits_cache.end())
          it = hits_cache.emplace(v.weighted, hits(net, v.weighted, cfg.iteration)).first;
        batch.results.push_back(v.measure == Measure::kHubScore ? it->second.hub
                                                                : it->second.authority);
      } else {
        batch.results.push_back(compute(net, v, cfg));
      }
    } catch (const Error& e) {
      batch.failures.push_back({v.id(), e.what()});
    }
  }
  return batch;
}

}  // namespace keygraph

#endif  // KEYGRAPH_CENTRALITY_HPP
