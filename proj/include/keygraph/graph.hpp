#ifndef KEYGRAPH_GRAPH_HPP
#define KEYGRAPH_GRAPH_HPP

#include <charconv>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace keygraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using NodeId = std::size_t;

struct TermNode {
  std::string label;
  std::size_t term_frequency = 0;

  bool operator==(const TermNode&) const = default;
};

/// Weighted co-occurrence graph over unique terms of one document.
///
/// Node ids are dense and follow insertion order. Edges are keyed by ordered
/// node pair; undirected networks store each unordered pair once with the
/// smaller id first. Repeated insertions of the same edge accumulate weight,
/// so parallel edges never exist.
class CollocationNetwork {
 public:
  using EdgeKey = std::pair<NodeId, NodeId>;
  using EdgeMap = std::map<EdgeKey, double>;

  explicit CollocationNetwork(bool directed = true) : directed_(directed) {}

  bool directed() const { return directed_; }
  bool simplified() const { return simplified_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty(); }

  const std::vector<TermNode>& nodes() const { return nodes_; }
  const TermNode& node(NodeId id) const { return nodes_.at(id); }
  const EdgeMap& edges() const { return edges_; }

  std::optional<NodeId> find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Adds a node, or bumps the frequency of an existing one. Returns its id.
  NodeId add_node(std::string_view label, std::size_t frequency = 1) {
    if (label.empty()) throw Error("node label must be nonempty");
    if (auto id = find(label)) {
      nodes_[*id].term_frequency += frequency;
      return *id;
    }
    NodeId id = nodes_.size();
    nodes_.push_back(TermNode{std::string(label), frequency});
    index_.emplace(std::string(label), id);
    return id;
  }

  void add_edge(NodeId from, NodeId to, double weight = 1.0) {
    if (from >= nodes_.size() || to >= nodes_.size())
      throw Error("edge endpoint out of range");
    if (!(weight > 0.0)) throw Error("edge weights must be positive");
    if (simplified_ && from == to) return;
    edges_[key(from, to)] += weight;
  }

  double weight(NodeId from, NodeId to) const {
    auto it = edges_.find(key(from, to));
    return it == edges_.end() ? 0.0 : it->second;
  }

  double total_weight() const {
    double sum = 0.0;
    for (const auto& [k, w] : edges_) sum += w;
    return sum;
  }

  bool has_self_loops() const {
    for (const auto& [k, w] : edges_)
      if (k.first == k.second) return true;
    return false;
  }

  /// Same nodes, no edges, given orientation.
  CollocationNetwork skeleton(bool directed) const {
    CollocationNetwork out(directed);
    out.nodes_ = nodes_;
    out.index_ = index_;
    out.simplified_ = simplified_;
    return out;
  }

  void mark_simplified() {
    for (auto it = edges_.begin(); it != edges_.end();) {
      if (it->first.first == it->first.second)
        it = edges_.erase(it);
      else
        ++it;
    }
    simplified_ = true;
  }

  bool operator==(const CollocationNetwork& other) const {
    return directed_ == other.directed_ && simplified_ == other.simplified_ &&
           nodes_ == other.nodes_ && edges_ == other.edges_;
  }

 private:
  EdgeKey key(NodeId from, NodeId to) const {
    if (!directed_ && to < from) std::swap(from, to);
    return {from, to};
  }

  bool directed_ = true;
  bool simplified_ = false;
  std::vector<TermNode> nodes_;
  std::unordered_map<std::string, NodeId> index_;
  EdgeMap edges_;
};

/// Merges reciprocal edges of a directed network by summing their weights.
inline CollocationNetwork to_undirected(const CollocationNetwork& net) {
  if (!net.directed()) throw Error("to_undirected: network is already undirected");
  CollocationNetwork out = net.skeleton(false);
  for (const auto& [k, w] : net.edges()) out.add_edge(k.first, k.second, w);
  return out;
}

/// Drops every self-loop. Nodes are kept even if they lose all edges.
inline CollocationNetwork simplify(const CollocationNetwork& net) {
  CollocationNetwork out = net;
  out.mark_simplified();
  return out;
}

namespace detail {

inline std::string format_number(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view text) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error("invalid number '" + std::string(text) + "'");
  return value;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find('\t', start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

}  // namespace detail

// Edge-list text format:
//
//   # keygraph-network directed=1 simplified=0
//   source<TAB>target<TAB>weight        (one line per edge)
//   # nodes
//   label<TAB>term_frequency            (every node, isolated ones included)

inline void write_edge_list(std::ostream& out, const CollocationNetwork& net) {
  out << "# keygraph-network directed=" << (net.directed() ? 1 : 0)
      << " simplified=" << (net.simplified() ? 1 : 0) << '\n';
  for (const auto& [k, w] : net.edges()) {
    out << net.node(k.first).label << '\t' << net.node(k.second).label << '\t'
        << detail::format_number(w) << '\n';
  }
  out << "# nodes\n";
  for (const auto& n : net.nodes()) out << n.label << '\t' << n.term_frequency << '\n';
}

inline std::string to_edge_list(const CollocationNetwork& net) {
  std::ostringstream out;
  write_edge_list(out, net);
  return out.str();
}

inline CollocationNetwork read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# keygraph-network", 0) != 0)
    throw Error("edge list: missing '# keygraph-network' header");
  const bool directed = line.find("directed=1") != std::string::npos;
  const bool simplified = line.find("simplified=1") != std::string::npos;

  std::vector<std::tuple<std::string, std::string, double>> edges;
  std::vector<std::pair<std::string, std::size_t>> nodes;
  bool in_nodes = false;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "# nodes") {
      in_nodes = true;
      continue;
    }
    auto fields = detail::split_tabs(line);
    try {
      if (in_nodes) {
        if (fields.size() != 2) throw Error("expected label<TAB>frequency");
        nodes.emplace_back(std::string(fields[0]),
                           static_cast<std::size_t>(detail::parse_number(fields[1])));
      } else {
        if (fields.size() != 3) throw Error("expected source<TAB>target<TAB>weight");
        edges.emplace_back(std::string(fields[0]), std::string(fields[1]),
                           detail::parse_number(fields[2]));
      }
    } catch (const Error& e) {
      throw Error("edge list line " + std::to_string(line_no) + ": " + e.what());
    }
  }

  CollocationNetwork net(directed);
  for (const auto& [label, tf] : nodes) net.add_node(label, tf);
  if (simplified) net.mark_simplified();
  for (const auto& [src, dst, w] : edges) {
    auto u = net.find(src);
    auto v = net.find(dst);
    NodeId a = u ? *u : net.add_node(src, 1);
    NodeId b = v ? *v : net.add_node(dst, 1);
    if (simplified && a == b) throw Error("edge list: self-loop in simplified network");
    net.add_edge(a, b, w);
  }
  return net;
}

inline CollocationNetwork from_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

}  // namespace keygraph

#endif  // KEYGRAPH_GRAPH_HPP
