#ifndef KEYGRAPH_BUILDERS_HPP
#define KEYGRAPH_BUILDERS_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "keygraph/graph.hpp"
#include "keygraph/text.hpp"

namespace keygraph {

/// Which of the four network types to produce.
struct NetworkType {
  bool directed = true;
  bool simplified = false;

  /// "digraph", "digraph_simplified", "undigraph", "undigraph_simplified".
  std::string name() const {
    return std::string(directed ? "digraph" : "undigraph") + (simplified ? "_simplified" : "");
  }

  static NetworkType parse(std::string_view name) {
    for (NetworkType t : all())
      if (t.name() == name) return t;
    throw Error("unknown network type '" + std::string(name) + "'");
  }

  static std::vector<NetworkType> all() {
    return {{true, false}, {true, true}, {false, false}, {false, true}};
  }

  bool operator==(const NetworkType&) const = default;
};

inline CollocationNetwork shape_network(CollocationNetwork net, NetworkType type) {
  if (!type.directed) net = to_undirected(net);
  if (type.simplified) net.mark_simplified();
  return net;
}

/// Bigram network: one node per unique token, an edge w1->w2 per adjacent
/// token pair weighted by bigram count.
inline CollocationNetwork build_word_network(const TokenizedDocument& doc, bool directed,
                                             bool simplified) {
  CollocationNetwork net(true);
  NodeId prev = 0;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    NodeId id = net.add_node(doc.tokens[i], 1);
    if (i > 0) net.add_edge(prev, id, 1.0);
    prev = id;
  }
  return shape_network(std::move(net), {directed, simplified});
}

inline CollocationNetwork build_word_network(const TokenizedDocument& doc, NetworkType type) {
  return build_word_network(doc, type.directed, type.simplified);
}

struct WindowSpec {
  std::size_t size = 2;
};

/// Median sentence length; even counts take the mean of the middle pair
/// rounded half up. Never below 2.
inline WindowSpec median_window(std::vector<std::size_t> sentence_lengths) {
  if (sentence_lengths.empty()) throw Error("median_window: document has no sentences");
  std::sort(sentence_lengths.begin(), sentence_lengths.end());
  const std::size_t n = sentence_lengths.size();
  std::size_t median = n % 2 == 1
                           ? sentence_lengths[n / 2]
                           : (sentence_lengths[n / 2 - 1] + sentence_lengths[n / 2] + 1) / 2;
  return WindowSpec{std::max<std::size_t>(median, 2)};
}

inline WindowSpec median_window(const TokenizedDocument& doc) {
  return median_window(doc.sentence_lengths());
}

struct PhraseOccurrence {
  std::size_t phrase = 0;  // index into the phrase list
  std::size_t start = 0;   // token position

  bool operator==(const PhraseOccurrence&) const = default;
};

/// Word trie over a phrase list, used to find the longest listed phrase
/// starting at each token position.
class PhraseTrie {
 public:
  static constexpr int kNone = -1;

  explicit PhraseTrie(const PhraseList& list) : nodes_(1) {
    for (std::size_t i = 0; i < list.phrases.size(); ++i) {
      auto words = phrase_words(list.phrases[i]);
      if (words.empty()) continue;
      std::size_t cur = 0;
      for (auto& w : words) {
        auto it = nodes_[cur].children.find(w);
        if (it == nodes_[cur].children.end()) {
          nodes_.emplace_back();
          it = nodes_[cur].children.emplace(std::move(w), nodes_.size() - 1).first;
        }
        cur = it->second;
      }
      if (nodes_[cur].phrase == kNone) nodes_[cur].phrase = static_cast<int>(i);
    }
  }

  /// Child of `node` along `word`, or 0 (the root) when there is none.
  std::size_t step(std::size_t node, const std::string& word) const {
    auto it = nodes_[node].children.find(word);
    return it == nodes_[node].children.end() ? 0 : it->second;
  }

  int phrase_at(std::size_t node) const { return nodes_[node].phrase; }
  bool is_leaf(std::size_t node) const { return nodes_[node].children.empty(); }

 private:
  struct Node {
    std::unordered_map<std::string, std::size_t> children;
    int phrase = kNone;
  };
  std::vector<Node> nodes_;
};

namespace detail {

/// Single forward scan emitting, in start order, the longest listed phrase
/// beginning at each token position. At most kMaxPhraseWords prefix matches
/// are alive at once; a match is settled when its prefix can no longer grow.
template <typename Emit>
void scan_occurrences(const std::vector<std::string>& tokens, const PhraseTrie& trie,
                      Emit&& emit) {
  struct Prefix {
    std::size_t start;
    std::size_t node;
    int best;
    bool settled;
  };
  std::deque<Prefix> live;
  auto release = [&] {
    while (!live.empty() && live.front().settled) {
      if (live.front().best != PhraseTrie::kNone)
        emit(PhraseOccurrence{static_cast<std::size_t>(live.front().best), live.front().start});
      live.pop_front();
    }
  };
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    live.push_back(Prefix{t, 0, PhraseTrie::kNone, false});
    for (auto& p : live) {
      if (p.settled) continue;
      std::size_t next = trie.step(p.node, tokens[t]);
      if (next == 0) {
        p.settled = true;
        continue;
      }
      p.node = next;
      if (trie.phrase_at(next) != PhraseTrie::kNone) p.best = trie.phrase_at(next);
      if (trie.is_leaf(next)) p.settled = true;
    }
    release();
  }
  for (auto& p : live) p.settled = true;
  release();
}

}  // namespace detail

/// All phrase occurrences in token order.
inline std::vector<PhraseOccurrence> find_phrase_occurrences(const TokenizedDocument& doc,
                                                             const PhraseList& phrases) {
  PhraseTrie trie(phrases);
  std::vector<PhraseOccurrence> out;
  detail::scan_occurrences(doc.tokens, trie, [&](PhraseOccurrence o) { out.push_back(o); });
  return out;
}

/// Post-processing rule for phrase vertices: every word longer than two
/// characters, and single-word phrases must not be stopwords.
inline bool is_valid_phrase_node(std::string_view phrase, const StopwordSet& stopwords) {
  auto words = phrase_words(phrase);
  if (words.empty()) return false;
  for (const auto& w : words)
    if (utf8::length(w) < kMinWordLength) return false;
  return !(words.size() == 1 && stopwords.contains(words.front()));
}

/// Phrase collocation network built in one pass over the token stream.
///
/// Occurrences enter a FIFO as they are found. When a new occurrence starts
/// more than `window.size` tokens after the head of the queue, the head
/// expires and gains an edge head->x (weight +1) to every occurrence x still
/// queued behind it. Whatever remains at the end is flushed the same way.
/// Invalid phrase vertices are removed afterwards together with their edges.
inline CollocationNetwork build_phrase_network(const TokenizedDocument& doc,
                                               const PhraseList& phrases, WindowSpec window,
                                               bool directed, bool simplified,
                                               const StopwordSet& stopwords = default_stopwords()) {
  if (window.size < 2) throw Error("window size must be at least 2");
  PhraseTrie trie(phrases);

  std::vector<std::size_t> frequency(phrases.size(), 0);
  std::vector<std::size_t> first_seen;
  std::map<std::pair<std::size_t, std::size_t>, double> counts;
  std::deque<PhraseOccurrence> fifo;

  auto expire_head = [&] {
    const auto head = fifo.front();
    for (std::size_t i = 1; i < fifo.size(); ++i) counts[{head.phrase, fifo[i].phrase}] += 1.0;
    fifo.pop_front();
  };

  detail::scan_occurrences(doc.tokens, trie, [&](PhraseOccurrence occ) {
    if (frequency[occ.phrase]++ == 0) first_seen.push_back(occ.phrase);
    while (!fifo.empty() && occ.start - fifo.front().start > window.size) expire_head();
    fifo.push_back(occ);
  });
  while (!fifo.empty()) expire_head();

  CollocationNetwork net(true);
  std::vector<NodeId> node_of(phrases.size(), 0);
  std::vector<bool> kept(phrases.size(), false);
  for (std::size_t p : first_seen) {
    const auto label = join_words(phrase_words(phrases.phrases[p]));
    if (!is_valid_phrase_node(label, stopwords)) continue;
    node_of[p] = net.add_node(label, frequency[p]);
    kept[p] = true;
  }
  for (const auto& [pair, w] : counts) {
    if (kept[pair.first] && kept[pair.second])
      net.add_edge(node_of[pair.first], node_of[pair.second], w);
  }
  return shape_network(std::move(net), {directed, simplified});
}

inline CollocationNetwork build_phrase_network(const TokenizedDocument& doc,
                                               const PhraseList& phrases, WindowSpec window,
                                               NetworkType type,
                                               const StopwordSet& stopwords = default_stopwords()) {
  return build_phrase_network(doc, phrases, window, type.directed, type.simplified, stopwords);
}

}  // namespace keygraph

#endif  // KEYGRAPH_BUILDERS_HPP
