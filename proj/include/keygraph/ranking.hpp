#ifndef KEYGRAPH_RANKING_HPP
#define KEYGRAPH_RANKING_HPP

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "keygraph/centrality.hpp"
#include "keygraph/graph.hpp"

namespace keygraph {

struct ScoredTerm {
  std::string term;
  double score = 0.0;
  std::size_t frequency = 0;

  bool operator==(const ScoredTerm&) const = default;
};

struct RankedTerms {
  std::vector<ScoredTerm> terms;
  int k_percent = 100;
};

/// Sorts by score in the given direction; ties go to the higher term
/// frequency, then to the lexicographically smaller term.
inline void sort_ranked(std::vector<ScoredTerm>& terms, RankDirection direction) {
  std::sort(terms.begin(), terms.end(), [direction](const ScoredTerm& a, const ScoredTerm& b) {
    if (a.score != b.score)
      return direction == RankDirection::kDescending ? a.score > b.score : a.score < b.score;
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.term < b.term;
  });
}

inline std::vector<ScoredTerm> rank_terms(const CentralityResult& result,
                                          const CollocationNetwork& net) {
  if (result.scores.size() != net.node_count())
    throw Error("centrality result does not cover the network's nodes");
  std::vector<ScoredTerm> terms;
  terms.reserve(net.node_count());
  for (NodeId v = 0; v < net.node_count(); ++v)
    terms.push_back({net.node(v).label, result.scores[v], net.node(v).term_frequency});
  sort_ranked(terms, result.direction());
  return terms;
}

/// ceil(k/100 * n), computed exactly.
inline std::size_t threshold_count(std::size_t n, int k_percent) {
  if (k_percent < 1 || k_percent > 100)
    throw Error("k_percent must be within [1, 100], got " + std::to_string(k_percent));
  return (static_cast<std::size_t>(k_percent) * n + 99) / 100;
}

/// Top k% prefix of a ranking.
inline RankedTerms threshold(const std::vector<ScoredTerm>& ranked, int k_percent) {
  const std::size_t keep = threshold_count(ranked.size(), k_percent);
  return RankedTerms{{ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep)},
                     k_percent};
}

/// The k grid of the evaluation sweep: 5, 10, ..., 100.
inline std::vector<int> sweep_percents() {
  std::vector<int> ks;
  for (int k = 5; k <= 100; k += 5) ks.push_back(k);
  return ks;
}

/// `node,score` rows in rank order under a commented header naming the
/// variant.
inline void write_centrality_csv(std::ostream& out, const CentralityResult& result,
                                 const CollocationNetwork& net) {
  out << "# measure=" << result.id() << " direction="
      << (result.direction() == RankDirection::kAscending ? "ascending" : "descending") << '\n';
  out << "node,score\n";
  for (const auto& t : rank_terms(result, net))
    out << t.term << ',' << detail::format_number(t.score) << '\n';
}

}  // namespace keygraph

#endif  // KEYGRAPH_RANKING_HPP
