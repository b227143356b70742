#ifndef KEYGRAPH_BASELINES_HPP
#define KEYGRAPH_BASELINES_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "keygraph/ranking.hpp"

namespace keygraph {

using TermCounts = std::map<std::string, std::size_t>;

/// Document count N and per-term document frequency over a corpus.
struct CorpusStats {
  std::size_t document_count = 0;
  std::map<std::string, std::size_t> doc_frequency;

  /// Counts one more document containing each term of `counts`.
  void add_document(const TermCounts& counts) {
    ++document_count;
    for (const auto& [term, n] : counts)
      if (n > 0) ++doc_frequency[term];
  }

  double idf(const std::string& term) const {
    auto it = doc_frequency.find(term);
    if (it == doc_frequency.end())
      throw Error("term '" + term + "' missing from corpus statistics");
    return std::log(static_cast<double>(document_count) / static_cast<double>(it->second));
  }
};

inline CorpusStats build_corpus_stats(const std::vector<TermCounts>& documents) {
  if (documents.empty()) throw Error("cannot build corpus statistics from an empty corpus");
  CorpusStats stats;
  for (const auto& doc : documents) stats.add_document(doc);
  return stats;
}

/// Cache file layout: {"N": 3, "df": {"term": 2, ...}}.
inline nlohmann::json corpus_stats_to_json(const CorpusStats& stats) {
  nlohmann::json df = nlohmann::json::object();
  for (const auto& [term, n] : stats.doc_frequency) df[term] = n;
  return {{"N", stats.document_count}, {"df", df}};
}

inline CorpusStats corpus_stats_from_json(const nlohmann::json& j) {
  CorpusStats stats;
  try {
    stats.document_count = j.at("N").get<std::size_t>();
    for (const auto& [term, n] : j.at("df").items())
      stats.doc_frequency[term] = n.get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed corpus statistics: ") + e.what());
  }
  if (stats.document_count == 0) throw Error("corpus statistics with N = 0");
  for (const auto& [term, n] : stats.doc_frequency)
    if (n < 1 || n > stats.document_count)
      throw Error("document frequency of '" + term + "' out of range");
  return stats;
}

inline CorpusStats load_corpus_stats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus statistics '" + path + "'");
  try {
    return corpus_stats_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("cannot parse corpus statistics '" + path + "': " + e.what());
  }
}

/// Term frequency ranking; ties are lexicographic.
inline std::vector<ScoredTerm> tf_rank(const TermCounts& counts) {
  std::vector<ScoredTerm> terms;
  for (const auto& [term, n] : counts)
    terms.push_back({term, static_cast<double>(n), n});
  sort_ranked(terms, RankDirection::kDescending);
  return terms;
}

/// tf * ln(N / df); ties by tf, then lexicographic.
inline std::vector<ScoredTerm> tfidf_rank(const TermCounts& counts, const CorpusStats& stats) {
  std::vector<ScoredTerm> terms;
  for (const auto& [term, n] : counts)
    terms.push_back({term, static_cast<double>(n) * stats.idf(term), n});
  sort_ranked(terms, RankDirection::kDescending);
  return terms;
}

}  // namespace keygraph

#endif  // KEYGRAPH_BASELINES_HPP
