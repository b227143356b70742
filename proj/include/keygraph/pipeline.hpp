#ifndef KEYGRAPH_PIPELINE_HPP
#define KEYGRAPH_PIPELINE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "keygraph/baselines.hpp"
#include "keygraph/builders.hpp"
#include "keygraph/centrality.hpp"
#include "keygraph/ranking.hpp"
#include "keygraph/text.hpp"

namespace keygraph {

enum class Unit { kWord, kPhrase };

inline std::string_view unit_name(Unit u) { return u == Unit::kWord ? "word" : "phrase"; }

inline Unit parse_unit(std::string_view name) {
  if (name == "word") return Unit::kWord;
  if (name == "phrase") return Unit::kPhrase;
  throw Error("unknown unit '" + std::string(name) + "' (expected word or phrase)");
}

struct Document {
  std::string doc_id;
  std::string text;
  std::optional<std::vector<std::string>> phrases;  // sidecar chunker output
};

/// Per-document state shared by every ranking of that document.
struct PreparedDocument {
  Unit unit = Unit::kWord;
  std::string doc_id;
  TokenizedDocument tokens;  // filtered words, or raw tokens in phrase mode
  PhraseList phrases;
  WindowSpec window;
  const StopwordSet* stopwords = &default_stopwords();

  bool empty() const {
    return tokens.empty() || (unit == Unit::kPhrase && phrases.empty());
  }

  CollocationNetwork network(NetworkType type) const {
    if (unit == Unit::kWord) return build_word_network(tokens, type);
    if (empty()) return CollocationNetwork(type.directed);
    return build_phrase_network(tokens, phrases, window, type, *stopwords);
  }

  /// Term occurrence counts: filtered words, or valid phrase occurrences.
  TermCounts term_counts() const {
    TermCounts counts;
    if (unit == Unit::kWord) {
      for (const auto& t : tokens.tokens) ++counts[t];
      return counts;
    }
    std::vector<std::optional<std::string>> labels(phrases.size());
    for (std::size_t i = 0; i < phrases.size(); ++i) {
      auto label = join_words(phrase_words(phrases.phrases[i]));
      if (is_valid_phrase_node(label, *stopwords)) labels[i] = std::move(label);
    }
    for (const auto& occ : find_phrase_occurrences(tokens, phrases))
      if (labels[occ.phrase]) ++counts[*labels[occ.phrase]];
    return counts;
  }
};

inline PreparedDocument prepare_document(const Document& doc, Unit unit,
                                         const StopwordSet& stopwords = default_stopwords()) {
  PreparedDocument p;
  p.unit = unit;
  p.doc_id = doc.doc_id;
  p.stopwords = &stopwords;
  if (unit == Unit::kWord) {
    p.tokens = preprocess_words(doc.text, stopwords, doc.doc_id);
    return p;
  }
  p.tokens = segment_sentences(doc.text, doc.doc_id);
  if (doc.phrases) {
    p.phrases = chunk_noun_phrases(doc.text, PhraseFileChunker(*doc.phrases), doc.doc_id);
  } else {
    p.phrases = chunk_noun_phrases(doc.text, FallbackChunker(stopwords), doc.doc_id);
  }
  if (!p.tokens.empty()) p.window = median_window(p.tokens);
  return p;
}

/// How a document's terms get ordered: a centrality variant on one network
/// type, or one of the frequency baselines.
struct RankerSpec {
  enum class Kind { kCentrality, kTf, kTfIdf };
  Kind kind = Kind::kCentrality;
  NetworkType network;
  Variant variant;

  static RankerSpec centrality(NetworkType type, Variant v) {
    return {Kind::kCentrality, type, v};
  }
  static RankerSpec tf() { return {Kind::kTf, {}, {}}; }
  static RankerSpec tfidf() { return {Kind::kTfIdf, {}, {}}; }

  /// "digraph:out_degree", "tf", "tfidf".
  std::string id() const {
    switch (kind) {
      case Kind::kTf: return "tf";
      case Kind::kTfIdf: return "tfidf";
      default: return network.name() + ":" + variant.id();
    }
  }

  static RankerSpec parse(std::string_view id) {
    if (id == "tf") return tf();
    if (id == "tfidf") return tfidf();
    auto colon = id.find(':');
    if (colon == std::string_view::npos)
      throw Error("ranker id '" + std::string(id) + "' needs the form <network>:<variant>");
    auto type = NetworkType::parse(id.substr(0, colon));
    auto v = parse_variant(id.substr(colon + 1));
    if (!type.directed) {
      bool ok = false;
      for (const auto& c : variant_catalog(false)) ok = ok || c == v;
      if (!ok) throw Error("variant '" + v.id() + "' does not apply to undirected networks");
    }
    return centrality(type, v);
  }
};

/// Full ranking of one prepared document.
inline std::vector<ScoredTerm> rank_document(const PreparedDocument& doc, const RankerSpec& ranker,
                                             const CorpusStats* stats = nullptr,
                                             const CentralityConfig& cfg = {}) {
  switch (ranker.kind) {
    case RankerSpec::Kind::kTf:
      return tf_rank(doc.term_counts());
    case RankerSpec::Kind::kTfIdf:
      if (stats == nullptr) throw Error("tf-idf ranking needs corpus statistics");
      return tfidf_rank(doc.term_counts(), *stats);
    case RankerSpec::Kind::kCentrality: {
      auto net = doc.network(ranker.network);
      if (net.empty()) return {};
      return rank_terms(compute(net, ranker.variant, cfg), net);
    }
  }
  return {};
}

/// Maps a short measure name plus modifiers onto a catalog variant. A full
/// catalog id ("weighted_in_closeness") is accepted as well.
inline Variant resolve_variant(std::string_view measure, std::optional<Mode> mode, bool weighted,
                               std::optional<Interpretation> interp, bool directed_network) {
  static const std::vector<std::pair<std::string_view, Measure>> kNames = {
      {"degree", Measure::kDegree},
      {"strength", Measure::kStrength},
      {"neighborhood_size", Measure::kNeighborhoodSize},
      {"neighborhood", Measure::kNeighborhoodSize},
      {"coreness", Measure::kCoreness},
      {"clustering_coefficient", Measure::kClusteringCoefficient},
      {"clustering", Measure::kClusteringCoefficient},
      {"structural_diversity", Measure::kStructuralDiversity},
      {"diversity", Measure::kStructuralDiversity},
      {"pagerank", Measure::kPageRank},
      {"hub", Measure::kHubScore},
      {"hub_score", Measure::kHubScore},
      {"authority", Measure::kAuthorityScore},
      {"authority_score", Measure::kAuthorityScore},
      {"betweenness", Measure::kBetweenness},
      {"closeness", Measure::kCloseness},
      {"eigenvector", Measure::kEigenvector},
  };
  Variant v;
  bool found = false;
  for (const auto& [name, m] : kNames) {
    if (name == measure) {
      v.measure = m;
      found = true;
      break;
    }
  }
  if (!found) {
    v = parse_variant(measure);
  } else {
    v.mode = mode.value_or(Mode::kAll);
    v.weighted = v.uses_weight() && weighted;
    v.interpretation = interp.value_or(directed_network ? Interpretation::kDirected
                                                        : Interpretation::kUndirected);
    if (!v.uses_interpretation()) v.interpretation = Interpretation::kDirected;
    if (!v.uses_mode()) v.mode = Mode::kAll;
  }
  if (!directed_network) {
    if (v.uses_mode() && v.mode != Mode::kAll)
      throw Error("in/out modes need a directed network");
    if (v.uses_interpretation() && v.interpretation == Interpretation::kDirected)
      throw Error("directed interpretation needs a directed network");
  }
  return v;
}

inline Mode parse_mode(std::string_view name) {
  if (name == "in") return Mode::kIn;
  if (name == "out") return Mode::kOut;
  if (name == "all") return Mode::kAll;
  throw Error("unknown mode '" + std::string(name) + "' (expected in, out or all)");
}

inline Interpretation parse_interpretation(std::string_view name) {
  if (name == "directed") return Interpretation::kDirected;
  if (name == "undirected") return Interpretation::kUndirected;
  throw Error("unknown interpretation '" + std::string(name) + "'");
}

/// A single-document extraction job, shared by the CLI and the service.
struct ExtractionRequest {
  std::string text;
  Unit unit = Unit::kWord;
  std::string measure = "degree";
  std::optional<Mode> mode;
  bool weighted = false;
  std::optional<Interpretation> interpretation;
  NetworkType network{true, false};
  int k_percent = 5;
  std::optional<std::vector<std::string>> phrases;

  RankerSpec ranker() const {
    if (measure == "tf") return RankerSpec::tf();
    if (measure == "tfidf") return RankerSpec::tfidf();
    return RankerSpec::centrality(
        network, resolve_variant(measure, mode, weighted, interpretation, network.directed));
  }

  void validate() const {
    if (k_percent < 1 || k_percent > 100)
      throw Error("k_percent must be within [1, 100], got " + std::to_string(k_percent));
    (void)ranker();
  }
};

/// Reads an ExtractionRequest; missing fields take the defaults.
inline ExtractionRequest request_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("request must be a JSON object");
  ExtractionRequest r;
  try {
    r.text = j.at("text").get<std::string>();
    if (j.contains("unit")) r.unit = parse_unit(j["unit"].get<std::string>());
    if (j.contains("measure")) r.measure = j["measure"].get<std::string>();
    if (j.contains("mode")) r.mode = parse_mode(j["mode"].get<std::string>());
    if (j.contains("weighted")) r.weighted = j["weighted"].get<bool>();
    if (j.contains("interpretation"))
      r.interpretation = parse_interpretation(j["interpretation"].get<std::string>());
    if (j.contains("graph")) {
      const auto g = j["graph"].get<std::string>();
      if (g != "directed" && g != "undirected")
        throw Error("graph must be 'directed' or 'undirected'");
      r.network.directed = g == "directed";
    }
    if (j.contains("simplified")) r.network.simplified = j["simplified"].get<bool>();
    if (j.contains("k_percent")) r.k_percent = j["k_percent"].get<int>();
    if (j.contains("phrases")) r.phrases = j["phrases"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid request: ") + e.what());
  }
  r.validate();
  return r;
}

struct ExtractionResult {
  RankedTerms ranked;
  std::vector<std::string> warnings;
};

inline ExtractionResult extract(const ExtractionRequest& req,
                                const StopwordSet& stopwords = default_stopwords(),
                                const CorpusStats* stats = nullptr,
                                const CentralityConfig& cfg = {}) {
  req.validate();
  ExtractionResult out;
  out.ranked.k_percent = req.k_percent;
  Document doc{"request", req.text, req.phrases};
  auto prepared = prepare_document(doc, req.unit, stopwords);
  if (prepared.empty()) {
    out.warnings.push_back("document is empty after preprocessing");
    return out;
  }
  CorpusStats local;
  const auto ranker = req.ranker();
  if (ranker.kind == RankerSpec::Kind::kTfIdf && stats == nullptr) {
    local.add_document(prepared.term_counts());
    stats = &local;
    out.warnings.push_back("no corpus statistics given; idf computed from this document alone");
  }
  out.ranked = threshold(rank_document(prepared, ranker, stats, cfg), req.k_percent);
  return out;
}

/// {"terms": [{"term": ..., "score": ..., "rank": 1}, ...]}
inline nlohmann::json ranked_to_json(const RankedTerms& ranked) {
  nlohmann::json terms = nlohmann::json::array();
  for (std::size_t i = 0; i < ranked.terms.size(); ++i)
    terms.push_back({{"term", ranked.terms[i].term},
                     {"score", ranked.terms[i].score},
                     {"rank", i + 1}});
  return {{"terms", terms}};
}

}  // namespace keygraph

#endif  // KEYGRAPH_PIPELINE_HPP
