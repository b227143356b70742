#ifndef KEYGRAPH_EVAL_HPP
#define KEYGRAPH_EVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "keygraph/pipeline.hpp"

namespace keygraph {

using TermSet = std::set<std::string>;

/// Lowercase, punctuation-free, single-spaced form used for matching.
inline std::string normalize_term(std::string_view term) { return join_words(phrase_words(term)); }

inline constexpr std::string_view kCombinedSet = "combined";

/// Annotation sets of one document. "combined" is always derived.
struct GoldStandard {
  std::string doc_id;
  std::map<std::string, TermSet> annotation_sets;

  TermSet combined() const {
    TermSet all;
    for (const auto& [name, set] : annotation_sets) all.insert(set.begin(), set.end());
    return all;
  }

  TermSet set(std::string_view name) const {
    if (name == kCombinedSet) return combined();
    auto it = annotation_sets.find(std::string(name));
    if (it == annotation_sets.end())
      throw Error("document '" + doc_id + "' has no gold set '" + std::string(name) + "'");
    return it->second;
  }
};

using GoldCorpus = std::map<std::string, GoldStandard>;

/// JSON Lines: {"doc_id": "...", "sets": {"annotator1": ["term", ...], ...}}
inline GoldCorpus read_gold_jsonl(std::istream& in) {
  GoldCorpus gold;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    GoldStandard g;
    try {
      auto j = nlohmann::json::parse(line);
      g.doc_id = j.at("doc_id").get<std::string>();
      for (const auto& [name, terms] : j.at("sets").items()) {
        if (name == kCombinedSet) throw Error("the combined set is derived and may not be stored");
        auto& set = g.annotation_sets[name];
        for (const auto& t : terms) {
          auto norm = normalize_term(t.get<std::string>());
          if (!norm.empty()) set.insert(std::move(norm));
        }
      }
    } catch (const std::exception& e) {
      throw Error("gold file line " + std::to_string(line_no) + ": " + e.what());
    }
    if (gold.contains(g.doc_id)) throw Error("duplicate gold entry for '" + g.doc_id + "'");
    gold.emplace(g.doc_id, std::move(g));
  }
  return gold;
}

inline GoldCorpus load_gold_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gold file '" + path + "'");
  return read_gold_jsonl(in);
}

/// Single-word gold terms; keyword extraction is scored against these.
inline TermSet unigram_gold(const TermSet& gold) {
  TermSet out;
  for (const auto& t : gold)
    if (t.find(' ') == std::string::npos) out.insert(t);
  return out;
}

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

inline PRF make_prf(double tp, double predicted, double gold) {
  PRF r;
  r.precision = predicted > 0 ? tp / predicted : 0.0;
  r.recall = gold > 0 ? tp / gold : 0.0;
  r.f1 = r.precision + r.recall > 0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

/// Exact-match precision, recall and F1. An empty side zeroes its ratio.
inline PRF score(const TermSet& predicted, const TermSet& gold) {
  std::size_t tp = 0;
  for (const auto& t : predicted) tp += gold.count(t);
  return make_prf(static_cast<double>(tp), static_cast<double>(predicted.size()),
                  static_cast<double>(gold.size()));
}

struct EvalConfig {
  Unit unit = Unit::kWord;
  RankerSpec ranker;

  /// "word:digraph:all_degree", "phrase:tfidf".
  std::string id() const { return std::string(unit_name(unit)) + ":" + ranker.id(); }

  static EvalConfig parse(std::string_view id) {
    auto colon = id.find(':');
    if (colon == std::string_view::npos)
      throw Error("config id '" + std::string(id) + "' needs the form <unit>:<ranker>");
    return {parse_unit(id.substr(0, colon)), RankerSpec::parse(id.substr(colon + 1))};
  }
};

/// Every centrality variant on every network type for a unit.
inline std::vector<EvalConfig> all_centrality_configs(Unit unit) {
  std::vector<EvalConfig> out;
  for (NetworkType type : NetworkType::all())
    for (const auto& v : variant_catalog(type.directed))
      out.push_back({unit, RankerSpec::centrality(type, v)});
  return out;
}

struct SweepPoint {
  int k = 0;
  PRF micro;
  PRF macro;
};

struct ConfigReport {
  std::string config;
  std::size_t documents = 0;
  std::vector<SweepPoint> points;  // k = 5, 10, ..., 100
  double best_f = 0.0;
  int best_k = 0;
  double mean_f = 0.0;
  double std_f = 0.0;
  double macro_best_f = 0.0;
  int macro_best_k = 0;
  double macro_mean_f = 0.0;
  double macro_std_f = 0.0;
};

struct EvalReport {
  std::string gold_set;
  std::vector<ConfigReport> configs;
  std::map<std::string, std::vector<std::string>> skipped_documents;  // unit -> doc ids
  std::vector<MeasureFailure> failures;                               // config id, message

  const ConfigReport& find(const std::string& config) const {
    for (const auto& c : configs)
      if (c.config == config) return c;
    throw Error("config '" + config + "' not in report");
  }
};

namespace detail {

struct SummaryStats {
  double best = 0.0;
  int best_k = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Max (first k wins ties), mean and population standard deviation.
inline SummaryStats summarize(const std::vector<int>& ks, const std::vector<double>& fs) {
  SummaryStats s;
  s.best = -1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i] > s.best) {
      s.best = fs[i];
      s.best_k = ks[i];
    }
    sum += fs[i];
  }
  const double n = static_cast<double>(fs.size());
  s.mean = sum / n;
  double sq = 0.0;
  for (double f : fs) sq += (f - s.mean) * (f - s.mean);
  s.stddev = std::sqrt(sq / n);
  return s;
}

}  // namespace detail

/// Scores every config at k = 5..100 over the corpus. Micro figures sum
/// true positives and set sizes over documents before dividing; macro
/// figures average per-document P, R and F. Documents whose evaluated gold
/// set is empty are skipped and listed in the report. A config whose
/// measure fails on any document is dropped and listed under failures.
inline EvalReport sweep(const std::vector<Document>& corpus, const GoldCorpus& gold,
                        const std::string& gold_set, const std::vector<EvalConfig>& configs,
                        const StopwordSet& stopwords = default_stopwords(),
                        const CentralityConfig& cfg = {}) {
  std::vector<std::string> missing;
  for (const auto& d : corpus)
    if (!gold.contains(d.doc_id)) missing.push_back(d.doc_id);
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw Error("no gold annotations for documents: " + list);
  }

  EvalReport report;
  report.gold_set = gold_set;
  const auto ks = sweep_percents();

  struct UnitData {
    std::vector<PreparedDocument> docs;
    std::vector<TermSet> gold;
    CorpusStats stats;
  };
  std::map<Unit, UnitData> units;
  for (const auto& c : configs) {
    if (units.contains(c.unit)) continue;
    UnitData data;
    std::vector<TermCounts> counts;
    for (const auto& d : corpus) {
      auto prepared = prepare_document(d, c.unit, stopwords);
      counts.push_back(prepared.term_counts());
      TermSet g = gold.at(d.doc_id).set(gold_set);
      if (c.unit == Unit::kWord) g = unigram_gold(g);
      if (g.empty()) {
        report.skipped_documents[std::string(unit_name(c.unit))].push_back(d.doc_id);
        continue;
      }
      data.docs.push_back(std::move(prepared));
      data.gold.push_back(std::move(g));
    }
    if (!corpus.empty()) data.stats = build_corpus_stats(counts);
    units.emplace(c.unit, std::move(data));
  }

  for (const auto& c : configs) {
    const auto& data = units.at(c.unit);
    std::vector<std::vector<ScoredTerm>> rankings;
    try {
      for (const auto& doc : data.docs)
        rankings.push_back(rank_document(doc, c.ranker, &data.stats, cfg));
    } catch (const Error& e) {
      report.failures.push_back({c.id(), e.what()});
      continue;
    }

    ConfigReport cr;
    cr.config = c.id();
    cr.documents = data.docs.size();
    std::vector<double> micro_f, macro_f;
    for (int k : ks) {
      double tp = 0, predicted = 0, gold_total = 0;
      PRF macro;
      for (std::size_t i = 0; i < rankings.size(); ++i) {
        auto top = threshold(rankings[i], k);
        TermSet pred;
        for (const auto& t : top.terms) pred.insert(t.term);
        std::size_t hits = 0;
        for (const auto& t : pred) hits += data.gold[i].count(t);
        tp += static_cast<double>(hits);
        predicted += static_cast<double>(pred.size());
        gold_total += static_cast<double>(data.gold[i].size());
        PRF doc = score(pred, data.gold[i]);
        macro.precision += doc.precision;
        macro.recall += doc.recall;
        macro.f1 += doc.f1;
      }
      if (!rankings.empty()) {
        const double n = static_cast<double>(rankings.size());
        macro.precision /= n;
        macro.recall /= n;
        macro.f1 /= n;
      }
      SweepPoint p{k, make_prf(tp, predicted, gold_total), macro};
      micro_f.push_back(p.micro.f1);
      macro_f.push_back(p.macro.f1);
      cr.points.push_back(p);
    }
    auto mi = detail::summarize(ks, micro_f);
    auto ma = detail::summarize(ks, macro_f);
    cr.best_f = mi.best;
    cr.best_k = mi.best_k;
    cr.mean_f = mi.mean;
    cr.std_f = mi.stddev;
    cr.macro_best_f = ma.best;
    cr.macro_best_k = ma.best_k;
    cr.macro_mean_f = ma.mean;
    cr.macro_std_f = ma.stddev;
    report.configs.push_back(std::move(cr));
  }
  return report;
}

namespace detail {

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

/// One row per (config, k).
inline void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "config,k,precision,recall,f1,macro_precision,macro_recall,macro_f1\n";
  for (const auto& c : report.configs) {
    for (const auto& p : c.points) {
      out << c.config << ',' << p.k << ',' << detail::fixed6(p.micro.precision) << ','
          << detail::fixed6(p.micro.recall) << ',' << detail::fixed6(p.micro.f1) << ','
          << detail::fixed6(p.macro.precision) << ',' << detail::fixed6(p.macro.recall) << ','
          << detail::fixed6(p.macro.f1) << '\n';
    }
  }
}

/// One row per config: best F with its k, mean and std of F over the k grid.
inline void write_summary_csv(std::ostream& out, const EvalReport& report) {
  out << "config,documents,best_f,best_k,mean_f,std_f,macro_best_f,macro_best_k,macro_mean_f,"
         "macro_std_f\n";
  for (const auto& c : report.configs) {
    out << c.config << ',' << c.documents << ',' << detail::fixed6(c.best_f) << ',' << c.best_k
        << ',' << detail::fixed6(c.mean_f) << ',' << detail::fixed6(c.std_f) << ','
        << detail::fixed6(c.macro_best_f) << ',' << c.macro_best_k << ','
        << detail::fixed6(c.macro_mean_f) << ',' << detail::fixed6(c.macro_std_f) << '\n';
  }
}

inline nlohmann::json report_to_json(const EvalReport& report) {
  nlohmann::json configs = nlohmann::json::array();
  for (const auto& c : report.configs) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : c.points) {
      points.push_back({{"k", p.k},
                        {"precision", p.micro.precision},
                        {"recall", p.micro.recall},
                        {"f1", p.micro.f1},
                        {"macro_precision", p.macro.precision},
                        {"macro_recall", p.macro.recall},
                        {"macro_f1", p.macro.f1}});
    }
    configs.push_back({{"config", c.config},
                       {"documents", c.documents},
                       {"best_f", c.best_f},
                       {"best_k", c.best_k},
                       {"mean_f", c.mean_f},
                       {"std_f", c.std_f},
                       {"macro_best_f", c.macro_best_f},
                       {"macro_best_k", c.macro_best_k},
                       {"macro_mean_f", c.macro_mean_f},
                       {"macro_std_f", c.macro_std_f},
                       {"points", points}});
  }
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"config", f.variant_id}, {"message", f.message}});
  return {{"gold_set", report.gold_set},
          {"configs", configs},
          {"skipped_documents", report.skipped_documents},
          {"failures", failures}};
}

/// `k,precision,recall` for k = 5..100 (micro-averaged).
inline void export_pr_curve(std::ostream& out, const EvalReport& report,
                            const std::string& config) {
  const auto& c = report.find(config);
  out << "k,precision,recall\n";
  for (const auto& p : c.points)
    out << p.k << ',' << detail::fixed6(p.micro.precision) << ','
        << detail::fixed6(p.micro.recall) << '\n';
}

/// (score, number of nodes with that score), ascending by score.
inline std::vector<std::pair<double, std::size_t>> score_distribution(const CentralityResult& r) {
  std::map<double, std::size_t> freq;
  for (double s : r.scores) ++freq[s];
  return {freq.begin(), freq.end()};
}

inline void export_distribution(std::ostream& out, const CentralityResult& r) {
  out << "score,frequency\n";
  for (const auto& [s, n] : score_distribution(r))
    out << detail::format_number(s) << ',' << n << '\n';
}

/// Loads every `*.txt` file of a directory as a document keyed by its file
/// stem, sorted by doc id. A `<stem>.phrases` file next to it (or in
/// `phrase_dir`) supplies precomputed phrases.
inline std::vector<Document> load_corpus_dir(const std::string& dir,
                                             const std::string& phrase_dir = {}) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("corpus directory '" + dir + "' not found");
  std::vector<Document> docs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    Document d;
    d.doc_id = entry.path().stem().string();
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    d.text = buf.str();
    fs::path sidecar = fs::path(phrase_dir.empty() ? dir : phrase_dir) / (d.doc_id + ".phrases");
    if (fs::exists(sidecar))
      d.phrases = PhraseFileChunker::from_file(sidecar.string()).chunk({});
    docs.push_back(std::move(d));
  }
  std::sort(docs.begin(), docs.end(),
            [](const Document& a, const Document& b) { return a.doc_id < b.doc_id; });
  return docs;
}

}  // namespace keygraph

#endif  // KEYGRAPH_EVAL_HPP
