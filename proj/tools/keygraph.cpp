// keygraph: command-line front end and HTTP extraction service.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "keygraph/keygraph.hpp"
#include "keygraph/http.hpp"

namespace fs = std::filesystem;
using namespace keygraph;

namespace {

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Flags shared by extract and distribution.
struct MeasureFlags {
  std::string unit = "word";
  std::string measure = "degree";
  std::string mode;
  bool weighted = false;
  std::string interpretation;
  std::string graph = "directed";
  bool simplified = false;
  std::string phrases;
  std::string stopwords;

  void attach(CLI::App* cmd) {
    cmd->add_option("--unit", unit, "word or phrase")->check(CLI::IsMember({"word", "phrase"}));
    cmd->add_option("--measure", measure,
                    "measure name (degree, strength, neighborhood_size, coreness, clustering, "
                    "diversity, pagerank, hub, authority, betweenness, closeness, eigenvector, "
                    "tf, tfidf) or a full variant id");
    cmd->add_option("--mode", mode, "in, out or all")->check(CLI::IsMember({"in", "out", "all"}));
    cmd->add_flag("--weighted", weighted, "use edge weights where the measure supports it");
    cmd->add_option("--interpretation", interpretation,
                    "directed or undirected view for pagerank/betweenness/eigenvector")
        ->check(CLI::IsMember({"directed", "undirected"}));
    cmd->add_option("--graph", graph, "directed or undirected network")
        ->check(CLI::IsMember({"directed", "undirected"}));
    cmd->add_flag("--simplified", simplified, "remove self-loops");
    cmd->add_option("--phrases", phrases, "phrase sidecar file (phrase unit)");
    cmd->add_option("--stopwords", stopwords, "stopword file (default: bundled list)");
  }

  ExtractionRequest request(std::string text, int k) const {
    ExtractionRequest r;
    r.text = std::move(text);
    r.unit = parse_unit(unit);
    r.measure = measure;
    if (!mode.empty()) r.mode = parse_mode(mode);
    r.weighted = weighted;
    if (!interpretation.empty()) r.interpretation = parse_interpretation(interpretation);
    r.network = {graph == "directed", simplified};
    r.k_percent = k;
    if (!phrases.empty()) r.phrases = PhraseFileChunker::from_file(phrases).chunk({});
    try {
      r.validate();
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    return r;
  }

  StopwordSet stoplist() const {
    return stopwords.empty() ? default_stopwords() : load_stopwords(stopwords);
  }
};

int run_extract(const MeasureFlags& flags, const std::string& input, int top,
                const std::string& format, const std::string& dump_graph,
                const std::string& stats_path) {
  auto req = flags.request(read_input(input), top);
  auto stopwords = flags.stoplist();
  std::optional<CorpusStats> stats;
  if (!stats_path.empty()) stats = load_corpus_stats(stats_path);

  if (!dump_graph.empty()) {
    auto prepared = prepare_document({"input", req.text, req.phrases}, req.unit, stopwords);
    std::ofstream out(dump_graph);
    if (!out) throw UsageError("cannot write graph dump '" + dump_graph + "'");
    write_edge_list(out, prepared.network(req.network));
  }

  auto result = extract(req, stopwords, stats ? &*stats : nullptr);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  if (format == "json") {
    std::cout << ranked_to_json(result.ranked).dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < result.ranked.terms.size(); ++i) {
      const auto& t = result.ranked.terms[i];
      std::cout << i + 1 << '\t' << t.term << '\t' << detail::format_number(t.score) << '\n';
    }
  }
  return 0;
}

int run_distribution(const MeasureFlags& flags, const std::string& input) {
  auto req = flags.request(read_input(input), 100);
  auto ranker = req.ranker();
  if (ranker.kind != RankerSpec::Kind::kCentrality)
    throw UsageError("distribution needs a centrality measure");
  auto prepared = prepare_document({"input", req.text, req.phrases}, req.unit, flags.stoplist());
  auto net = prepared.network(req.network);
  export_distribution(std::cout, compute(net, ranker.variant));
  return 0;
}

std::vector<EvalConfig> evaluation_configs(const std::vector<Unit>& units,
                                           const std::string& configs,
                                           const std::string& baselines) {
  std::vector<EvalConfig> out;
  for (Unit unit : units) {
    if (configs == "all") {
      auto all = all_centrality_configs(unit);
      out.insert(out.end(), all.begin(), all.end());
    } else if (configs != "none") {
      for (const auto& id : split_commas(configs)) {
        try {
          if (id.rfind("word:", 0) == 0 || id.rfind("phrase:", 0) == 0) {
            auto c = EvalConfig::parse(id);
            if (c.unit == unit) out.push_back(c);
          } else {
            out.push_back({unit, RankerSpec::parse(id)});
          }
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
      }
    }
    for (const auto& b : split_commas(baselines)) {
      if (b == "tf")
        out.push_back({unit, RankerSpec::tf()});
      else if (b == "tfidf")
        out.push_back({unit, RankerSpec::tfidf()});
      else
        throw UsageError("unknown baseline '" + b + "'");
    }
  }
  return out;
}

int run_evaluate(const std::string& corpus_dir, const std::string& gold_path,
                 const std::string& out_dir, const std::string& unit,
                 const std::string& configs, const std::string& baselines,
                 const std::string& gold_set, const std::string& phrase_dir,
                 const std::string& stopword_path) {
  if (!fs::is_directory(corpus_dir)) throw UsageError("corpus directory not found: " + corpus_dir);
  if (!fs::exists(gold_path)) throw UsageError("gold file not found: " + gold_path);
  std::vector<Unit> units;
  if (unit == "both")
    units = {Unit::kWord, Unit::kPhrase};
  else
    units = {parse_unit(unit)};

  auto stopwords = stopword_path.empty() ? default_stopwords() : load_stopwords(stopword_path);
  auto corpus = load_corpus_dir(corpus_dir, phrase_dir);
  auto gold = load_gold_jsonl(gold_path);
  auto cfgs = evaluation_configs(units, configs, baselines);
  auto report = sweep(corpus, gold, gold_set, cfgs, stopwords);

  for (const auto& [u, ids] : report.skipped_documents)
    for (const auto& id : ids)
      std::cerr << "note: " << u << " evaluation skipped '" << id << "' (empty gold set)\n";
  for (const auto& f : report.failures)
    std::cerr << "warning: " << f.variant_id << " failed: " << f.message << '\n';

  fs::create_directories(fs::path(out_dir) / "pr");
  {
    std::ofstream out(fs::path(out_dir) / "report.csv");
    write_report_csv(out, report);
  }
  {
    std::ofstream out(fs::path(out_dir) / "summary.csv");
    write_summary_csv(out, report);
  }
  {
    std::ofstream out(fs::path(out_dir) / "report.json");
    out << report_to_json(report).dump(2) << '\n';
  }
  for (const auto& c : report.configs) {
    std::string name = c.config;
    for (char& ch : name)
      if (ch == ':') ch = '_';
    std::ofstream out(fs::path(out_dir) / "pr" / (name + ".csv"));
    export_pr_curve(out, report, c.config);
  }
  std::cerr << "wrote " << report.configs.size() << " configurations to " << out_dir << '\n';
  return 0;
}

int run_stats(const std::string& corpus_dir, const std::string& unit, const std::string& phrase_dir) {
  if (!fs::is_directory(corpus_dir)) throw UsageError("corpus directory not found: " + corpus_dir);
  std::vector<TermCounts> counts;
  for (const auto& d : load_corpus_dir(corpus_dir, phrase_dir))
    counts.push_back(prepare_document(d, parse_unit(unit)).term_counts());
  std::cout << corpus_stats_to_json(build_corpus_stats(counts)).dump(2) << '\n';
  return 0;
}

int run_serve(int port_flag) {
  auto options = service::Options::from_env();
  if (port_flag > 0) options.port = port_flag;
  httplib::Server server;
  service::mount_routes(server, options);
  std::cerr << "listening on port " << options.port << '\n';
  if (!server.listen("0.0.0.0", options.port)) {
    std::cerr << "error: cannot listen on port " << options.port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Keyword and keyphrase extraction with collocation-network centrality"};
  app.require_subcommand(1);

  MeasureFlags extract_flags;
  std::string extract_input = "-";
  int top = 5;
  std::string format = "text";
  std::string dump_graph;
  std::string stats_path;
  auto* extract_cmd = app.add_subcommand("extract", "rank the terms of one document");
  extract_flags.attach(extract_cmd);
  extract_cmd->add_option("--top", top, "keep the top k percent of terms")
      ->check(CLI::Range(1, 100));
  extract_cmd->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  extract_cmd->add_option("--dump-graph", dump_graph, "write the network as an edge list");
  extract_cmd->add_option("--corpus-stats", stats_path, "corpus statistics JSON for tfidf");
  extract_cmd->add_option("input", extract_input, "input text file ('-' for stdin)");

  MeasureFlags dist_flags;
  std::string dist_input = "-";
  auto* dist_cmd = app.add_subcommand("distribution", "score,frequency table of one measure");
  dist_flags.attach(dist_cmd);
  dist_cmd->add_option("input", dist_input, "input text file ('-' for stdin)");

  std::string corpus_dir, gold_path, out_dir = "report", eval_unit = "word",
                                     configs = "all", baselines, gold_set = "combined",
                                     phrase_dir, eval_stopwords;
  auto* eval_cmd = app.add_subcommand("evaluate", "P/R/F sweep over a corpus");
  eval_cmd->add_option("--corpus", corpus_dir, "directory of <doc_id>.txt files")->required();
  eval_cmd->add_option("--gold", gold_path, "gold standard JSON Lines file")->required();
  eval_cmd->add_option("--out", out_dir, "output directory");
  eval_cmd->add_option("--unit", eval_unit, "word, phrase or both")
      ->check(CLI::IsMember({"word", "phrase", "both"}));
  eval_cmd->add_option("--configs", configs,
                       "'all', 'none', or comma-separated ids like digraph:all_degree");
  eval_cmd->add_option("--baselines", baselines, "comma-separated: tf,tfidf");
  eval_cmd->add_option("--gold-set", gold_set, "annotation set name, or 'combined'");
  eval_cmd->add_option("--phrases-dir", phrase_dir, "directory of <doc_id>.phrases files");
  eval_cmd->add_option("--stopwords", eval_stopwords, "stopword file");

  std::string stats_corpus, stats_unit = "word", stats_phrases;
  auto* stats_cmd = app.add_subcommand("stats", "print corpus statistics JSON for tfidf");
  stats_cmd->add_option("--corpus", stats_corpus, "directory of <doc_id>.txt files")->required();
  stats_cmd->add_option("--unit", stats_unit, "word or phrase")
      ->check(CLI::IsMember({"word", "phrase"}));
  stats_cmd->add_option("--phrases-dir", stats_phrases, "directory of <doc_id>.phrases files");

  int port = 0;
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP extraction service");
  serve_cmd->add_option("--port", port, "port (default: $KEYGRAPH_PORT or 8080)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*extract_cmd)
      return run_extract(extract_flags, extract_input, top, format, dump_graph, stats_path);
    if (*dist_cmd) return run_distribution(dist_flags, dist_input);
    if (*eval_cmd)
      return run_evaluate(corpus_dir, gold_path, out_dir, eval_unit, configs, baselines,
                          gold_set, phrase_dir, eval_stopwords);
    if (*stats_cmd) return run_stats(stats_corpus, stats_unit, stats_phrases);
    if (*serve_cmd) return run_serve(port);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
