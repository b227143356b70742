#include <gtest/gtest.h>

#include <random>

#include "keygraph/builders.hpp"
#include "oracles.hpp"

using namespace keygraph;
using Tokens = std::vector<std::string>;

namespace {

TokenizedDocument doc_of(Tokens tokens) {
  TokenizedDocument d;
  d.tokens = std::move(tokens);
  d.sentence_boundaries = {d.tokens.size()};
  return d;
}

double w(const CollocationNetwork& net, const char* a, const char* b) {
  auto u = net.find(a);
  auto v = net.find(b);
  if (!u || !v) return -1.0;
  return net.weight(*u, *v);
}

}  // namespace

TEST(WordNetwork, BigramEdges) {
  auto net = build_word_network(doc_of({"white", "house", "officials", "white", "house"}), true,
                                false);
  EXPECT_EQ(net.node_count(), 3u);
  EXPECT_EQ(net.edge_count(), 3u);
  EXPECT_DOUBLE_EQ(w(net, "white", "house"), 2.0);
  EXPECT_DOUBLE_EQ(w(net, "house", "officials"), 1.0);
  EXPECT_DOUBLE_EQ(w(net, "officials", "white"), 1.0);
  EXPECT_EQ(net.node(*net.find("white")).term_frequency, 2u);
}

TEST(WordNetwork, SelfLoopAndSimplification) {
  auto full = build_word_network(doc_of({"cat", "cat"}), true, false);
  EXPECT_DOUBLE_EQ(w(full, "cat", "cat"), 1.0);
  auto simple = build_word_network(doc_of({"cat", "cat"}), true, true);
  EXPECT_EQ(simple.node_count(), 1u);
  EXPECT_EQ(simple.edge_count(), 0u);
}

TEST(WordNetwork, UndirectedVariant) {
  auto net = build_word_network(doc_of({"a1b", "c2d"}), false, false);
  EXPECT_FALSE(net.directed());
  EXPECT_DOUBLE_EQ(w(net, "c2d", "a1b"), 1.0);
}

TEST(WordNetwork, SingleTokenAndEmpty) {
  auto one = build_word_network(doc_of({"lonely"}), true, false);
  EXPECT_EQ(one.node_count(), 1u);
  EXPECT_EQ(one.edge_count(), 0u);
  EXPECT_TRUE(build_word_network(doc_of({}), false, true).empty());
}

TEST(WordNetwork, PropertiesOnRandomStreams) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens tokens;
    const int n = 1 + rng() % 60;
    for (int i = 0; i < n; ++i) tokens.push_back("w" + std::to_string(rng() % 12));
    auto d = doc_of(tokens);
    auto net = build_word_network(d, true, false);
    EXPECT_DOUBLE_EQ(net.total_weight(), static_cast<double>(tokens.size() - 1));
    std::set<std::string> unique(tokens.begin(), tokens.end());
    EXPECT_EQ(net.node_count(), unique.size());
    EXPECT_EQ(simplify(to_undirected(net)), build_word_network(d, false, true));
    EXPECT_EQ(build_word_network(d, false, true).node_count(), unique.size());
  }
}

TEST(MedianWindow, Examples) {
  EXPECT_EQ(median_window(std::vector<std::size_t>{3, 5, 7}).size, 5u);
  EXPECT_EQ(median_window(std::vector<std::size_t>{4, 6}).size, 5u);
  EXPECT_EQ(median_window(std::vector<std::size_t>{1}).size, 2u);
  EXPECT_EQ(median_window(std::vector<std::size_t>{7, 3, 4}).size, 4u);
  EXPECT_EQ(median_window(std::vector<std::size_t>{4, 5}).size, 5u);  // 4.5 rounds up
  EXPECT_THROW(median_window(std::vector<std::size_t>{}), Error);
  EXPECT_EQ(median_window(segment_sentences("A b. C d e. F g h i.")).size, 3u);
}

TEST(PhraseNetwork, WorkedExample) {
  auto d = doc_of({"the", "white", "house", "officials", "met", "white", "house", "staff"});
  PhraseList phrases{{"white house", "officials", "staff"}};
  auto net = build_phrase_network(d, phrases, WindowSpec{4}, true, false);
  oracle::EdgeCounts expected = {
      {{"white house", "officials"}, 1}, {{"white house", "white house"}, 1},
      {{"officials", "white house"}, 1}, {{"officials", "staff"}, 1},
      {{"white house", "staff"}, 1}};
  EXPECT_EQ(oracle::edge_counts(net), expected);
  EXPECT_EQ(net.node(*net.find("white house")).term_frequency, 2u);
}

TEST(PhraseNetwork, SingleOccurrenceHasNoEdges) {
  auto net = build_phrase_network(doc_of({"senior", "aide", "left"}), PhraseList{{"senior aide"}},
                                  WindowSpec{3}, true, false);
  EXPECT_EQ(net.node_count(), 1u);
  EXPECT_EQ(net.edge_count(), 0u);
}

TEST(PhraseNetwork, StopwordPhraseRemoved) {
  auto net = build_phrase_network(doc_of({"at", "home", "at", "work"}), PhraseList{{"at"}},
                                  WindowSpec{3}, true, false);
  EXPECT_TRUE(net.empty());
}

TEST(PhraseNetwork, ShortWordPhraseRemovedWithItsEdges) {
  auto d = doc_of({"new", "us", "policy", "new", "plan"});
  PhraseList phrases{{"us policy", "new", "plan"}};
  auto net = build_phrase_network(d, phrases, WindowSpec{5}, true, false);
  EXPECT_FALSE(net.find("us policy"));
  EXPECT_DOUBLE_EQ(w(net, "new", "new"), 1.0);
  EXPECT_DOUBLE_EQ(w(net, "new", "plan"), 2.0);
}

TEST(PhraseNetwork, LongestMatchAtEachPosition) {
  // "white house" wins over "white" at position 0; "house" still starts at 1.
  auto d = doc_of({"white", "house", "staff"});
  PhraseList phrases{{"white", "white house", "house", "staff"}};
  auto occ = find_phrase_occurrences(d, phrases);
  ASSERT_EQ(occ.size(), 3u);
  EXPECT_EQ(occ[0], (PhraseOccurrence{1, 0}));
  EXPECT_EQ(occ[1], (PhraseOccurrence{2, 1}));
  EXPECT_EQ(occ[2], (PhraseOccurrence{3, 2}));
}

TEST(PhraseNetwork, PrefixThatNeverCompletes) {
  // "big red dog" is listed but only "big red cat" occurs; "big" must still match.
  auto d = doc_of({"big", "red", "cat"});
  PhraseList phrases{{"big red dog", "big", "cat"}};
  auto occ = find_phrase_occurrences(d, phrases);
  ASSERT_EQ(occ.size(), 2u);
  EXPECT_EQ(occ[0], (PhraseOccurrence{1, 0}));
  EXPECT_EQ(occ[1], (PhraseOccurrence{2, 2}));
}

TEST(PhraseNetwork, UndirectedAndSimplifiedVariants) {
  auto d = doc_of({"the", "white", "house", "officials", "met", "white", "house", "staff"});
  PhraseList phrases{{"white house", "officials", "staff"}};
  auto directed = build_phrase_network(d, phrases, WindowSpec{4}, true, false);
  auto undirected = build_phrase_network(d, phrases, WindowSpec{4}, false, true);
  EXPECT_EQ(undirected, simplify(to_undirected(directed)));
  EXPECT_DOUBLE_EQ(w(undirected, "officials", "white house"), 2.0);
}

TEST(PhraseNetwork, RejectsTinyWindow) {
  EXPECT_THROW(build_phrase_network(doc_of({"a"}), PhraseList{}, WindowSpec{1}, true, false),
               Error);
}

TEST(PhraseNetwork, MatchesQuadraticOracleOnRandomDocuments) {
  std::mt19937 rng(2024);
  const std::vector<std::string> vocab = {"alpha", "beta", "gamma", "delta", "omega",
                                          "sigma", "kappa", "the", "of"};
  for (int trial = 0; trial < 300; ++trial) {
    Tokens tokens;
    const int n = rng() % 80;
    for (int i = 0; i < n; ++i) tokens.push_back(vocab[rng() % vocab.size()]);
    std::vector<std::vector<std::string>> phrase_words_list;
    PhraseList phrases;
    std::set<std::string> seen;
    const int m = 1 + rng() % 8;
    for (int i = 0; i < m; ++i) {
      Tokens words;
      const int len = 1 + rng() % 3;
      for (int j = 0; j < len; ++j) words.push_back(vocab[rng() % 7]);
      std::string joined;
      for (const auto& x : words) joined += (joined.empty() ? "" : " ") + x;
      if (!seen.insert(joined).second) continue;
      phrases.phrases.push_back(joined);
      phrase_words_list.push_back(words);
    }
    const std::size_t window = 2 + rng() % 8;
    auto net = build_phrase_network(doc_of(tokens), phrases, WindowSpec{window}, true, false);
    EXPECT_EQ(oracle::edge_counts(net), oracle::naive_phrase_edges(tokens, phrase_words_list, window))
        << "trial " << trial;
  }
}
