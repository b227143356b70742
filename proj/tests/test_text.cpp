#include <gtest/gtest.h>

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>

#include "keygraph/text.hpp"

using namespace keygraph;
using Tokens = std::vector<std::string>;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string join(const Tokens& t) {
  std::string s;
  for (const auto& w : t) s += (s.empty() ? "" : " ") + w;
  return s;
}

}  // namespace

TEST(Stopwords, BundledListIsPinned) {
  const auto data = read_file(KEYGRAPH_SOURCE_DIR "/data/stopwords.txt");
  EXPECT_EQ(fnv1a(data), 0xb230dfa3a9b4c7daULL);
  std::istringstream in(data);
  EXPECT_EQ(read_stopwords(in), default_stopwords());
  EXPECT_TRUE(default_stopwords().contains("the"));
  EXPECT_FALSE(default_stopwords().contains("met"));
}

TEST(NormalizeToken, StripsPunctuationAndLowercases) {
  EXPECT_EQ(normalize_token("Egypt's"), "egypts");
  EXPECT_EQ(normalize_token("Egypt’s"), "egypts");
  EXPECT_EQ(normalize_token("(House)."), "house");
  EXPECT_EQ(normalize_token("well-known"), "wellknown");
  EXPECT_EQ(normalize_token("--"), "");
  EXPECT_EQ(normalize_token("ÉCOLE"), "école");
}

TEST(NormalizeToken, NumericDetection) {
  EXPECT_TRUE(is_numeric("42"));
  EXPECT_TRUE(is_numeric(""));
  EXPECT_FALSE(is_numeric("a1b"));
  EXPECT_FALSE(is_numeric("été"));
}

TEST(PreprocessWords, WorkedExamples) {
  EXPECT_EQ(preprocess_words("The White House officials.").tokens,
            (Tokens{"white", "house", "officials"}));
  EXPECT_TRUE(preprocess_words("a an of 42 7%").tokens.empty());
  EXPECT_EQ(preprocess_words("Learning vs. learnability").tokens,
            (Tokens{"learning", "learnability"}));
}

TEST(PreprocessWords, EmptyInput) {
  auto doc = preprocess_words("   \n\t ");
  EXPECT_TRUE(doc.tokens.empty());
  EXPECT_TRUE(doc.sentence_boundaries.empty());
}

TEST(PreprocessWords, UnicodeWhitespaceSplits) {
  EXPECT_EQ(preprocess_words("white house officials").tokens,
            (Tokens{"white", "house", "officials"}));
}

TEST(PreprocessWords, CarriesSentenceBoundaries) {
  auto doc = preprocess_words("The cat sat. A dog ran far! Of it.");
  EXPECT_EQ(doc.tokens, (Tokens{"cat", "sat", "dog", "ran", "far"}));
  EXPECT_EQ(doc.sentence_boundaries, (std::vector<std::size_t>{2, 5}));
}

TEST(PreprocessWords, PropertiesOnRandomText) {
  std::mt19937 rng(11);
  const std::vector<std::string> vocab = {
      "The", "white", "HOUSE", "of", "42", "a", "it's", "Egypt's", "(policy)", "x",
      "ab", "abc", "---", "3.14", "co-op", "senior.", "aid,", "Été", "don't", "well"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const int n = rng() % 40;
    for (int i = 0; i < n; ++i) text += vocab[rng() % vocab.size()] + (rng() % 5 ? " " : ". ");
    auto doc = preprocess_words(text);
    for (const auto& t : doc.tokens) {
      EXPECT_GE(utf8::length(t), 3u);
      EXPECT_FALSE(default_stopwords().contains(t));
      EXPECT_FALSE(is_numeric(t));
      EXPECT_EQ(normalize_token(t), t);
    }
    EXPECT_EQ(preprocess_words(join(doc.tokens)).tokens, doc.tokens);
    if (!doc.tokens.empty()) {
      ASSERT_FALSE(doc.sentence_boundaries.empty());
      EXPECT_EQ(doc.sentence_boundaries.back(), doc.tokens.size());
      for (std::size_t i = 1; i < doc.sentence_boundaries.size(); ++i)
        EXPECT_LT(doc.sentence_boundaries[i - 1], doc.sentence_boundaries[i]);
    }
  }
}

TEST(SegmentSentences, TerminalPunctuation) {
  auto doc = segment_sentences("A b. C d e.");
  EXPECT_EQ(doc.tokens, (Tokens{"a", "b", "c", "d", "e"}));
  EXPECT_EQ(doc.sentence_boundaries, (std::vector<std::size_t>{2, 5}));
}

TEST(SegmentSentences, NoTerminalPunctuationIsOneSentence) {
  auto doc = segment_sentences("one two three four");
  EXPECT_EQ(doc.sentence_boundaries, (std::vector<std::size_t>{4}));
}

TEST(SegmentSentences, NaiveSplitAfterAbbreviation) {
  auto doc = segment_sentences("Dr. Smith ran.");
  EXPECT_EQ(doc.sentence_boundaries, (std::vector<std::size_t>{1, 3}));
}

TEST(SegmentSentences, ClosingQuotesAndLoosePunctuation) {
  auto doc = segment_sentences("He said \"stop.\" Then left ! Done");
  EXPECT_EQ(doc.tokens, (Tokens{"he", "said", "stop", "then", "left", "done"}));
  EXPECT_EQ(doc.sentence_boundaries, (std::vector<std::size_t>{3, 5, 6}));
}

TEST(ChunkNounPhrases, SidecarListIsDeduplicated) {
  PhraseFileChunker chunker({"white house", "officials", "White  House"});
  EXPECT_EQ(chunk_noun_phrases("ignored", chunker).phrases,
            (Tokens{"white house", "officials"}));
}

TEST(ChunkNounPhrases, DropsPhrasesLongerThanFiveWords) {
  PhraseFileChunker chunker({"a b c d e f", "a b c d e"});
  EXPECT_EQ(chunk_noun_phrases("", chunker).phrases, (Tokens{"a b c d e"}));
}

TEST(ChunkNounPhrases, FallbackChunkerRuns) {
  FallbackChunker chunker;
  EXPECT_EQ(chunk_noun_phrases("white house officials met the senior aide", chunker).phrases,
            (Tokens{"white house officials met", "senior aide"}));
}

TEST(ChunkNounPhrases, FallbackBreaksOnPunctuationAndNumbers) {
  FallbackChunker chunker;
  EXPECT_EQ(chunk_noun_phrases("Egypt's army, in 2013 seized (state media).", chunker).phrases,
            (Tokens{"egypts army", "seized", "state media"}));
}

TEST(ChunkNounPhrases, ChunkerFailureNamesDocument) {
  struct Broken : Chunker {
    std::vector<std::string> chunk(std::string_view) const override {
      throw std::runtime_error("model missing");
    }
  };
  try {
    chunk_noun_phrases("text", Broken{}, "doc-17");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("doc-17"), std::string::npos);
  }
}

TEST(ChunkNounPhrases, EmptyResultIsValid) {
  FallbackChunker chunker;
  EXPECT_TRUE(chunk_noun_phrases("the of and 12", chunker).empty());
}

TEST(ChunkNounPhrases, PhraseFileFromStream) {
  std::istringstream in("white house\r\n\nsenior aide\n");
  auto chunker = PhraseFileChunker::from_stream(in);
  EXPECT_EQ(chunker.chunk(""), (Tokens{"white house", "senior aide"}));
  EXPECT_THROW(PhraseFileChunker::from_file("/nonexistent/file.phrases"), Error);
}

TEST(ChunkNounPhrases, OutputNeverExceedsFiveWords) {
  std::mt19937 rng(3);
  FallbackChunker chunker;
  const std::vector<std::string> vocab = {"alpha", "beta", "gamma", "delta", "the", "of",
                                          "epsilon,", "zeta.", "eta", "theta"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    for (int i = 0; i < 30; ++i) text += vocab[rng() % vocab.size()] + " ";
    for (const auto& p : chunk_noun_phrases(text, chunker).phrases)
      EXPECT_LE(phrase_words(p).size(), kMaxPhraseWords);
  }
}
