#ifndef KEYGRAPH_TEXT_HPP
#define KEYGRAPH_TEXT_HPP

#include <cstddef>
#include <fstream>
#include <istream>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "keygraph/graph.hpp"
#include "keygraph/stopwords.hpp"

namespace keygraph {

inline constexpr std::size_t kMaxPhraseWords = 5;
inline constexpr std::size_t kMinWordLength = 3;

namespace utf8 {

inline constexpr char32_t kInvalid = 0xFFFD;

/// Decodes the code point starting at `pos` and advances `pos` past it.
/// Malformed sequences decode to U+FFFD and consume one byte.
inline char32_t next(std::string_view s, std::size_t& pos) {
  const auto b0 = static_cast<unsigned char>(s[pos]);
  if (b0 < 0x80) {
    ++pos;
    return b0;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kInvalid;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += len;
  return cp;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for (std::size_t pos = 0; pos < s.size(); ++n) next(s, pos);
  return n;
}

}  // namespace utf8

namespace chars {

inline bool is_space(char32_t c) {
  return c == ' ' || (c >= 0x09 && c <= 0x0D) || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F ||
         c == 0x205F || c == 0x3000;
}

inline bool is_ascii_digit(char32_t c) { return c >= '0' && c <= '9'; }
inline bool is_ascii_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

// Non-ASCII punctuation and symbol blocks common in English prose.
inline bool is_non_ascii_punct(char32_t c) {
  if (c >= 0xA0 && c <= 0xBF) return c != 0xAA && c != 0xB5 && c != 0xBA;
  return c == 0xD7 || c == 0xF7 || c == utf8::kInvalid || (c >= 0x2000 && c <= 0x206F) ||
         (c >= 0x20A0 && c <= 0x20CF) || (c >= 0x2100 && c <= 0x214F) ||
         (c >= 0x2190 && c <= 0x2BFF) || (c >= 0x3000 && c <= 0x303F) ||
         (c >= 0xFE30 && c <= 0xFE4F) || (c >= 0xFF01 && c <= 0xFF0F) ||
         (c >= 0xFF1A && c <= 0xFF20) || (c >= 0xFF3B && c <= 0xFF40) ||
         (c >= 0xFF5B && c <= 0xFF65) || (c >= 0x1F000 && c <= 0x1FAFF);
}

/// Letters and digits survive normalization; everything else is punctuation.
inline bool is_alnum(char32_t c) {
  if (c < 0x80) return is_ascii_alpha(c) || is_ascii_digit(c);
  return !is_space(c) && !is_non_ascii_punct(c);
}

inline bool is_alpha(char32_t c) { return is_alnum(c) && !is_ascii_digit(c); }

inline char32_t to_lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

}  // namespace chars

using StopwordSet = std::unordered_set<std::string>;

inline const StopwordSet& default_stopwords() {
  static const StopwordSet set = [] {
    StopwordSet s;
    for (auto w : kEnglishStopwords) s.emplace(w);
    return s;
  }();
  return set;
}

/// One lowercase token per line; blank lines and '#' comments are skipped.
inline StopwordSet read_stopwords(std::istream& in) {
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    set.insert(line);
  }
  return set;
}

inline StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword file '" + path + "'");
  return read_stopwords(in);
}

/// Lowercases and removes every non-alphanumeric code point, so
/// "Egypt's" becomes "egypts" and "(house)." becomes "house".
inline std::string normalize_token(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t pos = 0; pos < raw.size();) {
    char32_t c = utf8::next(raw, pos);
    if (chars::is_alnum(c)) utf8::append(out, chars::to_lower(c));
  }
  return out;
}

/// A token is numeric when it has no alphabetic character.
inline bool is_numeric(std::string_view token) {
  for (std::size_t pos = 0; pos < token.size();)
    if (chars::is_alpha(utf8::next(token, pos))) return false;
  return true;
}

/// Splits on Unicode whitespace.
inline std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> pieces;
  std::size_t start = std::string_view::npos;
  for (std::size_t pos = 0; pos < text.size();) {
    std::size_t here = pos;
    char32_t c = utf8::next(text, pos);
    if (chars::is_space(c)) {
      if (start != std::string_view::npos) pieces.push_back(text.substr(start, here - start));
      start = std::string_view::npos;
    } else if (start == std::string_view::npos) {
      start = here;
    }
  }
  if (start != std::string_view::npos) pieces.push_back(text.substr(start));
  return pieces;
}

namespace detail {

inline bool is_closer(char32_t c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}' || c == 0x2019 ||
         c == 0x201D || c == 0xBB;
}

inline std::vector<char32_t> decode_all(std::string_view s) {
  std::vector<char32_t> cps;
  for (std::size_t pos = 0; pos < s.size();) cps.push_back(utf8::next(s, pos));
  return cps;
}

/// True when the raw whitespace piece ends in . ! or ?, ignoring closing
/// quotes and brackets.
inline bool ends_sentence(std::string_view piece) {
  auto cps = decode_all(piece);
  while (!cps.empty() && is_closer(cps.back())) cps.pop_back();
  if (cps.empty()) return false;
  char32_t last = cps.back();
  return last == '.' || last == '!' || last == '?';
}

inline bool starts_with_punct(std::string_view piece) {
  std::size_t pos = 0;
  return !piece.empty() && !chars::is_alnum(utf8::next(piece, pos));
}

inline bool ends_with_punct(std::string_view piece) {
  auto cps = decode_all(piece);
  return !cps.empty() && !chars::is_alnum(cps.back());
}

}  // namespace detail

/// Token stream of one document plus its sentence structure.
///
/// `sentence_boundaries[i]` is the number of tokens up to and including the
/// end of sentence i, so the last boundary equals the token count.
struct TokenizedDocument {
  std::string doc_id;
  std::vector<std::string> tokens;
  std::vector<std::size_t> sentence_boundaries;

  std::vector<std::size_t> sentence_lengths() const {
    std::vector<std::size_t> lengths;
    std::size_t prev = 0;
    for (auto b : sentence_boundaries) {
      lengths.push_back(b - prev);
      prev = b;
    }
    return lengths;
  }

  bool empty() const { return tokens.empty(); }
};

/// Splits text into normalized tokens and sentences. Sentences end at a
/// token whose last character is terminal punctuation. Tokens that normalize
/// to nothing (pure punctuation) are dropped but still close a sentence.
inline TokenizedDocument segment_sentences(std::string_view text, std::string doc_id = {}) {
  TokenizedDocument doc;
  doc.doc_id = std::move(doc_id);
  auto close_sentence = [&doc] {
    std::size_t n = doc.tokens.size();
    if (n > 0 && (doc.sentence_boundaries.empty() || doc.sentence_boundaries.back() < n))
      doc.sentence_boundaries.push_back(n);
  };
  for (auto piece : split_whitespace(text)) {
    std::string token = normalize_token(piece);
    if (!token.empty()) doc.tokens.push_back(std::move(token));
    if (detail::ends_sentence(piece)) close_sentence();
  }
  close_sentence();
  return doc;
}

inline bool is_content_word(std::string_view token, const StopwordSet& stopwords) {
  return !token.empty() && !is_numeric(token) && utf8::length(token) >= kMinWordLength &&
         !stopwords.contains(std::string(token));
}

/// Word-network preprocessing: lowercase, drop punctuation, numbers,
/// stopwords and words of two characters or less. No stemming. Sentence
/// boundaries are carried over onto the filtered stream.
inline TokenizedDocument preprocess_words(std::string_view text,
                                          const StopwordSet& stopwords = default_stopwords(),
                                          std::string doc_id = {}) {
  TokenizedDocument raw = segment_sentences(text, std::move(doc_id));
  TokenizedDocument out;
  out.doc_id = std::move(raw.doc_id);
  std::size_t next_boundary = 0;
  for (std::size_t i = 0; i < raw.tokens.size(); ++i) {
    if (is_content_word(raw.tokens[i], stopwords)) out.tokens.push_back(std::move(raw.tokens[i]));
    if (next_boundary < raw.sentence_boundaries.size() &&
        raw.sentence_boundaries[next_boundary] == i + 1) {
      ++next_boundary;
      std::size_t n = out.tokens.size();
      if (n > 0 && (out.sentence_boundaries.empty() || out.sentence_boundaries.back() < n))
        out.sentence_boundaries.push_back(n);
    }
  }
  return out;
}

struct PhraseList {
  std::vector<std::string> phrases;

  std::size_t size() const { return phrases.size(); }
  bool empty() const { return phrases.empty(); }
};

/// Splits a phrase into normalized words; empty words are dropped.
inline std::vector<std::string> phrase_words(std::string_view phrase) {
  std::vector<std::string> words;
  for (auto piece : split_whitespace(phrase)) {
    auto w = normalize_token(piece);
    if (!w.empty()) words.push_back(std::move(w));
  }
  return words;
}

inline std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

/// Source of candidate noun phrases for a document.
class Chunker {
 public:
  virtual ~Chunker() = default;
  virtual std::vector<std::string> chunk(std::string_view text) const = 0;
};

/// Serves a precomputed phrase list, typically the output of an external
/// chunker saved as a sidecar file (one phrase per line).
class PhraseFileChunker : public Chunker {
 public:
  explicit PhraseFileChunker(std::vector<std::string> phrases) : phrases_(std::move(phrases)) {}

  static PhraseFileChunker from_stream(std::istream& in) {
    std::vector<std::string> phrases;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) phrases.push_back(line);
    }
    return PhraseFileChunker(std::move(phrases));
  }

  static PhraseFileChunker from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open phrase file '" + path + "'");
    return from_stream(in);
  }

  std::vector<std::string> chunk(std::string_view) const override { return phrases_; }

 private:
  std::vector<std::string> phrases_;
};

/// Maximal runs of non-stopword, non-numeric tokens. Punctuation attached
/// to a token (a trailing comma, an opening bracket) also ends a run.
class FallbackChunker : public Chunker {
 public:
  explicit FallbackChunker(const StopwordSet& stopwords = default_stopwords())
      : stopwords_(&stopwords) {}

  std::vector<std::string> chunk(std::string_view text) const override {
    std::vector<std::string> out;
    std::vector<std::string> run;
    auto flush = [&] {
      if (!run.empty()) out.push_back(join_words(run));
      run.clear();
    };
    for (auto piece : split_whitespace(text)) {
      std::string token = normalize_token(piece);
      if (token.empty() || is_numeric(token) || stopwords_->contains(token)) {
        flush();
        continue;
      }
      if (detail::starts_with_punct(piece)) flush();
      run.push_back(std::move(token));
      if (detail::ends_with_punct(piece)) flush();
    }
    flush();
    return out;
  }

 private:
  const StopwordSet* stopwords_;
};

/// Runs the chunker and normalizes its output: lowercase, single-spaced,
/// unique (first occurrence wins), at most five words per phrase.
inline PhraseList chunk_noun_phrases(std::string_view text, const Chunker& chunker,
                                     std::string_view doc_id = {}) {
  std::vector<std::string> raw;
  try {
    raw = chunker.chunk(text);
  } catch (const std::exception& e) {
    throw Error("chunker failed on document '" + std::string(doc_id) + "': " + e.what());
  }
  PhraseList list;
  std::unordered_set<std::string> seen;
  for (const auto& phrase : raw) {
    auto words = phrase_words(phrase);
    if (words.empty() || words.size() > kMaxPhraseWords) continue;
    auto joined = join_words(words);
    if (seen.insert(joined).second) list.phrases.push_back(std::move(joined));
  }
  return list;
}

}  // namespace keygraph

#endif  // KEYGRAPH_TEXT_HPP
