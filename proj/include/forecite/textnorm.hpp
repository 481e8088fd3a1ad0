#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "forecite/corpus.hpp"

namespace forecite {

// Coarse part-of-speech tags shared by the built-in tagger and the tagged
// interchange format.
enum class Pos { Noun, Propn, Adj, Verb, Det, Adp, Conj, Num, Punct, Other };

std::string_view to_string(Pos pos);
std::optional<Pos> parse_pos(std::string_view name);

struct TaggedToken {
  std::string surface;
  std::string lemma;  // empty until lemmatized
  Pos pos = Pos::Other;

  bool operator==(const TaggedToken&) const = default;
};

inline constexpr std::size_t kMaxPhraseTokens = 8;

class StopwordSet {
 public:
  // The pinned 179-word English list shipped in data/stopwords.txt.
  static const StopwordSet& standard();
  static StopwordSet from_file(const std::filesystem::path& path);
  static StopwordSet from_text(std::string_view text);

  bool contains(std::string_view word) const { return words_.contains(std::string(word)); }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Splits on whitespace and punctuation. Hyphens, apostrophes and digit
// separators between word characters stay inside the token. Punctuation is
// emitted as one token per character.
std::vector<std::string> tokenize(std::string_view text);

// Rule/lexicon tagger. Lemmas are left empty.
std::vector<TaggedToken> pos_tag(std::span<const std::string> tokens);

std::string lemmatize(std::string_view token, Pos pos);

// Unicode-aware lowercasing for ASCII, Latin-1 and basic Greek.
std::string to_lower(std::string_view text);

// tokenize + pos_tag + lemmatize.
std::vector<TaggedToken> analyze_text(std::string_view text);

// Half-open token range [begin, end).
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  auto operator<=>(const TokenSpan&) const = default;
};

// Maximal (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN) spans plus every sub-span of
// up to kMaxPhraseTokens tokens that also ends in a noun. Sorted by
// (begin, end), no duplicates.
std::vector<TokenSpan> chunk_noun_phrases(std::span<const TaggedToken> tokens);

// Normalized candidate phrase: 1..8 lowercase lemmas, no stopwords. Identity
// is the space-joined canonical text.
class PhraseKey {
 public:
  // Builds a key from already-normalized lemmas. Returns nullopt when the
  // token count is outside 1..8 or a token is empty or contains whitespace.
  static std::optional<PhraseKey> from_lemmas(std::vector<std::string> lemmas);
  // Splits canonical text on single spaces.
  static std::optional<PhraseKey> parse(std::string_view canonical);

  const std::string& text() const { return text_; }
  std::span<const std::string> lemmas() const { return lemmas_; }
  std::size_t size() const { return lemmas_.size(); }

  bool operator==(const PhraseKey& other) const { return text_ == other.text_; }
  auto operator<=>(const PhraseKey& other) const { return text_ <=> other.text_; }

 private:
  std::vector<std::string> lemmas_;
  std::string text_;
};

// True when a token never takes part in phrase identity: stopwords, "using"
// and numbers. Phrase normalization and document streams share this test.
bool is_dropped_token(const TaggedToken& token, const StopwordSet& stopwords);

std::optional<PhraseKey> normalize_phrase(std::span<const TaggedToken> tokens,
                                          const StopwordSet& stopwords = StopwordSet::standard());

enum class Section { Title = 0, Abstract = 1, Body = 2 };
inline constexpr std::array<Section, 3> kSections{Section::Title, Section::Abstract, Section::Body};
std::string_view to_string(Section section);

// One line of the tagged interchange file.
struct TaggedDocument {
  std::string id;
  std::array<std::vector<TaggedToken>, 3> sections;

  const std::vector<TaggedToken>& section(Section s) const { return sections[static_cast<std::size_t>(s)]; }
};

// Parses one interchange line. Throws RecordError on schema violations.
TaggedDocument parse_tagged_document(std::string_view line, std::size_t line_number = 0);
std::string to_json_line(const TaggedDocument& doc);

struct TaggedStoreReport {
  std::size_t documents = 0;
  std::vector<std::string> warnings;
};

// Externally tagged documents keyed by paper id.
class TaggedStore {
 public:
  static TaggedStore read(std::istream& in, TaggedStoreReport* report = nullptr);
  static TaggedStore load(const std::filesystem::path& path, TaggedStoreReport* report = nullptr);

  void add(TaggedDocument doc);
  const TaggedDocument* find(std::string_view id) const;
  std::size_t size() const { return docs_.size(); }

  // Warnings for corpus papers with no tagged document and tagged documents
  // with no corpus paper.
  std::vector<std::string> check_coverage(const Corpus& corpus) const;

 private:
  std::unordered_map<std::string, TaggedDocument> docs_;
};

// Sentinel stream entry between sections and at punctuation. Never matches
// a lemma because lemmas are non-empty.
inline const std::string kBoundaryToken{};

// Produces tagged sections and normalized token streams for papers, either
// with the built-in tagger or from an interchange store (falling back to the
// built-in tagger for papers the store does not cover).
class TextAnalyzer {
 public:
  explicit TextAnalyzer(const StopwordSet& stopwords = StopwordSet::standard(),
                        const TaggedStore* tagged = nullptr)
      : stopwords_(&stopwords), tagged_(tagged) {}

  const StopwordSet& stopwords() const { return *stopwords_; }

  std::vector<TaggedToken> tagged_section(const PaperRecord& paper, Section section) const;

  // Title, abstract and body lemmas with dropped tokens removed. Sections and
  // punctuation are separated by kBoundaryToken; consecutive boundaries are
  // collapsed.
  std::vector<std::string> normalized_stream(const PaperRecord& paper) const;

  std::vector<PhraseKey> title_phrases(const PaperRecord& paper) const;

 private:
  const StopwordSet* stopwords_;
  const TaggedStore* tagged_;
};

// Sorted, duplicate-free candidates from titles of papers dated within
// [from_year, to_year].
std::vector<PhraseKey> extract_title_candidates(const Corpus& corpus, int from_year, int to_year,
                                                const TextAnalyzer& analyzer = TextAnalyzer{});

}  // namespace forecite
