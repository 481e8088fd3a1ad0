#include "forecite/textnorm.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>

#include <fmt/format.h>

#include "forecite/stopwords_data.hpp"
#include "json.hpp"

namespace forecite {

using json = nlohmann::json;

namespace {

constexpr std::array<std::pair<Pos, std::string_view>, 10> kPosNames = {{
    {Pos::Noun, "NOUN"},
    {Pos::Propn, "PROPN"},
    {Pos::Adj, "ADJ"},
    {Pos::Verb, "VERB"},
    {Pos::Det, "DET"},
    {Pos::Adp, "ADP"},
    {Pos::Conj, "CONJ"},
    {Pos::Num, "NUM"},
    {Pos::Punct, "PUNCT"},
    {Pos::Other, "OTHER"},
}};

bool has_space(std::string_view s) {
  return s.find_first_of(" \t\n\r\f\v") != std::string_view::npos;
}

std::string effective_lemma(const TaggedToken& token) {
  return token.lemma.empty() ? lemmatize(token.surface, token.pos) : token.lemma;
}

}  // namespace

std::string_view to_string(Pos pos) {
  for (const auto& [p, name] : kPosNames) {
    if (p == pos) return name;
  }
  return "OTHER";
}

std::optional<Pos> parse_pos(std::string_view name) {
  for (const auto& [p, n] : kPosNames) {
    if (n == name) return p;
  }
  return std::nullopt;
}

std::string_view to_string(Section section) {
  switch (section) {
    case Section::Title: return "title";
    case Section::Abstract: return "abstract";
    case Section::Body: return "body";
  }
  return "title";
}

// ---------------------------------------------------------------------------

StopwordSet StopwordSet::from_text(std::string_view text) {
  StopwordSet set;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (!line.empty() && line.front() != '#') set.words_.insert(to_lower(line));
    pos = end + 1;
  }
  return set;
}

const StopwordSet& StopwordSet::standard() {
  static const StopwordSet set = from_text(detail::kStopwordsText);
  return set;
}

StopwordSet StopwordSet::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(fmt::format("cannot open stopword file '{}'", path.string()));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_text(text);
}

// ---------------------------------------------------------------------------

std::vector<TokenSpan> chunk_noun_phrases(std::span<const TaggedToken> tokens) {
  auto in_run = [](Pos p) { return p == Pos::Adj || p == Pos::Noun || p == Pos::Propn || p == Pos::Num; };
  auto is_head = [](Pos p) { return p == Pos::Noun || p == Pos::Propn; };

  std::set<TokenSpan> spans;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!in_run(tokens[i].pos)) {
      ++i;
      continue;
    }
    const std::size_t run_begin = i;
    while (i < tokens.size() && in_run(tokens[i].pos)) ++i;
    const std::size_t run_end = i;

    std::optional<std::size_t> last_head;
    for (std::size_t h = run_begin; h < run_end; ++h) {
      if (!is_head(tokens[h].pos)) continue;
      last_head = h;
      const std::size_t earliest = h + 1 >= run_begin + kMaxPhraseTokens ? h + 1 - kMaxPhraseTokens : run_begin;
      for (std::size_t s = std::max(run_begin, earliest); s <= h; ++s) spans.insert({s, h + 1});
    }
    if (last_head) spans.insert({run_begin, *last_head + 1});
  }
  return {spans.begin(), spans.end()};
}

std::optional<PhraseKey> PhraseKey::from_lemmas(std::vector<std::string> lemmas) {
  if (lemmas.empty() || lemmas.size() > kMaxPhraseTokens) return std::nullopt;
  PhraseKey key;
  for (const auto& l : lemmas) {
    if (l.empty() || has_space(l)) return std::nullopt;
    if (!key.text_.empty()) key.text_.push_back(' ');
    key.text_ += l;
  }
  key.lemmas_ = std::move(lemmas);
  return key;
}

std::optional<PhraseKey> PhraseKey::parse(std::string_view canonical) {
  std::vector<std::string> lemmas;
  std::size_t pos = 0;
  while (pos <= canonical.size()) {
    std::size_t end = canonical.find(' ', pos);
    if (end == std::string_view::npos) end = canonical.size();
    lemmas.emplace_back(canonical.substr(pos, end - pos));
    pos = end + 1;
  }
  return from_lemmas(std::move(lemmas));
}

bool is_dropped_token(const TaggedToken& token, const StopwordSet& stopwords) {
  if (token.pos == Pos::Num) return true;
  const std::string lemma = effective_lemma(token);
  if (lemma == "using" || stopwords.contains(lemma)) return true;
  const std::string lower = to_lower(token.surface);
  return lower == "using" || stopwords.contains(lower);
}

std::optional<PhraseKey> normalize_phrase(std::span<const TaggedToken> tokens, const StopwordSet& stopwords) {
  std::vector<std::string> lemmas;
  for (const auto& t : tokens) {
    if (t.pos == Pos::Punct || is_dropped_token(t, stopwords)) continue;
    lemmas.push_back(effective_lemma(t));
    if (lemmas.size() > kMaxPhraseTokens) return std::nullopt;
  }
  return PhraseKey::from_lemmas(std::move(lemmas));
}

// ---------------------------------------------------------------------------
// Tagged interchange format

namespace {

std::vector<TaggedToken> parse_section(const json& obj, Section section, std::size_t line,
                                       std::vector<std::string>* warnings, const std::string& id) {
  const char* name = to_string(section).data();
  auto it = obj.find(name);
  if (it == obj.end()) throw RecordError(line, fmt::format("missing section: {}", name));
  if (!it->is_array()) throw RecordError(line, fmt::format("section '{}' must be an array", name));
  std::vector<TaggedToken> tokens;
  tokens.reserve(it->size());
  for (const auto& triple : *it) {
    if (!triple.is_array() || triple.size() != 3 || !triple[0].is_string() || !triple[1].is_string() ||
        !triple[2].is_string()) {
      throw RecordError(line, fmt::format("section '{}': tokens must be [surface, lemma, pos] strings", name));
    }
    TaggedToken t;
    t.surface = triple[0].get<std::string>();
    const auto pos = parse_pos(triple[2].get_ref<const std::string&>());
    if (!pos) {
      throw RecordError(line, fmt::format("section '{}': unknown POS '{}'", name,
                                          triple[2].get_ref<const std::string&>()));
    }
    t.pos = *pos;
    t.lemma = to_lower(triple[1].get_ref<const std::string&>());
    if (t.lemma.empty() || has_space(t.lemma)) {
      if (warnings) {
        warnings->push_back(fmt::format("line {}: document '{}': invalid lemma for '{}', using built-in lemmatizer",
                                        line, id, t.surface));
      }
      t.lemma = lemmatize(t.surface, t.pos);
      if (t.lemma.empty() || has_space(t.lemma)) continue;
    }
    tokens.push_back(std::move(t));
  }
  return tokens;
}

TaggedDocument parse_tagged_impl(std::string_view line, std::size_t line_number, std::vector<std::string>* warnings) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw RecordError(line_number, fmt::format("malformed JSON: {}", e.what()));
  }
  if (!obj.is_object()) throw RecordError(line_number, "tagged document is not a JSON object");
  auto id = obj.find("id");
  if (id == obj.end() || !id->is_string() || id->get_ref<const std::string&>().empty()) {
    throw RecordError(line_number, "missing field: id");
  }
  TaggedDocument doc;
  doc.id = id->get<std::string>();
  for (Section s : kSections) {
    doc.sections[static_cast<std::size_t>(s)] = parse_section(obj, s, line_number, warnings, doc.id);
  }
  return doc;
}

}  // namespace

TaggedDocument parse_tagged_document(std::string_view line, std::size_t line_number) {
  return parse_tagged_impl(line, line_number, nullptr);
}

std::string to_json_line(const TaggedDocument& doc) {
  json obj;
  obj["id"] = doc.id;
  for (Section s : kSections) {
    json arr = json::array();
    for (const auto& t : doc.section(s)) arr.push_back({t.surface, t.lemma, std::string(to_string(t.pos))});
    obj[std::string(to_string(s))] = std::move(arr);
  }
  return obj.dump();
}

TaggedStore TaggedStore::read(std::istream& in, TaggedStoreReport* report) {
  TaggedStore store;
  std::vector<std::string> warnings;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      TaggedDocument doc = parse_tagged_impl(line, line_number, &warnings);
      if (store.docs_.contains(doc.id)) {
        warnings.push_back(fmt::format("line {}: duplicate tagged document '{}' ignored", line_number, doc.id));
        continue;
      }
      store.add(std::move(doc));
    } catch (const RecordError& e) {
      warnings.push_back(fmt::format("{} (line skipped)", e.what()));
    }
  }
  if (report) {
    report->documents = store.size();
    report->warnings = std::move(warnings);
  }
  return store;
}

TaggedStore TaggedStore::load(const std::filesystem::path& path, TaggedStoreReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(fmt::format("cannot open tagged file '{}'", path.string()));
  return read(in, report);
}

void TaggedStore::add(TaggedDocument doc) {
  std::string id = doc.id;
  docs_.insert_or_assign(std::move(id), std::move(doc));
}

const TaggedDocument* TaggedStore::find(std::string_view id) const {
  auto it = docs_.find(std::string(id));
  return it == docs_.end() ? nullptr : &it->second;
}

std::vector<std::string> TaggedStore::check_coverage(const Corpus& corpus) const {
  std::vector<std::string> warnings;
  for (const auto& paper : corpus.papers()) {
    if (!docs_.contains(paper.id)) {
      warnings.push_back(fmt::format("paper '{}' has no tagged document; built-in tagger used", paper.id));
    }
  }
  std::vector<std::string> orphans;
  for (const auto& [id, doc] : docs_) {
    if (!corpus.find(id)) orphans.push_back(id);
  }
  std::sort(orphans.begin(), orphans.end());
  for (const auto& id : orphans) warnings.push_back(fmt::format("tagged document '{}' is not in the corpus", id));
  return warnings;
}

// ---------------------------------------------------------------------------

std::vector<TaggedToken> TextAnalyzer::tagged_section(const PaperRecord& paper, Section section) const {
  if (tagged_) {
    if (const TaggedDocument* doc = tagged_->find(paper.id)) return doc->section(section);
  }
  switch (section) {
    case Section::Title: return analyze_text(paper.title);
    case Section::Abstract: return analyze_text(paper.abstract);
    case Section::Body: return analyze_text(paper.body);
  }
  return {};
}

std::vector<std::string> TextAnalyzer::normalized_stream(const PaperRecord& paper) const {
  std::vector<std::string> stream;
  auto push_boundary = [&] {
    if (stream.empty() || !stream.back().empty()) stream.push_back(kBoundaryToken);
  };
  for (Section s : kSections) {
    if (s != Section::Title) push_boundary();
    for (const auto& token : tagged_section(paper, s)) {
      if (token.pos == Pos::Punct) {
        push_boundary();
      } else if (!is_dropped_token(token, *stopwords_)) {
        stream.push_back(effective_lemma(token));
      }
    }
  }
  while (!stream.empty() && stream.back().empty()) stream.pop_back();
  return stream;
}

std::vector<PhraseKey> TextAnalyzer::title_phrases(const PaperRecord& paper) const {
  const auto tokens = tagged_section(paper, Section::Title);
  std::vector<PhraseKey> keys;
  for (const TokenSpan& span : chunk_noun_phrases(tokens)) {
    auto key = normalize_phrase(std::span(tokens).subspan(span.begin, span.size()), *stopwords_);
    if (key) keys.push_back(std::move(*key));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::vector<PhraseKey> extract_title_candidates(const Corpus& corpus, int from_year, int to_year,
                                                const TextAnalyzer& analyzer) {
  std::set<PhraseKey> candidates;
  for (const auto& paper : corpus.papers()) {
    if (paper.date.year < from_year || paper.date.year > to_year) continue;
    for (auto& key : analyzer.title_phrases(paper)) candidates.insert(std::move(key));
  }
  return {candidates.begin(), candidates.end()};
}

}  // namespace forecite
