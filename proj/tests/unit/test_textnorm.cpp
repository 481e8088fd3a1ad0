#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "forecite/textnorm.hpp"

using namespace forecite;

namespace {

std::vector<Pos> tags_of(const std::vector<std::string>& tokens) {
  std::vector<Pos> out;
  for (const auto& t : pos_tag(tokens)) out.push_back(t.pos);
  return out;
}

std::set<std::string> phrase_texts(const std::string& text) {
  std::set<std::string> out;
  const auto tokens = analyze_text(text);
  for (const auto& span : chunk_noun_phrases(tokens)) {
    auto key = normalize_phrase(std::span(tokens).subspan(span.begin, span.size()));
    if (key) out.insert(key->text());
  }
  return out;
}

PaperRecord paper(std::string id, std::string title, Date date, std::string abstract = "", std::string body = "") {
  PaperRecord r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.date = date;
  r.abstract = std::move(abstract);
  r.body = std::move(body);
  return r;
}

}  // namespace

TEST_SUITE("textnorm") {

TEST_CASE("tokenize") {
  CHECK(tokenize("Self-Taught Hashing!") == std::vector<std::string>{"Self-Taught", "Hashing", "!"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("graph2vec: Learning") == std::vector<std::string>{"graph2vec", ":", "Learning"});
  CHECK(tokenize("  a\tb\n") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize("Bayes' rule, 3.14 (approx)") ==
        std::vector<std::string>{"Bayes", "'", "rule", ",", "3.14", "(", "approx", ")"});
}

TEST_CASE("tokenize keeps non-ASCII letters inside words") {
  CHECK(tokenize("Erdős–Rényi graphs") == std::vector<std::string>{"Erdős", "–", "Rényi", "graphs"});
}

TEST_CASE("pos_tag lexicon and patterns") {
  CHECK(tags_of({"the", "graph"}) == std::vector<Pos>{Pos::Det, Pos::Noun});
  CHECK(tags_of({"BERT"}) == std::vector<Pos>{Pos::Propn});
  CHECK(tags_of({"3.14"}) == std::vector<Pos>{Pos::Num});
  CHECK(tags_of({"!"}) == std::vector<Pos>{Pos::Punct});
  CHECK(tags_of({"training", "of", "networks"}) == std::vector<Pos>{Pos::Noun, Pos::Adp, Pos::Noun});
  CHECK(tags_of({"quickly"})[0] == Pos::Other);
  CHECK(tags_of({"Learning", "with", "Kernels"})[2] == Pos::Propn);
}

TEST_CASE("pos_tag is deterministic") {
  const std::vector<std::string> tokens = tokenize("Attentive Collaborative Filtering for Deep Networks");
  CHECK(pos_tag(tokens) == pos_tag(tokens));
}

TEST_CASE("lemmatize") {
  CHECK(lemmatize("networks", Pos::Noun) == "network");
  CHECK(lemmatize("GANs", Pos::Propn) == "gan");
  CHECK(lemmatize("analysis", Pos::Noun) == "analysis");
  CHECK(lemmatize("classes", Pos::Noun) == "class");
  CHECK(lemmatize("boxes", Pos::Noun) == "box");
  CHECK(lemmatize("matches", Pos::Noun) == "match");
  CHECK(lemmatize("queries", Pos::Noun) == "query");
  CHECK(lemmatize("databases", Pos::Noun) == "database");
  CHECK(lemmatize("corpus", Pos::Noun) == "corpus");
  CHECK(lemmatize("class", Pos::Noun) == "class");
  CHECK(lemmatize("Running", Pos::Verb) == "running");
  CHECK(lemmatize("Deep", Pos::Adj) == "deep");
}

TEST_CASE("to_lower handles accented letters") {
  CHECK(to_lower("ÉCOLE Ωmega") == "école ωmega");
}

TEST_CASE("chunk deep convolutional neural networks") {
  const auto tokens = analyze_text("deep convolutional neural networks");
  const auto spans = chunk_noun_phrases(tokens);
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (auto s : spans) got.insert({s.begin, s.end});
  CHECK(got.count({0, 4}));
  CHECK(got.count({1, 4}));
  CHECK(got.count({2, 4}));
  CHECK(got.count({3, 4}));
  for (auto s : spans) {
    CHECK(s.size() <= kMaxPhraseTokens);
    CHECK((tokens[s.end - 1].pos == Pos::Noun || tokens[s.end - 1].pos == Pos::Propn));
  }
}

TEST_CASE("chunks do not cross prepositions") {
  CHECK(phrase_texts("training of networks") == std::set<std::string>{"training", "network"});
}

TEST_CASE("punctuation only gives no chunks") {
  CHECK(chunk_noun_phrases(analyze_text("!?;:,.")).empty());
}

TEST_CASE("long nominal runs: sub-spans are capped, the over-long maximal span normalizes to nothing") {
  const auto tokens = analyze_text("alpha beta gamma delta epsilon zeta eta theta iota kappa");
  REQUIRE(tokens.size() == 10);
  std::size_t long_spans = 0;
  for (auto s : chunk_noun_phrases(tokens)) {
    if (s.size() > kMaxPhraseTokens) {
      ++long_spans;
      CHECK(s.begin == 0);
      CHECK(s.end == 10);
      CHECK_FALSE(normalize_phrase(std::span(tokens).subspan(s.begin, s.size())));
    }
  }
  CHECK(long_spans == 1);
  CHECK(phrase_texts("alpha beta gamma delta epsilon zeta eta theta iota kappa").size() == 1 + 2 + 3 + 4 + 5 + 6 + 7 + 8 + 8 + 8);
}

TEST_CASE("normalize_phrase") {
  {
    const auto tokens = analyze_text("using deep learning");
    auto key = normalize_phrase(tokens);
    REQUIRE(key);
    CHECK(key->text() == "deep learning");
  }
  CHECK_FALSE(normalize_phrase(analyze_text("the the")));
  {
    auto key = normalize_phrase(analyze_text("Wasserstein GANs"));
    REQUIRE(key);
    CHECK(key->text() == "wasserstein gan");
  }
  {
    auto key = normalize_phrase(analyze_text("2 layer networks"));
    REQUIRE(key);
    CHECK(key->text() == "layer network");
  }
}

TEST_CASE("normalize_phrase is idempotent on its own tokens") {
  for (const char* text : {"Deep Convolutional Networks", "using Wasserstein GANs", "graph kernels"}) {
    auto key = normalize_phrase(analyze_text(text));
    REQUIRE(key);
    std::vector<TaggedToken> again;
    for (const auto& lemma : key->lemmas()) again.push_back({lemma, lemma, Pos::Noun});
    auto key2 = normalize_phrase(again);
    REQUIRE(key2);
    CHECK(*key2 == *key);
  }
}

TEST_CASE("PhraseKey construction") {
  CHECK(PhraseKey::parse("deep learning")->size() == 2);
  CHECK_FALSE(PhraseKey::parse(""));
  CHECK_FALSE(PhraseKey::parse("a  b"));
  CHECK_FALSE(PhraseKey::from_lemmas({"a", "b", "c", "d", "e", "f", "g", "h", "i"}));
  CHECK(PhraseKey::from_lemmas({"x", "y"})->text() == "x y");
}

TEST_CASE("stopword list") {
  const auto& sw = StopwordSet::standard();
  CHECK(sw.size() == 179);
  CHECK(sw.contains("the"));
  CHECK_FALSE(sw.contains("using"));
  CHECK(is_dropped_token({"using", "using", Pos::Verb}, sw));
  CHECK(is_dropped_token({"The", "the", Pos::Det}, sw));
  CHECK(is_dropped_token({"42", "42", Pos::Num}, sw));
  CHECK_FALSE(is_dropped_token({"graph", "graph", Pos::Noun}, sw));
}

TEST_CASE("title candidates") {
  auto corpus = Corpus::from_records({paper("P", "Attentive Collaborative Filtering", {2017, 3, 1})});
  std::set<std::string> got;
  for (const auto& k : extract_title_candidates(corpus, 1999, 2018)) got.insert(k.text());
  CHECK(got == std::set<std::string>{"attentive collaborative filtering", "collaborative filtering", "filtering"});
  CHECK(extract_title_candidates(corpus, 1999, 2016).empty());
  CHECK(extract_title_candidates(Corpus{}, 1999, 2018).empty());
}

TEST_CASE("normalized stream") {
  const TextAnalyzer analyzer;
  CHECK(analyzer.normalized_stream(paper("1", "Deep Learning", {2017, 1, 1})) ==
        std::vector<std::string>{"deep", "learning"});
  CHECK(analyzer.normalized_stream(paper("2", "A", {2017, 1, 1}, "B")) == std::vector<std::string>{kBoundaryToken, "b"});
  CHECK(analyzer.normalized_stream(paper("3", "graph using kernels", {2017, 1, 1})) ==
        std::vector<std::string>{"graph", "kernel"});
  const auto s = analyzer.normalized_stream(paper("4", "neural", {2017, 1, 1}, "networks"));
  CHECK(s == std::vector<std::string>{"neural", kBoundaryToken, "network"});
}

TEST_CASE("tagged interchange round trip and fallback") {
  const std::string line =
      R"({"id":"W","title":[["Wasserstein","wasserstein","PROPN"],["GANs","gan","PROPN"]],"abstract":[],"body":[]})";
  auto doc = parse_tagged_document(line, 1);
  CHECK(doc.id == "W");
  CHECK(doc.section(Section::Title).size() == 2);
  CHECK(parse_tagged_document(to_json_line(doc)).sections == doc.sections);

  std::istringstream in(line + "\n");
  TaggedStoreReport report;
  auto store = TaggedStore::read(in, &report);
  CHECK(report.warnings.empty());
  auto corpus = Corpus::from_records({paper("W", "ignored text", {2017, 1, 1}), paper("X", "Graph Kernels", {2017, 1, 2})});
  const TextAnalyzer analyzer(StopwordSet::standard(), &store);
  std::set<std::string> got;
  for (const auto& k : extract_title_candidates(corpus, 1999, 2018, analyzer)) got.insert(k.text());
  CHECK(got == std::set<std::string>{"gan", "wasserstein", "wasserstein gan", "graph", "graph kernel", "kernel"});
  CHECK(store.check_coverage(corpus).size() == 1);
}

TEST_CASE("tagged interchange errors") {
  CHECK_THROWS_AS(parse_tagged_document(R"({"id":"W","title":[["a","a","FOO"]],"abstract":[],"body":[]})"), RecordError);
  CHECK_THROWS_AS(parse_tagged_document(R"({"id":"W","title":[]})"), RecordError);
  CHECK_THROWS_AS(parse_tagged_document(R"({"id":"W","title":[["a","a"]],"abstract":[],"body":[]})"), RecordError);
}

TEST_CASE("stopword-free, capped keys over random titles") {
  const std::vector<std::string> vocab = {"the",   "of",      "using", "deep",   "Deep", "networks", "Graph",
                                          "BERT",  "learning", "for",   "3",      "2.5",  "-",        ",",
                                          "novel", "robust",  "fast",  "models", "and",  "Learning", "with",
                                          "a",     "is",      "Neural", "kernels", "via", "trained",  "quickly"};
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    std::string title;
    const int len = 1 + static_cast<int>(rng() % 14);
    for (int j = 0; j < len; ++j) title += vocab[rng() % vocab.size()] + " ";
    for (const auto& text : phrase_texts(title)) {
      auto key = PhraseKey::parse(text);
      REQUIRE(key);
      CHECK(key->size() <= kMaxPhraseTokens);
      for (const auto& lemma : key->lemmas()) {
        CHECK_FALSE(StopwordSet::standard().contains(lemma));
        CHECK(lemma != "using");
      }
    }
  }
}

}  // TEST_SUITE
