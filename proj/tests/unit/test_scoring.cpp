#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "forecite/scoring.hpp"
#include "oracles.hpp"
#include "random_world.hpp"

using namespace forecite;

namespace {

PaperRecord paper(std::string id, std::string title, Date date, std::vector<std::string> cites = {}) {
  PaperRecord r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.date = date;
  r.out_citations = std::move(cites);
  return r;
}

Corpus five_paper_corpus() {
  return Corpus::from_records({
      paper("A", "Zorvak", {2015, 1, 1}),
      paper("B", "Zorvak", {2016, 1, 1}, {"A"}),
      paper("C", "Zorvak", {2017, 1, 1}, {"A", "B"}),
      paper("D", "Zorvak", {2017, 1, 1}, {"A"}),
      paper("E", "Zorvak", {2018, 1, 1}, {"A"}),
  });
}

std::vector<PhraseKey> keys(std::initializer_list<const char*> texts) {
  std::vector<PhraseKey> out;
  for (auto t : texts) out.push_back(*PhraseKey::parse(t));
  return out;
}

TermGraphStats make_stats(std::size_t n_t, std::size_t c_t, std::size_t c_out, std::size_t n, std::size_t e) {
  TermGraphStats s;
  s.n_t = n_t;
  s.c_t = c_t;
  s.c_out = c_out;
  s.corpus_size = n;
  s.corpus_edges = e;
  return s;
}

// p = 0 and papers 1..f_t containing the term; every second one cites p.
struct SpikyTerm {
  CitationGraph graph;
  std::vector<PaperIndex> postings;
};

SpikyTerm spiky_term(std::size_t f_t) {
  SpikyTerm t;
  std::vector<std::pair<PaperIndex, PaperIndex>> edges;
  for (PaperIndex q = 0; q <= f_t; ++q) {
    t.postings.push_back(q);
    if (q > 0 && q % 2 == 0) edges.push_back({q, 0});
  }
  t.graph = CitationGraph::from_edges(f_t + 1, edges);
  return t;
}

}  // namespace

TEST_SUITE("scoring") {

TEST_CASE("method names") {
  CHECK(parse_method("forecite") == Method::ForeCite);
  CHECK(parse_method("cnlc") == Method::Cnlc);
  CHECK(parse_method("loor") == Method::Loor);
  CHECK_FALSE(parse_method("tfidf"));
  CHECK(to_string(Method::Cnlc) == "cnlc");
}

TEST_CASE("future term papers") {
  const std::vector<PaperIndex> postings = {0, 1, 2, 3, 4};
  CHECK(future_term_papers(0, postings).size() == 4);
  CHECK(future_term_papers(4, postings).empty());
  // C and D share a date; C has the smaller id so it is earlier
  auto corpus = five_paper_corpus();
  CHECK(*corpus.find("C") < *corpus.find("D"));
  CHECK(future_term_papers(*corpus.find("C"), postings).size() == 2);
}

TEST_CASE("paper term score on the five paper corpus") {
  auto index = build_concept_index(five_paper_corpus(), keys({"zorvak"}));
  ForeCiteParams params;
  auto s = paper_term_score(0, index.postings.postings(0), index.graph, params, 0);
  REQUIRE(s);
  CHECK(s->f_p_t == 4);
  CHECK(s->f_t == 4);
  CHECK(s->score == doctest::Approx(std::log(5.0)).epsilon(1e-12));
  CHECK(s->score == doctest::Approx(1.60944).epsilon(1e-5));
  // B is cited by one future paper: below the threshold
  CHECK_FALSE(paper_term_score(1, index.postings.postings(0), index.graph, params, 0));
  // E has no future papers
  CHECK_FALSE(paper_term_score(4, index.postings.postings(0), index.graph, params, 0));
  params.min_citations = 1;
  auto b = paper_term_score(1, index.postings.postings(0), index.graph, params, 0);
  REQUIRE(b);
  CHECK(b->f_p_t == 1);
  CHECK(b->f_t == 3);
}

TEST_CASE("forecite score and central paper") {
  auto index = build_concept_index(five_paper_corpus(), keys({"zorvak"}));
  auto s = forecite_score(0, index, ForeCiteParams{});
  REQUIRE(s);
  CHECK(s->score == doctest::Approx(1.60944).epsilon(1e-5));
  CHECK(s->central_paper == "A");
  CHECK(s->f_p_t == 4);
  CHECK(s->f_t == 4);
  CHECK(s->n_t == 5);
  CHECK(s->method == Method::ForeCite);
}

TEST_CASE("uncited mentions have no forecite score") {
  auto corpus = Corpus::from_records({paper("A", "Zorvak", {2015, 1, 1}), paper("B", "Zorvak", {2016, 1, 1}),
                                      paper("C", "Zorvak", {2017, 1, 1})});
  auto index = build_concept_index(corpus, keys({"zorvak"}));
  CHECK_FALSE(forecite_score(0, index, ForeCiteParams{}));
  CHECK(rank_concepts(Method::ForeCite, index, ForeCiteParams{}).empty());
}

TEST_CASE("equal scores go to the earlier paper") {
  // Distinct papers only tie through the sampled ratio. With one sampled
  // future paper the ratio is 0 or 1, so P1 and P2 tie at ln(9) whenever
  // P1's draw lands on a citing paper.
  ConceptIndex index;
  index.paper_ids = {"P1", "P2", "X2", "X3", "X4", "X5", "X6", "X7", "X8", "X9"};
  index.paper_dates = std::vector<Date>(10, Date{2015, 1, 1});
  std::vector<std::pair<PaperIndex, PaperIndex>> edges;
  for (PaperIndex q = 2; q < 10; ++q) {
    edges.push_back({q, 0});
    edges.push_back({q, 1});
  }
  index.graph = CitationGraph::from_edges(10, edges);
  index.postings = TermPostings::from_lists(keys({"zorvak"}), {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}});
  const auto postings = index.postings.postings(0);

  ForeCiteParams params;
  params.sample_size = 1;
  bool found = false;
  for (params.seed = 0; params.seed < 100 && !found; ++params.seed) {
    const auto seed = term_seed(params.seed, "zorvak");
    auto p1 = paper_term_score(0, postings, index.graph, params, seed);
    auto p2 = paper_term_score(1, postings, index.graph, params, seed);
    REQUIRE(p1);
    REQUIRE(p2);
    if (p1->score != p2->score) continue;
    found = true;
    auto best = forecite_score(0, index, params);
    REQUIRE(best);
    CHECK(best->central_paper == "P1");
  }
  CHECK(found);
}

TEST_CASE("cnlc") {
  CHECK(cnlc_score("x", make_stats(1, 0, 0, 10, 0)).score == 0.0);
  CHECK(cnlc_score("x", make_stats(3, 2, 4, 10, 9)).score == doctest::Approx(2.0 / 3.0 - 0.4).epsilon(1e-12));
  CHECK(cnlc_score("x", make_stats(3, 2, 4, 10, 9)).score == doctest::Approx(0.26667).epsilon(1e-4));
  CHECK_THROWS_AS(cnlc_score("x", make_stats(0, 0, 0, 10, 0)), std::invalid_argument);
  auto index = build_concept_index(five_paper_corpus(), keys({"zorvak"}));
  auto s = cnlc_score("zorvak", index.stats(0));
  CHECK(s.score == 1.0);
  CHECK_FALSE(s.central_paper);
  CHECK(s.c_t == 5);
}

TEST_CASE("loor") {
  auto s = loor_score("x", make_stats(3, 2, 0, 10, 5));
  CHECK(s.score == doctest::Approx(2.0 * std::log(6.0) + std::log((1.0 / 3.0) / (8.0 / 9.0))).epsilon(1e-12));
  CHECK(s.score == doctest::Approx(2.6027).epsilon(1e-4));
  // both hypotheses at epsilon
  CHECK(std::abs(loor_score("x", make_stats(5, 0, 0, 100, 0)).score) < 1e-6);
  // complete term graph
  auto full = loor_score("x", make_stats(4, 6, 0, 10, 9));
  CHECK(full.score == doctest::Approx(6.0 * std::log(1.0 / (9.0 / 45.0))).epsilon(1e-12));
  CHECK(full.score > 0.0);
  CHECK_THROWS_AS(loor_score("x", make_stats(1, 0, 0, 10, 0)), std::invalid_argument);
}

TEST_CASE("ranking order and ties") {
  std::vector<ScoredConcept> v(3);
  v[0].term = "b";
  v[0].score = 1.0;
  v[1].term = "a";
  v[1].score = 1.0;
  v[2].term = "c";
  v[2].score = 1.6;
  sort_and_rank(v);
  CHECK(v[0].term == "c");
  CHECK(v[1].term == "a");
  CHECK(v[2].term == "b");
  CHECK(v[0].rank == 1);
  CHECK(v[2].rank == 3);
}

TEST_CASE("forecite and cnlc match brute force on random corpora") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    auto w = testsupport::make_random_world(seed);
    auto corpus = Corpus::from_records(w.records);
    std::vector<PhraseKey> cands;
    for (const auto& c : w.candidates) cands.push_back(*PhraseKey::parse(c));
    auto index = build_concept_index(corpus, cands);
    for (const auto& c : w.candidates) {
      const TermId id = index.require_term(c);
      auto got = forecite_score(id, index, ForeCiteParams{});
      auto want = oracle::forecite(w.world, c);
      REQUIRE(got.has_value() == want.has_value());
      if (want) {
        CHECK(got->score == doctest::Approx(want->score).epsilon(1e-9));
        CHECK(*got->central_paper == want->central);
        CHECK(*got->f_t == want->f_t);
        CHECK(*got->f_p_t == want->f_p_t);
      }
      const auto st = oracle::stats(w.world, c);
      if (st.n_t > 0) CHECK(cnlc_score(c, index.stats(id)).score == doctest::Approx(oracle::cnlc(st)).epsilon(1e-9));
    }
  }
}

TEST_CASE("ranking is unchanged by a positive rescaling of scores") {
  auto w = testsupport::make_random_world(77);
  auto corpus = Corpus::from_records(w.records);
  std::vector<PhraseKey> cands;
  for (const auto& c : w.candidates) cands.push_back(*PhraseKey::parse(c));
  auto index = build_concept_index(corpus, cands);
  auto ranked = rank_concepts(Method::ForeCite, index, ForeCiteParams{});
  auto scaled = ranked;
  for (auto& s : scaled) s.score /= std::log(2.0);
  sort_and_rank(scaled);
  REQUIRE(scaled.size() == ranked.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) CHECK(scaled[i].term == ranked[i].term);
}

TEST_CASE("graph scores ignore paper identities") {
  auto w = testsupport::make_random_world(31);
  auto corpus = Corpus::from_records(w.records);
  std::vector<PhraseKey> cands;
  for (const auto& c : w.candidates) cands.push_back(*PhraseKey::parse(c));
  auto index = build_concept_index(corpus, cands);
  // rename every paper; order by (date, id) changes but stats must not
  std::vector<PaperRecord> renamed = w.records;
  std::map<std::string, std::string> name;
  for (std::size_t i = 0; i < renamed.size(); ++i) name[renamed[i].id] = "z" + std::to_string(renamed.size() - i);
  for (auto& r : renamed) {
    r.id = name[r.id];
    for (auto& c : r.out_citations) {
      if (name.count(c)) c = name[c];
    }
  }
  auto index2 = build_concept_index(Corpus::from_records(renamed), cands);
  for (Method m : {Method::Cnlc, Method::Loor}) {
    auto a = rank_concepts(m, index, ForeCiteParams{});
    auto b = rank_concepts(m, index2, ForeCiteParams{});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].term == b[i].term);
      CHECK(a[i].score == b[i].score);
    }
  }
}

TEST_CASE("adding a citing future paper never lowers the exact score") {
  for (std::size_t f_t = 4; f_t < 40; ++f_t) {
    auto t = spiky_term(f_t);
    ForeCiteParams params;
    params.min_citations = 0;
    auto before = paper_term_score(0, t.postings, t.graph, params, 1);
    // extra paper f_t + 1 citing p
    std::vector<std::pair<PaperIndex, PaperIndex>> edges = t.graph.edges();
    edges.push_back({static_cast<PaperIndex>(f_t + 1), 0});
    auto graph = CitationGraph::from_edges(f_t + 2, edges);
    auto postings = t.postings;
    postings.push_back(static_cast<PaperIndex>(f_t + 1));
    auto after = paper_term_score(0, postings, graph, params, 1);
    REQUIRE(before);
    REQUIRE(after);
    CHECK(after->score >= before->score);
  }
}

TEST_CASE("sampled ratio is used above the sample size and is deterministic") {
  auto t = spiky_term(5000);
  ForeCiteParams params;
  auto a = paper_term_score(0, t.postings, t.graph, params, 42);
  auto b = paper_term_score(0, t.postings, t.graph, params, 42);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->f_p_t == 2500);
  CHECK(a->f_t == 5000);
  CHECK(std::memcmp(&a->score, &b->score, sizeof(double)) == 0);
  CHECK(std::abs(a->ratio - 0.5) < 0.1);
  CHECK(a->ratio * 500.0 == std::round(a->ratio * 500.0));
  CHECK(a->score == doctest::Approx(std::log(2501.0) * a->ratio));

  // below the sample size the ratio is exact
  auto small = spiky_term(400);
  auto s = paper_term_score(0, small.postings, small.graph, params, 42);
  REQUIRE(s);
  CHECK(s->ratio == 200.0 / 400.0);
}

TEST_CASE("term seed mixes the term") {
  CHECK(term_seed(13, "a") != term_seed(13, "b"));
  CHECK(term_seed(13, "a") == term_seed(13, "a"));
}

TEST_CASE("ranked tsv format") {
  auto index = build_concept_index(five_paper_corpus(), keys({"zorvak"}));
  auto ranked = rank_concepts(Method::ForeCite, index, ForeCiteParams{});
  std::ostringstream out;
  write_ranked_tsv(ranked, out);
  CHECK(out.str() ==
        "rank\tphrase\tmethod\tscore\tcentral_paper\tn_t\tf_t\tf_p_t\tc_t\tc_out\n"
        "1\tzorvak\tforecite\t1.609438\tA\t5\t4\t4\t-\t-\n");
  std::istringstream in(out.str());
  auto rows = read_ranked_tsv(in);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].phrase == "zorvak");
  CHECK(rows[0].rank == 1);

  std::istringstream bad("rank\tphrase\n");
  CHECK_THROWS(read_ranked_tsv(bad));
  std::istringstream gap(
      "rank\tphrase\tmethod\tscore\tcentral_paper\tn_t\tf_t\tf_p_t\tc_t\tc_out\n"
      "2\tzorvak\tforecite\t1.0\tA\t5\t4\t4\t-\t-\n");
  CHECK_THROWS(read_ranked_tsv(gap));
}

}  // TEST_SUITE
