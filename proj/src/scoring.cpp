#include "forecite/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "forecite/random.hpp"

namespace forecite {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::ForeCite: return "forecite";
    case Method::Cnlc: return "cnlc";
    case Method::Loor: return "loor";
  }
  return "forecite";
}

std::optional<Method> parse_method(std::string_view name) {
  if (name == "forecite") return Method::ForeCite;
  if (name == "cnlc") return Method::Cnlc;
  if (name == "loor") return Method::Loor;
  return std::nullopt;
}

std::uint64_t term_seed(std::uint64_t seed, std::string_view canonical) { return seed ^ fnv1a64(canonical); }

std::span<const PaperIndex> future_term_papers(PaperIndex p, std::span<const PaperIndex> postings) {
  auto it = std::upper_bound(postings.begin(), postings.end(), p);
  return postings.subspan(static_cast<std::size_t>(it - postings.begin()));
}

std::size_t count_citing(std::span<const PaperIndex> papers, std::span<const PaperIndex> cited_by) {
  // Merge when sizes are comparable, otherwise probe the larger list.
  const auto& small = papers.size() <= cited_by.size() ? papers : cited_by;
  const auto& large = papers.size() <= cited_by.size() ? cited_by : papers;
  if (small.size() * 16 < large.size()) {
    std::size_t hits = 0;
    for (PaperIndex x : small) hits += std::binary_search(large.begin(), large.end(), x) ? 1 : 0;
    return hits;
  }
  std::size_t hits = 0;
  auto a = papers.begin();
  auto b = cited_by.begin();
  while (a != papers.end() && b != cited_by.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++hits;
      ++a;
      ++b;
    }
  }
  return hits;
}

std::optional<PaperTermScore> paper_term_score(PaperIndex p, std::span<const PaperIndex> postings,
                                               const CitationGraph& graph, const ForeCiteParams& params,
                                               std::uint64_t sampler_seed) {
  const auto citers = graph.cited_by(p);
  const auto future = future_term_papers(p, postings);
  PaperTermScore result;
  result.f_t = future.size();
  if (result.f_t == 0) return std::nullopt;
  result.f_p_t = count_citing(future, citers);
  if (result.f_p_t < params.min_citations || result.f_p_t == 0) return std::nullopt;

  if (params.sample_size == 0) throw std::invalid_argument("sample_size must be at least 1");
  if (result.f_t <= params.sample_size) {
    result.ratio = static_cast<double>(result.f_p_t) / static_cast<double>(result.f_t);
  } else {
    DeterministicRng rng(sampler_seed);
    std::size_t hits = 0;
    for (std::uint64_t pos : rng.sample_without_replacement(result.f_t, params.sample_size)) {
      if (std::binary_search(citers.begin(), citers.end(), future[pos])) ++hits;
    }
    result.ratio = static_cast<double>(hits) / static_cast<double>(params.sample_size);
  }
  result.score = std::log(static_cast<double>(result.f_p_t) + 1.0) * result.ratio;
  return result;
}

std::optional<ScoredConcept> forecite_score(TermId term, const ConceptIndex& index, const ForeCiteParams& params) {
  const auto postings = index.postings.postings(term);
  const PhraseKey& key = index.postings.term(term);
  const std::uint64_t seed = term_seed(params.seed, key.text());

  std::optional<PaperTermScore> best;
  PaperIndex best_paper = 0;
  for (PaperIndex p : postings) {
    if (index.graph.cited_by(p).size() < params.min_citations) continue;
    auto s = paper_term_score(p, postings, index.graph, params, seed);
    if (s && (!best || s->score > best->score)) {
      best = s;
      best_paper = p;
    }
  }
  if (!best) return std::nullopt;

  ScoredConcept out;
  out.term = key.text();
  out.method = Method::ForeCite;
  out.score = best->score;
  out.central_paper = index.paper_ids.at(best_paper);
  out.n_t = postings.size();
  out.f_t = best->f_t;
  out.f_p_t = best->f_p_t;
  return out;
}

namespace {

ScoredConcept graph_concept(std::string term, Method method, double score, const TermGraphStats& stats) {
  ScoredConcept out;
  out.term = std::move(term);
  out.method = method;
  out.score = score;
  out.n_t = stats.n_t;
  out.c_t = stats.c_t;
  out.c_out = stats.c_out;
  out.corpus_size = stats.corpus_size;
  return out;
}

}  // namespace

ScoredConcept cnlc_score(std::string term, const TermGraphStats& stats) {
  if (stats.n_t == 0) throw std::invalid_argument(fmt::format("cnlc: term '{}' has no papers", term));
  const double internal = static_cast<double>(stats.c_t) / static_cast<double>(stats.n_t);
  const double outgoing =
      stats.corpus_size ? static_cast<double>(stats.c_out) / static_cast<double>(stats.corpus_size) : 0.0;
  return graph_concept(std::move(term), Method::Cnlc, internal - outgoing, stats);
}

ScoredConcept loor_score(std::string term, const TermGraphStats& stats) {
  if (stats.n_t < 2) throw std::invalid_argument(fmt::format("loor: term '{}' needs at least 2 papers", term));
  const double pairs = static_cast<double>(stats.n_t) * static_cast<double>(stats.n_t - 1) / 2.0;
  const double internal = static_cast<double>(stats.c_t);
  const double n = static_cast<double>(stats.corpus_size);
  const double corpus_pairs = n * (n - 1.0) / 2.0;

  // Mutual citations can push directed counts past the pair count.
  const double p1 = std::clamp(internal / pairs, kLoorEpsilon, 1.0);
  const double p0 = std::clamp(corpus_pairs > 0 ? static_cast<double>(stats.corpus_edges) / corpus_pairs : 0.0,
                               kLoorEpsilon, 1.0 - kLoorEpsilon);
  double score = internal * std::log(p1 / p0);
  if (internal < pairs) score += (pairs - internal) * std::log((1.0 - p1) / (1.0 - p0));
  return graph_concept(std::move(term), Method::Loor, score, stats);
}

void sort_and_rank(std::vector<ScoredConcept>& concepts) {
  std::sort(concepts.begin(), concepts.end(), [](const ScoredConcept& a, const ScoredConcept& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.term < b.term;
  });
  for (std::size_t i = 0; i < concepts.size(); ++i) concepts[i].rank = i + 1;
}

std::vector<ScoredConcept> rank_concepts(Method method, const ConceptIndex& index, const ForeCiteParams& params) {
  std::vector<ScoredConcept> ranked;
  for (TermId t = 0; t < index.postings.size(); ++t) {
    switch (method) {
      case Method::ForeCite:
        if (auto s = forecite_score(t, index, params)) ranked.push_back(std::move(*s));
        break;
      case Method::Cnlc: {
        const auto stats = index.stats(t);
        if (stats.n_t >= 1) ranked.push_back(cnlc_score(index.postings.term(t).text(), stats));
        break;
      }
      case Method::Loor: {
        const auto stats = index.stats(t);
        if (stats.n_t >= 2) ranked.push_back(loor_score(index.postings.term(t).text(), stats));
        break;
      }
    }
  }
  sort_and_rank(ranked);
  return ranked;
}

}  // namespace forecite
