#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forecite/index.hpp"

namespace forecite {

enum class Method { ForeCite, Cnlc, Loor };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view name);

struct ForeCiteParams {
  std::uint32_t min_citations = 3;  // minimum f_p_t for a paper to be scored
  std::uint32_t sample_size = 500;  // future papers sampled for the ratio when f_t exceeds it
  std::uint64_t seed = 13;
};

// Per-term sampler seed: the run seed xor a 64-bit FNV-1a hash of the term.
std::uint64_t term_seed(std::uint64_t seed, std::string_view canonical);

// Posting entries strictly after p in (date, id) order.
std::span<const PaperIndex> future_term_papers(PaperIndex p, std::span<const PaperIndex> postings);

// Number of entries of `papers` that cite p. Both lists must be sorted.
std::size_t count_citing(std::span<const PaperIndex> papers, std::span<const PaperIndex> cited_by);

struct PaperTermScore {
  double score = 0.0;
  std::size_t f_p_t = 0;  // future term papers citing p (always exact)
  std::size_t f_t = 0;    // future term papers
  double ratio = 0.0;     // f_p_t / f_t, or its sampled estimate
};

// log(f_p_t + 1) * f_p_t / f_t for one paper, with the citation threshold
// and the sampled ratio applied. nullopt when f_t = 0 or f_p_t is below
// min_citations.
std::optional<PaperTermScore> paper_term_score(PaperIndex p, std::span<const PaperIndex> postings,
                                               const CitationGraph& graph, const ForeCiteParams& params,
                                               std::uint64_t sampler_seed);

struct ScoredConcept {
  std::size_t rank = 0;  // 1-based once ranked
  std::string term;
  Method method = Method::ForeCite;
  double score = 0.0;
  std::optional<std::string> central_paper;
  std::optional<std::size_t> n_t;
  std::optional<std::size_t> f_t;
  std::optional<std::size_t> f_p_t;
  std::optional<std::size_t> c_t;
  std::optional<std::size_t> c_out;
  std::optional<std::size_t> corpus_size;

  bool operator==(const ScoredConcept&) const = default;
};

// Max over papers of the term graph; the central paper is the argmax with the
// earliest (date, id) on ties.
std::optional<ScoredConcept> forecite_score(TermId term, const ConceptIndex& index, const ForeCiteParams& params);

// c_t / n_t - c_out / N. Throws std::invalid_argument when n_t = 0.
ScoredConcept cnlc_score(std::string term, const TermGraphStats& stats);

inline constexpr double kLoorEpsilon = 1e-12;

// Log-likelihood ratio of the observed internal edge count under the term's
// own edge density versus the corpus-wide density (binomial over unordered
// pairs). Throws std::invalid_argument when n_t < 2.
ScoredConcept loor_score(std::string term, const TermGraphStats& stats);

// Scores every term independently, drops terms without a score, sorts by
// score descending then phrase ascending, and assigns ranks.
std::vector<ScoredConcept> rank_concepts(Method method, const ConceptIndex& index, const ForeCiteParams& params);

// Sort order used by rank_concepts; also assigns ranks.
void sort_and_rank(std::vector<ScoredConcept>& concepts);

// Ranked TSV with header
// rank phrase method score central_paper n_t f_t f_p_t c_t c_out.
void write_ranked_tsv(std::span<const ScoredConcept> concepts, std::ostream& out);

struct RankedRow {
  std::size_t rank = 0;
  std::string phrase;
  std::string method;
  double score = 0.0;
};

// Reads rows back in file order. Throws std::runtime_error on a bad header,
// bad row, or ranks that are not 1, 2, 3, ...
std::vector<RankedRow> read_ranked_tsv(std::istream& in);

}  // namespace forecite
