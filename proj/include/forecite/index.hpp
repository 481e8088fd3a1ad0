#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forecite/corpus.hpp"
#include "forecite/textnorm.hpp"

namespace forecite {

using TermId = std::uint32_t;

class IndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Directed citation graph over corpus papers in compressed sparse row form.
// Edges whose target is outside the corpus are not represented.
class CitationGraph {
 public:
  CitationGraph() = default;

  static CitationGraph build(const Corpus& corpus);
  // Edges are (citing, cited). Self-edges and duplicates are dropped.
  static CitationGraph from_edges(std::size_t papers, std::vector<std::pair<PaperIndex, PaperIndex>> edges);

  std::size_t size() const { return cites_offsets_.empty() ? 0 : cites_offsets_.size() - 1; }
  std::size_t edge_count() const { return cites_targets_.size(); }

  // Both lists are sorted ascending.
  std::span<const PaperIndex> cites(PaperIndex p) const;
  std::span<const PaperIndex> cited_by(PaperIndex p) const;

  std::vector<std::pair<PaperIndex, PaperIndex>> edges() const;

  bool operator==(const CitationGraph&) const = default;

 private:
  std::vector<std::uint64_t> cites_offsets_;
  std::vector<PaperIndex> cites_targets_;
  std::vector<std::uint64_t> cited_by_offsets_;
  std::vector<PaperIndex> cited_by_sources_;
};

// Token-level trie over phrase lemmas. Reports every phrase occurring as a
// contiguous run of a token stream; kBoundaryToken never matches.
class PhraseMatcher {
 public:
  explicit PhraseMatcher(std::span<const PhraseKey> phrases);

  // Ids (positions in the constructor's span) of every phrase found in
  // stream, sorted and duplicate-free.
  std::vector<TermId> match(std::span<const std::string> stream) const;

 private:
  static constexpr std::uint32_t kNoTerm = UINT32_MAX;

  struct EdgeKey {
    std::uint32_t node;
    std::uint32_t token;
    bool operator==(const EdgeKey&) const = default;
  };
  struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const {
      return std::hash<std::uint64_t>{}((std::uint64_t{k.node} << 32) | k.token);
    }
  };

  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::unordered_map<EdgeKey, std::uint32_t, EdgeKeyHash> edges_;
  std::vector<std::uint32_t> terminal_;  // node -> term id or kNoTerm
  std::size_t max_depth_ = 0;
};

// phrase -> papers containing it, in corpus (date, id) order.
class TermPostings {
 public:
  TermPostings() = default;

  // One matcher pass over every paper's normalized stream.
  static TermPostings build(const Corpus& corpus, std::span<const PhraseKey> candidates,
                            const TextAnalyzer& analyzer = TextAnalyzer{});
  // Terms are sorted and deduplicated; lists[i] belongs to the i-th input term.
  static TermPostings from_lists(std::vector<PhraseKey> terms, std::vector<std::vector<PaperIndex>> lists);

  std::size_t size() const { return terms_.size(); }
  const PhraseKey& term(TermId id) const { return terms_.at(id); }
  std::span<const PhraseKey> terms() const { return terms_; }
  std::optional<TermId> find(std::string_view canonical) const;
  std::span<const PaperIndex> postings(TermId id) const { return lists_.at(id); }

  bool operator==(const TermPostings& other) const { return terms_ == other.terms_ && lists_ == other.lists_; }

 private:
  void rebuild_lookup();

  std::vector<PhraseKey> terms_;
  std::vector<std::vector<PaperIndex>> lists_;
  std::unordered_map<std::string, TermId> by_text_;
};

struct TermGraphStats {
  std::size_t n_t = 0;          // papers mentioning the term
  std::size_t c_t = 0;          // directed edges with both ends in the term graph
  std::size_t c_out = 0;        // directed edges from term papers to other corpus papers
  std::size_t corpus_size = 0;  // N
  std::size_t corpus_edges = 0;

  bool operator==(const TermGraphStats&) const = default;
};

TermGraphStats term_graph_stats(std::span<const PaperIndex> postings, const CitationGraph& graph);

// Everything scoring needs, detached from paper text.
struct ConceptIndex {
  std::vector<std::string> paper_ids;  // by PaperIndex
  std::vector<Date> paper_dates;
  CitationGraph graph;
  TermPostings postings;

  std::size_t corpus_size() const { return paper_ids.size(); }
  // Throws IndexError for an unknown term.
  TermId require_term(std::string_view canonical) const;
  TermGraphStats stats(TermId term) const { return term_graph_stats(postings.postings(term), graph); }

  bool operator==(const ConceptIndex&) const = default;
};

ConceptIndex build_concept_index(const Corpus& corpus, std::span<const PhraseKey> candidates,
                                 const TextAnalyzer& analyzer = TextAnalyzer{});

// Binary snapshot: magic, format version, then tagged length-prefixed
// sections (papers, graph, postings). All integers little-endian.
void save_snapshot(const ConceptIndex& index, std::ostream& out);
ConceptIndex load_snapshot(std::istream& in);

}  // namespace forecite
