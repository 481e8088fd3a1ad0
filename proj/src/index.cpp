#include "forecite/index.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace forecite {

namespace {

// Builds CSR offsets/targets from (source, target) pairs sorted by source.
void fill_csr(std::size_t nodes, const std::vector<std::pair<PaperIndex, PaperIndex>>& sorted_edges,
              std::vector<std::uint64_t>& offsets, std::vector<PaperIndex>& targets) {
  offsets.assign(nodes + 1, 0);
  targets.clear();
  targets.reserve(sorted_edges.size());
  for (const auto& [from, to] : sorted_edges) {
    ++offsets[from + 1];
    targets.push_back(to);
  }
  for (std::size_t i = 0; i < nodes; ++i) offsets[i + 1] += offsets[i];
}

}  // namespace

CitationGraph CitationGraph::from_edges(std::size_t papers, std::vector<std::pair<PaperIndex, PaperIndex>> edges) {
  std::erase_if(edges, [&](const auto& e) { return e.first == e.second || e.first >= papers || e.second >= papers; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  CitationGraph g;
  fill_csr(papers, edges, g.cites_offsets_, g.cites_targets_);
  for (auto& e : edges) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  fill_csr(papers, edges, g.cited_by_offsets_, g.cited_by_sources_);
  return g;
}

CitationGraph CitationGraph::build(const Corpus& corpus) {
  std::vector<std::pair<PaperIndex, PaperIndex>> edges;
  for (PaperIndex p = 0; p < corpus.size(); ++p) {
    for (const auto& cited : corpus.paper(p).out_citations) {
      if (auto q = corpus.find(cited)) edges.emplace_back(p, *q);
    }
  }
  return from_edges(corpus.size(), std::move(edges));
}

std::span<const PaperIndex> CitationGraph::cites(PaperIndex p) const {
  if (p >= size()) throw IndexError(fmt::format("paper index {} out of range", p));
  return std::span(cites_targets_).subspan(cites_offsets_[p], cites_offsets_[p + 1] - cites_offsets_[p]);
}

std::span<const PaperIndex> CitationGraph::cited_by(PaperIndex p) const {
  if (p >= size()) throw IndexError(fmt::format("paper index {} out of range", p));
  return std::span(cited_by_sources_).subspan(cited_by_offsets_[p], cited_by_offsets_[p + 1] - cited_by_offsets_[p]);
}

std::vector<std::pair<PaperIndex, PaperIndex>> CitationGraph::edges() const {
  std::vector<std::pair<PaperIndex, PaperIndex>> out;
  out.reserve(edge_count());
  for (PaperIndex p = 0; p < size(); ++p) {
    for (PaperIndex q : cites(p)) out.emplace_back(p, q);
  }
  return out;
}

// ---------------------------------------------------------------------------

PhraseMatcher::PhraseMatcher(std::span<const PhraseKey> phrases) {
  terminal_.push_back(kNoTerm);
  for (std::size_t id = 0; id < phrases.size(); ++id) {
    std::uint32_t node = 0;
    for (const auto& lemma : phrases[id].lemmas()) {
      auto [vit, _] = vocabulary_.emplace(lemma, static_cast<std::uint32_t>(vocabulary_.size()));
      const EdgeKey key{node, vit->second};
      auto eit = edges_.find(key);
      if (eit == edges_.end()) {
        const auto child = static_cast<std::uint32_t>(terminal_.size());
        terminal_.push_back(kNoTerm);
        eit = edges_.emplace(key, child).first;
      }
      node = eit->second;
    }
    terminal_[node] = static_cast<std::uint32_t>(id);
    max_depth_ = std::max(max_depth_, phrases[id].size());
  }
}

std::vector<TermId> PhraseMatcher::match(std::span<const std::string> stream) const {
  std::vector<std::uint32_t> ids(stream.size(), kNoTerm);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (stream[i].empty()) continue;
    if (auto it = vocabulary_.find(stream[i]); it != vocabulary_.end()) ids[i] = it->second;
  }
  std::vector<TermId> found;
  for (std::size_t start = 0; start < ids.size(); ++start) {
    std::uint32_t node = 0;
    for (std::size_t d = 0; d < max_depth_ && start + d < ids.size(); ++d) {
      const std::uint32_t token = ids[start + d];
      if (token == kNoTerm) break;
      auto it = edges_.find(EdgeKey{node, token});
      if (it == edges_.end()) break;
      node = it->second;
      if (terminal_[node] != kNoTerm) found.push_back(terminal_[node]);
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

// ---------------------------------------------------------------------------

void TermPostings::rebuild_lookup() {
  by_text_.clear();
  by_text_.reserve(terms_.size());
  for (TermId i = 0; i < terms_.size(); ++i) by_text_.emplace(terms_[i].text(), i);
}

TermPostings TermPostings::build(const Corpus& corpus, std::span<const PhraseKey> candidates,
                                 const TextAnalyzer& analyzer) {
  TermPostings out;
  out.terms_.assign(candidates.begin(), candidates.end());
  std::sort(out.terms_.begin(), out.terms_.end());
  out.terms_.erase(std::unique(out.terms_.begin(), out.terms_.end()), out.terms_.end());
  out.lists_.resize(out.terms_.size());

  const PhraseMatcher matcher(out.terms_);
  for (PaperIndex p = 0; p < corpus.size(); ++p) {
    const auto stream = analyzer.normalized_stream(corpus.paper(p));
    for (TermId t : matcher.match(stream)) out.lists_[t].push_back(p);
  }
  out.rebuild_lookup();
  return out;
}

TermPostings TermPostings::from_lists(std::vector<PhraseKey> terms, std::vector<std::vector<PaperIndex>> lists) {
  if (terms.size() != lists.size()) throw IndexError("term and posting list counts differ");
  std::vector<std::size_t> order(terms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return terms[a] < terms[b]; });

  TermPostings out;
  for (std::size_t i : order) {
    if (!out.terms_.empty() && out.terms_.back() == terms[i]) {
      throw IndexError(fmt::format("duplicate term '{}'", terms[i].text()));
    }
    auto& list = lists[i];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    out.terms_.push_back(std::move(terms[i]));
    out.lists_.push_back(std::move(list));
  }
  out.rebuild_lookup();
  return out;
}

std::optional<TermId> TermPostings::find(std::string_view canonical) const {
  auto it = by_text_.find(std::string(canonical));
  if (it == by_text_.end()) return std::nullopt;
  return it->second;
}

TermGraphStats term_graph_stats(std::span<const PaperIndex> postings, const CitationGraph& graph) {
  TermGraphStats stats;
  stats.n_t = postings.size();
  stats.corpus_size = graph.size();
  stats.corpus_edges = graph.edge_count();
  for (PaperIndex p : postings) {
    for (PaperIndex q : graph.cites(p)) {
      if (std::binary_search(postings.begin(), postings.end(), q)) {
        ++stats.c_t;
      } else {
        ++stats.c_out;
      }
    }
  }
  return stats;
}

TermId ConceptIndex::require_term(std::string_view canonical) const {
  auto id = postings.find(canonical);
  if (!id) throw IndexError(fmt::format("unknown term '{}'", canonical));
  return *id;
}

ConceptIndex build_concept_index(const Corpus& corpus, std::span<const PhraseKey> candidates,
                                 const TextAnalyzer& analyzer) {
  ConceptIndex index;
  index.paper_ids.reserve(corpus.size());
  index.paper_dates.reserve(corpus.size());
  for (const auto& paper : corpus.papers()) {
    index.paper_ids.push_back(paper.id);
    index.paper_dates.push_back(paper.date);
  }
  index.graph = CitationGraph::build(corpus);
  index.postings = TermPostings::build(corpus, candidates, analyzer);
  return index;
}

}  // namespace forecite
