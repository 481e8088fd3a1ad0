#include "forecite/synth.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <fmt/format.h>

#include "forecite/random.hpp"
#include "forecite/textnorm.hpp"

namespace forecite {

namespace {

constexpr std::string_view kOnsets = "bdfgklmnprtvz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::string_view kCodas = "knrmtpvxz";
constexpr std::array<std::string_view, 3> kConnectors = {"for", "and", "with"};

// A word survives only if the built-in analyzer keeps it as a single nominal
// token whose lemma is the word itself, both lowercase and capitalized.
bool usable_word(const std::string& word) {
  if (StopwordSet::standard().contains(word)) return false;
  std::string capital = word;
  capital[0] = static_cast<char>(capital[0] - 'a' + 'A');
  for (const auto& text : {word, capital, "x for " + word, "x for " + capital}) {
    const auto tokens = analyze_text(text);
    const auto& t = tokens.back();
    if (t.lemma != word || (t.pos != Pos::Noun && t.pos != Pos::Propn)) return false;
  }
  return true;
}

std::vector<std::string> nonce_words(std::size_t count, DeterministicRng& rng) {
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  std::size_t attempts = 0;
  while (words.size() < count) {
    if (++attempts > count * 200 + 1000) throw std::invalid_argument("synth: could not generate enough phrase words");
    std::string w;
    for (int syllable = 0; syllable < 2; ++syllable) {
      w.push_back(kOnsets[rng.uniform_below(kOnsets.size())]);
      w.push_back(kVowels[rng.uniform_below(kVowels.size())]);
    }
    w.push_back(kCodas[rng.uniform_below(kCodas.size())]);
    if (seen.contains(w) || !usable_word(w)) continue;
    seen.insert(w);
    words.push_back(std::move(w));
  }
  return words;
}

std::size_t uniform_in(DeterministicRng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform_below(hi - lo + 1));
}

template <typename T>
void shuffle(std::vector<T>& v, DeterministicRng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.uniform_below(i)]);
}

void check_spec(const SynthSpec& s) {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("synth: " + msg); };
  if (s.from_year > s.to_year) fail("from-year is after to-year");
  if (s.concept_min_mentions == 0 || s.concept_min_mentions > s.concept_max_mentions) fail("bad concept mention range");
  if (s.dense_min_members < 2 || s.dense_min_members > s.dense_max_members) fail("bad dense member range");
  if (s.background_min_mentions == 0 || s.background_min_mentions > s.background_max_mentions) {
    fail("bad background mention range");
  }
  if (s.dense_max_in_share <= 0.0 || s.dense_max_in_share > 1.0) fail("dense in-degree share must be in (0, 1]");
  if (s.papers == 0) fail("need at least one paper");
  if (s.background == 0) fail("need at least one background phrase so every title is non-empty");
  if (s.papers > s.background * s.background_max_mentions) {
    fail(fmt::format("{} papers cannot all get a background phrase with {} phrases of at most {} mentions", s.papers,
                     s.background, s.background_max_mentions));
  }
  if (s.background_min_mentions > s.papers) fail("background mentions exceed paper count");
  if (s.dense_max_members > s.papers) fail("dense community larger than the corpus");
  if (s.dense > 0 && s.dense_out_degree >= s.dense_min_members) {
    fail("dense out-degree needs more members than that (more edges than pairs)");
  }
  // Central papers come from the earliest quarter; each needs room for its
  // mentioners after it.
  const std::size_t early = s.papers / 4;
  if (s.concepts > early) fail(fmt::format("{} concepts need {} early papers, only {} available", s.concepts, s.concepts, early));
  if (s.concepts > 0 && s.papers - early < s.concept_max_mentions) fail("not enough later papers for concept mentions");
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const SynthSpec& spec) {
  check_spec(spec);
  DeterministicRng rng(spec.seed);
  const std::size_t n = spec.papers;

  std::vector<Date> dates(n);
  const auto years = static_cast<std::uint64_t>(spec.to_year - spec.from_year + 1);
  for (auto& d : dates) {
    d.year = spec.from_year + static_cast<int>(rng.uniform_below(years));
    d.month = 1 + static_cast<unsigned>(rng.uniform_below(12));
    d.day = 1 + static_cast<unsigned>(rng.uniform_below(28));
  }
  std::sort(dates.begin(), dates.end());

  // Ids are zero-padded in date order, so index i in the corpus is paper i.
  std::vector<PaperRecord> records(n);
  for (std::size_t i = 0; i < n; ++i) {
    records[i].id = fmt::format("synth-{:05d}", i);
    records[i].date = dates[i];
  }
  std::vector<std::set<std::size_t>> cites(n);
  std::vector<std::vector<std::string>> phrases(n);

  const auto words = nonce_words(spec.concepts + spec.dense + spec.background, rng);
  SyntheticCorpus out;
  std::size_t next_word = 0;

  const std::size_t early = n / 4;
  const auto centrals = rng.sample_without_replacement(early, spec.concepts);
  for (std::size_t c = 0; c < spec.concepts; ++c) {
    PlantedConcept concept_info;
    concept_info.phrase = words[next_word++];
    const std::size_t central = centrals[c];
    const std::size_t k = uniform_in(rng, spec.concept_min_mentions, spec.concept_max_mentions);
    std::vector<std::size_t> later;
    for (std::uint64_t off : rng.sample_without_replacement(n - central - 1, k)) later.push_back(central + 1 + off);
    phrases[central].push_back(concept_info.phrase);
    const std::size_t non_citers = uniform_in(rng, 0, k / 10);
    std::vector<std::size_t> order = later;
    shuffle(order, rng);
    for (std::size_t j = 0; j < k; ++j) {
      if (j >= non_citers) cites[order[j]].insert(central);
    }
    for (std::size_t m : later) {
      phrases[m].push_back(concept_info.phrase);
      concept_info.mentioners.push_back(records[m].id);
    }
    concept_info.central_paper = records[central].id;
    out.truth.add(concept_info.phrase, true, "synth");
    out.concepts.push_back(std::move(concept_info));
  }

  for (std::size_t d = 0; d < spec.dense; ++d) {
    const std::string& phrase = words[next_word++];
    const std::size_t m = uniform_in(rng, spec.dense_min_members, spec.dense_max_members);
    std::vector<std::size_t> members;
    for (std::uint64_t p : rng.sample_without_replacement(n, m)) members.push_back(p);
    std::size_t internal_edges = 0;
    for (std::size_t i = 0; i < m; ++i) internal_edges += std::min(i, spec.dense_out_degree);
    const auto cap = std::max<std::size_t>(1, static_cast<std::size_t>(spec.dense_max_in_share * internal_edges));
    std::vector<std::size_t> in_degree(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      phrases[members[i]].push_back(phrase);
      std::vector<std::size_t> open;
      for (std::size_t j = 0; j < i; ++j) {
        if (in_degree[j] < cap) open.push_back(j);
      }
      shuffle(open, rng);
      const std::size_t take = std::min(open.size(), spec.dense_out_degree);
      for (std::size_t t = 0; t < take; ++t) {
        cites[members[i]].insert(members[open[t]]);
        ++in_degree[open[t]];
      }
    }
    out.truth.add(phrase, false, "synth");
    out.dense_phrases.push_back(phrase);
  }

  // Round-robin first so every paper carries a background phrase, then top
  // each phrase up to its drawn mention count.
  std::vector<std::size_t> shuffled(n);
  for (std::size_t i = 0; i < n; ++i) shuffled[i] = i;
  shuffle(shuffled, rng);
  std::vector<std::set<std::size_t>> background_papers(spec.background);
  for (std::size_t i = 0; i < n; ++i) background_papers[i % spec.background].insert(shuffled[i]);
  for (std::size_t b = 0; b < spec.background; ++b) {
    const std::string& phrase = words[next_word++];
    auto& papers = background_papers[b];
    const std::size_t target = uniform_in(rng, spec.background_min_mentions, spec.background_max_mentions);
    while (papers.size() < target) papers.insert(rng.uniform_below(n));
    for (std::size_t p : papers) phrases[p].push_back(phrase);
    out.truth.add(phrase, false, "synth");
    out.background_phrases.push_back(phrase);
  }

  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t noise = uniform_in(rng, 0, spec.max_noise_citations);
    for (std::size_t j = 0; j < noise; ++j) cites[i].insert(rng.uniform_below(i));
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& list = phrases[i];
    shuffle(list, rng);
    std::string title;
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (j) title += fmt::format(" {} ", kConnectors[rng.uniform_below(kConnectors.size())]);
      title += list[j];
    }
    if (!title.empty()) title[0] = static_cast<char>(title[0] - 'a' + 'A');
    records[i].title = std::move(title);
    for (std::size_t target : cites[i]) records[i].out_citations.push_back(records[target].id);
  }

  out.corpus = Corpus::from_records(std::move(records));
  return out;
}

}  // namespace forecite
