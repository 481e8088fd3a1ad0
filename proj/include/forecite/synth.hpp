#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "forecite/corpus.hpp"
#include "forecite/eval.hpp"

namespace forecite {

struct SynthSpec {
  std::size_t concepts = 20;     // central-paper concepts (labeled positive)
  std::size_t dense = 20;        // dense-community phrases (negative)
  std::size_t background = 200;  // background phrases (negative)
  std::size_t papers = 2000;
  std::uint64_t seed = 13;
  int from_year = 2000;
  int to_year = 2018;

  std::size_t concept_min_mentions = 10;
  std::size_t concept_max_mentions = 30;
  std::size_t dense_min_members = 20;
  std::size_t dense_max_members = 40;
  std::size_t dense_out_degree = 4;
  double dense_max_in_share = 0.3;  // of a community's internal edges
  std::size_t background_min_mentions = 5;
  std::size_t background_max_mentions = 25;
  std::size_t max_noise_citations = 3;
};

struct PlantedConcept {
  std::string phrase;
  std::string central_paper;
  std::vector<std::string> mentioners;  // later papers using the phrase
};

struct SyntheticCorpus {
  Corpus corpus;
  std::vector<PlantedConcept> concepts;
  std::vector<std::string> dense_phrases;
  std::vector<std::string> background_phrases;
  AnnotationSet truth;  // annotator "synth"; concepts 1, everything else 0
};

// Throws std::invalid_argument when the counts cannot be realized.
SyntheticCorpus generate_synthetic_corpus(const SynthSpec& spec);

}  // namespace forecite
