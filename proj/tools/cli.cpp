#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "forecite/corpus.hpp"
#include "forecite/eval.hpp"
#include "forecite/index.hpp"
#include "forecite/scoring.hpp"
#include "forecite/synth.hpp"
#include "forecite/textnorm.hpp"

namespace forecite {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to a file, or to `out` when path is "-".
void write_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path == "-") {
    body(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
  body(file);
  file.flush();
  if (!file) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  return in;
}

struct Inputs {
  LoadedCorpus loaded;
  std::optional<TaggedStore> tagged;
};

Inputs load_inputs(const std::string& corpus_path, const std::string& tagged_path, std::ostream& err) {
  Inputs in;
  in.loaded = load_corpus(corpus_path);
  for (const auto& r : in.loaded.report.rejects) err << fmt::format("{}:{}: rejected: {}\n", corpus_path, r.line, r.message);
  if (!tagged_path.empty()) {
    TaggedStoreReport report;
    in.tagged = TaggedStore::load(tagged_path, &report);
    for (const auto& w : report.warnings) err << fmt::format("{}: warning: {}\n", tagged_path, w);
    for (const auto& w : in.tagged->check_coverage(in.loaded.corpus)) err << fmt::format("{}: warning: {}\n", tagged_path, w);
  }
  return in;
}

std::vector<PhraseKey> read_candidates(const std::string& path) {
  auto in = open_input(path);
  std::vector<PhraseKey> out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto key = PhraseKey::parse(line);
    if (!key) throw std::runtime_error(fmt::format("{}:{}: not a canonical phrase: '{}'", path, line_number, line));
    out.push_back(std::move(*key));
  }
  return out;
}

std::vector<std::string> read_ranked_phrases(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::string> phrases;
  try {
    for (auto& row : read_ranked_tsv(in)) phrases.push_back(std::move(row.phrase));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(fmt::format("{}: {}", path, e.what()));
  }
  return phrases;
}

LabelMap read_labels(const std::string& path, const std::string& annotator) {
  const auto set = AnnotationSet::load_csv(path);
  if (annotator.empty()) return set.labels();
  return set.labels(annotator);
}

// ---- candidates ----

struct CandidatesOptions {
  std::string corpus;
  std::string tagged;
  int from_year = 1999;
  int to_year = 2018;
  std::string out = "-";
};

void run_candidates(const CandidatesOptions& o, std::ostream& out, std::ostream& err) {
  if (o.from_year > o.to_year) throw UsageError("--from-year is after --to-year");
  auto in = load_inputs(o.corpus, o.tagged, err);
  const TextAnalyzer analyzer(StopwordSet::standard(), in.tagged ? &*in.tagged : nullptr);
  const auto candidates = extract_title_candidates(in.loaded.corpus, o.from_year, o.to_year, analyzer);
  write_output(o.out, out, [&](std::ostream& s) {
    for (const auto& c : candidates) s << c.text() << '\n';
  });
  (o.out == "-" ? err : out) << fmt::format("{} candidates\n", candidates.size());
}

// ---- score ----

struct ScoreOptions {
  std::string corpus;
  std::string candidates;
  std::string tagged;
  std::string index;
  std::string save_index;
  std::string method = "forecite";
  std::uint32_t min_citations = 3;
  std::uint32_t sample_size = 500;
  std::uint64_t seed = 13;
  std::size_t top_n = 0;
  std::string out = "-";
};

void run_score(const ScoreOptions& o, std::ostream& out, std::ostream& err) {
  const auto method = parse_method(o.method);
  if (!method) throw UsageError(fmt::format("unknown method '{}' (expected forecite, cnlc or loor)", o.method));
  if (o.sample_size == 0) throw UsageError("--sample-size must be at least 1");

  ConceptIndex index;
  if (!o.index.empty()) {
    if (!o.corpus.empty() || !o.candidates.empty()) throw UsageError("--index replaces --corpus and --candidates");
    auto in = open_input(o.index);
    index = load_snapshot(in);
  } else {
    if (o.corpus.empty() || o.candidates.empty()) throw UsageError("score needs --corpus and --candidates, or --index");
    auto in = load_inputs(o.corpus, o.tagged, err);
    const TextAnalyzer analyzer(StopwordSet::standard(), in.tagged ? &*in.tagged : nullptr);
    index = build_concept_index(in.loaded.corpus, read_candidates(o.candidates), analyzer);
  }
  if (!o.save_index.empty()) {
    write_output(o.save_index, out, [&](std::ostream& s) { save_snapshot(index, s); });
  }

  ForeCiteParams params;
  params.min_citations = o.min_citations;
  params.sample_size = o.sample_size;
  params.seed = o.seed;
  auto ranked = rank_concepts(*method, index, params);
  if (o.top_n > 0 && ranked.size() > o.top_n) ranked.resize(o.top_n);
  write_output(o.out, out, [&](std::ostream& s) { write_ranked_tsv(ranked, s); });
  (o.out == "-" ? err : out) << fmt::format("{} ranked phrases\n", ranked.size());
}

// ---- eval ----

struct PAtKOptions {
  std::string ranked;
  std::string annotations;
  std::string annotator;
  std::vector<std::size_t> k;
  std::size_t sample_size = 0;  // 0 = census
  std::uint64_t seed = 13;
  std::string out = "-";
};

void run_p_at_k(const PAtKOptions& o, std::ostream& out) {
  const auto ranked = read_ranked_phrases(o.ranked);
  const auto labels = read_labels(o.annotations, o.annotator);
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (std::size_t k : o.k) {
    const std::size_t sample = o.sample_size == 0 ? k : std::min(o.sample_size, k);
    if (k > ranked.size()) throw UsageError(fmt::format("--k {} exceeds the {} ranked phrases", k, ranked.size()));
    if (k == 0) throw UsageError("--k must be at least 1");
    const auto est = precision_at_k(ranked, labels, k, sample, o.seed);
    nlohmann::ordered_json e;
    e["k"] = k;
    e["sample_size"] = sample;
    e["census"] = sample == k;
    e["precision"] = est.estimate;
    e["positives"] = est.positives;
    e["labeled"] = est.labeled;
    entries.push_back(std::move(e));
  }
  nlohmann::ordered_json doc;
  doc["ranked"] = o.ranked;
  doc["seed"] = o.seed;
  doc["precision_at_k"] = std::move(entries);
  write_output(o.out, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
}

struct CurveOptions {
  std::vector<std::string> ranked;
  std::vector<std::string> out;
  std::string annotations;
  std::string annotator;
  std::size_t top_n = 0;
  std::size_t sample_size = 0;  // 0 = census
  std::uint64_t seed = 13;
  std::string metrics = "-";
  std::string svg;
};

void run_py_curve(const CurveOptions& o, std::ostream& out) {
  if (!o.out.empty() && o.out.size() != o.ranked.size()) {
    throw UsageError("give one --out per --ranked file, or none");
  }
  if (o.top_n == 0) throw UsageError("--top-n must be at least 1");
  const auto labels = read_labels(o.annotations, o.annotator);
  const std::size_t sample = o.sample_size == 0 ? o.top_n : std::min(o.sample_size, o.top_n);

  std::vector<NamedCurve> curves;
  for (const auto& path : o.ranked) {
    const auto ranked = read_ranked_phrases(path);
    if (o.top_n > ranked.size()) {
      throw UsageError(fmt::format("--top-n {} exceeds the {} phrases in {}", o.top_n, ranked.size(), path));
    }
    curves.push_back({std::filesystem::path(path).stem().string(),
                      precision_yield_curve(ranked, labels, o.top_n, sample, o.seed)});
  }
  double max_yield = 0.0;
  for (const auto& c : curves) {
    if (!c.points.empty()) max_yield = std::max(max_yield, c.points.back().yield);
  }

  nlohmann::ordered_json doc;
  doc["top_n"] = o.top_n;
  doc["sample_size"] = sample;
  doc["census"] = sample == o.top_n;
  doc["seed"] = o.seed;
  doc["max_yield"] = max_yield;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  std::vector<std::optional<double>> areas;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& points = curves[i].points;
    nlohmann::ordered_json c;
    c["ranked"] = o.ranked[i];
    c["points"] = points.size();
    c["final_yield"] = points.empty() ? 0.0 : points.back().yield;
    if (points.empty()) {
      c["area_over_curve"] = nullptr;
      areas.push_back(std::nullopt);
    } else {
      areas.push_back(area_over_curve(points, max_yield));
      c["area_over_curve"] = *areas.back();
    }
    list.push_back(std::move(c));
    if (!o.out.empty()) write_output(o.out[i], out, [&](std::ostream& s) { write_curve_csv(points, s); });
  }
  doc["curves"] = std::move(list);
  // Reduction of the first curve's area relative to each other curve.
  if (curves.size() > 1) {
    nlohmann::ordered_json reductions = nlohmann::ordered_json::array();
    for (std::size_t i = 1; i < curves.size(); ++i) {
      nlohmann::ordered_json r;
      r["baseline"] = o.ranked[i];
      if (areas[0] && areas[i] && *areas[i] > 0.0) {
        r["aoc_reduction_percent"] = 100.0 * (*areas[i] - *areas[0]) / *areas[i];
      } else {
        r["aoc_reduction_percent"] = nullptr;
      }
      reductions.push_back(std::move(r));
    }
    doc["aoc_reduction"] = std::move(reductions);
  }
  if (!o.svg.empty()) write_output(o.svg, out, [&](std::ostream& s) { write_curve_svg(curves, s); });
  write_output(o.metrics, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
}

// ---- synth ----

struct SynthOptions {
  SynthSpec spec;
  std::string out;
  std::string truth;
};

void run_synth(const SynthOptions& o, std::ostream& out) {
  SyntheticCorpus synth;
  try {
    synth = generate_synthetic_corpus(o.spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  write_output(o.out, out, [&](std::ostream& s) { write_corpus_jsonl(synth.corpus, s); });
  if (!o.truth.empty()) write_output(o.truth, out, [&](std::ostream& s) { synth.truth.write_csv(s); });
}

// ---- ingest-check ----

struct IngestOptions {
  std::string corpus;
  std::string tagged;
};

void run_ingest_check(const IngestOptions& o, std::ostream& out, std::ostream& err) {
  auto in = load_inputs(o.corpus, o.tagged, err);
  const auto& r = in.loaded.report;
  const CitationGraph graph = CitationGraph::build(in.loaded.corpus);
  nlohmann::ordered_json doc;
  doc["papers"] = in.loaded.corpus.size();
  doc["records_read"] = r.records_read;
  doc["records_rejected"] = r.records_rejected;
  doc["self_citations_dropped"] = r.self_citations_dropped;
  doc["duplicate_citations_dropped"] = r.duplicate_citations_dropped;
  doc["dangling_citations"] = r.dangling_citations;
  doc["citation_edges"] = graph.edge_count();
  if (in.tagged) doc["tagged_documents"] = in.tagged->size();
  out << doc.dump(2) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Concept extraction from citation graphs", "forecite"};
  app.require_subcommand(1);

  CandidatesOptions cand;
  auto* cmd_cand = app.add_subcommand("candidates", "Noun-phrase candidates from titles");
  cmd_cand->add_option("--corpus", cand.corpus, "Corpus JSONL")->required();
  cmd_cand->add_option("--tagged", cand.tagged, "Tagged interchange JSONL");
  cmd_cand->add_option("--from-year", cand.from_year, "First title year")->capture_default_str();
  cmd_cand->add_option("--to-year", cand.to_year, "Last title year")->capture_default_str();
  cmd_cand->add_option("--out", cand.out, "Output file, - for stdout")->capture_default_str();

  ScoreOptions score;
  auto* cmd_score = app.add_subcommand("score", "Rank candidates");
  cmd_score->add_option("--corpus", score.corpus, "Corpus JSONL");
  cmd_score->add_option("--candidates", score.candidates, "Candidate file, one phrase per line");
  cmd_score->add_option("--tagged", score.tagged, "Tagged interchange JSONL");
  cmd_score->add_option("--index", score.index, "Load an index snapshot instead of building one");
  cmd_score->add_option("--save-index", score.save_index, "Write the index snapshot");
  cmd_score->add_option("--method", score.method, "forecite, cnlc or loor")->capture_default_str();
  cmd_score->add_option("--min-citations", score.min_citations)->capture_default_str();
  cmd_score->add_option("--sample-size", score.sample_size)->capture_default_str();
  cmd_score->add_option("--seed", score.seed)->capture_default_str();
  cmd_score->add_option("--top-n", score.top_n, "Keep the top N rows, 0 for all")->capture_default_str();
  cmd_score->add_option("--out", score.out, "Ranked TSV, - for stdout")->capture_default_str();

  auto* cmd_eval = app.add_subcommand("eval", "Evaluate ranked lists");
  cmd_eval->require_subcommand(1);

  PAtKOptions patk;
  auto* cmd_patk = cmd_eval->add_subcommand("p-at-k", "Precision at K");
  cmd_patk->add_option("--ranked", patk.ranked, "Ranked TSV")->required();
  cmd_patk->add_option("--annotations", patk.annotations, "Annotation CSV")->required();
  cmd_patk->add_option("--annotator", patk.annotator, "Annotator id (default: first in file)");
  cmd_patk->add_option("--k", patk.k, "Cutoffs")->required();
  cmd_patk->add_option("--sample-size", patk.sample_size, "Sample size per cutoff, 0 for census")->capture_default_str();
  cmd_patk->add_option("--seed", patk.seed)->capture_default_str();
  cmd_patk->add_option("--out", patk.out, "Metrics JSON, - for stdout")->capture_default_str();

  CurveOptions curve;
  auto* cmd_curve = cmd_eval->add_subcommand("py-curve", "Precision-yield curves and area over the curve");
  cmd_curve->add_option("--ranked", curve.ranked, "Ranked TSV; the first is compared with the rest")->required();
  cmd_curve->add_option("--annotations", curve.annotations, "Annotation CSV")->required();
  cmd_curve->add_option("--annotator", curve.annotator, "Annotator id (default: first in file)");
  cmd_curve->add_option("--top-n", curve.top_n, "Ranks covered by the curve")->required();
  cmd_curve->add_option("--sample-size", curve.sample_size, "Labeled sample size, 0 for census")->capture_default_str();
  cmd_curve->add_option("--seed", curve.seed)->capture_default_str();
  cmd_curve->add_option("--out", curve.out, "Curve CSV per ranked file");
  cmd_curve->add_option("--svg", curve.svg, "SVG plot of all curves");
  cmd_curve->add_option("--metrics", curve.metrics, "Metrics JSON, - for stdout")->capture_default_str();

  SynthOptions synth;
  auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic corpus with ground truth");
  cmd_synth->add_option("--concepts", synth.spec.concepts)->capture_default_str();
  cmd_synth->add_option("--dense", synth.spec.dense)->capture_default_str();
  cmd_synth->add_option("--background", synth.spec.background)->capture_default_str();
  cmd_synth->add_option("--papers", synth.spec.papers)->capture_default_str();
  cmd_synth->add_option("--seed", synth.spec.seed)->capture_default_str();
  cmd_synth->add_option("--from-year", synth.spec.from_year)->capture_default_str();
  cmd_synth->add_option("--to-year", synth.spec.to_year)->capture_default_str();
  cmd_synth->add_option("--out", synth.out, "Corpus JSONL, - for stdout")->required();
  cmd_synth->add_option("--truth", synth.truth, "Ground-truth annotation CSV");

  IngestOptions ingest;
  auto* cmd_ingest = app.add_subcommand("ingest-check", "Validate a corpus and report counts");
  cmd_ingest->add_option("--corpus", ingest.corpus, "Corpus JSONL")->required();
  cmd_ingest->add_option("--tagged", ingest.tagged, "Tagged interchange JSONL");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cmd_cand) run_candidates(cand, out, err);
    else if (*cmd_score) run_score(score, out, err);
    else if (*cmd_patk) run_p_at_k(patk, out);
    else if (*cmd_curve) run_py_curve(curve, out);
    else if (*cmd_synth) run_synth(synth, out);
    else if (*cmd_ingest) run_ingest_check(ingest, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MissingLabelsError& e) {
    err << "error: " << e.phrases().size() << " phrase(s) need labels:\n";
    for (const auto& p : e.phrases()) err << p << '\n';
    return kExitMissingLabels;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace forecite
