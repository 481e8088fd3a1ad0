#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace forecite {

// phrase -> true for a positive (concept), false for a negative.
using LabelMap = std::unordered_map<std::string, bool>;

class AnnotationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Human labels keyed by (phrase, annotator). Read from and written to CSV
// with header `phrase,label,annotator`.
class AnnotationSet {
 public:
  // Throws AnnotationError if (phrase, annotator) already has a different
  // label. Re-adding the same label is a no-op.
  void add(const std::string& phrase, bool positive, const std::string& annotator = "");

  // Annotators in first-seen order.
  const std::vector<std::string>& annotators() const { return annotators_; }
  std::size_t size() const;

  // Labels from one annotator; the first annotator in the file when omitted.
  LabelMap labels(std::optional<std::string_view> annotator = std::nullopt) const;

  static AnnotationSet read_csv(std::istream& in);
  static AnnotationSet load_csv(const std::filesystem::path& path);
  void write_csv(std::ostream& out) const;

 private:
  std::vector<std::string> annotators_;
  std::map<std::string, std::map<std::string, bool>> by_annotator_;  // annotator -> phrase -> label
};

// Thrown when an evaluation sample contains phrases without labels. The
// phrases are listed in rank order.
class MissingLabelsError : public std::runtime_error {
 public:
  explicit MissingLabelsError(std::vector<std::string> phrases);
  const std::vector<std::string>& phrases() const { return phrases_; }

 private:
  std::vector<std::string> phrases_;
};

// Rank positions (0-based) of a uniform sample without replacement from the
// first k ranks, ascending. Throws std::invalid_argument unless
// sample_size <= k <= ranked_size.
std::vector<std::size_t> sample_rank_positions(std::size_t ranked_size, std::size_t k, std::size_t sample_size,
                                               std::uint64_t seed);

std::vector<std::string> sample_top_k(std::span<const std::string> ranked, std::size_t k, std::size_t sample_size,
                                      std::uint64_t seed);

struct PrecisionEstimate {
  double estimate = 0.0;
  std::size_t positives = 0;
  std::size_t labeled = 0;
};

PrecisionEstimate precision_at_k(std::span<const std::string> ranked, const LabelMap& labels, std::size_t k,
                                 std::size_t sample_size, std::uint64_t seed);

struct CurvePoint {
  double yield = 0.0;      // estimated true positives so far
  double precision = 0.0;  // cumulative precision

  bool operator==(const CurvePoint&) const = default;
};

// One point per positive. With sample_size == top_n every rank is labeled
// and the curve is exact; otherwise a uniform sample of the top_n is walked
// in rank order and each sampled positive counts for top_n / sample_size
// true positives.
std::vector<CurvePoint> precision_yield_curve(std::span<const std::string> ranked, const LabelMap& labels,
                                              std::size_t top_n, std::size_t sample_size, std::uint64_t seed);

// Area between precision 1 and the step curve over [0, max_yield]. Each
// point's precision holds from the previous point's yield up to its own;
// beyond the last point its precision continues to max_yield.
double area_over_curve(std::span<const CurvePoint> curve, double max_yield);

struct KappaResult {
  double raw_agreement = 0.0;
  std::optional<double> kappa;  // nullopt when chance agreement is 1
};

KappaResult cohens_kappa(std::span<const bool> labels_a, std::span<const bool> labels_b);

// Agreement over phrases labeled by both annotators. Throws AnnotationError
// if the two phrase sets differ.
KappaResult cohens_kappa(const LabelMap& labels_a, const LabelMap& labels_b);

struct FisherResult {
  double p_one_sided = 1.0;  // P(X >= a): first row enriched in the first column
  double p_two_sided = 1.0;  // tables no more likely than the observed one
};

// Exact test on the 2x2 table [[a, b], [c, d]]. Throws std::invalid_argument
// for an all-zero table.
FisherResult fisher_exact(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

void write_curve_csv(std::span<const CurvePoint> curve, std::ostream& out);

struct NamedCurve {
  std::string name;
  std::vector<CurvePoint> points;
};

// Standalone SVG line plot of one or more curves.
void write_curve_svg(std::span<const NamedCurve> curves, std::ostream& out);

}  // namespace forecite
