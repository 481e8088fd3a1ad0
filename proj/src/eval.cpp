#include "forecite/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <ostream>

#include <fmt/format.h>

#include "forecite/random.hpp"

namespace forecite {

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string join_preview(const std::vector<std::string>& phrases) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(phrases.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += phrases[i];
  }
  if (phrases.size() > shown) out += fmt::format(", ... ({} more)", phrases.size() - shown);
  return out;
}

}  // namespace

MissingLabelsError::MissingLabelsError(std::vector<std::string> phrases)
    : std::runtime_error(fmt::format("{} sampled phrase(s) have no label: {}", phrases.size(), join_preview(phrases))),
      phrases_(std::move(phrases)) {}

std::vector<std::size_t> sample_rank_positions(std::size_t ranked_size, std::size_t k, std::size_t sample_size,
                                               std::uint64_t seed) {
  if (k > ranked_size) throw std::invalid_argument(fmt::format("k = {} exceeds ranked list size {}", k, ranked_size));
  if (sample_size > k) throw std::invalid_argument(fmt::format("sample size {} exceeds k = {}", sample_size, k));
  if (sample_size == 0) throw std::invalid_argument("sample size must be at least 1");
  std::vector<std::size_t> positions;
  positions.reserve(sample_size);
  if (sample_size == k) {
    for (std::size_t i = 0; i < k; ++i) positions.push_back(i);
    return positions;
  }
  DeterministicRng rng(seed);
  for (std::uint64_t pos : rng.sample_without_replacement(k, sample_size)) positions.push_back(pos);
  return positions;
}

std::vector<std::string> sample_top_k(std::span<const std::string> ranked, std::size_t k, std::size_t sample_size,
                                      std::uint64_t seed) {
  std::vector<std::string> out;
  for (std::size_t pos : sample_rank_positions(ranked.size(), k, sample_size, seed)) out.push_back(ranked[pos]);
  return out;
}

PrecisionEstimate precision_at_k(std::span<const std::string> ranked, const LabelMap& labels, std::size_t k,
                                 std::size_t sample_size, std::uint64_t seed) {
  PrecisionEstimate est;
  std::vector<std::string> missing;
  for (const auto& phrase : sample_top_k(ranked, k, sample_size, seed)) {
    auto it = labels.find(phrase);
    if (it == labels.end()) {
      missing.push_back(phrase);
      continue;
    }
    ++est.labeled;
    if (it->second) ++est.positives;
  }
  if (!missing.empty()) throw MissingLabelsError(std::move(missing));
  est.estimate = static_cast<double>(est.positives) / static_cast<double>(est.labeled);
  return est;
}

std::vector<CurvePoint> precision_yield_curve(std::span<const std::string> ranked, const LabelMap& labels,
                                              std::size_t top_n, std::size_t sample_size, std::uint64_t seed) {
  const auto positions = sample_rank_positions(ranked.size(), top_n, sample_size, seed);
  const double scale = static_cast<double>(top_n) / static_cast<double>(sample_size);

  std::vector<CurvePoint> curve;
  std::vector<std::string> missing;
  std::size_t positives = 0;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    const std::string& phrase = ranked[positions[j]];
    auto it = labels.find(phrase);
    if (it == labels.end()) {
      missing.push_back(phrase);
      continue;
    }
    if (!it->second) continue;
    ++positives;
    curve.push_back({static_cast<double>(positives) * scale,
                     static_cast<double>(positives) / static_cast<double>(j + 1)});
  }
  if (!missing.empty()) throw MissingLabelsError(std::move(missing));
  return curve;
}

double area_over_curve(std::span<const CurvePoint> curve, double max_yield) {
  if (curve.empty()) throw std::invalid_argument("area_over_curve: empty curve");
  if (max_yield < curve.back().yield) {
    throw std::invalid_argument(
        fmt::format("area_over_curve: max_yield {} is below the final yield {}", max_yield, curve.back().yield));
  }
  double area = 0.0;
  double previous = 0.0;
  for (const auto& point : curve) {
    area += (point.yield - previous) * (1.0 - point.precision);
    previous = point.yield;
  }
  area += (max_yield - previous) * (1.0 - curve.back().precision);
  return area;
}

KappaResult cohens_kappa(std::span<const bool> labels_a, std::span<const bool> labels_b) {
  if (labels_a.size() != labels_b.size()) throw std::invalid_argument("cohens_kappa: label lists differ in length");
  if (labels_a.empty()) throw std::invalid_argument("cohens_kappa: no labels");
  const std::size_t n = labels_a.size();
  std::size_t agree = 0, pos_a = 0, pos_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    agree += labels_a[i] == labels_b[i] ? 1 : 0;
    pos_a += labels_a[i] ? 1 : 0;
    pos_b += labels_b[i] ? 1 : 0;
  }
  const double dn = static_cast<double>(n);
  KappaResult result;
  result.raw_agreement = static_cast<double>(agree) / dn;
  const bool degenerate = (pos_a == n && pos_b == n) || (pos_a == 0 && pos_b == 0);
  if (degenerate) return result;
  const double pa = static_cast<double>(pos_a) / dn;
  const double pb = static_cast<double>(pos_b) / dn;
  const double chance = pa * pb + (1.0 - pa) * (1.0 - pb);
  result.kappa = (result.raw_agreement - chance) / (1.0 - chance);
  return result;
}

KappaResult cohens_kappa(const LabelMap& labels_a, const LabelMap& labels_b) {
  if (labels_a.size() != labels_b.size()) throw AnnotationError("cohens_kappa: annotators labeled different phrase sets");
  std::vector<std::string> phrases;
  phrases.reserve(labels_a.size());
  for (const auto& [phrase, _] : labels_a) {
    if (!labels_b.contains(phrase)) throw AnnotationError(fmt::format("cohens_kappa: '{}' labeled by only one annotator", phrase));
    phrases.push_back(phrase);
  }
  std::sort(phrases.begin(), phrases.end());
  // std::vector<bool> is not contiguous, so stage the labels in plain arrays.
  const std::size_t n = phrases.size();
  auto a = std::make_unique<bool[]>(n);
  auto b = std::make_unique<bool[]>(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = labels_a.at(phrases[i]);
    b[i] = labels_b.at(phrases[i]);
  }
  return cohens_kappa(std::span<const bool>(a.get(), n), std::span<const bool>(b.get(), n));
}

void write_curve_csv(std::span<const CurvePoint> curve, std::ostream& out) {
  out << "yield,precision\n";
  for (const auto& p : curve) out << fmt::format("{:.6f},{:.6f}\n", p.yield, p.precision);
}

void write_curve_svg(std::span<const NamedCurve> curves, std::ostream& out) {
  constexpr double kWidth = 640, kHeight = 400, kLeft = 60, kRight = 20, kTop = 20, kBottom = 50;
  constexpr std::array<std::string_view, 6> kColors = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"};
  double max_yield = 1.0;
  for (const auto& c : curves) {
    if (!c.points.empty()) max_yield = std::max(max_yield, c.points.back().yield);
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto x = [&](double yield) { return kLeft + plot_w * yield / max_yield; };
  auto y = [&](double precision) { return kTop + plot_h * (1.0 - precision); };

  out << fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">)", kWidth,
                     kHeight, kWidth, kHeight)
      << '\n';
  out << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
  out << fmt::format(R"(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>)", kLeft, kTop + plot_h,
                     kLeft + plot_w, kTop + plot_h)
      << '\n';
  out << fmt::format(R"(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>)", kLeft, kTop, kLeft, kTop + plot_h)
      << '\n';
  for (int tick = 0; tick <= 4; ++tick) {
    const double p = tick / 4.0;
    out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="11" text-anchor="end">{:.2f}</text>)", kLeft - 6,
                       y(p) + 4, p)
        << '\n';
    const double yl = max_yield * tick / 4.0;
    out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="11" text-anchor="middle">{:.0f}</text>)", x(yl),
                       kTop + plot_h + 16, yl)
        << '\n';
  }
  out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="12" text-anchor="middle">estimated yield</text>)",
                     kLeft + plot_w / 2, kHeight - 8)
      << '\n';
  out << fmt::format(
             R"svg(<text x="14" y="{:.1f}" font-size="12" text-anchor="middle" transform="rotate(-90 14 {:.1f})">precision</text>)svg",
             kTop + plot_h / 2, kTop + plot_h / 2)
      << '\n';
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto color = kColors[i % kColors.size()];
    std::string points;
    for (const auto& p : curves[i].points) points += fmt::format("{:.2f},{:.2f} ", x(p.yield), y(p.precision));
    out << fmt::format(R"(<polyline fill="none" stroke="{}" stroke-width="1.5" points="{}"/>)", color, points) << '\n';
    out << fmt::format(R"(<text x="{:.1f}" y="{:.1f}" font-size="12" fill="{}">{}</text>)", kLeft + plot_w - 150,
                       kTop + 16 + 16.0 * static_cast<double>(i), color, xml_escape(curves[i].name))
        << '\n';
  }
  out << "</svg>\n";
}

}  // namespace forecite
