// Fisher's exact test for 2x2 tables.
// See https://en.wikipedia.org/wiki/Fisher%27s_exact_test.
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "forecite/eval.hpp"

namespace forecite {

namespace {

double log_choose(std::uint64_t n, std::uint64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

FisherResult fisher_exact(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const std::uint64_t n = a + b + c + d;
  if (n == 0) throw std::invalid_argument("fisher_exact: all-zero table");
  const std::uint64_t row1 = a + b;
  const std::uint64_t row2 = c + d;
  const std::uint64_t col1 = a + c;

  // The top-left cell x determines the table once the margins are fixed.
  const std::uint64_t lo = col1 > row2 ? col1 - row2 : 0;
  const std::uint64_t hi = std::min(row1, col1);
  const double log_denominator = log_choose(n, col1);
  auto probability = [&](std::uint64_t x) {
    return std::exp(log_choose(row1, x) + log_choose(row2, col1 - x) - log_denominator);
  };

  // Relative slack so that tables tied with the observed one in exact
  // arithmetic are not lost to rounding.
  constexpr double kTieTolerance = 1e-7;
  const double observed = probability(a);
  FisherResult result;
  result.p_one_sided = 0.0;
  result.p_two_sided = 0.0;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    const double p = probability(x);
    if (x >= a) result.p_one_sided += p;
    if (p <= observed * (1.0 + kTieTolerance)) result.p_two_sided += p;
  }
  result.p_one_sided = std::min(1.0, result.p_one_sided);
  result.p_two_sided = std::min(1.0, result.p_two_sided);
  return result;
}

}  // namespace forecite
