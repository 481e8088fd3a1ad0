// Ranked TSV reading and writing.
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "forecite/scoring.hpp"

namespace forecite {

namespace {

constexpr std::string_view kHeader = "rank\tphrase\tmethod\tscore\tcentral_paper\tn_t\tf_t\tf_p_t\tc_t\tc_out";

std::string field(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

}  // namespace

void write_ranked_tsv(std::span<const ScoredConcept> concepts, std::ostream& out) {
  out << kHeader << '\n';
  for (const auto& c : concepts) {
    out << fmt::format("{}\t{}\t{}\t{:.6f}\t{}\t{}\t{}\t{}\t{}\t{}\n", c.rank, c.term, to_string(c.method), c.score,
                       c.central_paper.value_or("-"), field(c.n_t), field(c.f_t), field(c.f_p_t), field(c.c_t),
                       field(c.c_out));
  }
}

std::vector<RankedRow> read_ranked_tsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("ranked file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw std::runtime_error("ranked file has an unexpected header");

  std::vector<RankedRow> rows;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 10) throw std::runtime_error(fmt::format("ranked file line {}: expected 10 columns", line_number));
    RankedRow row;
    auto [p, ec] = std::from_chars(cols[0].data(), cols[0].data() + cols[0].size(), row.rank);
    if (ec != std::errc{} || p != cols[0].data() + cols[0].size() || row.rank != rows.size() + 1) {
      throw std::runtime_error(fmt::format("ranked file line {}: bad rank '{}'", line_number, cols[0]));
    }
    row.phrase = std::string(cols[1]);
    row.method = std::string(cols[2]);
    try {
      row.score = std::stod(std::string(cols[3]));
    } catch (const std::exception&) {
      throw std::runtime_error(fmt::format("ranked file line {}: bad score '{}'", line_number, cols[3]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace forecite
