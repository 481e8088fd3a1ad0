#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace forecite {

// Calendar date at day resolution. Month-only inputs are stored as day 1.
struct Date {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  auto operator<=>(const Date&) const = default;
  std::string to_string() const;  // YYYY-MM-DD
};

// Accepts "YYYY-MM-DD" or "YYYY-MM". Returns nullopt for anything else,
// including calendar-invalid days such as 2015-02-29.
std::optional<Date> parse_date(std::string_view text);

struct PaperRecord {
  std::string id;
  std::string title;
  std::string abstract;
  std::string body;
  Date date;
  std::vector<std::string> out_citations;

  bool operator==(const PaperRecord&) const = default;
};

// Position of a paper in the corpus's (date, id) order. Comparing two
// PaperIndex values is the same as comparing (date, id) pairs.
using PaperIndex = std::uint32_t;

// A record-level problem in one JSONL line.
class RecordError : public std::runtime_error {
 public:
  RecordError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

// A problem with the corpus as a whole (unreadable file, duplicate id).
class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedRecord {
  PaperRecord record;
  std::size_t self_citations_dropped = 0;
  std::size_t duplicate_citations_dropped = 0;
};

ParsedRecord parse_paper_record(std::string_view line, std::size_t line_number = 0);

// Serializes one record as a single JSONL line (no trailing newline). The
// date is always written at day resolution.
std::string to_json_line(const PaperRecord& record);

struct RejectedRecord {
  std::size_t line = 0;
  std::string message;
};

struct IngestReport {
  std::size_t records_read = 0;
  std::size_t records_rejected = 0;
  std::size_t self_citations_dropped = 0;
  std::size_t duplicate_citations_dropped = 0;
  std::size_t dangling_citations = 0;  // citation edges whose target is not in the corpus
  std::vector<RejectedRecord> rejects;
};

// Immutable, id-keyed paper collection stored in (date, id) order.
class Corpus {
 public:
  Corpus() = default;

  // Throws CorpusError on a duplicate id.
  static Corpus from_records(std::vector<PaperRecord> records);

  std::size_t size() const { return papers_.size(); }
  bool empty() const { return papers_.empty(); }
  const PaperRecord& paper(PaperIndex index) const { return papers_.at(index); }
  std::span<const PaperRecord> papers() const { return papers_; }
  std::optional<PaperIndex> find(std::string_view id) const;

  bool operator==(const Corpus& other) const { return papers_ == other.papers_; }

 private:
  std::vector<PaperRecord> papers_;
  std::unordered_map<std::string, PaperIndex> by_id_;
};

struct LoadedCorpus {
  Corpus corpus;
  IngestReport report;
};

// Malformed records are rejected and counted; a duplicate id or an
// unreadable source throws CorpusError.
LoadedCorpus read_corpus(std::istream& in, std::string_view source_name = "<stream>");
LoadedCorpus load_corpus(const std::filesystem::path& path);

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out);

}  // namespace forecite
