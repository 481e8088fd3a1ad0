#include "forecite/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <fmt/format.h>

#include "json.hpp"

namespace forecite {

using json = nlohmann::json;

std::string Date::to_string() const { return fmt::format("{:04d}-{:02d}-{:02d}", year, month, day); }

namespace {

std::optional<unsigned> parse_digits(std::string_view text, std::size_t width) {
  if (text.size() != width) return std::nullopt;
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 7 && text.size() != 10) return std::nullopt;
  if (text[4] != '-') return std::nullopt;
  auto year = parse_digits(text.substr(0, 4), 4);
  auto month = parse_digits(text.substr(5, 2), 2);
  if (!year || !month) return std::nullopt;
  unsigned day = 1;
  if (text.size() == 10) {
    if (text[7] != '-') return std::nullopt;
    auto d = parse_digits(text.substr(8, 2), 2);
    if (!d) return std::nullopt;
    day = *d;
  }
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{static_cast<int>(*year)}, std::chrono::month{*month},
                           std::chrono::day{day}};
  if (!ymd.ok()) return std::nullopt;
  return Date{static_cast<int>(*year), *month, day};
}

RecordError::RecordError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? fmt::format("line {}: {}", line, message) : message),
      line_(line),
      detail_(message) {}

namespace {

const std::string& required_string(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) throw RecordError(line, fmt::format("missing field: {}", field));
  if (!it->is_string()) throw RecordError(line, fmt::format("field '{}' must be a string", field));
  return it->get_ref<const std::string&>();
}

std::string optional_string(const json& obj, const char* field, std::size_t line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw RecordError(line, fmt::format("field '{}' must be a string", field));
  return it->get<std::string>();
}

}  // namespace

ParsedRecord parse_paper_record(std::string_view line, std::size_t line_number) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw RecordError(line_number, fmt::format("malformed JSON: {}", e.what()));
  }
  if (!obj.is_object()) throw RecordError(line_number, "record is not a JSON object");

  ParsedRecord parsed;
  PaperRecord& rec = parsed.record;
  rec.id = required_string(obj, "id", line_number);
  if (rec.id.empty()) throw RecordError(line_number, "empty id");
  rec.title = required_string(obj, "title", line_number);
  const std::string& date_text = required_string(obj, "date", line_number);
  auto date = parse_date(date_text);
  if (!date) throw RecordError(line_number, fmt::format("unparseable date: '{}'", date_text));
  rec.date = *date;
  rec.abstract = optional_string(obj, "abstract", line_number);
  rec.body = optional_string(obj, "body", line_number);

  if (auto it = obj.find("outCitations"); it != obj.end() && !it->is_null()) {
    if (!it->is_array()) throw RecordError(line_number, "field 'outCitations' must be an array");
    std::unordered_set<std::string> seen;
    for (const auto& cited : *it) {
      if (!cited.is_string()) throw RecordError(line_number, "outCitations entries must be strings");
      const auto& target = cited.get_ref<const std::string&>();
      if (target == rec.id) {
        ++parsed.self_citations_dropped;
      } else if (!seen.insert(target).second) {
        ++parsed.duplicate_citations_dropped;
      } else {
        rec.out_citations.push_back(target);
      }
    }
  }
  return parsed;
}

std::string to_json_line(const PaperRecord& record) {
  json obj = {
      {"id", record.id},
      {"title", record.title},
      {"abstract", record.abstract},
      {"body", record.body},
      {"date", record.date.to_string()},
      {"outCitations", record.out_citations},
  };
  return obj.dump();
}

Corpus Corpus::from_records(std::vector<PaperRecord> records) {
  std::sort(records.begin(), records.end(), [](const PaperRecord& a, const PaperRecord& b) {
    if (a.date != b.date) return a.date < b.date;
    return a.id < b.id;
  });
  Corpus corpus;
  corpus.by_id_.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!corpus.by_id_.emplace(records[i].id, static_cast<PaperIndex>(i)).second) {
      throw CorpusError(fmt::format("duplicate paper id '{}'", records[i].id));
    }
  }
  corpus.papers_ = std::move(records);
  return corpus;
}

std::optional<PaperIndex> Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

LoadedCorpus read_corpus(std::istream& in, std::string_view source_name) {
  LoadedCorpus loaded;
  IngestReport& report = loaded.report;
  std::vector<PaperRecord> records;
  std::unordered_map<std::string, std::size_t> first_line;

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    ++report.records_read;
    try {
      ParsedRecord parsed = parse_paper_record(line, line_number);
      auto [it, inserted] = first_line.emplace(parsed.record.id, line_number);
      if (!inserted) {
        throw CorpusError(fmt::format("{}: duplicate paper id '{}' on lines {} and {}", source_name,
                                      parsed.record.id, it->second, line_number));
      }
      report.self_citations_dropped += parsed.self_citations_dropped;
      report.duplicate_citations_dropped += parsed.duplicate_citations_dropped;
      records.push_back(std::move(parsed.record));
    } catch (const RecordError& e) {
      ++report.records_rejected;
      report.rejects.push_back({e.line(), e.detail()});
    }
  }
  if (in.bad()) throw CorpusError(fmt::format("{}: read error", source_name));

  for (const auto& rec : records) {
    for (const auto& cited : rec.out_citations) {
      if (!first_line.contains(cited)) ++report.dangling_citations;
    }
  }
  loaded.corpus = Corpus::from_records(std::move(records));
  return loaded;
}

LoadedCorpus load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(fmt::format("cannot open corpus file '{}'", path.string()));
  return read_corpus(in, path.string());
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& paper : corpus.papers()) out << to_json_line(paper) << '\n';
}

}  // namespace forecite
