#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "forecite/eval.hpp"

namespace forecite {

namespace {

// RFC 4180 style: quoted fields may contain commas and doubled quotes.
std::vector<std::string> split_csv(std::string_view line, std::size_t line_number) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (quoted) throw AnnotationError(fmt::format("annotations line {}: unterminated quote", line_number));
  fields.push_back(std::move(current));
  return fields;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void AnnotationSet::add(const std::string& phrase, bool positive, const std::string& annotator) {
  auto& labels = by_annotator_[annotator];
  if (labels.empty() && std::find(annotators_.begin(), annotators_.end(), annotator) == annotators_.end()) {
    annotators_.push_back(annotator);
  }
  auto [it, inserted] = labels.emplace(phrase, positive);
  if (!inserted && it->second != positive) {
    throw AnnotationError(
        fmt::format("conflicting labels for '{}' from annotator '{}'", phrase, annotator));
  }
}

std::size_t AnnotationSet::size() const {
  std::size_t n = 0;
  for (const auto& [_, labels] : by_annotator_) n += labels.size();
  return n;
}

LabelMap AnnotationSet::labels(std::optional<std::string_view> annotator) const {
  LabelMap out;
  if (annotators_.empty()) return out;
  const std::string who = annotator ? std::string(*annotator) : annotators_.front();
  auto it = by_annotator_.find(who);
  if (it == by_annotator_.end()) throw AnnotationError(fmt::format("no labels from annotator '{}'", who));
  out.insert(it->second.begin(), it->second.end());
  return out;
}

AnnotationSet AnnotationSet::read_csv(std::istream& in) {
  AnnotationSet set;
  std::string line;
  if (!std::getline(in, line)) return set;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = split_csv(line, 1);
  const bool has_annotator = header.size() == 3 && header[2] == "annotator";
  if (header.size() < 2 || header[0] != "phrase" || header[1] != "label" || (header.size() == 3 && !has_annotator) ||
      header.size() > 3) {
    throw AnnotationError("annotations: expected header 'phrase,label,annotator'");
  }
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line, line_number);
    if (fields.size() != header.size()) {
      throw AnnotationError(fmt::format("annotations line {}: expected {} fields", line_number, header.size()));
    }
    if (fields[1] != "0" && fields[1] != "1") {
      throw AnnotationError(fmt::format("annotations line {}: label must be 0 or 1", line_number));
    }
    set.add(fields[0], fields[1] == "1", has_annotator ? fields[2] : std::string{});
  }
  return set;
}

AnnotationSet AnnotationSet::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AnnotationError(fmt::format("cannot open annotation file '{}'", path.string()));
  return read_csv(in);
}

void AnnotationSet::write_csv(std::ostream& out) const {
  out << "phrase,label,annotator\n";
  for (const auto& annotator : annotators_) {
    for (const auto& [phrase, positive] : by_annotator_.at(annotator)) {
      out << csv_field(phrase) << ',' << (positive ? '1' : '0') << ',' << csv_field(annotator) << '\n';
    }
  }
}

}  // namespace forecite
