// Binary index snapshot.
#include <array>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "forecite/index.hpp"

namespace forecite {

namespace {

constexpr std::array<char, 8> kMagic = {'F', 'C', 'S', 'N', 'A', 'P', '\0', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kPapersTag = 0x52504150;    // "PAPR"
constexpr std::uint32_t kGraphTag = 0x48505247;     // "GRPH"
constexpr std::uint32_t kPostingsTag = 0x54534F50;  // "POST"

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_.append(s);
  }
  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(data_[pos_++])) << (8 * i);
    return v;
  }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::string_view take(std::uint64_t n) {
    need(n);
    auto v = data_.substr(pos_, n);
    pos_ += n;
    return v;
  }
  bool done() const { return pos_ == data_.size(); }
  // Guards count fields against corrupt input before reserving memory.
  void check_count(std::uint64_t count, std::uint64_t min_bytes_each) const {
    if (min_bytes_each && count > (data_.size() - pos_) / min_bytes_each) throw IndexError("snapshot truncated");
  }

 private:
  void need(std::uint64_t n) const {
    if (n > data_.size() - pos_) throw IndexError("snapshot truncated");
  }
  std::string_view data_;
  std::size_t pos_ = 0;
};

void write_section(std::ostream& out, std::uint32_t tag, const Writer& payload) {
  Writer head;
  head.u32(tag);
  head.u64(payload.bytes().size());
  out.write(head.bytes().data(), static_cast<std::streamsize>(head.bytes().size()));
  out.write(payload.bytes().data(), static_cast<std::streamsize>(payload.bytes().size()));
}

}  // namespace

void save_snapshot(const ConceptIndex& index, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  Writer version;
  version.u32(kVersion);
  out.write(version.bytes().data(), 4);

  Writer papers;
  papers.u64(index.paper_ids.size());
  for (std::size_t i = 0; i < index.paper_ids.size(); ++i) {
    papers.str(index.paper_ids[i]);
    const Date& d = index.paper_dates.at(i);
    papers.u32(static_cast<std::uint32_t>(d.year));
    papers.u32(d.month);
    papers.u32(d.day);
  }
  write_section(out, kPapersTag, papers);

  Writer graph;
  const auto edges = index.graph.edges();
  graph.u64(edges.size());
  for (const auto& [from, to] : edges) {
    graph.u32(from);
    graph.u32(to);
  }
  write_section(out, kGraphTag, graph);

  Writer postings;
  postings.u64(index.postings.size());
  for (TermId t = 0; t < index.postings.size(); ++t) {
    postings.str(index.postings.term(t).text());
    const auto list = index.postings.postings(t);
    postings.u64(list.size());
    for (PaperIndex p : list) postings.u32(p);
  }
  write_section(out, kPostingsTag, postings);
  if (!out) throw IndexError("failed to write snapshot");
}

ConceptIndex load_snapshot(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string data = buffer.str();
  Reader reader(data);

  const auto magic = reader.take(kMagic.size());
  if (std::memcmp(magic.data(), kMagic.data(), kMagic.size()) != 0) throw IndexError("not an index snapshot");
  const std::uint32_t version = reader.u32();
  if (version != kVersion) throw IndexError(fmt::format("unsupported snapshot version {}", version));

  ConceptIndex index;
  bool have_papers = false, have_graph = false, have_postings = false;
  std::vector<std::pair<PaperIndex, PaperIndex>> edges;
  while (!reader.done()) {
    const std::uint32_t tag = reader.u32();
    const std::uint64_t length = reader.u64();
    Reader section(reader.take(length));
    if (tag == kPapersTag) {
      const std::uint64_t n = section.u64();
      section.check_count(n, 16);
      for (std::uint64_t i = 0; i < n; ++i) {
        index.paper_ids.push_back(section.str());
        Date d;
        d.year = static_cast<int>(section.u32());
        d.month = section.u32();
        d.day = section.u32();
        index.paper_dates.push_back(d);
      }
      have_papers = true;
    } else if (tag == kGraphTag) {
      const std::uint64_t n = section.u64();
      section.check_count(n, 8);
      edges.reserve(n);
      for (std::uint64_t i = 0; i < n; ++i) {
        const PaperIndex from = section.u32();
        const PaperIndex to = section.u32();
        edges.emplace_back(from, to);
      }
      have_graph = true;
    } else if (tag == kPostingsTag) {
      const std::uint64_t n = section.u64();
      section.check_count(n, 12);
      std::vector<PhraseKey> terms;
      std::vector<std::vector<PaperIndex>> lists;
      for (std::uint64_t i = 0; i < n; ++i) {
        const std::string text = section.str();
        auto key = PhraseKey::parse(text);
        if (!key) throw IndexError(fmt::format("invalid term '{}' in snapshot", text));
        terms.push_back(std::move(*key));
        const std::uint64_t count = section.u64();
        section.check_count(count, 4);
        std::vector<PaperIndex> list(count);
        for (auto& p : list) p = section.u32();
        lists.push_back(std::move(list));
      }
      index.postings = TermPostings::from_lists(std::move(terms), std::move(lists));
      have_postings = true;
    }
    if (!section.done() && (tag == kPapersTag || tag == kGraphTag || tag == kPostingsTag)) {
      throw IndexError("snapshot section has trailing bytes");
    }
  }
  if (!have_papers || !have_graph || !have_postings) throw IndexError("snapshot is missing a section");

  const std::size_t n = index.paper_ids.size();
  for (const auto& [from, to] : edges) {
    if (from >= n || to >= n) throw IndexError("snapshot edge references an unknown paper");
  }
  for (TermId t = 0; t < index.postings.size(); ++t) {
    for (PaperIndex p : index.postings.postings(t)) {
      if (p >= n) throw IndexError("snapshot posting references an unknown paper");
    }
  }
  index.graph = CitationGraph::from_edges(n, std::move(edges));
  return index;
}

}  // namespace forecite
