#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "tempdir.hpp"

using namespace forecite;
using testsupport::slurp;
using testsupport::spit;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kHeader = "rank\tphrase\tmethod\tscore\tcentral_paper\tn_t\tf_t\tf_p_t\tc_t\tc_out\n";

std::string ranked_tsv(const std::vector<std::string>& phrases) {
  std::string s = kHeader;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    s += std::to_string(i + 1) + "\t" + phrases[i] + "\tcnlc\t" + std::to_string(10 - i) + ".000000\t-\t1\t-\t-\t0\t0\n";
  }
  return s;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"candidates"}).code == kExitUsage);
  CHECK(run({"eval"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  testsupport::TempDir dir;
  spit(dir.file("c.jsonl"), "");
  spit(dir.file("cand.txt"), "");
  auto r = run({"score", "--corpus", dir.file("c.jsonl"), "--candidates", dir.file("cand.txt"), "--method", "tfidf"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("tfidf") != std::string::npos);
}

TEST_CASE("empty corpus gives an empty candidate file") {
  testsupport::TempDir dir;
  spit(dir.file("c.jsonl"), "");
  auto r = run({"candidates", "--corpus", dir.file("c.jsonl"), "--out", dir.file("cand.txt")});
  CHECK(r.code == kExitOk);
  CHECK(slurp(dir.file("cand.txt")).empty());
  CHECK(r.out == "0 candidates\n");
}

TEST_CASE("missing corpus is a plain failure") {
  auto r = run({"candidates", "--corpus", "/nonexistent/c.jsonl"});
  CHECK(r.code == kExitFailure);
}

TEST_CASE("synth, candidates and score") {
  testsupport::TempDir dir;
  auto s = run({"synth", "--concepts", "2", "--dense", "1", "--background", "20", "--papers", "200", "--seed", "4",
                "--out", dir.file("c.jsonl"), "--truth", dir.file("truth.csv")});
  REQUIRE(s.code == kExitOk);
  auto c = run({"candidates", "--corpus", dir.file("c.jsonl"), "--out", dir.file("cand.txt")});
  REQUIRE(c.code == kExitOk);
  CHECK(c.out == "23 candidates\n");
  for (const char* method : {"forecite", "cnlc", "loor"}) {
    auto r = run({"score", "--corpus", dir.file("c.jsonl"), "--candidates", dir.file("cand.txt"), "--method", method,
                  "--out", dir.file(std::string(method) + ".tsv")});
    CHECK(r.code == kExitOk);
    const auto text = slurp(dir.file(std::string(method) + ".tsv"));
    CHECK(text.rfind(kHeader, 0) == 0);
  }
  auto top = run({"score", "--corpus", dir.file("c.jsonl"), "--candidates", dir.file("cand.txt"), "--method", "cnlc",
                  "--top-n", "5", "--out", "-"});
  CHECK(top.code == kExitOk);
  CHECK(std::count(top.out.begin(), top.out.end(), '\n') == 6);

  // snapshot path gives the same ranking
  auto saved = run({"score", "--corpus", dir.file("c.jsonl"), "--candidates", dir.file("cand.txt"), "--save-index",
                    dir.file("idx.bin"), "--out", dir.file("a.tsv")});
  REQUIRE(saved.code == kExitOk);
  auto loaded = run({"score", "--index", dir.file("idx.bin"), "--out", dir.file("b.tsv")});
  REQUIRE(loaded.code == kExitOk);
  CHECK(slurp(dir.file("a.tsv")) == slurp(dir.file("b.tsv")));
}

TEST_CASE("infeasible synth spec is a usage error") {
  testsupport::TempDir dir;
  auto r = run({"synth", "--papers", "10", "--out", dir.file("c.jsonl")});
  CHECK(r.code == kExitUsage);
}

TEST_CASE("p-at-k census fixture and missing labels") {
  testsupport::TempDir dir;
  spit(dir.file("r.tsv"), ranked_tsv({"a", "b", "c", "d", "e"}));
  spit(dir.file("ann.csv"), "phrase,label,annotator\na,1,x\nb,0,x\nc,1,x\nd,1,x\ne,0,x\n");
  auto r = run({"eval", "p-at-k", "--ranked", dir.file("r.tsv"), "--annotations", dir.file("ann.csv"), "--k", "5",
                "--k", "2"});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["precision_at_k"][0]["precision"].get<double>() == 0.6);
  CHECK(j["precision_at_k"][0]["positives"].get<int>() == 3);
  CHECK(j["precision_at_k"][1]["precision"].get<double>() == 0.5);

  spit(dir.file("partial.csv"), "phrase,label,annotator\na,1,x\nb,0,x\n");
  auto m = run({"eval", "p-at-k", "--ranked", dir.file("r.tsv"), "--annotations", dir.file("partial.csv"), "--k", "5"});
  CHECK(m.code == kExitMissingLabels);
  CHECK(m.err.find("\nc\nd\ne\n") != std::string::npos);
}

TEST_CASE("py-curve reports the area reduction") {
  testsupport::TempDir dir;
  spit(dir.file("first.tsv"), ranked_tsv({"a", "b", "c", "d", "e"}));
  spit(dir.file("second.tsv"), ranked_tsv({"a", "c", "b", "d", "e"}));
  spit(dir.file("ann.csv"), "phrase,label,annotator\na,1,x\nb,1,x\nc,0,x\nd,1,x\ne,0,x\n");
  auto r = run({"eval", "py-curve", "--ranked", dir.file("first.tsv"), "--ranked", dir.file("second.tsv"),
                "--annotations", dir.file("ann.csv"), "--top-n", "5", "--out", dir.file("first.csv"), "--out",
                dir.file("second.csv"), "--svg", dir.file("plot.svg"), "--metrics", dir.file("m.json")});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(slurp(dir.file("m.json")));
  // first: precisions 1, 1, 3/4 -> area 1/4; second: 1, 2/3, 3/4 -> 7/12
  CHECK(j["curves"][0]["area_over_curve"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(j["curves"][1]["area_over_curve"].get<double>() == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
  CHECK(j["aoc_reduction"][0]["aoc_reduction_percent"].get<double>() == doctest::Approx(400.0 / 7.0).epsilon(1e-12));
  CHECK(slurp(dir.file("second.csv")) == "yield,precision\n1.000000,1.000000\n2.000000,0.666667\n3.000000,0.750000\n");
  CHECK(slurp(dir.file("plot.svg")).find("</svg>") != std::string::npos);

  auto bad = run({"eval", "py-curve", "--ranked", dir.file("first.tsv"), "--annotations", dir.file("ann.csv"),
                  "--top-n", "9"});
  CHECK(bad.code == kExitUsage);
}

TEST_CASE("ingest-check counts") {
  testsupport::TempDir dir;
  spit(dir.file("c.jsonl"),
       "{\"id\":\"A\",\"title\":\"T\",\"date\":\"2015-01\",\"outCitations\":[\"A\"]}\n"
       "{\"id\":\"B\",\"title\":\"T\",\"date\":\"2015-02\",\"outCitations\":[\"A\",\"Z\",\"A\"]}\n"
       "{\"id\":\"C\",\"title\":\"T\"}\n");
  auto r = run({"ingest-check", "--corpus", dir.file("c.jsonl")});
  REQUIRE(r.code == kExitOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["papers"] == 2);
  CHECK(j["records_rejected"] == 1);
  CHECK(j["self_citations_dropped"] == 1);
  CHECK(j["duplicate_citations_dropped"] == 1);
  CHECK(j["dangling_citations"] == 1);
  CHECK(j["citation_edges"] == 1);
  CHECK(r.err.find(":3: rejected: missing field: date") != std::string::npos);

  spit(dir.file("dup.jsonl"),
       "{\"id\":\"A\",\"title\":\"T\",\"date\":\"2015-01\"}\n{\"id\":\"A\",\"title\":\"T\",\"date\":\"2015-01\"}\n");
  CHECK(run({"ingest-check", "--corpus", dir.file("dup.jsonl")}).code == kExitFailure);
}

TEST_CASE("tagged input is used for candidates") {
  testsupport::TempDir dir;
  spit(dir.file("c.jsonl"), "{\"id\":\"W\",\"title\":\"Wasserstein GANs\",\"date\":\"2017-01\"}\n");
  spit(dir.file("t.jsonl"),
       "{\"id\":\"W\",\"title\":[[\"Wasserstein\",\"wasserstein\",\"PROPN\"],[\"GANs\",\"gan\",\"PROPN\"]],"
       "\"abstract\":[],\"body\":[]}\n");
  auto r = run({"candidates", "--corpus", dir.file("c.jsonl"), "--tagged", dir.file("t.jsonl"), "--out",
                dir.file("cand.txt")});
  REQUIRE(r.code == kExitOk);
  CHECK(r.err.empty());
  CHECK(slurp(dir.file("cand.txt")) == "gan\nwasserstein\nwasserstein gan\n");
}

}  // TEST_SUITE
