#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "sqlh/fixtures.hpp"
#include "sqlh/hamfile.hpp"
#include "sqlh/pipeline.hpp"
#include "sqlh/statespec.hpp"

using namespace sqlh;

namespace {

BitString bs(const std::string& s) { return BitString::parse(s); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmpdir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("sqlh_io_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("hamfile term records round trip bit-exactly") {
  CircuitDescriptor c = CircuitDescriptor::parse("REG 3 0 0 0\nTOF 2 3 1\n");
  ClockHam ch = build_4local(c, bs("011"), BitString());
  HamFile hf = HamFile::from_clock(ch, "4local");
  HamFile back = HamFile::parse(hf.str());
  CHECK(back.variant == "4local");
  CHECK(back.qubits == hf.qubits);
  REQUIRE(back.terms.size() == hf.terms.size());
  for (size_t i = 0; i < hf.terms.size(); ++i) {
    CHECK(back.terms[i].support == hf.terms[i].support);
    CHECK(back.terms[i].label == hf.terms[i].label);
    REQUIRE(back.terms[i].mat.size() == hf.terms[i].mat.size());
    for (size_t j = 0; j < hf.terms[i].mat.size(); ++j)
      CHECK(back.terms[i].mat[j] == hf.terms[i].mat[j]);
  }
  // and the sparse views agree
  SparseHam s1 = hf.to_sparse(), s2 = back.to_sparse();
  for (uint64_t i = 0; i < 16; ++i) {
    BitString x = BitString::from_index(i, 4);
    CHECK(s1.entry(x, x) == s2.entry(x, x));
  }
}

TEST_CASE("hamfile with complex STEC terms round trips") {
  CircuitDescriptor base = CircuitDescriptor::parse("REG 3 0 0 0\nTOF 1 2 3\n");
  ClockHam ch = build_3local(toffoli_decompose(base), bs("110"), BitString());
  HamFile hf = HamFile::from_clock(ch, "3local");
  CHECK_FALSE(hf.real);
  HamFile back = HamFile::parse(hf.str());
  REQUIRE(back.terms.size() == hf.terms.size());
  for (size_t i = 0; i < hf.terms.size(); ++i)
    for (size_t j = 0; j < hf.terms[i].mat.size(); ++j)
      CHECK(back.terms[i].mat[j] == hf.terms[i].mat[j]);
}

TEST_CASE("hamfile entries representation round trips") {
  Rng rng(0x91);
  auto dense = random_complex_hermitian(2, rng);
  HamFile hf = HamFile::from_dense(dense, "entries");
  HamFile back = HamFile::parse(hf.str());
  REQUIRE(back.entries);
  for (size_t i = 0; i < dense->a.size(); ++i) CHECK(back.entries->a[i] == dense->a[i]);
  CHECK_THROWS_AS(HamFile::parse("HAMFILE 2\n"), Error);
  CHECK_THROWS_AS(HamFile::parse("not a hamfile"), Error);
}

TEST_CASE("statespec kinds") {
  std::string dir = tmpdir("spec");
  // subset
  AmplitudeQuery sub = parse_statespec(
      R"({"kind":"subset","n":2,"strings":["00","11"],"exact":true})", dir);
  CHECK(sub.query(bs("00")) == ExactValue::sqrt_rational(BigRat(1, 2)));
  // vector with exact text entries
  AmplitudeQuery vec = parse_statespec(
      R"({"kind":"vector","n":1,"entries":["-1/2","rt(1/2)*1/1"]})", dir);
  CHECK(vec.query(bs("0")) == ExactValue::rational(BigRat(-1, 2)));
  CHECK(vec.query(bs("1")) == ExactValue::inv_sqrt2_pow(1));
  // history over a circuit file
  {
    std::ofstream f(dir + "/c.txt");
    f << "REG 2 0 0 2\nTOF 1 2 3\n";
  }
  AmplitudeQuery hist = parse_statespec(
      R"({"kind":"history","circuit":"c.txt","x":"11","xi":"","mode":"classical","exact":true})",
      dir);
  CHECK(hist.n == 5);
  CHECK(hist.query(bs("11000")) == ExactValue::sqrt_rational(BigRat(1, 8)));
  // split of a vector
  AmplitudeQuery sp = parse_statespec(
      R"({"kind":"split","base":{"kind":"vector","n":1,"entries":["1+2i","0"]},"part":2})", dir);
  CHECK(sp.query(bs("01")) == ExactValue::integer(-2));
  CHECK_THROWS_AS(parse_statespec(R"({"nokind":1})", dir), Error);
  CHECK_THROWS_AS(parse_statespec("{bad json", dir), Error);
}

TEST_CASE("fixtures are deterministic under the seed") {
  std::string d1 = tmpdir("fx1"), d2 = tmpdir("fx2");
  make_fixture("yes", d1, 3, 42);
  make_fixture("yes", d2, 3, 42);
  CHECK(slurp(d1 + "/ham.txt") == slurp(d2 + "/ham.txt"));
  CHECK(slurp(d1 + "/state.json") == slurp(d2 + "/state.json"));
  std::string d3 = tmpdir("fx3");
  make_fixture("yes", d3, 3, 43);
  CHECK(slurp(d1 + "/ham.txt") != slurp(d3 + "/ham.txt"));
}

TEST_CASE("pipeline runs a full yes-instance and is byte-identical") {
  std::string dir = tmpdir("pipe");
  {
    std::ofstream f(dir + "/manifest.json");
    f << R"({
      "schema": "sqlh-manifest/1",
      "seed": 7,
      "steps": [
        {"op": "fixture.make", "kind": "yes", "n": 2, "dir": "fx"},
        {"op": "verify", "ham": "fx/ham.txt", "state": "fx/state.json",
         "lambda": "-1", "xstar": "00", "a": "-1", "b": "-3/4",
         "trials": 10, "expect": "accept", "report": "report.json"},
        {"op": "oracle.check", "what": "spectrum", "ham": "fx/ham.txt"}
      ]
    })";
  }
  // the fixture's x_star depends on the seed; read it back and patch
  PipelineResult first = run_pipeline(dir + "/manifest.json");
  // a fixture x_star differing from "00" would reject; patch from meta
  if (first.status != 0) {
    std::string meta = slurp(dir + "/fx/meta.json");
    auto j = nlohmann::json::parse(meta);
    std::string xstar = j["xstar"];
    std::string m = slurp(dir + "/manifest.json");
    auto pos = m.find("\"xstar\": \"00\"");
    REQUIRE(pos != std::string::npos);
    m.replace(pos, std::string("\"xstar\": \"00\"").size(), "\"xstar\": \"" + xstar + "\"");
    std::ofstream f(dir + "/manifest.json");
    f << m;
    first = run_pipeline(dir + "/manifest.json");
  }
  CHECK(first.status == 0);
  std::string report1 = slurp(dir + "/report.json");
  PipelineResult second = run_pipeline(dir + "/manifest.json");
  CHECK(second.status == 0);
  CHECK(slurp(dir + "/report.json") == report1);
  CHECK(first.report.dump() == second.report.dump());
}

TEST_CASE("pipeline surfaces step errors with the step index") {
  std::string dir = tmpdir("pipebad");
  {
    std::ofstream f(dir + "/bad.txt");
    f << "HAMFILE 1\ncorrupted";
  }
  {
    std::ofstream f(dir + "/manifest.json");
    f << R"({"schema": "sqlh-manifest/1", "steps": [
         {"op": "num.encode", "family": "N", "p": 3, "value": "6"},
         {"op": "oracle.check", "what": "spectrum", "ham": "bad.txt"}
       ]})";
  }
  PipelineResult res = run_pipeline(dir + "/manifest.json");
  CHECK(res.status == 2);
  CHECK(res.report["failed_step"] == 1);
  CHECK_THROWS_AS(run_pipeline(dir + "/nonexistent.json"), Error);
}

TEST_CASE("encode-only manifest") {
  std::string dir = tmpdir("pipenc");
  {
    std::ofstream f(dir + "/manifest.json");
    f << R"({"schema": "sqlh-manifest/1", "steps": [
         {"op": "num.encode", "family": "C", "p": 3, "value": "-6/3+2/-7i", "out": "bits.txt"}
       ]})";
  }
  PipelineResult res = run_pipeline(dir + "/manifest.json");
  CHECK(res.status == 0);
  CHECK(res.report["steps"][0]["bits"] == "1 0 110 011 0 1 010 111");
  CHECK(slurp(dir + "/bits.txt") == "1011001101010111\n");
}
