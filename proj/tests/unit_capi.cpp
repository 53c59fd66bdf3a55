#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "sqlh.h"

namespace {

std::string take(char* p) {
  std::string s = p ? p : "";
  sqlh_string_free(p);
  return s;
}

std::string tmpdir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("sqlh_capi_" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST_CASE("c api: codec surface") {
  char* out = nullptr;
  REQUIRE(sqlh_num_encode("C", 3, "", "-6/3+2/-7i", &out) == 0);
  CHECK(take(out) == "1 0 110 011 0 1 010 111");
  REQUIRE(sqlh_num_decode("N", 3, "", "110", &out) == 0);
  CHECK(take(out) == "6/1");
  char *v = nullptr, *cls = nullptr, *bits = nullptr;
  REQUIRE(sqlh_num_ratio("N", 3, "", "3", "5", &v, &cls, &bits) == 0);
  CHECK(take(cls) == "Q+_3");
  CHECK(take(bits) == "011 101");
  take(v);
  // error path: OutOfRange with a message
  CHECK(sqlh_num_encode("N", 3, "", "8", &out) != 0);
  CHECK(std::string(sqlh_last_error()).find("OutOfRange") != std::string::npos);
}

TEST_CASE("c api: circuit handles") {
  sqlh_circuit* c = nullptr;
  REQUIRE(sqlh_circuit_parse("REG 3 0 0 0\nTOF 1 2 3\n", &c) == 0);
  int qubits = 0, gates = 0;
  sqlh_circuit_info(c, &qubits, &gates);
  CHECK(qubits == 3);
  CHECK(gates == 1);
  sqlh_circuit* stec = nullptr;
  REQUIRE(sqlh_circuit_decompose(c, &stec) == 0);
  sqlh_circuit_info(stec, &qubits, &gates);
  CHECK(gates == 15);
  sqlh_circuit_free(stec);
  sqlh_circuit_free(c);
  CHECK(sqlh_circuit_parse("REG 1 0 0 0\nBAD 1\n", &c) != 0);
  CHECK(sqlh_last_error_code() != 0);
}

TEST_CASE("c api: state, ham, verify round trip") {
  std::string dir = tmpdir("flow");
  {
    std::ofstream f(dir + "/circ.txt");
    f << "REG 3 0 0 0\nTOF 2 3 1\n";
  }
  {
    std::ofstream f(dir + "/state.json");
    f << R"({"kind":"history","circuit":"circ.txt","x":"011","xi":"","mode":"classical","exact":true})";
  }
  sqlh_circuit* c = nullptr;
  REQUIRE(sqlh_circuit_load((dir + "/circ.txt").c_str(), &c) == 0);
  sqlh_ham* h = nullptr;
  REQUIRE(sqlh_ham_build(c, "4local", "011", &h) == 0);
  int qubits = 0, locality = 0, real = 0;
  sqlh_ham_info(h, &qubits, &locality, &real);
  CHECK(qubits == 4);
  CHECK(locality == 4);
  CHECK(real == 1);
  REQUIRE(sqlh_ham_save(h, (dir + "/ham.txt").c_str()) == 0);
  sqlh_ham* loaded = nullptr;
  REQUIRE(sqlh_ham_load((dir + "/ham.txt").c_str(), &loaded) == 0);
  char* e = nullptr;
  REQUIRE(sqlh_ham_entry(loaded, "0000", "0000", &e) == 0);
  std::string diag0 = take(e);
  REQUIRE(sqlh_ham_entry(h, "0000", "0000", &e) == 0);
  CHECK(take(e) == diag0);

  sqlh_state* s = nullptr;
  REQUIRE(sqlh_state_load((dir + "/state.json").c_str(), &s) == 0);
  int n = 0;
  sqlh_state_qubits(s, &n);
  CHECK(n == 4);
  char *val = nullptr, *enc = nullptr;
  REQUIRE(sqlh_state_query(s, "0110", &val, &enc) == 0);
  CHECK(take(val) == "rt(1/2)*1/1");
  CHECK(take(enc).substr(0, 1) == "1");  // sqrt flag leads the encoding

  int accept = -1;
  char* report = nullptr;
  REQUIRE(sqlh_verify(loaded, s, "0", "0110", "0", "1/8", 8, "", 12, &accept, &report) == 0);
  CHECK(accept == 1);
  CHECK(take(report).find("\"survived\": 8") != std::string::npos);

  sqlh_state_free(s);
  sqlh_ham_free(loaded);
  sqlh_ham_free(h);
  sqlh_circuit_free(c);
}

TEST_CASE("c api: fixtures and pipeline") {
  std::string dir = tmpdir("pipe");
  char* files = nullptr;
  REQUIRE(sqlh_fixture_make("yes", (dir + "/fx").c_str(), 2, 9, &files) == 0);
  CHECK(take(files).find("ham.txt") != std::string::npos);
  {
    std::ofstream f(dir + "/m.json");
    f << R"({"schema":"sqlh-manifest/1","steps":[
        {"op":"num.decode","family":"N","p":3,"bits":"110"}]})";
  }
  int status = -1;
  char* rep = nullptr;
  REQUIRE(sqlh_pipeline_run((dir + "/m.json").c_str(), &status, &rep) == 0);
  CHECK(status == 0);
  CHECK(take(rep).find("6/1") != std::string::npos);
  CHECK(sqlh_pipeline_run((dir + "/absent.json").c_str(), &status, &rep) != 0);
}
