// Command-line front end. Everything goes through the C API in sqlh.h; this
// translation unit is argv plumbing only.
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "sqlh.h"

namespace {

struct StrOut {
  char* p = nullptr;
  ~StrOut() { sqlh_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

int die(int rc) {
  if (rc != 0) std::fprintf(stderr, "error: %s\n", sqlh_last_error());
  return rc == 0 ? 0 : 1;
}

void emit(const std::string& format, const std::string& key, const std::string& value) {
  if (format == "json")
    std::printf("{\"%s\": \"%s\"}\n", key.c_str(), value.c_str());
  else
    std::printf("%s\n", value.c_str());
}

using CircuitPtr = std::unique_ptr<sqlh_circuit, decltype(&sqlh_circuit_free)>;
using StatePtr = std::unique_ptr<sqlh_state, decltype(&sqlh_state_free)>;
using HamPtr = std::unique_ptr<sqlh_ham, decltype(&sqlh_ham_free)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"succinct-state local Hamiltonian toolkit"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  // --- num ---
  auto* num = app.add_subcommand("num", "binary number codecs");
  num->require_subcommand(1);
  std::string family = "C", flags, value, bits, xval, yval;
  unsigned p = 1;
  auto add_cls = [&](CLI::App* cmd) {
    cmd->add_option("--family", family, "N, Q+, Q or C")->required();
    cmd->add_option("--p", p, "precision parameter")->required();
    cmd->add_option("--flags", flags, "comma list: sqrt, omega, half[:q]");
  };
  auto* enc = num->add_subcommand("encode", "value -> bit string");
  add_cls(enc);
  enc->add_option("--value", value)->required();
  enc->callback([&] {
    StrOut out;
    if (die(sqlh_num_encode(family.c_str(), p, flags.c_str(), value.c_str(), &out.p))) exit(1);
    emit(format, "bits", out.str());
  });
  auto* dec = num->add_subcommand("decode", "bit string -> value");
  add_cls(dec);
  dec->add_option("--bits", bits)->required();
  dec->callback([&] {
    StrOut out;
    if (die(sqlh_num_decode(family.c_str(), p, flags.c_str(), bits.c_str(), &out.p))) exit(1);
    emit(format, "value", out.str());
  });
  auto* rat = num->add_subcommand("ratio", "exact amplitude ratio with the widened class");
  add_cls(rat);
  rat->add_option("--x", xval)->required();
  rat->add_option("--y", yval)->required();
  rat->callback([&] {
    StrOut v, cls, b;
    if (die(sqlh_num_ratio(family.c_str(), p, flags.c_str(), xval.c_str(), yval.c_str(), &v.p,
                           &cls.p, &b.p)))
      exit(1);
    if (format == "json")
      std::printf("{\"value\": \"%s\", \"class\": \"%s\", \"bits\": \"%s\"}\n", v.p, cls.p, b.p);
    else
      std::printf("%s  [%s]  %s\n", v.p, cls.p, b.p);
  });

  // --- state ---
  auto* state = app.add_subcommand("state", "succinct state queries");
  state->require_subcommand(1);
  std::string spec_path, xbits;
  auto* squery = state->add_subcommand("query", "query one amplitude");
  squery->add_option("--spec", spec_path, "state spec file")->required();
  squery->add_option("--x", xbits, "basis string")->required();
  squery->callback([&] {
    sqlh_state* s = nullptr;
    if (die(sqlh_state_load(spec_path.c_str(), &s))) exit(1);
    StatePtr guard(s, sqlh_state_free);
    StrOut v, e;
    if (die(sqlh_state_query(s, xbits.c_str(), &v.p, &e.p))) exit(1);
    if (format == "json")
      std::printf("{\"value\": \"%s\", \"bits\": \"%s\"}\n", v.p, e.p);
    else
      std::printf("%s  %s\n", v.p, e.p);
  });

  // --- circuit ---
  auto* circuit = app.add_subcommand("circuit", "descriptor transforms");
  circuit->require_subcommand(1);
  std::string in_path, out_path;
  for (const char* name : {"decompose", "sparsify", "preidle"}) {
    auto* cmd = circuit->add_subcommand(name);
    cmd->add_option("--in", in_path)->required();
    cmd->add_option("--out", out_path)->required();
    cmd->callback([&, name] {
      sqlh_circuit* c = nullptr;
      if (die(sqlh_circuit_load(in_path.c_str(), &c))) exit(1);
      CircuitPtr guard(c, sqlh_circuit_free);
      sqlh_circuit* t = nullptr;
      int rc = std::string(name) == "decompose" ? sqlh_circuit_decompose(c, &t)
               : std::string(name) == "sparsify" ? sqlh_circuit_sparsify(c, &t)
                                                 : sqlh_circuit_preidle(c, &t);
      if (die(rc)) exit(1);
      CircuitPtr tguard(t, sqlh_circuit_free);
      if (die(sqlh_circuit_save(t, out_path.c_str()))) exit(1);
      int qubits = 0, gates = 0;
      sqlh_circuit_info(t, &qubits, &gates);
      if (format == "json")
        std::printf("{\"out\": \"%s\", \"qubits\": %d, \"gates\": %d}\n", out_path.c_str(),
                    qubits, gates);
      else
        std::printf("wrote %s (%d qubits, %d gates)\n", out_path.c_str(), qubits, gates);
    });
  }

  // --- ham ---
  auto* ham = app.add_subcommand("ham", "clock Hamiltonians and transforms");
  ham->require_subcommand(1);
  std::string variant, circuit_path, input_bits, ham_path, op, ham_out;
  auto* hbuild = ham->add_subcommand("build", "circuit -> clock Hamiltonian");
  hbuild->add_option("--variant", variant)->required()
      ->check(CLI::IsMember({"4local", "3local", "sparse6"}));
  hbuild->add_option("--circuit", circuit_path)->required();
  hbuild->add_option("--input", input_bits, "x||xi bits")->required();
  hbuild->add_option("--out", ham_out)->required();
  hbuild->callback([&] {
    sqlh_circuit* c = nullptr;
    if (die(sqlh_circuit_load(circuit_path.c_str(), &c))) exit(1);
    CircuitPtr guard(c, sqlh_circuit_free);
    sqlh_ham* h = nullptr;
    if (die(sqlh_ham_build(c, variant.c_str(), input_bits.c_str(), &h))) exit(1);
    HamPtr hguard(h, sqlh_ham_free);
    if (die(sqlh_ham_save(h, ham_out.c_str()))) exit(1);
    int qubits = 0, locality = 0, real = 0;
    sqlh_ham_info(h, &qubits, &locality, &real);
    if (format == "json")
      std::printf("{\"out\": \"%s\", \"qubits\": %d, \"locality\": %d, \"real\": %s}\n",
                  ham_out.c_str(), qubits, locality, real ? "true" : "false");
    else
      std::printf("wrote %s (%d qubits, locality %d, %s)\n", ham_out.c_str(), qubits, locality,
                  real ? "real" : "complex");
  });
  auto* htrans = ham->add_subcommand("transform", "real / fixednode / gauge");
  htrans->add_option("--op", op)->required()
      ->check(CLI::IsMember({"real", "fixednode", "gauge"}));
  htrans->add_option("--ham", ham_path)->required();
  htrans->add_option("--state", spec_path, "state spec (fixednode/gauge)");
  htrans->add_option("--out", ham_out)->required();
  htrans->callback([&] {
    sqlh_ham* h = nullptr;
    if (die(sqlh_ham_load(ham_path.c_str(), &h))) exit(1);
    HamPtr hguard(h, sqlh_ham_free);
    sqlh_state* s = nullptr;
    StatePtr sguard(nullptr, sqlh_state_free);
    if (!spec_path.empty()) {
      if (die(sqlh_state_load(spec_path.c_str(), &s))) exit(1);
      sguard = StatePtr(s, sqlh_state_free);
    }
    sqlh_ham* t = nullptr;
    if (die(sqlh_ham_transform(h, op.c_str(), s, &t))) exit(1);
    HamPtr tguard(t, sqlh_ham_free);
    if (die(sqlh_ham_save(t, ham_out.c_str()))) exit(1);
    emit(format, "out", ham_out);
  });

  // --- verify ---
  std::string lambda, xstar, a_thr, b_thr, tmax, report_path;
  int trials = 100;
  uint64_t seed = 1;
  auto* ver = app.add_subcommand("verify", "Arthur's Gillespie verification");
  ver->add_option("--ham", ham_path)->required();
  ver->add_option("--state", spec_path)->required();
  ver->add_option("--lambda", lambda, "claimed ground energy")->required();
  ver->add_option("--xstar", xstar, "start configuration")->required();
  ver->add_option("--a", a_thr)->required();
  ver->add_option("--b", b_thr)->required();
  ver->add_option("--trials", trials);
  ver->add_option("--tmax", tmax, "rational simulation time (default M^3)");
  ver->add_option("--seed", seed);
  ver->add_option("--report", report_path, "write the JSON report here");
  ver->callback([&] {
    sqlh_ham* h = nullptr;
    if (die(sqlh_ham_load(ham_path.c_str(), &h))) exit(1);
    HamPtr hguard(h, sqlh_ham_free);
    sqlh_state* s = nullptr;
    if (die(sqlh_state_load(spec_path.c_str(), &s))) exit(1);
    StatePtr sguard(s, sqlh_state_free);
    int accept = 0;
    StrOut rep;
    if (die(sqlh_verify(h, s, lambda.c_str(), xstar.c_str(), a_thr.c_str(), b_thr.c_str(),
                        trials, tmax.c_str(), seed, &accept, &rep.p)))
      exit(1);
    if (!report_path.empty()) {
      FILE* f = std::fopen(report_path.c_str(), "w");
      if (!f) { std::fprintf(stderr, "error: cannot write %s\n", report_path.c_str()); exit(1); }
      std::fputs(rep.p, f);
      std::fclose(f);
    }
    if (format == "json")
      std::fputs(rep.p, stdout);
    else
      std::printf("%s\n", accept ? "accept" : "reject");
    exit(accept ? 0 : 3);
  });

  // --- oracle ---
  std::string what;
  auto* orc = app.add_subcommand("oracle", "brute-force ground truth");
  auto* ochk = orc->add_subcommand("check", "state / ham / spectrum / stoq");
  ochk->add_option("--what", what)->required()
      ->check(CLI::IsMember({"state", "ham", "spectrum", "stoq"}));
  ochk->add_option("--ham", ham_path);
  ochk->add_option("--state", spec_path);
  ochk->add_option("--report", report_path);
  ochk->callback([&] {
    StrOut rep;
    if (die(sqlh_oracle_check(what.c_str(), ham_path.c_str(), spec_path.c_str(), &rep.p)))
      exit(1);
    if (!report_path.empty()) {
      FILE* f = std::fopen(report_path.c_str(), "w");
      if (f) { std::fputs(rep.p, f); std::fclose(f); }
    }
    std::fputs(rep.p, stdout);
  });

  // --- fixture ---
  std::string kind, dir;
  int nq = 3;
  auto* fx = app.add_subcommand("fixture", "deterministic test instances");
  auto* fmake = fx->add_subcommand("make");
  fmake->add_option("--kind", kind)->required();
  fmake->add_option("--dir", dir)->required();
  fmake->add_option("--n", nq);
  fmake->add_option("--seed", seed);
  fmake->callback([&] {
    StrOut files;
    if (die(sqlh_fixture_make(kind.c_str(), dir.c_str(), nq, seed, &files.p))) exit(1);
    std::fputs(files.p, stdout);
  });

  // --- pipeline ---
  std::string manifest;
  auto* pipe = app.add_subcommand("pipeline", "manifest-driven runs");
  auto* prun = pipe->add_subcommand("run");
  prun->add_option("--manifest", manifest)->required();
  prun->callback([&] {
    int status = 0;
    StrOut rep;
    if (die(sqlh_pipeline_run(manifest.c_str(), &status, &rep.p))) exit(1);
    std::fputs(rep.p, stdout);
    exit(status);
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}
