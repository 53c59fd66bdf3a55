#include "sqlh.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "sqlh/fixtures.hpp"
#include "sqlh/hamfile.hpp"
#include "sqlh/pipeline.hpp"
#include "sqlh/statespec.hpp"

using namespace sqlh;

namespace {

thread_local std::string g_error;
thread_local int g_code = 0;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_code = 0;
    return 0;
  } catch (const Error& e) {
    g_error = e.what();
    g_code = static_cast<int>(e.code()) + 1;
  } catch (const std::exception& e) {
    g_error = e.what();
    g_code = 1000;
  }
  return g_code;
}

ClassDescriptor cls_of(const char* family, unsigned p, const char* flags) {
  return ClassDescriptor::parse(family ? family : "", p, flags ? flags : "");
}

}  // namespace

struct sqlh_circuit {
  CircuitDescriptor c;
};
struct sqlh_state {
  AmplitudeQuery q;
};
struct sqlh_ham {
  SparseHam sparse;
  HamFile file;       // kept when term/entry records are available
  bool has_file = false;
};

extern "C" {

const char* sqlh_version(void) { return "sqlh 1.0.0"; }

const char* sqlh_last_error(void) { return g_error.c_str(); }
int sqlh_last_error_code(void) { return g_code; }

void sqlh_string_free(char* s) { std::free(s); }

int sqlh_num_encode(const char* family, unsigned p, const char* flags, const char* value,
                    char** out) {
  return guarded([&] {
    ClassDescriptor cls = cls_of(family, p, flags);
    BitString bits = encode(ExactValue::parse(value), cls);
    *out = dup_string(bits.str_grouped(cls.group_widths()));
  });
}

int sqlh_num_decode(const char* family, unsigned p, const char* flags, const char* bits,
                    char** out) {
  return guarded([&] {
    ClassDescriptor cls = cls_of(family, p, flags);
    *out = dup_string(decode(BitString::parse(bits), cls).str());
  });
}

int sqlh_num_ratio(const char* family, unsigned p, const char* flags, const char* x,
                   const char* y, char** out_value, char** out_class, char** out_bits) {
  return guarded([&] {
    ClassDescriptor cls = cls_of(family, p, flags);
    auto [v, ocls] = ratio(ExactValue::parse(x), ExactValue::parse(y), cls);
    if (out_value) *out_value = dup_string(v.str());
    if (out_class) *out_class = dup_string(ocls.str());
    if (out_bits) *out_bits = dup_string(encode(v, ocls).str_grouped(ocls.group_widths()));
  });
}

int sqlh_circuit_parse(const char* text, sqlh_circuit** out) {
  return guarded([&] { *out = new sqlh_circuit{CircuitDescriptor::parse(text)}; });
}

int sqlh_circuit_load(const char* path, sqlh_circuit** out) {
  return guarded([&] { *out = new sqlh_circuit{CircuitDescriptor::parse_file(path)}; });
}

void sqlh_circuit_free(sqlh_circuit* c) { delete c; }

int sqlh_circuit_text(const sqlh_circuit* c, char** out) {
  return guarded([&] { *out = dup_string(c->c.str()); });
}

int sqlh_circuit_save(const sqlh_circuit* c, const char* path) {
  return guarded([&] {
    std::ofstream f(path);
    if (!f) fail(Errc::Io, std::string("cannot write '") + path + "'");
    f << c->c.str();
  });
}

int sqlh_circuit_info(const sqlh_circuit* c, int* qubits, int* gates) {
  return guarded([&] {
    if (qubits) *qubits = c->c.qubit_count();
    if (gates) *gates = static_cast<int>(c->c.gate_count());
  });
}

int sqlh_circuit_decompose(const sqlh_circuit* c, sqlh_circuit** out) {
  return guarded([&] { *out = new sqlh_circuit{toffoli_decompose(c->c).expanded}; });
}

int sqlh_circuit_sparsify(const sqlh_circuit* c, sqlh_circuit** out) {
  return guarded([&] { *out = new sqlh_circuit{spatial_sparsify(c->c)}; });
}

int sqlh_circuit_preidle(const sqlh_circuit* c, sqlh_circuit** out) {
  return guarded([&] { *out = new sqlh_circuit{pre_idle(c->c)}; });
}

int sqlh_state_load(const char* spec_path, sqlh_state** out) {
  return guarded([&] { *out = new sqlh_state{load_statespec(spec_path)}; });
}

int sqlh_state_parse(const char* spec_json, const char* base_dir, sqlh_state** out) {
  return guarded([&] {
    *out = new sqlh_state{parse_statespec(spec_json, base_dir ? base_dir : "")};
  });
}

void sqlh_state_free(sqlh_state* s) { delete s; }

int sqlh_state_qubits(const sqlh_state* s, int* n) {
  return guarded([&] { *n = s->q.n; });
}

int sqlh_state_query(const sqlh_state* s, const char* x_bits, char** out_value,
                     char** out_encoded_bits) {
  return guarded([&] {
    ExactValue v = s->q.query(BitString::parse(x_bits));
    if (out_value) *out_value = dup_string(v.str());
    if (out_encoded_bits) {
      const ClassDescriptor& cls = s->q.codomain;
      *out_encoded_bits = dup_string(encode(v, cls).str_grouped(cls.group_widths()));
    }
  });
}

int sqlh_ham_load(const char* path, sqlh_ham** out) {
  return guarded([&] {
    auto* h = new sqlh_ham;
    h->file = HamFile::load(path);
    h->sparse = h->file.to_sparse();
    h->has_file = true;
    *out = h;
  });
}

void sqlh_ham_free(sqlh_ham* h) { delete h; }

int sqlh_ham_info(const sqlh_ham* h, int* qubits, int* locality, int* is_real) {
  return guarded([&] {
    if (qubits) *qubits = h->sparse.n;
    if (locality) *locality = h->sparse.locality.value_or(h->sparse.n);
    if (is_real) *is_real = h->sparse.real ? 1 : 0;
  });
}

int sqlh_ham_build(const sqlh_circuit* c, const char* variant, const char* input_bits,
                   sqlh_ham** out) {
  return guarded([&] {
    std::string var = variant ? variant : "";
    std::string input = input_bits ? input_bits : "";
    const CircuitDescriptor& circ = c->c;
    if ((int)input.size() < circ.regs.n + circ.regs.w)
      fail(Errc::BadWidth, "input must provide n+w bits");
    BitString x = BitString::parse(input.substr(0, circ.regs.n));
    BitString xi = BitString::parse(input.substr(circ.regs.n, circ.regs.w));
    ClockHam ch;
    if (var == "4local") ch = build_4local(circ, x, xi);
    else if (var == "3local") ch = build_3local(toffoli_decompose(circ), x, xi);
    else if (var == "sparse6")
      ch = build_sparse6(circ.layout ? circ : spatial_sparsify(circ), x, xi);
    else fail(Errc::BadManifest, "unknown variant '" + var + "'");
    auto* h = new sqlh_ham;
    h->file = HamFile::from_clock(ch, var);
    h->sparse = h->file.to_sparse();
    h->has_file = true;
    *out = h;
  });
}

int sqlh_ham_transform(const sqlh_ham* h, const char* op, const sqlh_state* state,
                       sqlh_ham** out) {
  return guarded([&] {
    std::string kind = op ? op : "";
    SparseHam t;
    if (kind == "real") {
      t = complexify_to_real(h->sparse);
    } else if (kind == "fixednode" || kind == "gauge") {
      if (!state) fail(Errc::BadManifest, "transform '" + kind + "' needs a state");
      t = fixed_node(h->sparse, state->q);
      if (kind == "gauge") t = sign_gauge(t, state->q);
    } else {
      fail(Errc::BadManifest, "unknown transform '" + kind + "'");
    }
    auto* res = new sqlh_ham;
    res->sparse = std::move(t);
    res->has_file = false;
    *out = res;
  });
}

int sqlh_ham_entry(const sqlh_ham* h, const char* x_bits, const char* y_bits,
                   char** out_value) {
  return guarded([&] {
    ExactValue v = h->sparse.entry(BitString::parse(x_bits), BitString::parse(y_bits));
    *out_value = dup_string(v.str());
  });
}

int sqlh_ham_save(const sqlh_ham* h, const char* path) {
  return guarded([&] {
    if (h->has_file) {
      h->file.save(path);
      return;
    }
    auto dense = std::make_shared<oracle::DenseHam>(oracle::densify_ham(h->sparse, {}, 0));
    HamFile::from_dense(dense, "entries").save(path);
  });
}

int sqlh_verify(const sqlh_ham* h, const sqlh_state* xi, const char* lambda,
                const char* xstar_bits, const char* a, const char* b, int trials,
                const char* tmax, uint64_t seed, int* out_accept, char** out_report_json) {
  return guarded([&] {
    MerlinMessage msg;
    msg.lambda_star = ExactValue::parse(lambda);
    msg.xi = xi->q;
    msg.x_star = BitString::parse(xstar_bits);
    VerifierConfig cfg;
    cfg.a = ExactValue::parse(a);
    cfg.b = ExactValue::parse(b);
    cfg.trials = trials;
    cfg.seed = seed;
    std::string tm = tmax ? tmax : "";
    if (!tm.empty()) cfg.t_max = ExactValue::parse(tm).as_rational();
    Verdict v = verify(h->sparse, msg, cfg);
    if (out_accept) *out_accept = v.accept ? 1 : 0;
    if (out_report_json) *out_report_json = dup_string(verdict_report(v).dump(2) + "\n");
  });
}

int sqlh_oracle_check(const char* what, const char* ham_path, const char* state_path,
                      char** out_report_json) {
  return guarded([&] {
    nlohmann::json r = oracle_check(what ? what : "", ham_path ? ham_path : "",
                                    state_path ? state_path : "");
    *out_report_json = dup_string(r.dump(2) + "\n");
  });
}

int sqlh_fixture_make(const char* kind, const char* dir, int n, uint64_t seed,
                      char** out_files_json) {
  return guarded([&] {
    FixtureSet fs = make_fixture(kind ? kind : "", dir ? dir : ".", n, seed);
    nlohmann::json j;
    j["ham"] = fs.ham_path;
    if (!fs.state_path.empty()) j["state"] = fs.state_path;
    j["meta"] = fs.meta_path;
    if (out_files_json) *out_files_json = dup_string(j.dump(2) + "\n");
  });
}

int sqlh_pipeline_run(const char* manifest_path, int* out_status, char** out_report_json) {
  return guarded([&] {
    PipelineResult res = run_pipeline(manifest_path);
    if (out_status) *out_status = res.status;
    if (out_report_json) *out_report_json = dup_string(res.report.dump(2) + "\n");
  });
}

}  // extern "C"
