#include "sqlh/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sqlh/fixtures.hpp"
#include "sqlh/hamfile.hpp"
#include "sqlh/statespec.hpp"

namespace sqlh {

using nlohmann::json;

namespace {

std::string resolve(const std::string& base, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base.empty()) return path;
  return (std::filesystem::path(base) / p).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot write '" + path + "'");
  out << content;
}

std::string fmt_double(double v) {
  char buf[40];
  snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

BigRat parse_rat(const std::string& s) {
  ExactValue v = ExactValue::parse(s);
  if (!v.is_rational()) fail(Errc::SyntaxError, "expected a rational, got '" + s + "'");
  return v.as_rational();
}

}  // namespace

json verdict_report(const Verdict& v) {
  json r;
  r["accept"] = v.accept;
  r["reason"] = v.reason;
  r["fast_path"] = v.fast_path;
  r["survived"] = v.survived;
  r["trials"] = v.trials;
  json runs = json::array();
  for (const RunOutcome& run : v.runs) {
    json jr;
    jr["survived"] = run.survived;
    if (!run.survived) jr["reason"] = run.reason;
    jr["time"] = fmt_double(run.time);
    jr["jumps"] = run.jumps;
    runs.push_back(std::move(jr));
  }
  r["runs"] = std::move(runs);
  r["numeric_boundary"] =
      "legality and rates exact; only waiting times and jump selection use doubles";
  return r;
}

Verdict run_verify_files(const std::string& ham_path, const std::string& state_path,
                         const std::string& lambda, const std::string& xstar,
                         const std::string& a, const std::string& b, int trials,
                         const std::string& tmax, uint64_t seed) {
  HamFile hf = HamFile::load(ham_path);
  SparseHam h = hf.to_sparse();
  MerlinMessage msg;
  msg.lambda_star = ExactValue::parse(lambda);
  msg.xi = load_statespec(state_path);
  msg.x_star = BitString::parse(xstar);
  VerifierConfig cfg;
  cfg.a = ExactValue::parse(a);
  cfg.b = ExactValue::parse(b);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.t_max = tmax.empty() ? BigRat(0) : parse_rat(tmax);
  return verify(h, msg, cfg);
}

json oracle_check(const std::string& what, const std::string& ham_path,
                  const std::string& state_path) {
  json r;
  r["what"] = what;
  if (what == "state") {
    AmplitudeQuery q = load_statespec(state_path);
    auto d = oracle::densify_state(q);
    r["n"] = q.n;
    r["scale_squared"] = d.scale_squared.str();
    r["norm_squared_of_raw_query"] = d.scale_squared.str();
    size_t nonzero = 0;
    for (const ExactValue& v : d.values.amp) nonzero += !v.is_zero();
    r["support"] = nonzero;
    r["zero_vector"] = nonzero == 0;
    return r;
  }
  HamFile hf = HamFile::load(ham_path);
  SparseHam h = hf.to_sparse();
  if (what == "ham") {
    oracle::DenseHam d = oracle::densify_ham(h);
    r["n"] = d.n;
    r["hermitian"] = true;        // densify_ham verifies exactly
    r["row_support_exact"] = true;
    return r;
  }
  if (what == "spectrum") {
    auto evs = oracle::spectrum(oracle::densify_ham(h));
    json arr = json::array();
    for (double e : evs) arr.push_back(fmt_double(e));
    r["eigenvalues"] = std::move(arr);
    r["residual_bound"] = "1e-9 * |H|";
    return r;
  }
  if (what == "stoq") {
    r["stoquastic"] = oracle::stoquastic_check(oracle::densify_ham(h));
    return r;
  }
  fail(Errc::BadManifest, "unknown oracle check '" + what + "'");
}

namespace {

json run_step(const json& step, const std::string& base, uint64_t seed) {
  std::string op = step.at("op");
  json out;
  out["op"] = op;
  if (op == "num.encode" || op == "num.decode") {
    ClassDescriptor cls = ClassDescriptor::parse(step.at("family"), step.at("p"),
                                                 step.value("flags", ""));
    if (op == "num.encode") {
      BitString bits = encode(ExactValue::parse(step.at("value")), cls);
      out["bits"] = bits.str_grouped(cls.group_widths());
      if (step.contains("out")) write_file(resolve(base, step["out"]), bits.str() + "\n");
    } else {
      ExactValue v = decode(BitString::parse(step.at("bits")), cls);
      out["value"] = v.str();
    }
  } else if (op == "num.ratio") {
    ClassDescriptor cls = ClassDescriptor::parse(step.at("family"), step.at("p"),
                                                 step.value("flags", ""));
    auto [v, ocls] = ratio(ExactValue::parse(step.at("x")), ExactValue::parse(step.at("y")), cls);
    out["value"] = v.str();
    out["class"] = ocls.str();
    out["bits"] = encode(v, ocls).str_grouped(ocls.group_widths());
  } else if (op == "circuit.decompose") {
    CircuitDescriptor c = CircuitDescriptor::parse_file(resolve(base, step.at("in")));
    StecDescriptor d = toffoli_decompose(c);
    write_file(resolve(base, step.at("out")), d.expanded.str());
    out["gates"] = d.expanded.gate_count();
  } else if (op == "circuit.sparsify") {
    CircuitDescriptor c = CircuitDescriptor::parse_file(resolve(base, step.at("in")));
    CircuitDescriptor s = spatial_sparsify(c);
    write_file(resolve(base, step.at("out")), s.str());
    out["gates"] = s.gate_count();
    out["clock_steps"] = unit_expanded_ops(s).size();
  } else if (op == "circuit.preidle") {
    CircuitDescriptor c = CircuitDescriptor::parse_file(resolve(base, step.at("in")));
    CircuitDescriptor p = pre_idle(c);
    write_file(resolve(base, step.at("out")), p.str());
    out["gates"] = p.gate_count();
  } else if (op == "ham.build") {
    CircuitDescriptor c = CircuitDescriptor::parse_file(resolve(base, step.at("circuit")));
    std::string variant = step.at("variant");
    std::string input = step.at("input");
    BitString xb = BitString::parse(input.substr(0, c.regs.n));
    BitString xib = BitString::parse(input.substr(c.regs.n));
    ClockHam ch;
    if (variant == "4local") ch = build_4local(c, xb, xib);
    else if (variant == "3local") ch = build_3local(toffoli_decompose(c), xb, xib);
    else if (variant == "sparse6")
      ch = build_sparse6(c.layout ? c : spatial_sparsify(c), xb, xib);
    else fail(Errc::BadManifest, "unknown variant '" + variant + "'");
    HamFile::from_clock(ch, variant).save(resolve(base, step.at("out")));
    out["qubits"] = ch.total_qubits();
    out["terms"] = ch.terms.size();
    out["locality"] = ch.max_support();
  } else if (op == "ham.transform") {
    std::string kind = step.at("transform");
    HamFile hf = HamFile::load(resolve(base, step.at("ham")));
    SparseHam h = hf.to_sparse();
    SparseHam t;
    if (kind == "real") {
      t = complexify_to_real(h);
    } else {
      AmplitudeQuery xi = load_statespec(resolve(base, step.at("state")));
      t = kind == "fixednode" ? fixed_node(h, xi)
          : kind == "gauge" ? sign_gauge(fixed_node(h, xi), xi)
                            : (fail(Errc::BadManifest, "unknown transform '" + kind + "'"),
                               SparseHam{});
    }
    // materialise at desk scale
    auto dense = std::make_shared<oracle::DenseHam>(oracle::densify_ham(t, {}, 0));
    HamFile::from_dense(dense, kind).save(resolve(base, step.at("out")));
    out["qubits"] = t.n;
  } else if (op == "fixture.make") {
    FixtureSet fs = make_fixture(step.at("kind"), resolve(base, step.at("dir")), step.at("n"),
                                 step.value("seed", seed));
    out["ham"] = fs.ham_path;
    if (!fs.state_path.empty()) out["state"] = fs.state_path;
  } else if (op == "verify") {
    Verdict v = run_verify_files(
        resolve(base, step.at("ham")), resolve(base, step.at("state")), step.at("lambda"),
        step.at("xstar"), step.at("a"), step.at("b"), step.value("trials", 100),
        step.value("tmax", ""), step.value("seed", seed));
    json rep = verdict_report(v);
    if (step.contains("report")) write_file(resolve(base, step["report"]), rep.dump(2) + "\n");
    out["accept"] = v.accept;
    out["survived"] = v.survived;
    std::string expect = step.value("expect", "accept");
    if ((expect == "accept") != v.accept) {
      out["failed_expectation"] = expect;
      out["step_failed"] = true;
    }
  } else if (op == "oracle.check") {
    json rep = oracle_check(step.at("what"),
                            step.contains("ham") ? resolve(base, step["ham"]) : "",
                            step.contains("state") ? resolve(base, step["state"]) : "");
    if (step.contains("report")) write_file(resolve(base, step["report"]), rep.dump(2) + "\n");
    out["report"] = std::move(rep);
  } else {
    fail(Errc::BadManifest, "unknown op '" + op + "'");
  }
  return out;
}

}  // namespace

PipelineResult run_pipeline_json(const json& manifest, const std::string& base_dir) {
  PipelineResult res;
  if (!manifest.is_object() || manifest.value("schema", "") != "sqlh-manifest/1")
    fail(Errc::BadManifest, "manifest schema must be sqlh-manifest/1");
  uint64_t seed = manifest.value("seed", 1u);
  res.report["schema"] = "sqlh-report/1";
  res.report["seed"] = seed;
  json steps = json::array();
  size_t idx = 0;
  for (const json& step : manifest.at("steps")) {
    try {
      json out = run_step(step, base_dir, seed);
      if (out.value("step_failed", false)) res.status = 1;
      steps.push_back(std::move(out));
    } catch (const Error& e) {
      json out;
      out["op"] = step.value("op", "?");
      out["error"] = e.what();
      out["step"] = idx;
      steps.push_back(std::move(out));
      res.status = 2;
      res.report["failed_step"] = idx;
      res.report["steps"] = std::move(steps);
      return res;
    }
    ++idx;
  }
  res.report["steps"] = std::move(steps);
  return res;
}

PipelineResult run_pipeline(const std::string& manifest_path) {
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::exception& e) {
    fail(Errc::BadManifest, std::string("manifest JSON: ") + e.what());
  }
  return run_pipeline_json(manifest,
                           std::filesystem::path(manifest_path).parent_path().string());
}

}  // namespace sqlh
