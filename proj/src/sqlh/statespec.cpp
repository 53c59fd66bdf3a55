#include "sqlh/statespec.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sqlh {

using nlohmann::json;

namespace {

AmplitudeQuery from_json(const json& j, const std::string& base_dir);

std::string resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

AmplitudeQuery vector_query(int n, std::vector<ExactValue> entries) {
  if ((size_t(1) << n) != entries.size())
    fail(Errc::BadWidth, "vector spec needs 2^n entries");
  auto data = std::make_shared<std::vector<ExactValue>>(std::move(entries));
  AmplitudeQuery q;
  q.n = n;
  q.query = [data, n](const BitString& x) {
    if ((int)x.size() != n) fail(Errc::BadWidth, "query string width");
    return data->at(x.index());
  };
  q.scale.bound_bits = 2 * n + 4;
  unsigned p = 1;
  for (const ExactValue& v : *data) {
    if (v.is_rational()) {
      BigRat r = v.as_rational();
      p = std::max({p, bit_width(rat_num(r)), bit_width(rat_den(r))});
    }
  }
  q.codomain = ClassDescriptor::plain(Family::C, p);
  return q;
}

AmplitudeQuery history_from_circuit(const CircuitDescriptor& c, const BitString& x,
                                    const BitString& xi, const std::string& mode, bool exact) {
  if (mode == "classical") {
    HybridSpec spec{initial_pattern(c, x, xi), c.gates};
    return history_query_classical(spec, exact);
  }
  if (mode == "stec") {
    HybridSpec spec{initial_pattern(c, x, xi), c.gates};
    return history_query_stec(spec, StecQueryConfig{}, exact);
  }
  if (mode == "sparse6") {
    if (!c.layout) fail(Errc::SyntaxError, "sparse6 history needs a sparsified circuit (ROWS)");
    HybridSpec spec{initial_pattern(c, x, xi), unit_expanded_ops(c)};
    return history_query_classical(spec, exact);
  }
  fail(Errc::SyntaxError, "unknown history mode '" + mode + "'");
}

AmplitudeQuery from_json(const json& j, const std::string& base_dir) {
  if (!j.is_object() || !j.contains("kind"))
    fail(Errc::BadManifest, "state spec needs a 'kind' field");
  std::string kind = j.at("kind");
  if (kind == "subset") {
    int n = j.at("n");
    std::vector<BitString> strings;
    for (const auto& s : j.at("strings")) strings.push_back(BitString::parse(s));
    bool exact = j.value("exact", true);
    return subset_query(subset_from_list(n, std::move(strings)), exact);
  }
  if (kind == "vector") {
    int n = j.at("n");
    std::vector<ExactValue> entries;
    for (const auto& e : j.at("entries")) entries.push_back(ExactValue::parse(e));
    return vector_query(n, std::move(entries));
  }
  if (kind == "history") {
    CircuitDescriptor c = CircuitDescriptor::parse_file(resolve(base_dir, j.at("circuit")));
    BitString x = BitString::parse(j.value("x", ""));
    BitString xi = BitString::parse(j.value("xi", ""));
    std::string mode = j.value("mode", "classical");
    bool exact = j.value("exact", true);
    return history_from_circuit(c, x, xi, mode, exact);
  }
  if (kind == "pushforward") {
    AmplitudeQuery base = from_json(j.at("base"), base_dir);
    CircuitDescriptor c = CircuitDescriptor::parse_file(resolve(base_dir, j.at("circuit")));
    size_t upto = j.value("upto", c.gate_count());
    return pushforward_reversible(base, c, upto);
  }
  if (kind == "split") {
    AmplitudeQuery base = from_json(j.at("base"), base_dir);
    int part = j.value("part", 1);
    auto [p1, p2] = split_real(base);
    return part == 2 ? p2 : p1;
  }
  fail(Errc::BadManifest, "unknown state spec kind '" + kind + "'");
}

}  // namespace

AmplitudeQuery parse_statespec(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(Errc::SyntaxError, std::string("state spec JSON: ") + e.what());
  }
  return from_json(j, base_dir);
}

AmplitudeQuery load_statespec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open state spec '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_statespec(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string vector_spec_json(int n, const std::vector<ExactValue>& entries) {
  json j;
  j["kind"] = "vector";
  j["n"] = n;
  json arr = json::array();
  for (const ExactValue& v : entries) arr.push_back(v.str());
  j["entries"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::string history_spec_json(const std::string& circuit_path, const BitString& x,
                              const BitString& xi, const std::string& mode) {
  json j;
  j["kind"] = "history";
  j["circuit"] = circuit_path;
  j["x"] = x.str();
  j["xi"] = xi.str();
  j["mode"] = mode;
  j["exact"] = true;
  return j.dump(2) + "\n";
}

}  // namespace sqlh
