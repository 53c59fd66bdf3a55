#pragma once

#include <string>

#include "sqlh/amplitude_query.hpp"

namespace sqlh {

// State-spec files (JSON) describe succinct states declaratively:
//   {"kind":"subset","n":2,"strings":["00","11"],"exact":true}
//   {"kind":"vector","n":2,"entries":["1","0","-1/2","3/4"]}
//   {"kind":"history","circuit":"circ.txt","x":"01","xi":"","mode":"classical","exact":true}
//       mode: classical | stec | sparse6
//   {"kind":"pushforward","base":{...},"circuit":"circ.txt","upto":2}
//   {"kind":"split","base":{...},"part":1}
// Relative circuit paths resolve against the spec file's directory.
AmplitudeQuery load_statespec(const std::string& path);
AmplitudeQuery parse_statespec(const std::string& json_text, const std::string& base_dir);

// Writers used by the fixture generator.
std::string vector_spec_json(int n, const std::vector<ExactValue>& entries);
std::string history_spec_json(const std::string& circuit_path, const BitString& x,
                              const BitString& xi, const std::string& mode);

}  // namespace sqlh
