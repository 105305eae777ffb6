#pragma once

#include <string>
#include <utility>
#include <vector>

#include "degseq/errors.hpp"
#include "degseq/model.hpp"
#include "degseq/realizability.hpp"
#include "json.hpp"

namespace harness {

using json = nlohmann::json;

// Bad input: malformed JSON, schema violations, missing files.
class InputError : public degseq::PreconditionError {
 public:
  using degseq::PreconditionError::PreconditionError;
};

// Parses a file, reporting syntax errors as "file:line:col: message".
json load_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& origin);

// Canonical form {"class":"bipartite"|"digraph","ell":L,"n":N,"s":[...],"t":[...]}
// with ell omitted for digraphs. Errors name the offending field.
degseq::DegreeSequence parse_sequence(const json& j, const std::string& origin = "input");
json sequence_to_json(const degseq::DegreeSequence& d);

// [[x, y], ...] with each pair allowable in cls.
std::vector<degseq::Edge> parse_pairs(const json& j, const degseq::GraphClass& cls,
                                      const std::string& origin = "pairs");

json rational_json(const degseq::Rational& q);

// Pretty JSON with a trailing newline.
std::string dump(const json& j);

// CSV projection: the first array of objects found at top level becomes a
// table, anything else is flattened to key,value rows.
std::string to_csv(const json& j);

}  // namespace harness
