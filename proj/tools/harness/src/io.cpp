#include "harness/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace harness {

namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void field_error(const std::string& origin, const std::string& field, const std::string& why) {
  throw InputError(origin + ": field '" + field + "': " + why);
}

int get_int(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_number_integer()) field_error(origin, field, "expected an integer, got " + std::string(j.type_name()));
  long long v = j.get<long long>();
  if (v < 0 || v > 1'000'000) field_error(origin, field, "expected a nonnegative integer <= 1000000");
  return static_cast<int>(v);
}

std::vector<int> get_int_array(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_array()) field_error(origin, field, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_int(j[i], origin, field + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte);
    std::string what = e.what();
    auto cut = what.find("parse error");
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                     (cut == std::string::npos ? what : what.substr(cut)));
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

degseq::DegreeSequence parse_sequence(const json& j, const std::string& origin) {
  if (!j.is_object()) throw InputError(origin + ": expected a JSON object");
  static const std::set<std::string> known = {"class", "ell", "n", "s", "t"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) field_error(origin, it.key(), "unknown field");
  if (!j.contains("class")) field_error(origin, "class", "missing");
  if (!j["class"].is_string()) field_error(origin, "class", "expected \"bipartite\" or \"digraph\"");
  std::string kind = j["class"].get<std::string>();
  for (const char* f : {"n", "s", "t"})
    if (!j.contains(f)) field_error(origin, f, "missing");
  int n = get_int(j["n"], origin, "n");
  std::vector<int> s = get_int_array(j["s"], origin, "s");
  std::vector<int> t = get_int_array(j["t"], origin, "t");
  degseq::GraphClass cls = degseq::GraphClass::bipartite(1, 1);
  try {
    if (kind == "bipartite") {
      if (!j.contains("ell")) field_error(origin, "ell", "missing");
      int ell = get_int(j["ell"], origin, "ell");
      cls = degseq::GraphClass::bipartite(ell, n);
    } else if (kind == "digraph") {
      if (j.contains("ell")) field_error(origin, "ell", "must be omitted for digraphs");
      cls = degseq::GraphClass::digraph(n);
    } else {
      field_error(origin, "class", "expected \"bipartite\" or \"digraph\", got \"" + kind + "\"");
    }
  } catch (const InputError&) {
    throw;
  } catch (const degseq::Error& e) {
    throw InputError(origin + ": " + e.what());
  }
  if (static_cast<int>(s.size()) != cls.ell())
    field_error(origin, "s", "expected " + std::to_string(cls.ell()) + " entries, got " + std::to_string(s.size()));
  if (static_cast<int>(t.size()) != cls.n())
    field_error(origin, "t", "expected " + std::to_string(cls.n()) + " entries, got " + std::to_string(t.size()));
  return degseq::DegreeSequence(cls, s, t);
}

json sequence_to_json(const degseq::DegreeSequence& d) {
  const auto& cls = d.graph_class();
  json j;
  j["class"] = cls.is_digraph() ? "digraph" : "bipartite";
  if (!cls.is_digraph()) j["ell"] = cls.ell();
  j["n"] = cls.n();
  j["s"] = std::vector<int>(d.s().begin(), d.s().end());
  j["t"] = std::vector<int>(d.t().begin(), d.t().end());
  return j;
}

std::vector<degseq::Edge> parse_pairs(const json& j, const degseq::GraphClass& cls, const std::string& origin) {
  if (!j.is_array()) throw InputError(origin + ": expected an array of [x, y] pairs");
  std::vector<degseq::Edge> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string field = "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) field_error(origin, field, "expected a pair [x, y]");
    int x = get_int(j[i][0], origin, field + "[0]");
    int y = get_int(j[i][1], origin, field + "[1]");
    try {
      out.push_back(degseq::make_edge(cls, x, y));
    } catch (const degseq::Error& e) {
      field_error(origin, field, e.what());
    }
  }
  return out;
}

json rational_json(const degseq::Rational& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}, {"float", q.get_d()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace {

std::string cell(const json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_null()) return "";
  std::string s = v.dump();
  if (s.find(',') == std::string::npos) return s;
  return cell(json(s));
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else {
    out.emplace_back(prefix, j);
  }
}

}  // namespace

std::string to_csv(const json& j) {
  std::ostringstream os;
  if (j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it) {
      const json& v = it.value();
      if (!v.is_array() || v.empty() || !v.front().is_object()) continue;
      std::vector<std::string> cols;
      std::vector<std::vector<std::pair<std::string, json>>> rows;
      for (const json& row : v) {
        std::vector<std::pair<std::string, json>> flat;
        flatten(row, "", flat);
        for (auto& [k, x] : flat)
          if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
        rows.push_back(std::move(flat));
      }
      for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
      os << "\n";
      for (const auto& flat : rows) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
          if (c) os << ",";
          for (auto& [k, x] : flat)
            if (k == cols[c]) os << cell(x);
        }
        os << "\n";
      }
      return os.str();
    }
  std::vector<std::pair<std::string, json>> flat;
  flatten(j, "", flat);
  os << "key,value\n";
  for (auto& [k, v] : flat) os << cell(json(k)) << "," << cell(v) << "\n";
  return os.str();
}

}  // namespace harness
