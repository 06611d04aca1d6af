#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hyperpick/error.hpp"
#include "hyperpick/hyperbolic.hpp"

namespace hyperpick::cli {

namespace {

cplx read_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw InvalidInput(where + ": expected a [re, im] pair of numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

std::vector<cplx> read_list(const json& doc, const std::string& field) {
  const json& arr = doc.at(field);
  if (!arr.is_array()) throw InvalidInput("field " + field + ": expected an array of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(read_pair(arr[i], "field " + field + "[" + std::to_string(i) + "]"));
  return out;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) line += text[i] == '\n' ? 1 : 0;
  return line;
}

}  // namespace

Problem parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "malformed JSON at line " << line_of(text, e.byte == 0 ? 0 : e.byte - 1) << ": " << e.what();
    throw InvalidInput(os.str());
  }
  if (!doc.is_object()) throw InvalidInput("problem file must hold a JSON object");
  if (!doc.contains("nodes")) throw InvalidInput("field nodes: missing");

  Problem p;
  p.nodes = read_list(doc, "nodes");
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (!(std::norm(p.nodes[i]) < 1) || !(std::abs(p.nodes[i]) < 1 - kDiscMargin<double>))
      throw InvalidInput("field nodes[" + std::to_string(i) + "]: point is not inside the unit disc");
  }
  if (doc.contains("values")) {
    p.values = read_list(doc, "values");
    if (p.values->size() != p.nodes.size())
      throw InvalidInput("field values: length " + std::to_string(p.values->size()) +
                         " differs from nodes length " + std::to_string(p.nodes.size()));
    for (std::size_t i = 0; i < p.values->size(); ++i)
      if (!(std::abs((*p.values)[i]) <= 1 + 1e-12))
        throw InvalidInput("field values[" + std::to_string(i) + "]: modulus exceeds 1");
  }
  if (doc.contains("metadata")) {
    const json& meta = doc["metadata"];
    if (!meta.is_object()) throw InvalidInput("field metadata: expected an object of strings");
    for (const auto& [k, v] : meta.items()) {
      if (!v.is_string()) throw InvalidInput("field metadata." + k + ": expected a string");
      p.metadata[k] = v.get<std::string>();
    }
  }
  for (const auto& [k, v] : doc.items())
    if (k != "nodes" && k != "values" && k != "metadata") throw InvalidInput("field " + k + ": unknown");
  return p;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string nonfinite_tag(double v) {
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void put_real(json& obj, const std::string& key, double v) {
  obj[key] = real_or_null(v);
  if (!std::isfinite(v)) obj[key + "_nonfinite"] = nonfinite_tag(v);
}

json complex_json(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return nullptr;
  return json::array({z.real(), z.imag()});
}

json complex_list(std::span<const cplx> zs) {
  json out = json::array();
  for (const cplx& z : zs) out.push_back(complex_json(z));
  return out;
}

json make_report(const std::string& command, const std::string& digest) {
  json r;
  r["command"] = command;
  r["inputs_digest"] = digest;
  r["results"] = json::object();
  r["warnings"] = json::array();
  return r;
}

}  // namespace hyperpick::cli
