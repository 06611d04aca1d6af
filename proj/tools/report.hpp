#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace hyperpick::cli {

using json = nlohmann::ordered_json;
using cplx = std::complex<double>;

struct Problem {
  std::vector<cplx> nodes;
  std::optional<std::vector<cplx>> values;
  std::map<std::string, std::string> metadata;
};

/// Parses and validates a problem document. Throws InvalidInput with the
/// offending field (and line, for syntax errors).
Problem parse_problem(std::string_view text);

/// FNV-1a, 64 bit, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Finite doubles as numbers; anything else as null with "<key>_nonfinite"
/// set to "inf", "-inf" or "nan".
void put_real(json& obj, const std::string& key, double v);
json real_or_null(double v);
std::string nonfinite_tag(double v);

/// [re, im], or null when either part is not finite.
json complex_json(cplx z);
json complex_list(std::span<const cplx> zs);

json make_report(const std::string& command, const std::string& digest);

}  // namespace hyperpick::cli
