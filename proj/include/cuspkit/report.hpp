#pragma once

// Deterministic JSON and CSV rendering of reports.

#include <string>
#include <vector>

#include "json.hpp"

#include "cuspkit/bounds.hpp"

namespace cuspkit {

using Json = nlohmann::ordered_json;

/// Key order as inserted; floats with 17 significant digits; non-finite
/// floats become null.
std::string dump_json(const Json& value, int indent = 2);

Json to_json(const BoundReport& report);
Json to_json(Complex z);  // [re, im]

/// Rows of flat objects as RFC 4180 CSV; the header is the key list of the
/// first row and nested values are written as compact JSON.
std::string to_csv(const std::vector<Json>& rows);

/// A report's fields as "key: value" lines.
std::string to_text(const std::vector<Json>& rows);

}  // namespace cuspkit
