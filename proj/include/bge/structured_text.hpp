#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bge/inference.hpp"

// Line-oriented key=value records. Numbers are written with 10 significant
// digits; records in one document are separated by a blank line.

namespace bge::io {

using Record = std::map<std::string, std::string>;

std::string format_number(double v);

std::string to_structured(const inference::FitResult& fit);
std::string to_structured(const inference::LrTestResult& lr);

/// Splits a document into records. Throws std::invalid_argument on a line
/// without '=' (the message carries the line number).
std::vector<Record> parse_records(std::string_view text);

inference::FitResult fit_from_record(const Record& record);
inference::LrTestResult lr_from_record(const Record& record);

nlohmann::json to_json(const inference::FitResult& fit);
nlohmann::json to_json(const inference::LrTestResult& lr);

}  // namespace bge::io
