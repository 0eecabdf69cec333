#pragma once

#include "coxdes/joint.hpp"

#include <json.hpp>

#include <string>

namespace coxdes {

using Json = nlohmann::ordered_json;

/// {"n": int, "denominator": "<decimal>", "counts": [["<decimal>", ...], ...]}
Json to_json(const JointPMF& p);
JointPMF joint_pmf_from_json(const Json& doc);

/// {"offset": int, "denominator": "<decimal>", "counts": ["<decimal>", ...]}
/// with a common denominator.
Json to_json(const IntegerPMF& p);
IntegerPMF integer_pmf_from_json(const Json& doc);

/// "{family}-{parameter}-v{version}.json"
std::string joint_cache_filename(const GroupType& g);

/// Escapes a CSV field if it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace coxdes
