#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "imatch/market.hpp"

namespace imatch {

// Market document:
//   {"n_doctors": 4, "n_hospitals": 4,
//    "prefs_doctors":   [{"ranked": [0, 1, 3, 2], "acceptable_count": 4}, ...],
//    "prefs_hospitals": [{"ranked": [0, 1, 2, 3], "acceptable_count": 4}, ...]}
// Indices are zero-based. A missing acceptable_count means the whole list is
// acceptable.
std::string market_to_json(const Market& market, int indent = 2);
Market market_from_json(std::string_view text);
Market load_market(const std::filesystem::path& path);

// Matchings serialize as [[doctor, hospital_or_null], ...], one entry per doctor.
std::string matching_to_json(const Matching& matching);
Matching matching_from_json(std::string_view text, int n_hospitals);

// Interview matchings serialize as one list of hospitals per doctor.
std::string interviews_to_json(const InterviewMatching& interviews);

}  // namespace imatch
