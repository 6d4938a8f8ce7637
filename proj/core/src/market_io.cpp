#include "imatch/market_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "imatch/errors.hpp"

namespace imatch {

using nlohmann::json;

namespace {

json prefs_to_json(const std::vector<Preference>& prefs) {
  json out = json::array();
  for (const auto& p : prefs) {
    out.push_back({{"ranked", p.ranked()}, {"acceptable_count", p.acceptable_count()}});
  }
  return out;
}

std::vector<Preference> prefs_from_json(const json& doc, const char* key, int expected) {
  const auto& arr = doc.at(key);
  if (!arr.is_array() || static_cast<int>(arr.size()) != expected) {
    throw DimensionError(std::string(key) + " must list exactly " + std::to_string(expected) +
                         " preferences");
  }
  std::vector<Preference> out;
  out.reserve(arr.size());
  for (const auto& entry : arr) {
    auto ranked = entry.at("ranked").get<std::vector<int>>();
    const auto count = entry.contains("acceptable_count")
                           ? entry.at("acceptable_count").get<std::size_t>()
                           : ranked.size();
    out.emplace_back(std::move(ranked), count);
  }
  return out;
}

}  // namespace

std::string market_to_json(const Market& market, int indent) {
  json doc;
  doc["n_doctors"] = market.n_doctors();
  doc["n_hospitals"] = market.n_hospitals();
  doc["prefs_doctors"] = prefs_to_json(market.doctor_prefs());
  doc["prefs_hospitals"] = prefs_to_json(market.hospital_prefs());
  return doc.dump(indent);
}

Market market_from_json(std::string_view text) {
  try {
    const auto doc = json::parse(text);
    const int n_doctors = doc.at("n_doctors").get<int>();
    const int n_hospitals = doc.at("n_hospitals").get<int>();
    return Market(prefs_from_json(doc, "prefs_doctors", n_doctors),
                  prefs_from_json(doc, "prefs_hospitals", n_hospitals));
  } catch (const json::exception& e) {
    throw InvariantError(std::string("malformed market document: ") + e.what());
  }
}

Market load_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open market file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return market_from_json(buffer.str());
}

std::string matching_to_json(const Matching& matching) {
  json out = json::array();
  for (int d = 0; d < matching.n_doctors(); ++d) {
    const auto h = matching.of_doctor(d);
    out.push_back(json::array({d, h ? json(*h) : json(nullptr)}));
  }
  return out.dump();
}

Matching matching_from_json(std::string_view text, int n_hospitals) {
  try {
    const auto doc = json::parse(text);
    std::vector<std::pair<int, int>> pairs;
    int n_doctors = 0;
    for (const auto& entry : doc) {
      const int d = entry.at(0).get<int>();
      n_doctors = std::max(n_doctors, d + 1);
      if (!entry.at(1).is_null()) pairs.emplace_back(d, entry.at(1).get<int>());
    }
    return Matching(n_doctors, n_hospitals, pairs);
  } catch (const json::exception& e) {
    throw InvariantError(std::string("malformed matching document: ") + e.what());
  }
}

std::string interviews_to_json(const InterviewMatching& interviews) {
  json out = json::array();
  for (int d = 0; d < interviews.n_doctors(); ++d) out.push_back(interviews.of_doctor(d));
  return out.dump();
}

}  // namespace imatch
