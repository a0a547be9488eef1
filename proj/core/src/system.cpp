#include "ifs/system.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ifs/errors.hpp"

namespace ifs {

IfsSystem::IfsSystem(std::vector<PiecewiseLinearMap> maps,
                     std::vector<double> probs)
    : maps_(std::move(maps)), probs_(std::move(probs)) {
  if (maps_.size() < 2)
    throw ValidationError("system needs N >= 2 maps, got " +
                          std::to_string(maps_.size()));
  if (probs_.size() != maps_.size())
    throw ValidationError("probs size " + std::to_string(probs_.size()) +
                          " does not match map count " +
                          std::to_string(maps_.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] > 0.0))
      throw ValidationError("probs[" + std::to_string(i) +
                            "] must be strictly positive");
    sum += probs_[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ValidationError("probs must sum to 1 within 1e-12, got " +
                          std::to_string(sum));
  cum_probs_.reserve(probs_.size());
  double c = 0.0;
  for (double p : probs_) {
    c += p;
    cum_probs_.push_back(c);
  }
  cum_probs_.back() = 1.0;
}

std::size_t IfsSystem::symbol_for(double u) const {
  for (std::size_t i = 0; i + 1 < cum_probs_.size(); ++i)
    if (cum_probs_[i] > u) return i;
  return cum_probs_.size() - 1;
}

IfsSystem IfsSystem::am2() {
  PiecewiseLinearMap f1({{0.0, 0.0}, {0.8, 0.4}, {1.0, 1.0}});
  PiecewiseLinearMap f2({{0.0, 0.0}, {0.2, 0.6}, {1.0, 1.0}});
  return IfsSystem({f1, f2}, {0.5, 0.5});
}

IfsSystem IfsSystem::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(std::string("system file is not valid JSON: ") +
                          e.what());
  }
  if (!j.contains("maps") || !j["maps"].is_array())
    throw ValidationError("system file: missing \"maps\" array");
  if (!j.contains("probs") || !j["probs"].is_array())
    throw ValidationError("system file: missing \"probs\" array");

  std::vector<PiecewiseLinearMap> maps;
  for (std::size_t m = 0; m < j["maps"].size(); ++m) {
    const auto& jm = j["maps"][m];
    if (!jm.contains("nodes") || !jm["nodes"].is_array())
      throw ValidationError("maps[" + std::to_string(m) +
                            "]: missing \"nodes\" array");
    std::vector<PiecewiseLinearMap::Node> nodes;
    for (std::size_t k = 0; k < jm["nodes"].size(); ++k) {
      const auto& jn = jm["nodes"][k];
      if (!jn.is_array() || jn.size() != 2 || !jn[0].is_number() ||
          !jn[1].is_number())
        throw ValidationError("maps[" + std::to_string(m) + "].nodes[" +
                              std::to_string(k) + "]: expected [x, y]");
      nodes.push_back({jn[0].get<double>(), jn[1].get<double>()});
    }
    try {
      maps.emplace_back(std::move(nodes));
    } catch (const ValidationError& e) {
      throw ValidationError("maps[" + std::to_string(m) + "]: " + e.what());
    }
  }
  std::vector<double> probs;
  for (const auto& jp : j["probs"]) {
    if (!jp.is_number())
      throw ValidationError("probs: expected numbers");
    probs.push_back(jp.get<double>());
  }
  return IfsSystem(std::move(maps), std::move(probs));
}

IfsSystem IfsSystem::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open system file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return from_json_text(ss.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string IfsSystem::to_json_text() const {
  nlohmann::json j;
  j["maps"] = nlohmann::json::array();
  for (const auto& m : maps_) {
    nlohmann::json jm;
    jm["nodes"] = nlohmann::json::array();
    for (const auto& n : m.nodes()) jm["nodes"].push_back({n.x, n.y});
    j["maps"].push_back(jm);
  }
  j["probs"] = probs_;
  return j.dump(2);
}

}  // namespace ifs
