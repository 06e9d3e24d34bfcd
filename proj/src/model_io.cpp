#include "bil/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bil/error.hpp"

namespace bil {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string("\"") + what + "\" must be an array of strings", 0);
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw ParseError(std::string("\"") + what + "\" must be an array of strings", 0);
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

RawModel raw_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw ParseError("model must be a JSON object", 0);
  for (const auto& [key, _] : j.items()) {
    if (key != "signature" && key != "worlds" && key != "order" && key != "valuation" && key != "point") {
      throw ParseError("unknown key \"" + key + "\"", 0);
    }
  }
  for (const char* req : {"signature", "worlds"}) {
    if (!j.contains(req)) throw ParseError(std::string("missing key \"") + req + "\"", 0);
  }
  RawModel raw;
  raw.signature = string_list(j["signature"], "signature");
  raw.worlds = string_list(j["worlds"], "worlds");
  if (j.contains("order")) {
    if (!j["order"].is_array()) throw ParseError("\"order\" must be an array of pairs", 0);
    for (const auto& p : j["order"]) {
      auto pair = string_list(p, "order");
      if (pair.size() != 2) throw ParseError("order entries must be pairs", 0);
      raw.order.emplace_back(pair[0], pair[1]);
    }
  }
  if (j.contains("valuation")) {
    if (!j["valuation"].is_object()) throw ParseError("\"valuation\" must be an object", 0);
    for (const auto& [letter, ws] : j["valuation"].items()) raw.valuation[letter] = string_list(ws, "valuation");
  }
  if (j.contains("point")) {
    if (!j["point"].is_string()) throw ParseError("\"point\" must be a string", 0);
    raw.point = j["point"].get<std::string>();
  }
  return raw;
}

std::string raw_to_json(const RawModel& raw) {
  // ordered_json keeps the documented key order
  nlohmann::ordered_json j;
  j["signature"] = raw.signature;
  j["worlds"] = raw.worlds;
  j["order"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : raw.order) j["order"].push_back({a, b});
  j["valuation"] = nlohmann::ordered_json::object();
  for (const auto& l : raw.signature) {
    auto it = raw.valuation.find(l);
    j["valuation"][l] = it == raw.valuation.end() ? std::vector<std::string>{} : it->second;
  }
  if (raw.point) j["point"] = *raw.point;
  return j.dump(2) + "\n";
}

std::string model_to_json(const KripkeModel& m, std::optional<std::size_t> point) {
  return raw_to_json(m.to_raw(point));
}

RawModel load_raw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return raw_from_json(ss.str());
}

}  // namespace bil
