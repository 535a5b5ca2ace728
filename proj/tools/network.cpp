#include "network.hpp"

#include <json.hpp>

#include "qhorn/errors.hpp"

namespace qhorn::cli {

namespace {

using nlohmann::json;

slh::cplx complex_of(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw QhornError("expected a number or [re, im]");
}

slh::SLHTriple build(const json& node, const slh::JCParams& p) {
  if (!node.is_object() || node.size() < 1) throw QhornError("network node must be an object");
  if (node.contains("jc")) return slh::jc_triple(p, node.at("jc").get<std::string>());
  if (node.contains("passthrough")) return slh::passthrough(node.at("passthrough").get<std::size_t>());
  if (node.contains("laser")) return slh::laser_triple(p.alpha, node.at("laser").get<std::size_t>());
  if (node.contains("concat")) {
    const json& parts = node.at("concat");
    if (!parts.is_array() || parts.empty()) throw QhornError("concat needs a non-empty list");
    slh::SLHTriple acc = build(parts[0], p);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = slh::concatenate(acc, build(parts[i], p));
    return acc;
  }
  if (node.contains("series")) {
    const json& parts = node.at("series");
    if (!parts.is_array() || parts.empty()) throw QhornError("series needs a non-empty list");
    slh::SLHTriple acc = build(parts[0], p);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = slh::series(build(parts[i], p), acc);
    return acc;
  }
  if (node.contains("permute")) {
    if (!node.contains("of")) throw QhornError("permute needs an 'of' node");
    return slh::permute_channels(build(node.at("of"), p), node.at("permute").get<std::vector<std::size_t>>());
  }
  throw QhornError("unknown network node " + node.dump());
}

}  // namespace

Network load_network(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw QhornError(std::string("network json: ") + e.what());
  }
  Network net;
  try {
    if (doc.contains("params")) {
      const json& ps = doc.at("params");
      for (const auto& [key, val] : ps.items()) {
        if (key == "kappa")
          net.params.kappa = val.get<double>();
        else if (key == "gamma")
          net.params.gamma = val.get<double>();
        else if (key == "Delta")
          net.params.Delta = val.get<double>();
        else if (key == "Theta")
          net.params.Theta = val.get<double>();
        else if (key == "g")
          net.params.g = val.get<double>();
        else if (key == "alpha")
          net.params.alpha = complex_of(val);
        else if (key == "fock_cutoff")
          net.params.fock_cutoff = val.get<std::size_t>();
        else
          throw QhornError("unknown parameter " + key);
      }
    }
    if (!doc.contains("network")) throw QhornError("network json has no 'network' entry");
    net.triple = build(doc.at("network"), net.params);
  } catch (const json::exception& e) {
    throw QhornError(std::string("network json: ") + e.what());
  }
  return net;
}

}  // namespace qhorn::cli
