#pragma once

#include <string>

#include "qhorn/slh.hpp"

namespace qhorn::cli {

struct Network {
  slh::JCParams params;
  slh::SLHTriple triple;
};

// Network description:
//   {"params": {...JCParams fields...}, "network": node}
//   node := {"jc": name} | {"passthrough": n} | {"laser": n}
//         | {"concat": [node, node, ...]} | {"series": [node, node, ...]}   (signal order)
//         | {"permute": [p0, p1, ...], "of": node}
// Throws QhornError on malformed input.
Network load_network(const std::string& json_text);

}  // namespace qhorn::cli
