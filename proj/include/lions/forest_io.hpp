#pragma once

#include "lions/forests.hpp"

#include <string>

namespace lions {

// {"format": "lions-forest/1", "nodes": [...], "edges": [[child, parent], ...],
//  "labels": [...], "tags": {"0": [...]}, "blocks": [[...], ...]}
// labels are listed in node order; node ids are integers.
std::string forest_to_json(const LionsForest& t);
LionsForest forest_from_json(const std::string& text);
LionsForest load_forest(const std::string& path);

std::string forest_to_dot(const LionsForest& t);

} // namespace lions
