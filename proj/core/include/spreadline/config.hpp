#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "spreadline/model.hpp"

namespace spreadline {

// Reads the JSON config document. Keys mirror SpreadLineConfig; only "ego" is
// required. Unknown keys are rejected.
SpreadLineConfig parse_config(std::istream& in);
SpreadLineConfig read_config_file(const std::string& path);
void write_config(std::ostream& out, const SpreadLineConfig& config);

// Confirms the ego exists, that every stretch/annotation key names a timestamp
// on the axis, and that numeric parameters are in range.
SpreadLineConfig validate_config(SpreadLineConfig config, const std::vector<EventRecord>& events);

}  // namespace spreadline
