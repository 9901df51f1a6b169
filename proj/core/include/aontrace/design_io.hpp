#pragma once

#include <string>

#include "aontrace/design.hpp"

namespace aontrace {

// On-disk formats are JSON text. Unknown fields are rejected so typos
// cannot silently change what gets checked. The design file requires a
// units block pinned to {um, ohm, mA, V}.

Design parse_design_text(const std::string& text);
Design parse_design(const std::string& path);

TechFile parse_tech_text(const std::string& text);
TechFile parse_tech(const std::string& path);

// parse_design_text(serialize_design(d)) == d for every valid design;
// likewise for tech files.
std::string serialize_design(const Design& design);
std::string serialize_tech(const TechFile& tech);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace aontrace
