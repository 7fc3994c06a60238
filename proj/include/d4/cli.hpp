#pragma once

// Command-line front end. Every JSON response echoes the parsed input; exit
// codes are 0 on success, 2 for domain errors (OnWall, NonGeneric, ...) and
// 1 for usage or parse errors.

#include <ostream>
#include <string>
#include <vector>

namespace d4::cli {

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace d4::cli
