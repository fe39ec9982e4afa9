#pragma once

#include <string>

namespace agfd {

// Library warnings go to stderr unless silenced (CLI --quiet).
void set_quiet(bool quiet);
bool quiet();
void warn(const std::string& message);

}  // namespace agfd
