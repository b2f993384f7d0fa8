#pragma once

#include <spdlog/spdlog.h>

namespace graphon {

// Reads GRAPHON_LAB_LOG (error, info, debug) once and configures the default
// stderr logger. Unset or unknown values mean "error".
void init_logging();

}  // namespace graphon
