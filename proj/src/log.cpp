#include "graphon/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>

namespace graphon {

void init_logging() {
  static const bool done = [] {
    auto logger = spdlog::stderr_color_mt("graphon_lab");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::level::level_enum level = spdlog::level::err;
    if (const char* env = std::getenv("GRAPHON_LAB_LOG")) {
      const std::string v = env;
      if (v == "info") level = spdlog::level::info;
      if (v == "debug") level = spdlog::level::debug;
    }
    spdlog::set_level(level);
    return true;
  }();
  (void)done;
}

}  // namespace graphon
