#pragma once

#include <iostream>
#include <sstream>
#include <string_view>

namespace rne::log {

enum class Level { kOff = 0, kInfo = 1, kTrace = 2 };

// Read once from RNE_LOG (trace|info|off); unset means off.
Level level();
// Overrides the environment, mainly for tests.
void set_level(Level level);
Level parse_level(std::string_view text);

template <typename... Args>
void write(Level at, Args&&... args) {
  if (static_cast<int>(level()) < static_cast<int>(at)) return;
  std::ostringstream line;
  line << (at == Level::kTrace ? "[trace] " : "[info] ");
  (line << ... << args);
  line << '\n';
  std::cerr << line.str();
}

template <typename... Args>
void info(Args&&... args) {
  write(Level::kInfo, std::forward<Args>(args)...);
}

template <typename... Args>
void trace(Args&&... args) {
  write(Level::kTrace, std::forward<Args>(args)...);
}

}  // namespace rne::log
