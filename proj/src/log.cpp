#include "rne/log.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace rne::log {

namespace {

Level from_env() {
  const char* v = std::getenv("RNE_LOG");
  return v ? parse_level(v) : Level::kOff;
}

std::atomic<int>& current() {
  static std::atomic<int> lvl{static_cast<int>(from_env())};
  return lvl;
}

}  // namespace

Level parse_level(std::string_view text) {
  if (text == "trace") return Level::kTrace;
  if (text == "info") return Level::kInfo;
  return Level::kOff;
}

Level level() { return static_cast<Level>(current().load(std::memory_order_relaxed)); }

void set_level(Level level) { current().store(static_cast<int>(level), std::memory_order_relaxed); }

}  // namespace rne::log
