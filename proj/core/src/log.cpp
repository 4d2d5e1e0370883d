#include "bpr/log.hpp"

#include <cstdarg>
#include <cstdlib>
#include <cstring>

namespace bpr {

LogLevel logLevel() {
  static LogLevel level = [] {
    const char* env = std::getenv("BPR_LOG");
    if (env == nullptr) return LogLevel::Off;
    if (std::strcmp(env, "trace") == 0) return LogLevel::Trace;
    if (std::strcmp(env, "info") == 0) return LogLevel::Info;
    return LogLevel::Off;
  }();
  return level;
}

void logMessage(LogLevel level, const char* fmt, ...) {
  std::fputs(level == LogLevel::Trace ? "[trace] " : "[info] ", stderr);
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
}

}  // namespace bpr
