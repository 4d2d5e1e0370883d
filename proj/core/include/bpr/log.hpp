#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace bpr {

/// Raised on malformed user input (files, ids, parameters).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when an internal invariant is violated; indicates a pipeline bug.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

enum class LogLevel { Off = 0, Info = 1, Trace = 2 };

/// Current log level, read once from BPR_LOG ({off,info,trace}).
LogLevel logLevel();

void logMessage(LogLevel level, const char* fmt, ...);

#define BPR_LOG_INFO(...)                                  \
  do {                                                     \
    if (::bpr::logLevel() >= ::bpr::LogLevel::Info)        \
      ::bpr::logMessage(::bpr::LogLevel::Info, __VA_ARGS__);  \
  } while (0)

#define BPR_LOG_TRACE(...)                                 \
  do {                                                     \
    if (::bpr::logLevel() >= ::bpr::LogLevel::Trace)       \
      ::bpr::logMessage(::bpr::LogLevel::Trace, __VA_ARGS__); \
  } while (0)

#define BPR_CHECK(cond, msg)                               \
  do {                                                     \
    if (!(cond)) throw ::bpr::InternalError(std::string("check failed: ") + (msg)); \
  } while (0)

}  // namespace bpr
