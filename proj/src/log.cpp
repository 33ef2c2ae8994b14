#include "dkg/log.hpp"

namespace dkg {

namespace {
LogSink& sink() {
  static LogSink s;
  return s;
}
} // namespace

void set_log_sink(LogSink s) { sink() = std::move(s); }

void log_message(const std::string& message) {
  if (sink()) sink()(message);
}

} // namespace dkg
