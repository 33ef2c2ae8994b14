#pragma once

#include <functional>
#include <string>

namespace dkg {

/// Diagnostics sink for logged (non-fatal) discrepancies between printed
/// closed forms and their numerical checks. Silent until a sink is set.
using LogSink = std::function<void(const std::string&)>;

void set_log_sink(LogSink sink);
void log_message(const std::string& message);

} // namespace dkg
