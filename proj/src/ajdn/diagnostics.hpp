#pragma once

#include <functional>
#include <string>

namespace ajdn {

// Process-wide sink for non-fatal warnings (short windows, tuning conflicts).
// The default sink discards messages; the CLI installs one that writes to stderr.
using WarningSink = std::function<void(const std::string&)>;

void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

// Caps OpenMP worker threads; 0 restores the runtime default.
void set_thread_limit(int threads);

} // namespace ajdn
