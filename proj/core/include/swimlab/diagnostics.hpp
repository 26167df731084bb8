#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace swimlab {

using WarningSink = std::function<void(std::string_view)>;

/// Installs a process-wide warning sink and returns the previous one.
/// The default sink writes "warning: <msg>" to stderr.
WarningSink set_warning_sink(WarningSink sink);

void warn(const std::string& message);

/// Collects warnings for the lifetime of the guard (used by tests and the CLI).
class ScopedWarningCapture {
 public:
  ScopedWarningCapture();
  ~ScopedWarningCapture();
  ScopedWarningCapture(const ScopedWarningCapture&) = delete;
  ScopedWarningCapture& operator=(const ScopedWarningCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
  WarningSink previous_;
};

}  // namespace swimlab
