#pragma once

#include <string>

namespace cubeharm {

// Writes content to a sibling temp file, then renames over path, so readers
// never observe a truncated report even if the writer is interrupted.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace cubeharm
