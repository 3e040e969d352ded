#pragma once

#include <filesystem>
#include <string>

namespace driftmon {

// Atomic text write: temp file in the target directory, then rename. Output
// files are never observable half-written.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

} // namespace driftmon
