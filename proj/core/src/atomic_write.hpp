#pragma once

#include <filesystem>
#include <string>

namespace tvflow {

/// Writes `bytes` to a sibling temp file and renames it onto `path`, so a
/// failed or interrupted write never leaves a torn output file.
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

} // namespace tvflow
