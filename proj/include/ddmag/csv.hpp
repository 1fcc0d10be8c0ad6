#pragma once

#include <string>

#include "ddmag/experiments.hpp"

namespace ddmag {

/// CSV text: `# key: value` metadata lines, a `label[unit]` header, then one
/// line per row with 17 significant digits. LF line endings.
std::string to_csv(const SweepResult& result);

/// Write to_csv(result) to `path`. Throws IoError naming the path.
void write_csv(const SweepResult& result, const std::string& path);

/// Metadata of a CSV produced by to_csv, as config key/value pairs, skipping
/// entries that are not configuration (revision, timestamp).
std::vector<std::pair<std::string, std::string>> read_csv_config(const std::string& csv_text);

} // namespace ddmag
