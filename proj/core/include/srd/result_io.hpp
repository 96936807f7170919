#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace srd {

/// 64-bit FNV-1a content hash, used for manifest checksums.
std::uint64_t fnv1a64(std::string_view bytes);

/// Writes via a temp file in the same directory followed by a rename, so a
/// crash never leaves a half-written result behind.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Fixed-format float for CSV cells; shortest round-trippable decimal is
/// not needed, a stable 12 significant digits is.
std::string csv_double(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);

/// Plain-text run manifest: id, creation time, version, config echo, and a
/// checksummed file list.
struct ResultManifest {
  std::string run_id;
  std::string created;  // ISO-8601 UTC
  std::string version;
  std::string config_echo;  // serialized config, echoed line by line
  std::vector<std::string> files;  // relative to the manifest directory

  /// Writes manifest.txt into `dir`, checksumming each listed file.
  void write(const std::filesystem::path& dir) const;
};

/// Recomputes every checksum in dir/manifest.txt; true when all listed
/// files exist and match.
bool validate_manifest(const std::filesystem::path& dir);

}  // namespace srd
