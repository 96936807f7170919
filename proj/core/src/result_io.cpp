#include "srd/result_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace srd {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

void atomic_write(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw std::runtime_error("atomic_write: short write to " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_file: cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(const fs::path& path, const CsvTable& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("write_csv: ragged row");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  atomic_write(path, out.str());
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

void ResultManifest::write(const fs::path& dir) const {
  std::ostringstream out;
  out << "run_id=" << run_id << "\n";
  out << "created=" << created << "\n";
  out << "toolkit_version=" << version << "\n";
  std::stringstream cfg(config_echo);
  std::string line;
  while (std::getline(cfg, line)) {
    if (!line.empty()) out << "config." << line << "\n";
  }
  for (const auto& rel : files) {
    const std::string content = read_file(dir / rel);
    out << "file=" << rel << " bytes=" << content.size()
        << " fnv1a64=" << hex64(fnv1a64(content)) << "\n";
  }
  atomic_write(dir / "manifest.txt", out.str());
}

bool validate_manifest(const fs::path& dir) {
  std::string text;
  try {
    text = read_file(dir / "manifest.txt");
  } catch (const std::exception&) {
    return false;
  }
  std::stringstream ss(text);
  std::string line;
  bool saw_file = false;
  while (std::getline(ss, line)) {
    if (line.rfind("file=", 0) != 0) continue;
    saw_file = true;
    std::string name, bytes_str, hash_str;
    const auto bytes_pos = line.find(" bytes=");
    const auto hash_pos = line.find(" fnv1a64=");
    if (bytes_pos == std::string::npos || hash_pos == std::string::npos) {
      return false;
    }
    name = line.substr(5, bytes_pos - 5);
    bytes_str = line.substr(bytes_pos + 7, hash_pos - bytes_pos - 7);
    hash_str = line.substr(hash_pos + 9);
    std::string content;
    try {
      content = read_file(dir / name);
    } catch (const std::exception&) {
      return false;
    }
    if (std::to_string(content.size()) != bytes_str) return false;
    if (hex64(fnv1a64(content)) != hash_str) return false;
  }
  return saw_file;
}

}  // namespace srd
