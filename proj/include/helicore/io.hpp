#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helicore/dynamics.hpp"
#include "helicore/field.hpp"

namespace helicore {

// Snapshot layout (all little-endian):
//   bytes 0-3   magic "HFD1"
//   bytes 4-7   u32 version = 1
//   bytes 8-11  u32 n
//   bytes 12-15 u32 layout = 0 (physical real samples)
//   payload     3 n^3 f64, component-major, i3 fastest within a component
inline constexpr char kSnapshotMagic[4] = {'H', 'F', 'D', '1'};
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::uint32_t kSnapshotLayoutPhysical = 0;
inline constexpr std::size_t kSnapshotHeaderBytes = 16;
inline constexpr std::uint32_t kSnapshotMaxN = 1024;

namespace detail {

template <typename T>
T to_little_endian(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

template <typename T>
void put(std::string& buf, T v) {
  v = to_little_endian(v);
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  buf.append(b, sizeof(T));
}

template <typename T>
T get(const std::string& buf, std::size_t offset) {
  T v;
  std::memcpy(&v, buf.data() + offset, sizeof(T));
  return to_little_endian(v);
}

/// Writes to "<path>.tmp" and renames over path.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

inline std::string encode_snapshot(const PhysicalVectorField& field) {
  const std::size_t count = field.grid.size();
  std::string buf;
  buf.reserve(kSnapshotHeaderBytes + 3 * count * sizeof(double));
  buf.append(kSnapshotMagic, 4);
  detail::put<std::uint32_t>(buf, kSnapshotVersion);
  detail::put<std::uint32_t>(buf, static_cast<std::uint32_t>(field.grid.n()));
  detail::put<std::uint32_t>(buf, kSnapshotLayoutPhysical);
  for (int j = 0; j < 3; ++j)
    for (double v : field.samples[j]) detail::put<double>(buf, v);
  return buf;
}

inline PhysicalVectorField decode_snapshot(const std::string& buf) {
  if (buf.size() < kSnapshotHeaderBytes) {
    throw FormatError("snapshot: truncated header (" + std::to_string(buf.size()) + " bytes)");
  }
  if (std::memcmp(buf.data(), kSnapshotMagic, 4) != 0) {
    throw FormatError("snapshot: bad magic (expected HFD1)");
  }
  const auto version = detail::get<std::uint32_t>(buf, 4);
  if (version != kSnapshotVersion) {
    throw FormatError("snapshot: unsupported version " + std::to_string(version));
  }
  const auto n = detail::get<std::uint32_t>(buf, 8);
  if (n < 8 || n % 2 != 0 || n > kSnapshotMaxN) {
    throw FormatError("snapshot: invalid n " + std::to_string(n));
  }
  const auto layout = detail::get<std::uint32_t>(buf, 12);
  if (layout != kSnapshotLayoutPhysical) {
    throw FormatError("snapshot: unsupported layout " + std::to_string(layout));
  }
  const std::size_t count = static_cast<std::size_t>(n) * n * n;
  const std::size_t expected = kSnapshotHeaderBytes + 3 * count * sizeof(double);
  if (buf.size() != expected) {
    throw FormatError("snapshot: payload size " + std::to_string(buf.size() - kSnapshotHeaderBytes) +
                      " bytes, expected " + std::to_string(expected - kSnapshotHeaderBytes));
  }
  PhysicalVectorField field{GridSpec(static_cast<int>(n))};
  std::size_t offset = kSnapshotHeaderBytes;
  for (int j = 0; j < 3; ++j)
    for (auto& v : field.samples[j]) {
      v = detail::get<double>(buf, offset);
      offset += sizeof(double);
    }
  return field;
}

inline void write_snapshot(const std::filesystem::path& path, const PhysicalVectorField& field) {
  detail::write_file_atomic(path, encode_snapshot(field));
}

inline void write_snapshot(const std::filesystem::path& path, const SpectralVectorField& field) {
  write_snapshot(path, to_physical(field));
}

inline PhysicalVectorField read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("snapshot: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return decode_snapshot(ss.str());
}

inline constexpr const char* kDiagnosticsHeader =
    "step,t,energy,helicity,stationarity_residual,max_divergence";

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_diagnostics_csv(const DiagnosticsSeries& series) {
  std::string out = kDiagnosticsHeader;
  out += '\n';
  for (const auto& r : series) {
    out += std::to_string(r.step) + ',' + format_real(r.t) + ',' + format_real(r.energy) + ',' +
           format_real(r.helicity) + ',' + format_real(r.stationarity_residual) + ',' +
           format_real(r.max_divergence) + '\n';
  }
  return out;
}

inline void write_diagnostics_csv(const std::filesystem::path& path,
                                  const DiagnosticsSeries& series) {
  detail::write_file_atomic(path, format_diagnostics_csv(series));
}

inline DiagnosticsSeries parse_diagnostics_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kDiagnosticsHeader) {
    throw FormatError("diagnostics csv: missing or wrong header");
  }
  DiagnosticsSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<std::string, 6> cells;
    std::istringstream row(line);
    for (auto& c : cells) {
      if (!std::getline(row, c, ',')) throw FormatError("diagnostics csv: short row: " + line);
    }
    auto num = [&](const std::string& s) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (end == s.c_str() || *end != '\0') throw FormatError("diagnostics csv: bad number " + s);
      return v;
    };
    DiagnosticsRow r;
    r.step = static_cast<int>(num(cells[0]));
    r.t = num(cells[1]);
    r.energy = num(cells[2]);
    r.helicity = num(cells[3]);
    r.stationarity_residual = num(cells[4]);
    r.max_divergence = num(cells[5]);
    series.push_back(r);
  }
  return series;
}

inline DiagnosticsSeries read_diagnostics_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("diagnostics csv: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_diagnostics_csv(ss.str());
}

}  // namespace helicore
