// File formats: heatmap CSV and "HMAP" binary, SimTrace CSV, and an
// atomic write helper (temp file + rename).
#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdl/heatmap.hpp"
#include "hdl/toy_sim.hpp"

namespace hdl {

/// Shortest round-trippable decimal form of a double.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // trim to the shortest representation that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char t[32];
    std::snprintf(t, sizeof(t), "%.*g", prec, v);
    if (std::strtod(t, nullptr) == v) return t;
  }
  return buf;
}

/// Writes `content` to `path` atomically (temp file in the same
/// directory, then rename).
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline std::string heatmap_to_csv(const Heatmap& h) {
  std::ostringstream out;
  for (int i = 0; i < h.rows(); ++i) {
    for (int j = 0; j < h.cols(); ++j) {
      if (j) out << ',';
      out << format_double(h.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

inline void save_heatmap_csv(const Heatmap& h, const std::filesystem::path& path) {
  write_file_atomic(path, heatmap_to_csv(h));
}

inline Heatmap load_heatmap_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open heatmap CSV: " + path.string());
  std::vector<double> vals;
  int rows = 0, cols = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    int c = 0;
    while (std::getline(ls, cell, ',')) {
      vals.push_back(std::stod(cell));
      ++c;
    }
    if (cols < 0) cols = c;
    else if (c != cols) throw std::runtime_error("heatmap CSV: ragged rows");
    ++rows;
  }
  if (rows == 0) throw std::runtime_error("heatmap CSV: empty file");
  return Heatmap(rows, cols, std::move(vals));
}

// "HMAP" magic, rows and cols as little-endian uint32, then rows*cols
// little-endian IEEE-754 doubles, row-major.
inline void save_heatmap_binary(const Heatmap& h, const std::filesystem::path& path) {
  std::string buf;
  buf.reserve(12 + h.values().size() * 8);
  buf.append("HMAP", 4);
  auto put_u32 = [&](uint32_t v) {
    for (int b = 0; b < 4; ++b) buf.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
  };
  put_u32(static_cast<uint32_t>(h.rows()));
  put_u32(static_cast<uint32_t>(h.cols()));
  for (double d : h.values()) {
    uint64_t bits;
    std::memcpy(&bits, &d, 8);
    for (int b = 0; b < 8; ++b) buf.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
  }
  write_file_atomic(path, buf);
}

inline Heatmap load_heatmap_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open heatmap file: " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "HMAP", 4) != 0)
    throw std::runtime_error("heatmap binary: bad magic");
  auto get_u32 = [&]() {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4))
      throw std::runtime_error("heatmap binary: truncated header");
    return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
           (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
  };
  const uint32_t rows = get_u32(), cols = get_u32();
  std::vector<double> vals(static_cast<size_t>(rows) * cols);
  for (double& d : vals) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8))
      throw std::runtime_error("heatmap binary: truncated payload");
    uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<uint64_t>(b[k]) << (8 * k);
    std::memcpy(&d, &bits, 8);
  }
  return Heatmap(static_cast<int>(rows), static_cast<int>(cols), std::move(vals));
}

/// One row per recorded iteration.
inline std::string trace_to_csv(const SimTrace& trace) {
  std::ostringstream out;
  out << "iter,jx_soft,jy_soft,jx_argmax,jy_argmax,loss,a_s2,grad_max\n";
  for (const SimStep& s : trace.steps) {
    out << s.iter << ',' << format_double(s.soft.x) << ',' << format_double(s.soft.y) << ','
        << format_double(s.arg.x) << ',' << format_double(s.arg.y) << ','
        << format_double(s.loss) << ',' << format_double(s.a_s2) << ','
        << format_double(s.grad_max) << '\n';
  }
  return out.str();
}

}  // namespace hdl
