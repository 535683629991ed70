#include "recoil/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "recoil/errors.hpp"

namespace recoil::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) throw IoError("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

void write_atomic(const fs::path& path, std::string_view content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

std::string density_csv(const DensityGrid& dg) {
  std::string s(density_header);
  s += '\n';
  const std::size_t n = dg.size();
  s.reserve(s.size() + n * n * 80);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string xi = format_double(dg.grid.x(i));
    for (std::size_t j = 0; j < n; ++j) {
      const cplx v = dg(i, j);
      s += xi;
      s += ',';
      s += format_double(dg.grid.x(j));
      s += ',';
      s += format_double(v.real());
      s += ',';
      s += format_double(v.imag());
      s += ',';
      s += format_double(std::abs(v));
      s += '\n';
    }
  }
  return s;
}

std::string factor_csv(std::span<const double> dx_over_lambda, std::span<const double> f) {
  std::string s(factor_header);
  s += '\n';
  for (std::size_t i = 0; i < dx_over_lambda.size(); ++i) {
    s += format_double(dx_over_lambda[i]);
    s += ',';
    s += format_double(f[i]);
    s += '\n';
  }
  return s;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string s(trajectory_header);
  s += '\n';
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& st = traj.samples[i];
    const auto& pop = traj.populations[i];
    for (double v : {st.t, st.a_val.real(), st.a_val.imag(), pop.total(), pop.a, pop.b, pop.d}) {
      s += format_double(v);
      s += ',';
    }
    s.back() = '\n';
  }
  return s;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t pos = text.find('\n');
  if (pos == std::string_view::npos) throw IoError("csv: missing header line");
  table.header = std::string(text.substr(0, pos));
  ++pos;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* stop = line.data() + line.size();
    while (true) {
      double v = 0.0;
      const auto res = std::from_chars(p, stop, v);
      if (res.ec != std::errc{}) throw IoError("csv: bad number in line: " + std::string(line));
      row.push_back(v);
      if (res.ptr == stop) break;
      if (*res.ptr != ',') throw IoError("csv: expected ',' in line: " + std::string(line));
      p = res.ptr + 1;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace recoil::io
