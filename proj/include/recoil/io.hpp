#pragma once

// CSV and JSON output. Doubles are written with 17 significant digits so
// every value re-parses bit-exactly; files are written to a temporary name
// and renamed into place.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recoil/density.hpp"
#include "recoil/oracle.hpp"

namespace recoil::io {

inline constexpr std::string_view density_header = "x,x_prime,re_rho,im_rho,abs_rho";
inline constexpr std::string_view factor_header = "dx_over_lambda,F";
inline constexpr std::string_view trajectory_header = "t,re_a,im_a,norm,pop_a,pop_b,pop_d";

/// Shortest-round-trip text for a finite double, at most 17 significant digits.
std::string format_double(double v);

/// Writes `content` to `path` atomically. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::string_view content);

std::string density_csv(const DensityGrid& dg);
std::string factor_csv(std::span<const double> dx_over_lambda, std::span<const double> f);
std::string trajectory_csv(const Trajectory& traj);

struct CsvTable {
  std::string header;
  std::vector<std::vector<double>> rows;
};

/// Parses a numeric CSV with one header line. Throws IoError.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text);

}  // namespace recoil::io
