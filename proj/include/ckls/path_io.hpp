#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ckls/simulation.hpp"

namespace ckls {

// CSV with header "path_id,t,value", one row per grid point per path.
// Numbers are written with 17 significant digits.
void write_paths_csv(std::ostream& out, std::span<const Path> paths);

// Terminal samples at time t as "path_id,t,value" rows.
void write_samples_csv(std::ostream& out, double t, std::span<const double> values);

// Binary column format, all integers and floats little-endian:
//   bytes 0..3   magic "CKLS"
//   byte  4      version (1)
//   bytes 5..7   zero
//   u64          number of paths
//   u64          number of time points
//   f64[points]  time column
//   f64[points]  one value column per path, paths in index order
inline constexpr std::uint8_t kBinaryVersion = 1;

struct PathTable {
    std::vector<double> times;
    std::vector<std::vector<double>> columns;
};

void write_paths_binary(std::ostream& out, std::span<const Path> paths);
void write_samples_binary(std::ostream& out, double t, std::span<const double> values);
// Throws InputError on a bad magic, unknown version or truncated stream.
PathTable read_paths_binary(std::istream& in);

std::string format_double(double x);

}  // namespace ckls
