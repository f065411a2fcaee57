#include "ckls/path_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "ckls/errors.hpp"

namespace ckls {

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

void write_paths_csv(std::ostream& out, std::span<const Path> paths) {
    out << "path_id,t,value\n";
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const Path& p = paths[i];
        for (std::size_t k = 0; k < p.values.size(); ++k)
            out << fmt::format("{},{:.17g},{:.17g}\n", i, p.grid.time(k), p.values[k]);
    }
}

void write_samples_csv(std::ostream& out, double t, std::span<const double> values) {
    out << "path_id,t,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << fmt::format("{},{:.17g},{:.17g}\n", i, t, values[i]);
}

namespace {

static_assert(sizeof(double) == 8);

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> b;
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(b.data(), 8);
}

void put_f64(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

std::uint64_t get_u64(std::istream& in) {
    std::array<unsigned char, 8> b;
    if (!in.read(reinterpret_cast<char*>(b.data()), 8)) throw InputError("truncated binary stream");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void put_header(std::ostream& out, std::uint64_t n_paths, std::uint64_t n_points) {
    const char head[8] = {'C', 'K', 'L', 'S', static_cast<char>(kBinaryVersion), 0, 0, 0};
    out.write(head, 8);
    put_u64(out, n_paths);
    put_u64(out, n_points);
}

}  // namespace

void write_paths_binary(std::ostream& out, std::span<const Path> paths) {
    const std::size_t n_points = paths.empty() ? 0 : paths.front().values.size();
    for (const Path& p : paths)
        if (p.values.size() != n_points) throw InputError("paths differ in length");
    put_header(out, paths.size(), n_points);
    if (!paths.empty())
        for (std::size_t k = 0; k < n_points; ++k) put_f64(out, paths.front().grid.time(k));
    for (const Path& p : paths)
        for (double v : p.values) put_f64(out, v);
}

void write_samples_binary(std::ostream& out, double t, std::span<const double> values) {
    put_header(out, values.size(), 1);
    put_f64(out, t);
    for (double v : values) put_f64(out, v);
}

PathTable read_paths_binary(std::istream& in) {
    char head[8];
    if (!in.read(head, 8)) throw InputError("truncated binary header");
    if (std::memcmp(head, "CKLS", 4) != 0) throw InputError("bad magic: not a CKLS path file");
    if (static_cast<std::uint8_t>(head[4]) != kBinaryVersion)
        throw InputError("unsupported binary version");
    const std::uint64_t n_paths = get_u64(in);
    const std::uint64_t n_points = get_u64(in);
    PathTable table;
    table.times.resize(n_points);
    for (auto& t : table.times) t = get_f64(in);
    table.columns.assign(n_paths, std::vector<double>(n_points));
    for (auto& col : table.columns)
        for (auto& v : col) v = get_f64(in);
    return table;
}

}  // namespace ckls
