#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sg/errors.hpp"
#include "sg/grid.hpp"

namespace sg::io {

/// Shortest round-trip text form of a double.
inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline std::uint64_t to_little_endian(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
}

inline std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, mode);
    if (!f) throw ConfigError("cannot open '" + path.string() + "' for writing");
    return f;
}

}  // namespace detail

/// Binary snapshot:
///   SG <nx> <ny> <hx> <hy> <x0> <y0> <t>\n
/// followed by the field values row-major (x along rows) as little-endian IEEE-754 doubles.
/// nx, ny are cell counts and (x0, y0) is the domain corner; the payload holds nx*ny values
/// on a cell-centered grid and (nx+1)*(ny+1) on a regular grid.
inline void write_snapshot(const std::filesystem::path& path, const GridFunction& u, double t) {
    const Grid& g = u.grid();
    auto f = detail::open_out(path, std::ios::out | std::ios::binary);
    const std::string header = "SG " + std::to_string(g.nx) + " " + std::to_string(g.ny) + " " + fmt(g.hx) + " " +
                               fmt(g.hy) + " " + fmt(g.x0) + " " + fmt(g.y0) + " " + fmt(t) + "\n";
    f.write(header.data(), static_cast<std::streamsize>(header.size()));
    for (double v : u.values()) {
        const std::uint64_t bits = detail::to_little_endian(std::bit_cast<std::uint64_t>(v));
        f.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
    if (!f) throw ConfigError("failed writing snapshot '" + path.string() + "'");
}

/// Plain-text variant for small grids: a "# SG ..." header line, then one CSV row per x index.
inline void write_snapshot_csv(const std::filesystem::path& path, const GridFunction& u, double t) {
    const Grid& g = u.grid();
    auto f = detail::open_out(path);
    f << "# SG " << g.nx << ' ' << g.ny << ' ' << fmt(g.hx) << ' ' << fmt(g.hy) << ' ' << fmt(g.x0) << ' '
      << fmt(g.y0) << ' ' << fmt(t) << '\n';
    for (int j = 0; j < u.rows(); ++j) {
        for (int k = 0; k < u.cols(); ++k) f << (k ? "," : "") << fmt(u(j, k));
        f << '\n';
    }
}

struct Snapshot {
    int nx = 0, ny = 0;
    double hx = 0, hy = 0, x0 = 0, y0 = 0, t = 0;
    Layout layout = Layout::CellCentered;
    int rows = 0, cols = 0;
    std::vector<double> values;
};

inline Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open snapshot '" + path.string() + "'");
    std::string header;
    std::getline(f, header);
    std::istringstream hs(header);
    std::string magic;
    Snapshot s;
    if (!(hs >> magic >> s.nx >> s.ny >> s.hx >> s.hy >> s.x0 >> s.y0 >> s.t) || magic != "SG" || s.nx <= 0 ||
        s.ny <= 0)
        throw ConfigError("malformed snapshot header in '" + path.string() + "'");
    std::vector<char> payload((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (payload.size() % 8 != 0) throw ConfigError("snapshot payload is not a whole number of doubles");
    const std::size_t n = payload.size() / 8;
    if (n == static_cast<std::size_t>(s.nx) * s.ny) {
        s.layout = Layout::CellCentered;
        s.rows = s.nx;
        s.cols = s.ny;
    } else if (n == static_cast<std::size_t>(s.nx + 1) * (s.ny + 1)) {
        s.layout = Layout::Regular;
        s.rows = s.nx + 1;
        s.cols = s.ny + 1;
    } else {
        throw ConfigError("snapshot payload size does not match its header");
    }
    s.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t bits;
        std::memcpy(&bits, payload.data() + 8 * i, 8);
        s.values[i] = std::bit_cast<double>(detail::to_little_endian(bits));
    }
    return s;
}

/// energy.csv: step,time,energy_native,energy_sav,deviation
class EnergyCsv {
public:
    explicit EnergyCsv(const std::filesystem::path& path) : f_(detail::open_out(path)) {
        f_ << "step,time,energy_native,energy_sav,deviation\n";
    }
    void write(int step, double t, double native, double sav, double deviation) {
        f_ << step << ',' << fmt(t) << ',' << fmt(native) << ',' << fmt(sav) << ',' << fmt(deviation) << '\n';
    }
    void flush() { f_.flush(); }

private:
    std::ofstream f_;
};

}  // namespace sg::io
