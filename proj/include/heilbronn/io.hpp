#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "heilbronn/bits.hpp"
#include "heilbronn/geometry.hpp"
#include "heilbronn/witnesses.hpp"

namespace heilbronn {

// Text formats, UTF-8, '#' starts a comment line:
//
//   point set   one "x y" pair per line, 17 significant digits
//   grid        "grid <K> <n>" then n lines "i j" (column, row)
//   witness     "HW1 <kind> K=<K> n=<n>" then the payload as "<bits>:<hex>"

/// Malformed or out-of-range input. line() is 1-based, 0 when not tied to a line.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

PointSet read_pointset(std::istream& in);
void write_pointset(std::ostream& out, const PointSet& points, const std::string& comment = {});
PointSet load_pointset(const std::filesystem::path& path);
void save_pointset(const PointSet& points, const std::filesystem::path& path,
                   const std::string& comment = {});

GridArrangement read_grid(std::istream& in);
void write_grid(std::ostream& out, const GridArrangement& a, const std::string& comment = {});
GridArrangement load_grid(const std::filesystem::path& path);
void save_grid(const GridArrangement& a, const std::filesystem::path& path,
               const std::string& comment = {});

struct WitnessFile {
    WitnessKind kind = WitnessKind::collinear;
    std::int64_t side = 0;
    std::size_t n = 0;
    BitString payload;
};

WitnessFile read_witness(std::istream& in);
void write_witness(std::ostream& out, const WitnessFile& w);
WitnessFile load_witness(const std::filesystem::path& path);
void save_witness(const WitnessFile& w, const std::filesystem::path& path);

}  // namespace heilbronn
