#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hphs/grid.hpp"

namespace hphs {

/// Raised for malformed map text. `line` and `column` are 1-based and refer
/// to the original text, comment line included.
class MapParseError : public std::runtime_error {
 public:
  MapParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct LoadedMap {
  OccupancyGrid truth;
  Pose start;
};

inline constexpr double kDefaultResolution = 0.1;

// Map text: '#' occupied, '.' free, 'S' free start cell (exactly one).
// An optional first line starting with ';' is a comment. Text row i maps to
// grid row y = i, so world y grows downward in the file.
LoadedMap load_map(std::string_view text, double resolution = kDefaultResolution);
LoadedMap load_map_file(const std::filesystem::path& path, double resolution = kDefaultResolution);

}  // namespace hphs
