#include "hphs/map_io.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace hphs {

MapParseError::MapParseError(int line, int column, const std::string& what)
    : std::runtime_error("map parse error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

LoadedMap load_map(std::string_view text, double resolution) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  int first = 0;
  if (!lines.empty() && lines.front().starts_with(';')) first = 1;
  if (static_cast<int>(lines.size()) <= first) throw MapParseError(first + 1, 1, "empty map");

  const int height = static_cast<int>(lines.size()) - first;
  const int width = static_cast<int>(lines[first].size());
  if (width == 0) throw MapParseError(first + 1, 1, "empty line");

  OccupancyGrid grid(width, height, resolution, {}, CellState::Free);
  std::optional<Cell> start;
  for (int y = 0; y < height; ++y) {
    const std::string_view line = lines[static_cast<std::size_t>(first + y)];
    const int line_no = first + y + 1;
    if (static_cast<int>(line.size()) != width) {
      throw MapParseError(line_no, static_cast<int>(std::min<std::size_t>(line.size(), width)) + 1,
                          "expected " + std::to_string(width) + " columns, found " + std::to_string(line.size()));
    }
    for (int x = 0; x < width; ++x) {
      switch (line[static_cast<std::size_t>(x)]) {
        case '#':
          grid.set({x, y}, CellState::Occupied);
          break;
        case '.':
          break;
        case 'S':
          if (start) throw MapParseError(line_no, x + 1, "multiple start cells");
          start = Cell{x, y};
          break;
        default:
          throw MapParseError(line_no, x + 1,
                              std::string("illegal character '") + line[static_cast<std::size_t>(x)] + "'");
      }
    }
  }
  if (!start) throw MapParseError(first + 1, 1, "no start cell 'S'");
  const Vec2 c = grid.cell_center(*start);
  return LoadedMap{std::move(grid), Pose(c.x, c.y, 0.0)};
}

LoadedMap load_map_file(const std::filesystem::path& path, double resolution) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_map(buf.str(), resolution);
}

}  // namespace hphs
