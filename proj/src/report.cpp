#include "hphs/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hphs {

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s(buf);
  if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string steps_csv(const RunResult& result) {
  std::string out(kStepsHeader);
  out += '\n';
  for (const StepRecord& r : result.log) {
    out += std::to_string(r.step) + ',' + format_fixed(r.sim_time) + ',' + format_fixed(r.pose.x) + ',' +
           format_fixed(r.pose.y) + ',' + format_fixed(r.traveled) + ',' + format_fixed(r.explored_m2) + ',' +
           format_fixed(r.completion) + ',' + std::to_string(r.frontiers) + ',' + std::to_string(r.subregions) + ',';
    if (r.target) out += format_fixed(r.target->x) + ',' + format_fixed(r.target->y);
    else out += ',';
    out += '\n';
  }
  return out;
}

std::string summary_row(std::string_view map, Planner planner, std::uint64_t seed, std::string_view status,
                        const MetricsRow& m) {
  return std::string(map) + ',' + std::string(to_string(planner)) + ',' + std::to_string(seed) + ',' +
         std::string(status) + ',' + format_fixed(m.distance_m) + ',' + format_fixed(m.time_s) + ',' +
         format_fixed(m.rate_m2_per_m) + ',' + format_fixed(m.completion) + '\n';
}

std::string summary_csv(std::string_view map, const RunResult& result, std::uint64_t seed) {
  return std::string(kSummaryHeader) + '\n' +
         summary_row(map, result.planner, seed, to_string(result.status), metrics(result));
}

std::string gains_csv(const RunResult& result) {
  std::string out(kGainsHeader);
  out += '\n';
  for (const GainLogRow& row : result.gain_log) {
    const GainBreakdown& g = row.gain;
    out += std::to_string(row.step) + ',' + std::to_string(g.frontier_id) + ',' + format_fixed(g.g_distance) + ',' +
           format_fixed(g.g_orientation) + ',' + format_fixed(g.g_information) + ',' + format_fixed(g.n_distance) +
           ',' + format_fixed(g.n_orientation) + ',' + format_fixed(g.n_information) + ',' + format_fixed(g.total) +
           '\n';
  }
  return out;
}

namespace {

std::string px(double v) { return format_fixed(v, 2); }

// Horizontal runs of cells in `state`, as one path of unit rectangles.
std::string cell_runs(const OccupancyGrid& g, CellState state, double scale) {
  std::string d;
  for (int y = 0; y < g.height(); ++y) {
    int x = 0;
    while (x < g.width()) {
      if (g.at(Cell{x, y}) != state) {
        ++x;
        continue;
      }
      const int start = x;
      while (x < g.width() && g.at(Cell{x, y}) == state) ++x;
      d += "M" + px(start * scale) + " " + px(y * scale) + "h" + px((x - start) * scale) + "v" + px(scale) + "h" +
           px(-(x - start) * scale) + "z";
    }
  }
  return d;
}

}  // namespace

std::string render_svg(const RunResult& result) {
  const OccupancyGrid& g = result.known;
  const double scale = std::max(1.0, 800.0 / std::max(g.width(), g.height()));
  const double per_m = scale / g.resolution();
  const Vec2 o = g.origin();
  auto sx = [&](double x) { return px((x - o.x) * per_m); };
  auto sy = [&](double y) { return px((y - o.y) * per_m); };
  const double w = g.width() * scale;
  const double h = g.height() * scale;

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(w) << "\" height=\"" << px(h)
    << "\" viewBox=\"0 0 " << px(w) << " " << px(h) << "\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"" << px(w) << "\" height=\"" << px(h) << "\" fill=\"#9e9e9e\"/>\n";
  const std::string free_cells = cell_runs(g, CellState::Free, scale);
  if (!free_cells.empty()) s << "<path fill=\"#ffffff\" d=\"" << free_cells << "\"/>\n";
  const std::string occupied = cell_runs(g, CellState::Occupied, scale);
  if (!occupied.empty()) s << "<path fill=\"#202020\" d=\"" << occupied << "\"/>\n";

  if (result.subregions) {
    const SubregionGrid& sr = *result.subregions;
    s << "<g stroke=\"#2e7d32\" stroke-width=\"1\" fill=\"none\">\n";
    for (const int x : sr.col_edges) {
      s << "<line x1=\"" << px(x * scale) << "\" y1=\"" << px(sr.bounds.y0 * scale) << "\" x2=\"" << px(x * scale)
        << "\" y2=\"" << px(sr.bounds.y1 * scale) << "\"/>\n";
    }
    for (const int y : sr.row_edges) {
      s << "<line x1=\"" << px(sr.bounds.x0 * scale) << "\" y1=\"" << px(y * scale) << "\" x2=\""
        << px(sr.bounds.x1 * scale) << "\" y2=\"" << px(y * scale) << "\"/>\n";
    }
    s << "</g>\n";
  }

  for (const FrontierPoint& f : result.frontiers) {
    s << "<circle cx=\"" << sx(f.position.x) << "\" cy=\"" << sy(f.position.y) << "\" r=\"" << px(scale * 1.5)
      << "\" fill=\"" << (f.source == FrontierSource::Scan ? "#8e24aa" : "#43a047") << "\"/>\n";
  }

  if (!result.trajectory.empty()) {
    s << "<polyline fill=\"none\" stroke=\"#1565c0\" stroke-width=\"" << px(std::max(1.0, scale * 0.6))
      << "\" points=\"";
    for (std::size_t i = 0; i < result.trajectory.size(); ++i) {
      if (i) s << ' ';
      s << sx(result.trajectory[i].x) << ',' << sy(result.trajectory[i].y);
    }
    s << "\"/>\n";
    const Pose& a = result.trajectory.front();
    const Pose& b = result.trajectory.back();
    s << "<circle cx=\"" << sx(a.x) << "\" cy=\"" << sy(a.y) << "\" r=\"" << px(scale * 2.5)
      << "\" fill=\"#e53935\"/>\n";
    s << "<circle cx=\"" << sx(b.x) << "\" cy=\"" << sy(b.y) << "\" r=\"" << px(scale * 2.5)
      << "\" fill=\"#6a1b9a\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

namespace {

using nlohmann::json;

char state_char(CellState s) {
  switch (s) {
    case CellState::Free:
      return '.';
    case CellState::Occupied:
      return '#';
    case CellState::Unknown:
      break;
  }
  return '?';
}

CellState char_state(char c) {
  switch (c) {
    case '.':
      return CellState::Free;
    case '#':
      return CellState::Occupied;
    case '?':
      return CellState::Unknown;
    default:
      throw std::runtime_error(std::string("run records: bad cell character '") + c + "'");
  }
}

json pose_json(const Pose& p) { return json{{"x", p.x}, {"y", p.y}, {"heading", p.heading}}; }

Pose json_pose(const json& j) {
  Pose p;
  p.x = j.at("x").get<double>();
  p.y = j.at("y").get<double>();
  p.heading = j.at("heading").get<double>();
  return p;
}

}  // namespace

std::string write_run_records(const RunResult& r) {
  std::string out;
  auto line = [&](const json& j) {
    out += j.dump();
    out += '\n';
  };
  const OccupancyGrid& g = r.known;
  line(json{{"type", "run"},
            {"planner", to_string(r.planner)},
            {"status", to_string(r.status)},
            {"steps", r.steps},
            {"traveled", r.traveled},
            {"sim_time", r.sim_time},
            {"width", g.width()},
            {"height", g.height()},
            {"resolution", g.resolution()},
            {"origin", {g.origin().x, g.origin().y}},
            {"reachable_free_cells", r.reachable_free_cells},
            {"explored_reachable_free_cells", r.explored_reachable_free_cells},
            {"safety_violations", r.safety_violations}});
  for (int y = 0; y < g.height(); ++y) {
    std::string row(static_cast<std::size_t>(g.width()), '?');
    for (int x = 0; x < g.width(); ++x) row[static_cast<std::size_t>(x)] = state_char(g.at(Cell{x, y}));
    line(json{{"type", "known"}, {"row", y}, {"cells", row}});
  }
  for (const Pose& p : r.trajectory) {
    json j = pose_json(p);
    j["type"] = "pose";
    line(j);
  }
  for (const FrontierPoint& f : r.frontiers) {
    line(json{{"type", "frontier"},
              {"id", f.id},
              {"x", f.position.x},
              {"y", f.position.y},
              {"source", f.source == FrontierSource::Scan ? "scan" : "local"},
              {"created_step", f.created_step}});
  }
  if (r.subregions) {
    const SubregionGrid& s = *r.subregions;
    json ids = json::array();
    for (const Subregion& sub : s.subregions) ids.push_back(sub.frontier_ids);
    line(json{{"type", "subregions"},
              {"bounds", {s.bounds.x0, s.bounds.y0, s.bounds.x1, s.bounds.y1}},
              {"n_w", s.n_w},
              {"n_h", s.n_h},
              {"frontier_ids", ids}});
  }
  for (const StepRecord& st : r.log) {
    json j{{"type", "step"},       {"step", st.step},           {"sim_time", st.sim_time},
           {"pose", pose_json(st.pose)}, {"traveled", st.traveled}, {"explored_m2", st.explored_m2},
           {"completion", st.completion}, {"frontiers", st.frontiers}, {"subregions", st.subregions}};
    if (st.target) j["target"] = {st.target->x, st.target->y};
    line(j);
  }
  for (const GainLogRow& gr : r.gain_log) {
    const GainBreakdown& b = gr.gain;
    line(json{{"type", "gain"},
              {"step", gr.step},
              {"frontier_id", b.frontier_id},
              {"raw", {b.g_distance, b.g_orientation, b.g_information}},
              {"normalized", {b.n_distance, b.n_orientation, b.n_information}},
              {"total", b.total}});
  }
  return out;
}

RunResult read_run_records(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::optional<RunResult> result;
  std::optional<json> pending_subregions;
  while (std::getline(in, raw)) {
    if (raw.empty()) continue;
    const json j = json::parse(raw);
    const std::string type = j.at("type").get<std::string>();
    if (type == "run") {
      const auto origin = j.at("origin");
      RunResult r;
      r.known = OccupancyGrid(j.at("width").get<int>(), j.at("height").get<int>(), j.at("resolution").get<double>(),
                              {origin.at(0).get<double>(), origin.at(1).get<double>()});
      r.planner = parse_planner(j.at("planner").get<std::string>());
      r.status = j.at("status").get<std::string>() == "Complete" ? RunStatus::Complete : RunStatus::Budget;
      r.steps = j.at("steps").get<int>();
      r.traveled = j.at("traveled").get<double>();
      r.sim_time = j.at("sim_time").get<double>();
      r.reachable_free_cells = j.at("reachable_free_cells").get<std::size_t>();
      r.explored_reachable_free_cells = j.at("explored_reachable_free_cells").get<std::size_t>();
      r.safety_violations = j.at("safety_violations").get<std::size_t>();
      result = std::move(r);
      continue;
    }
    if (!result) throw std::runtime_error("run records: first record must be of type 'run'");
    RunResult& r = *result;
    if (type == "known") {
      const int y = j.at("row").get<int>();
      const std::string cells = j.at("cells").get<std::string>();
      if (y < 0 || y >= r.known.height() || static_cast<int>(cells.size()) != r.known.width()) {
        throw std::runtime_error("run records: malformed known row");
      }
      for (int x = 0; x < r.known.width(); ++x) r.known.set(Cell{x, y}, char_state(cells[static_cast<std::size_t>(x)]));
    } else if (type == "pose") {
      r.trajectory.push_back(json_pose(j));
    } else if (type == "frontier") {
      FrontierPoint f;
      f.id = j.at("id").get<int>();
      f.position = {j.at("x").get<double>(), j.at("y").get<double>()};
      f.source = j.at("source").get<std::string>() == "scan" ? FrontierSource::Scan : FrontierSource::LocalMap;
      f.created_step = j.at("created_step").get<int>();
      r.frontiers.push_back(f);
    } else if (type == "subregions") {
      pending_subregions = j;
    } else if (type == "step") {
      StepRecord st;
      st.step = j.at("step").get<int>();
      st.sim_time = j.at("sim_time").get<double>();
      st.pose = json_pose(j.at("pose"));
      st.traveled = j.at("traveled").get<double>();
      st.explored_m2 = j.at("explored_m2").get<double>();
      st.completion = j.at("completion").get<double>();
      st.frontiers = j.at("frontiers").get<std::size_t>();
      st.subregions = j.at("subregions").get<std::size_t>();
      if (j.contains("target")) st.target = Vec2{j["target"].at(0).get<double>(), j["target"].at(1).get<double>()};
      r.log.push_back(st);
    } else if (type == "gain") {
      GainLogRow row;
      row.step = j.at("step").get<int>();
      GainBreakdown& b = row.gain;
      b.frontier_id = j.at("frontier_id").get<int>();
      const auto& rw = j.at("raw");
      const auto& nm = j.at("normalized");
      b.g_distance = rw.at(0).get<double>();
      b.g_orientation = rw.at(1).get<double>();
      b.g_information = rw.at(2).get<double>();
      b.n_distance = nm.at(0).get<double>();
      b.n_orientation = nm.at(1).get<double>();
      b.n_information = nm.at(2).get<double>();
      b.total = j.at("total").get<double>();
      r.gain_log.push_back(row);
    } else {
      throw std::runtime_error("run records: unknown record type '" + type + "'");
    }
  }
  if (!result) throw std::runtime_error("run records: no 'run' record");
  if (pending_subregions) {
    // Rebuild geometry from bounds, then restore the recorded assignment.
    const json& j = *pending_subregions;
    const auto& b = j.at("bounds");
    const CellRect bounds{b.at(0).get<int>(), b.at(1).get<int>(), b.at(2).get<int>(), b.at(3).get<int>()};
    SubregionGrid grid = segment(result->known, bounds, j.at("n_w").get<int>(), j.at("n_h").get<int>(), {});
    const auto& ids = j.at("frontier_ids");
    for (std::size_t i = 0; i < grid.subregions.size() && i < ids.size(); ++i) {
      grid.subregions[i].frontier_ids = ids.at(i).get<std::vector<int>>();
    }
    result->subregions = std::move(grid);
  }
  return std::move(*result);
}

}  // namespace hphs
