#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "hphs/explorer.hpp"

namespace hphs {

/// Fixed-point text with `digits` decimals; locale independent.
std::string format_fixed(double v, int digits = 6);
/// Up to 10 significant digits, shortest form.
std::string format_number(double v);

inline constexpr std::string_view kStepsHeader =
    "step,sim_time_s,x_m,y_m,traveled_m,explored_m2,completion,frontiers,subregions,target_x,target_y";
inline constexpr std::string_view kSummaryHeader =
    "map,planner,seed,status,distance_m,time_s,rate_m2_per_m,completion";
inline constexpr std::string_view kGainsHeader =
    "step,frontier_id,g_distance,g_orientation,g_information,n_distance,n_orientation,n_information,total";

std::string steps_csv(const RunResult& result);
std::string summary_csv(std::string_view map, const RunResult& result, std::uint64_t seed);
std::string summary_row(std::string_view map, Planner planner, std::uint64_t seed, std::string_view status,
                        const MetricsRow& m);
std::string gains_csv(const RunResult& result);

// Known cells, subregion grid, active frontiers and the trajectory polyline
// with start/end markers. Map cells are drawn as two <path> elements, so the
// only <rect> is the background.
std::string render_svg(const RunResult& result);

/// RunResult as JSON lines; read_run_records inverts it exactly.
std::string write_run_records(const RunResult& result);
RunResult read_run_records(std::string_view text);

}  // namespace hphs
