#pragma once

#include <string>
#include <string_view>

#include "ceed/pipeline.hpp"

namespace ceed::reports {

// "%.6f", with negative zero printed as 0.000000.
std::string fixed6(double v);
std::string json_string(std::string_view s);

std::string bursty_tsv(const ReportBundle& bundle);
std::string events_json(const ReportBundle& bundle);
std::string cross_grid_csv(const ReportBundle& bundle);
std::string cross_pairs_csv(const ReportBundle& bundle);
std::string cross_heatmap_tsv(const ReportBundle& bundle);
std::string topics_json(const ReportBundle& bundle);
std::string topic_timeline_csv(const ReportBundle& bundle);
std::string topic_timeline_long_csv(const ReportBundle& bundle);
std::string manifest_json(const ReportBundle& bundle);

}  // namespace ceed::reports
