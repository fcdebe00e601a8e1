#pragma once

#include "gabm/world.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gabm {

/// RFC 4180 quoting: fields containing separators, quotes or line breaks are quoted.
std::string csv_escape(std::string_view field);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Throws IoError if the column is absent.
    std::size_t column(std::string_view name) const;
};

/// Throws IoError on unbalanced quotes or ragged rows.
CsvTable parse_csv(std::string_view text);

inline constexpr std::string_view kMetricsHeader = "day,new_cases,mobility_count,infected,susceptible,recovered,total_contacts";

std::string metrics_csv(const std::vector<DayMetrics>& metrics);
std::string decisions_csv(const std::vector<DecisionLogRow>& rows);

std::vector<DayMetrics> read_metrics_csv(const std::filesystem::path& path);
std::vector<DecisionLogRow> read_decisions_csv(const std::filesystem::path& path);

} // namespace gabm
