#include "gabm/csv.hpp"

#include "gabm/checkpoint.hpp"
#include "gabm/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <charconv>

namespace gabm {

std::string csv_escape(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::size_t CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw IoError(fmt::format("CSV column '{}' not found", name));
}

CsvTable parse_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };
    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                quoted = false;
            } else {
                field += c;
            }
            ++i;
            continue;
        }
        if (c == '"' && !field_started) {
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            end_record();
            ++i;
        } else if (c == '\n') {
            end_record();
        } else {
            field += c;
            field_started = true;
        }
        ++i;
    }
    if (quoted) {
        throw IoError("CSV ends inside a quoted field");
    }
    if (field_started || !record.empty()) {
        end_record();
    }

    CsvTable table;
    if (records.empty()) {
        return table;
    }
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw IoError(fmt::format("CSV record {} has {} fields, header has {}", r, records[r].size(), table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

std::string metrics_csv(const std::vector<DayMetrics>& metrics)
{
    std::string out(kMetricsHeader);
    out += '\n';
    for (const auto& m : metrics) {
        out += fmt::format("{},{},{},{},{},{},{}\n", m.day, m.new_cases, m.mobility_count, m.infected_count, m.susceptible_count,
                           m.recovered_count, m.total_contacts);
    }
    return out;
}

std::string decisions_csv(const std::vector<DecisionLogRow>& rows)
{
    std::string out = "day,agent_id,age,gender";
    for (std::size_t f = 0; f < kTraitFactorCount; ++f) {
        out += fmt::format(",{}", factor_key(static_cast<TraitFactor>(f)));
    }
    out += ",health_state,day_infected,prevalence_pct,stay_home,reasoning\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{}", r.day, r.agent_id, r.age, to_string(r.gender));
        for (auto t : r.traits) {
            out += t == Polarity::Positive ? ",1" : ",0";
        }
        out += fmt::format(",{},{},{},{},{}\n", to_string(r.health_state), r.day_infected ? std::to_string(*r.day_infected) : "",
                           r.prevalence.str(), r.stay_home ? 1 : 0, csv_escape(r.reasoning));
    }
    return out;
}

namespace {

int to_int(const std::string& s, std::string_view what)
{
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw IoError(fmt::format("{}: '{}' is not an integer", what, s));
    }
    return v;
}

// "4.4" -> 44 tenths
long to_tenths(const std::string& s, std::string_view what)
{
    const auto dot = s.find('.');
    if (dot == std::string::npos || dot + 2 != s.size()) {
        throw IoError(fmt::format("{}: '{}' is not a one-decimal percentage", what, s));
    }
    return static_cast<long>(to_int(s.substr(0, dot), what)) * 10 + to_int(s.substr(dot + 1), what);
}

} // namespace

std::vector<DayMetrics> read_metrics_csv(const std::filesystem::path& path)
{
    const auto table = parse_csv(read_file(path));
    const auto where = path.string();
    if (fmt::format("{}", fmt::join(table.header, ",")) != kMetricsHeader) {
        throw IoError(fmt::format("{}: unexpected header", where));
    }
    std::vector<DayMetrics> out;
    for (const auto& row : table.rows) {
        DayMetrics m;
        m.day = to_int(row[0], where);
        m.new_cases = to_int(row[1], where);
        m.mobility_count = to_int(row[2], where);
        m.infected_count = to_int(row[3], where);
        m.susceptible_count = to_int(row[4], where);
        m.recovered_count = to_int(row[5], where);
        m.total_contacts = to_int(row[6], where);
        out.push_back(m);
    }
    return out;
}

std::vector<DecisionLogRow> read_decisions_csv(const std::filesystem::path& path)
{
    const auto table = parse_csv(read_file(path));
    const auto where = path.string();
    const auto c_day = table.column("day");
    const auto c_id = table.column("agent_id");
    const auto c_age = table.column("age");
    const auto c_gender = table.column("gender");
    std::array<std::size_t, kTraitFactorCount> c_traits{};
    for (std::size_t f = 0; f < kTraitFactorCount; ++f) {
        c_traits[f] = table.column(factor_key(static_cast<TraitFactor>(f)));
    }
    const auto c_state = table.column("health_state");
    const auto c_di = table.column("day_infected");
    const auto c_prev = table.column("prevalence_pct");
    const auto c_stay = table.column("stay_home");
    const auto c_reason = table.column("reasoning");

    std::vector<DecisionLogRow> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        DecisionLogRow r;
        r.day = to_int(row[c_day], where);
        r.agent_id = to_int(row[c_id], where);
        r.age = to_int(row[c_age], where);
        try {
            r.gender = parse_gender(row[c_gender]);
            r.health_state = parse_health_state(row[c_state]);
        } catch (const ConfigError& e) {
            throw IoError(fmt::format("{}: {}", where, e.what()));
        }
        for (std::size_t f = 0; f < kTraitFactorCount; ++f) {
            r.traits[f] = to_int(row[c_traits[f]], where) != 0 ? Polarity::Positive : Polarity::Negative;
        }
        if (!row[c_di].empty()) {
            r.day_infected = to_int(row[c_di], where);
        }
        r.prevalence = PrevalencePct::from_tenths(to_tenths(row[c_prev], where));
        r.stay_home = to_int(row[c_stay], where) != 0;
        r.reasoning = row[c_reason];
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace gabm
