#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace css {

enum class SwitchColumn { none, bh, plain };

// Cumulative counters as of the end of each step; alive_frac is sampled at
// the start of the step, before sensing spends energy.
struct StepRecord {
    uint64_t step = 0;
    uint64_t pu_n = 0, pu_d = 0;
    uint64_t su_n = 0, su_d = 0;
    uint64_t mis_n = 0, mis_d = 0;
    uint64_t sense_total = 0;
    double alive_frac = 1.0;
    SwitchColumn mode = SwitchColumn::none;
};

struct MetricsLog {
    std::size_t S = 0;
    std::vector<StepRecord> records;
    std::vector<uint64_t> per_su_sense;
};

struct Fractions {
    double pu_collision = 0.0;
    double su_collision = 0.0;
    double missed = 0.0;
    double sensing = 0.0;
    bool pu_flagged = false; // zero denominator
    bool su_flagged = false;
    bool missed_flagged = false;
};

// step is the 1-based step number of the record to read.
Fractions metric_fractions(const MetricsLog& log, uint64_t step);

const char* switch_column_name(SwitchColumn m);

std::string csv_header();
// "step,pu_coll_frac,su_coll_frac,missed_frac,avg_sensing,alive_frac,mode"
std::string csv_row(const StepRecord& r, std::size_t S);
std::string csv_string(const MetricsLog& log);
// Throws std::runtime_error with the path on I/O failure.
void emit_csv(const MetricsLog& log, const std::string& path);

struct CsvRow {
    uint64_t step = 0;
    double pu = 0.0, su = 0.0, missed = 0.0, sensing = 0.0, alive = 0.0;
    std::string mode;
};

std::vector<CsvRow> parse_csv(const std::string& text);
std::vector<CsvRow> parse_csv_file(const std::string& path);

struct PlotSeries {
    std::string name;
    std::vector<double> y;
};

// Polyline SVG of the series over the step index; returns false on failure
// instead of throwing (plots are best-effort).
bool write_svg(const std::string& path, const std::string& title,
               const std::vector<PlotSeries>& series);

} // namespace css
