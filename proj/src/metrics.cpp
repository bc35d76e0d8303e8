#include "css/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace css {

Fractions metric_fractions(const MetricsLog& log, uint64_t step) {
    if (step < 1 || step > log.records.size()) throw std::out_of_range("metric_fractions: step outside log");
    const StepRecord& r = log.records[step - 1];
    Fractions f;
    f.pu_flagged = r.pu_d == 0;
    f.su_flagged = r.su_d == 0;
    f.missed_flagged = r.mis_d == 0;
    f.pu_collision = f.pu_flagged ? 0.0 : static_cast<double>(r.pu_n) / static_cast<double>(r.pu_d);
    f.su_collision = f.su_flagged ? 0.0 : static_cast<double>(r.su_n) / static_cast<double>(r.su_d);
    f.missed = f.missed_flagged ? 0.0 : static_cast<double>(r.mis_n) / static_cast<double>(r.mis_d);
    f.sensing = static_cast<double>(r.sense_total) /
                (static_cast<double>(log.S) * static_cast<double>(r.step));
    return f;
}

const char* switch_column_name(SwitchColumn m) {
    switch (m) {
    case SwitchColumn::bh: return "bh";
    case SwitchColumn::plain: return "plain";
    default: return "none";
    }
}

std::string csv_header() {
    return "step,pu_coll_frac,su_coll_frac,missed_frac,avg_sensing,alive_frac,mode";
}

static void append_num(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

std::string csv_row(const StepRecord& r, std::size_t S) {
    auto frac = [](uint64_t n, uint64_t d) { return d ? static_cast<double>(n) / static_cast<double>(d) : 0.0; };
    std::string out = std::to_string(r.step);
    out += ',';
    append_num(out, frac(r.pu_n, r.pu_d));
    out += ',';
    append_num(out, frac(r.su_n, r.su_d));
    out += ',';
    append_num(out, frac(r.mis_n, r.mis_d));
    out += ',';
    append_num(out, static_cast<double>(r.sense_total) /
                        (static_cast<double>(S) * static_cast<double>(r.step)));
    out += ',';
    append_num(out, r.alive_frac);
    out += ',';
    out += switch_column_name(r.mode);
    return out;
}

std::string csv_string(const MetricsLog& log) {
    std::string out = csv_header();
    out += '\n';
    for (const StepRecord& r : log.records) {
        out += csv_row(r, log.S);
        out += '\n';
    }
    return out;
}

void emit_csv(const MetricsLog& log, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << csv_string(log);
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<CsvRow> rows;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line != csv_header()) throw std::runtime_error("unexpected CSV header: " + line);
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 7) throw std::runtime_error("unexpected CSV column count in: " + line);
        CsvRow r;
        r.step = std::stoull(fields[0]);
        r.pu = std::stod(fields[1]);
        r.su = std::stod(fields[2]);
        r.missed = std::stod(fields[3]);
        r.sensing = std::stod(fields[4]);
        r.alive = std::stod(fields[5]);
        r.mode = fields[6];
        rows.push_back(r);
    }
    return rows;
}

std::vector<CsvRow> parse_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

bool write_svg(const std::string& path, const std::string& title,
               const std::vector<PlotSeries>& series) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    const double W = 860, H = 520, ml = 70, mr = 30, mt = 40, mb = 50;
    std::size_t n = 0;
    double ymin = 0.0, ymax = 0.0;
    bool any = false;
    for (const auto& s : series) {
        n = std::max(n, s.y.size());
        for (double v : s.y) {
            if (!std::isfinite(v)) continue;
            if (!any) {
                ymin = ymax = v;
                any = true;
            } else {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
    }
    if (!any || n < 2) return false;
    if (ymax == ymin) ymax = ymin + 1.0;

    std::ofstream f(path, std::ios::binary);
    if (!f) return false;
    auto xmap = [&](std::size_t i) { return ml + (W - ml - mr) * static_cast<double>(i) / static_cast<double>(n - 1); };
    auto ymap = [&](double v) { return H - mb - (H - mt - mb) * (v - ymin) / (ymax - ymin); };

    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << title << "</text>\n";
    f << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    f << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", ymin);
    f << "<text x=\"" << ml - 8 << "\" y=\"" << H - mb + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", ymax);
    f << "<text x=\"" << ml - 8 << "\" y=\"" << mt + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf << "</text>\n";
    f << "<text x=\"" << ml << "\" y=\"" << H - mb + 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">1</text>\n";
    f << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 20
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << n << "</text>\n";
    f << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">step</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        if (s.y.size() < 2) continue;
        const char* col = colors[si % (sizeof colors / sizeof colors[0])];
        f << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.y.size(); ++i) {
            double v = std::isfinite(s.y[i]) ? s.y[i] : ymin;
            f << xmap(i) << ',' << ymap(v) << ' ';
        }
        f << "\"/>\n";
        f << "<text x=\"" << W - mr - 6 << "\" y=\"" << mt + 16 + 16 * static_cast<double>(si)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << col << "\">"
          << s.name << "</text>\n";
    }
    f << "</svg>\n";
    return static_cast<bool>(f);
}

} // namespace css
