#include "fob/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fob {

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string csv_field(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string to_csv(const BoundCurve& curve) {
    if (curve.rows.empty()) throw std::invalid_argument("to_csv: empty curve");
    std::ostringstream out;
    out << "power_dbm";
    for (const auto& m : curve.model_names) out << ',' << csv_field(m);
    out << "\r\n";
    for (const auto& row : curve.rows) {
        out << format_value(row.power_dbm);
        for (size_t i = 0; i < curve.model_names.size(); ++i) {
            out << ',';
            const bool flagged = i < row.flags.size() && !row.flags[i].empty();
            if (!flagged && i < row.values.size() && std::isfinite(row.values[i])) {
                out << format_value(row.values[i]);
            }
        }
        out << "\r\n";
    }
    return out.str();
}

void emit_csv(const BoundCurve& curve, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
    f << to_csv(curve);
    if (!f) throw std::runtime_error("emit_csv: write failed for " + path);
}

BoundCurve parse_csv(const std::string& text) {
    BoundCurve curve;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (header) {
            if (fields.empty() || fields[0] != "power_dbm") {
                throw std::runtime_error("parse_csv: missing power_dbm header");
            }
            curve.model_names.assign(fields.begin() + 1, fields.end());
            header = false;
            continue;
        }
        BoundCurve::Row row;
        row.power_dbm = std::stod(fields[0]);
        for (size_t i = 1; i < fields.size(); ++i) {
            if (fields[i].empty()) {
                row.values.push_back(std::nan(""));
                row.flags.push_back("flagged");
            } else {
                row.values.push_back(std::stod(fields[i]));
                row.flags.push_back("");
            }
        }
        curve.rows.push_back(std::move(row));
    }
    return curve;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

std::string to_svg(const BoundCurve& curve) {
    if (curve.rows.empty()) throw std::invalid_argument("to_svg: empty curve");
    const int W = 860, H = 560;
    const int ml = 70, mr = 200, mt = 30, mb = 50;
    const double pw = W - ml - mr, ph = H - mt - mb;

    double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = 1.0;
    for (const auto& row : curve.rows) {
        xmin = std::min(xmin, row.power_dbm);
        xmax = std::max(xmax, row.power_dbm);
        for (size_t i = 0; i < row.values.size(); ++i) {
            const bool flagged = i < row.flags.size() && !row.flags[i].empty();
            if (!flagged && std::isfinite(row.values[i])) ymax = std::max(ymax, row.values[i]);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    ymax *= 1.05;

    auto sx = [&](double p) { return ml + pw * (p - xmin) / (xmax - xmin); };
    auto sy = [&](double b) { return mt + ph * (1.0 - (b - ymin) / (ymax - ymin)); };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";

    // axes
    s << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
      << mt + ph << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
      << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 8; ++i) {
        const double p = xmin + (xmax - xmin) * i / 8.0;
        const double b = ymin + (ymax - ymin) * i / 8.0;
        s << "<line x1=\"" << sx(p) << "\" y1=\"" << mt + ph << "\" x2=\"" << sx(p) << "\" y2=\""
          << mt + ph + 5 << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << sx(p) << "\" y=\"" << mt + ph + 20
          << "\" font-size=\"11\" text-anchor=\"middle\">" << format_value(p) << "</text>\n";
        s << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(b) << "\" x2=\"" << ml << "\" y2=\""
          << sy(b) << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << ml - 8 << "\" y=\"" << sy(b) + 4
          << "\" font-size=\"11\" text-anchor=\"end\">" << format_value(b) << "</text>\n";
    }
    s << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">power (dBm)</text>\n";
    s << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + ph / 2
      << ")\">bits / channel use</text>\n";

    for (size_t m = 0; m < curve.model_names.size(); ++m) {
        const char* color = kPalette[m % 8];
        std::ostringstream pts;
        for (const auto& row : curve.rows) {
            const bool flagged = m < row.flags.size() && !row.flags[m].empty();
            if (m >= row.values.size() || flagged || !std::isfinite(row.values[m])) continue;
            pts << sx(row.power_dbm) << ',' << sy(row.values[m]) << ' ';
        }
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\""
          << pts.str() << "\"/>\n";
        const double ly = mt + 18.0 * (m + 1);
        s << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << ml + pw + 40
          << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"1.6\"/>\n";
        s << "<text x=\"" << ml + pw + 46 << "\" y=\"" << ly << "\" font-size=\"12\">"
          << curve.model_names[m] << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void emit_svg(const BoundCurve& curve, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_svg: cannot open " + path);
    f << to_svg(curve);
    if (!f) throw std::runtime_error("emit_svg: write failed for " + path);
}

}  // namespace fob
