#pragma once

#include <string>
#include <vector>

#include "fob/params.hpp"

namespace fob {

/// One sweep result table: power grid rows by model columns, with
/// per-cell diagnostic flags and the provenance needed to reproduce it.
struct BoundCurve {
    std::vector<std::string> model_names;
    struct Row {
        double power_dbm = 0.0;
        std::vector<double> values;        // bits/channel-use, NaN when flagged
        std::vector<std::string> flags;    // empty = clean cell
    };
    std::vector<Row> rows;

    PhysicalParams phys;
    std::string version;
    std::string tolerance_note;
};

/// RFC-4180 CSV, one header line (power_dbm then the model columns),
/// 9 significant digits; flagged cells are left empty.
void emit_csv(const BoundCurve& curve, const std::string& path);
std::string to_csv(const BoundCurve& curve);
BoundCurve parse_csv(const std::string& text);

/// Static SVG line chart of the curve (x: power dBm, y: bits/channel-use).
/// Flagged cells are omitted from the polylines.
void emit_svg(const BoundCurve& curve, const std::string& path);
std::string to_svg(const BoundCurve& curve);

}  // namespace fob
