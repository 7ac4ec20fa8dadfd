#include <cmath>
#include <string>

#include <doctest.h>

#include "fob/io.hpp"

namespace {

fob::BoundCurve sample_curve() {
    fob::BoundCurve c;
    c.model_names = {"lpc", "rpc-lb"};
    for (int i = 0; i < 4; ++i) {
        fob::BoundCurve::Row row;
        row.power_dbm = -35.0 + 5.0 * i;
        row.values = {1.0 + i, 0.5 + i};
        row.flags = {"", ""};
        c.rows.push_back(row);
    }
    return c;
}

}  // namespace

TEST_CASE("csv has one header line and crlf endings") {
    fob::BoundCurve c = sample_curve();
    c.rows.resize(1);
    const std::string text = fob::to_csv(c);
    CHECK(text == "power_dbm,lpc,rpc-lb\r\n-35,1,0.5\r\n");
}

TEST_CASE("csv parse and emit round trips byte identically") {
    const fob::BoundCurve c = sample_curve();
    const std::string once = fob::to_csv(c);
    const std::string twice = fob::to_csv(fob::parse_csv(once));
    CHECK(once == twice);
}

TEST_CASE("flagged cells are emitted empty and parse back flagged") {
    fob::BoundCurve c = sample_curve();
    c.rows[1].flags[0] = "optimizer-not-converged";
    const std::string text = fob::to_csv(c);
    CHECK(text.find("-30,,1.5") != std::string::npos);

    const fob::BoundCurve back = fob::parse_csv(text);
    CHECK(std::isnan(back.rows[1].values[0]));
    CHECK(back.rows[1].flags[0] == "flagged");
    CHECK(back.rows[1].values[1] == doctest::Approx(1.5));
}

TEST_CASE("model names with commas are quoted") {
    fob::BoundCurve c = sample_curve();
    c.model_names[0] = "lpc,extra";
    const std::string text = fob::to_csv(c);
    CHECK(text.find("\"lpc,extra\"") != std::string::npos);
    const fob::BoundCurve back = fob::parse_csv(text);
    CHECK(back.model_names[0] == "lpc,extra");
}

TEST_CASE("nine significant digits survive the round trip") {
    fob::BoundCurve c = sample_curve();
    c.rows[0].values[0] = 43.0308265123;
    const fob::BoundCurve back = fob::parse_csv(fob::to_csv(c));
    CHECK(back.rows[0].values[0] == doctest::Approx(43.0308265).epsilon(1e-9));
}

TEST_CASE("svg uses only the expected elements and covers every model") {
    fob::BoundCurve c = sample_curve();
    c.rows[2].flags[1] = "bad-cell";
    const std::string svg = fob::to_svg(c);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    // element whitelist: svg, line, polyline, text only
    size_t pos = 0;
    while ((pos = svg.find('<', pos)) != std::string::npos) {
        if (svg[pos + 1] == '/' || svg[pos + 1] == '?') {
            ++pos;
            continue;
        }
        const std::string tag = svg.substr(pos + 1, svg.find_first_of(" >", pos) - pos - 1);
        const bool ok = tag == "svg" || tag == "line" || tag == "polyline" || tag == "text";
        CHECK_MESSAGE(ok, "unexpected element: ", tag);
        ++pos;
    }

    for (const auto& name : c.model_names) {
        CHECK(svg.find(">" + name + "<") != std::string::npos);  // legend entries
    }
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("empty curves are rejected") {
    fob::BoundCurve empty;
    CHECK_THROWS(fob::to_csv(empty));
    CHECK_THROWS(fob::to_svg(empty));
}
