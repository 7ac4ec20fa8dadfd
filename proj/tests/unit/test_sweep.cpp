#include <cmath>
#include <cstdio>
#include <fstream>

#include <doctest.h>

#include "fob/io.hpp"
#include "fob/params.hpp"
#include "fob/sweep.hpp"

namespace {

const fob::PhysicalParams kPhys;

}  // namespace

TEST_CASE("config validation") {
    fob::SweepConfig c;
    c.models = {"lpc"};
    CHECK_NOTHROW(c.validate());
    c.models = {"not-a-model"};
    CHECK_THROWS(c.validate());
    c.models = {"lpc"};
    c.step_db = 0.0;
    CHECK_THROWS(c.validate());
    c.step_db = 5.0;
    c.p_min_dbm = 10.0;
    c.p_max_dbm = -10.0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("model name registry") {
    CHECK(fob::is_known_model("rpc-lb"));
    CHECK(fob::is_known_model("rpc-ub"));
    CHECK(fob::is_known_model("mnc-chi:0.5"));
    CHECK(fob::is_known_model("mnc-max-chi"));
    CHECK_FALSE(fob::is_known_model("mnc-chi:x"));
    CHECK_FALSE(fob::is_known_model("mnc-chi:-1"));
    CHECK_FALSE(fob::is_known_model(""));
}

TEST_CASE("lpc column equals the closed form on the grid") {
    fob::SweepConfig c;
    c.models = {"lpc"};
    c.p_min_dbm = -35.0;
    c.p_max_dbm = 50.0;
    c.step_db = 5.0;
    const fob::BoundCurve curve = fob::run_sweep(c, kPhys);
    REQUIRE(curve.rows.size() == 18);
    const double pn = fob::derive_discrete(kPhys).noise_power_w;
    for (const auto& row : curve.rows) {
        const double p = fob::dbm_to_watt(row.power_dbm);
        CHECK(row.values[0] == doctest::Approx(std::log2(1.0 + p / pn)).epsilon(1e-12));
        CHECK(row.flags[0].empty());
    }
}

TEST_CASE("rows are sorted and grids are inclusive") {
    fob::SweepConfig c;
    c.models = {"lpc"};
    c.p_min_dbm = 0.0;
    c.p_max_dbm = 10.0;
    c.step_db = 2.5;
    const fob::BoundCurve curve = fob::run_sweep(c, kPhys);
    REQUIRE(curve.rows.size() == 5);
    CHECK(curve.rows.front().power_dbm == doctest::Approx(0.0));
    CHECK(curve.rows.back().power_dbm == doctest::Approx(10.0));
    for (size_t i = 1; i < curve.rows.size(); ++i) {
        CHECK(curve.rows[i].power_dbm > curve.rows[i - 1].power_dbm);
    }
}

TEST_CASE("two cold runs are byte identical and threads do not matter") {
    fob::SweepConfig c;
    c.models = {"rpc-lb", "rpc-ub-simple", "lpc"};
    c.p_min_dbm = -35.0;
    c.p_max_dbm = 50.0;
    c.step_db = 5.0;
    const std::string a = fob::to_csv(fob::run_sweep(c, kPhys));
    const std::string b = fob::to_csv(fob::run_sweep(c, kPhys));
    CHECK(a == b);
    c.threads = 2;
    const std::string d = fob::to_csv(fob::run_sweep(c, kPhys));
    CHECK(a == d);
}

TEST_CASE("cache reuse keeps values identical") {
    const std::string cache = "fob_sweep_test_cache.json";
    std::remove(cache.c_str());

    fob::SweepConfig c;
    c.models = {"mnc-chi:2"};
    c.p_min_dbm = -30.0;
    c.p_max_dbm = -29.0;
    c.step_db = 5.0;  // single point
    c.cache_path = cache;

    const fob::BoundCurve cold = fob::run_sweep(c, kPhys);
    {
        std::ifstream f(cache);
        REQUIRE(f.good());  // cache file written
    }
    const fob::BoundCurve warm = fob::run_sweep(c, kPhys);
    REQUIRE(cold.rows.size() == 1);
    CHECK(cold.rows[0].values[0] == warm.rows[0].values[0]);  // bit identical
    CHECK(fob::to_csv(cold) == fob::to_csv(warm));
    std::remove(cache.c_str());
}

TEST_CASE("linear limit of the simple bound falls back to the closed form") {
    fob::SweepConfig c;
    c.models = {"rpc-ub-simple", "lpc"};
    c.p_min_dbm = -5.0;
    c.p_max_dbm = 0.0;
    c.step_db = 5.0;
    fob::PhysicalParams lin = kPhys;
    lin.nonlinearity = 0.0;  // simple bound constant is singular at eta = 0
    const fob::BoundCurve curve = fob::run_sweep(c, lin);
    for (const auto& row : curve.rows) {
        const double p = fob::dbm_to_watt(row.power_dbm);
        const double awgn = std::log2(1.0 + p / fob::derive_discrete(lin).noise_power_w);
        CHECK(row.values[0] == doctest::Approx(awgn).epsilon(1e-12));
        CHECK(row.flags[1].empty());
    }
}
