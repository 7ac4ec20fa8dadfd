#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fob/io.hpp"
#include "fob/params.hpp"
#include "fob/quadrature.hpp"

namespace fob {

/// Power-sweep request: dBm grid, model subset, worker count.
struct SweepConfig {
    double p_min_dbm = -35.0;
    double p_max_dbm = 50.0;
    double step_db = 5.0;
    std::vector<std::string> models;  // rpc-lb, rpc-ub, rpc-ub-simple, rpc-exact-mi,
                                      // lpc, mnc-ub, mnc-chi:<k>, mnc-max-chi
    unsigned threads = 1;
    std::uint64_t seed = 1;
    QuadratureSpec spec;
    std::string cache_path;  // empty disables the cache

    void validate() const;
};

/// Evaluates every requested model at every grid power. Per-cell failures
/// are recorded as flags; the sweep never aborts on one bad point. MNC
/// columns are memoized in a JSON cache file keyed by params/model/power/
/// tolerances.
BoundCurve run_sweep(const SweepConfig& config, const PhysicalParams& phys);

bool is_known_model(const std::string& name);

}  // namespace fob
