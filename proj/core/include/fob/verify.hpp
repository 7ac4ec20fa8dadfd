#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fob/params.hpp"

namespace fob {
namespace verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the cross-module invariant checks against the given physical
/// parameters. `full` adds the split-step histogram oracle and the large
/// Monte Carlo comparisons.
std::vector<CheckResult> run(const PhysicalParams& phys, bool full, unsigned threads = 1);

/// Total-variation distance between the empirical (r, theta - theta0)
/// histogram of the split-step oracle and the conditional pdf, on a
/// bins x bins grid. The primary validation of the Bessel-series pdf.
double ssf_pdf_tv_distance(const DiscreteChannelParams& d, double r0, int segments,
                           std::size_t samples, std::uint64_t seed, int bins,
                           unsigned threads = 1);

}  // namespace verify
}  // namespace fob
