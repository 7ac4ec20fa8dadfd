// fiberbounds: power sweeps, pdf dumps, channel simulation, verification
// and SVG plotting for the per-sample fiber channel bounds.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fob/io.hpp"
#include "fob/lpc.hpp"
#include "fob/mnc.hpp"
#include "fob/params.hpp"
#include "fob/random.hpp"
#include "fob/rpc.hpp"
#include "fob/sweep.hpp"
#include "fob/verify.hpp"

namespace {

fob::PhysicalParams load_config(const std::string& path) {
    if (path.empty()) return fob::PhysicalParams{};
    return fob::load_params(path);
}

std::vector<std::string> split_models(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << text;
}

int cmd_bounds(const std::string& config, const fob::SweepConfig& sweep, const std::string& out,
               bool svg) {
    const fob::PhysicalParams phys = load_config(config);
    const fob::BoundCurve curve = fob::run_sweep(sweep, phys);
    write_text(out, svg ? fob::to_svg(curve) : fob::to_csv(curve));
    for (const auto& row : curve.rows) {
        for (size_t i = 0; i < row.flags.size(); ++i) {
            if (!row.flags[i].empty()) {
                std::cerr << "flag: " << curve.model_names[i] << " @ " << row.power_dbm
                          << " dBm: " << row.flags[i] << "\n";
            }
        }
    }
    return 0;
}

int cmd_pdf(const std::string& config, double r0, double theta0, int rbins, int tbins,
            const std::string& out) {
    const fob::PhysicalParams phys = load_config(config);
    const fob::DiscreteChannelParams d = fob::derive_discrete(phys);
    const fob::mnc::MncPdfParams mp = fob::mnc::make_pdf_params(d);
    if (r0 <= 0.0) r0 = std::sqrt(d.noise_power_w);

    const double sigma = std::sqrt(d.noise_power_w / 2.0);
    const double r_lo = std::max(0.0, r0 - 10.0 * sigma);
    const double r_hi = r0 + 10.0 * sigma;

    std::ostringstream s;
    s << "r,theta,pdf\r\n";
    char buf[96];
    for (int i = 0; i < rbins; ++i) {
        const double r = r_lo + (r_hi - r_lo) * (i + 0.5) / rbins;
        for (int j = 0; j < tbins; ++j) {
            const double th = -M_PI + 2.0 * M_PI * (j + 0.5) / tbins;
            const double f = fob::mnc::conditional_pdf(r, th, r0, theta0, mp);
            std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g\r\n", r, th, f);
            s << buf;
        }
    }
    write_text(out, s.str());
    return 0;
}

int cmd_simulate(const std::string& config, const std::string& model, double p_dbm, std::size_t n,
                 int segments, std::uint64_t seed, const std::string& out) {
    const fob::PhysicalParams phys = load_config(config);
    const fob::DiscreteChannelParams d = fob::derive_discrete(phys);
    const double p_w = fob::dbm_to_watt(p_dbm);

    std::vector<std::complex<double>> x;
    if (model == "mnc-ssf") {
        x.assign(n, std::complex<double>(std::sqrt(p_w), 0.0));
    } else {
        // capacity-family amplitudes with independent uniform phases
        const auto law = fob::rpc::lower_bound(p_w, d).second;
        const auto s = fob::rpc::sample_input(law, n, seed + 1);
        std::mt19937_64 rng(seed + 2);
        std::uniform_real_distribution<double> uni(-M_PI, M_PI);
        x.resize(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = std::polar(std::sqrt(s[i]), uni(rng));
    }

    std::vector<std::complex<double>> y;
    if (model == "rpc") y = fob::rpc::simulate(x, d, seed);
    else if (model == "lpc") y = fob::lpc::simulate(x, d, seed);
    else if (model == "mnc-ssf") y = fob::mnc::simulate_ssf(x, segments, d, seed);
    else throw CLI::ValidationError("--model", "expected rpc, lpc, or mnc-ssf");

    std::ostringstream s;
    s << "x_re,x_im,y_re,y_im\r\n";
    char buf[160];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g\r\n", x[i].real(), x[i].imag(),
                      y[i].real(), y[i].imag());
        s << buf;
    }
    write_text(out, s.str());
    return 0;
}

int cmd_verify(const std::string& config, bool full, unsigned threads) {
    const fob::PhysicalParams phys = load_config(config);
    const auto results = fob::verify::run(phys, full, threads);
    bool ok = true;
    for (const auto& r : results) {
        std::printf("%-26s %s  (%.2fs)  %s\n", r.name.c_str(), r.pass ? "pass" : "FAIL", r.seconds,
                    r.pass ? "" : r.detail.c_str());
        ok = ok && r.pass;
    }
    std::printf("%s\n", ok ? "all checks passed" : "verification FAILED");
    return ok ? 0 : 1;
}

int cmd_plot(const std::string& in, const std::string& out) {
    std::ifstream f(in, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + in);
    std::stringstream buf;
    buf << f.rdbuf();
    const fob::BoundCurve curve = fob::parse_csv(buf.str());
    write_text(out, fob::to_svg(curve));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacity bounds for the zero-dispersion fiber channel models"};
    app.require_subcommand(1);

    std::string config, out, in, models_list = "rpc-lb,rpc-ub-simple,lpc";
    std::string sim_model = "rpc";
    fob::SweepConfig sweep;
    bool full = false, svg = false;
    double r0 = 0.0, theta0 = 0.0, p_dbm = 0.0;
    std::size_t nsamples = 100000;
    int segments = 2000, rbins = 64, tbins = 64;
    unsigned threads = 1;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config, "TOML file with the physical parameters");
        sub->add_option("--out", out, "output path, '-' for stdout");
    };

    auto* bounds = app.add_subcommand("bounds", "sweep the bounds over a power grid");
    add_common(bounds);
    bounds->add_option("--pmin", sweep.p_min_dbm, "grid start, dBm");
    bounds->add_option("--pmax", sweep.p_max_dbm, "grid end, dBm");
    bounds->add_option("--step", sweep.step_db, "grid step, dB");
    bounds->add_option("--models", models_list, "comma-separated model list");
    bounds->add_option("--cache", sweep.cache_path, "JSON cache file for the MNC columns");
    bounds->add_option("--threads", threads, "worker threads");
    bounds->add_option("--seed", seed, "base RNG seed");
    bounds->add_flag("--svg", svg, "emit an SVG chart instead of CSV");

    auto* pdf = app.add_subcommand("pdf", "dump the conditional pdf on an (r, theta) grid");
    add_common(pdf);
    pdf->add_option("--r0", r0, "conditioning amplitude, sqrt(W); default sqrt(P_N)");
    pdf->add_option("--theta0", theta0, "conditioning phase, rad");
    pdf->add_option("--rbins", rbins, "radial grid size");
    pdf->add_option("--tbins", tbins, "angular grid size");

    auto* sim = app.add_subcommand("simulate", "draw channel input/output samples");
    add_common(sim);
    sim->add_option("--model", sim_model, "rpc, lpc, or mnc-ssf");
    sim->add_option("--power-dbm", p_dbm, "input power, dBm");
    sim->add_option("--n", nsamples, "sample count");
    sim->add_option("--segments", segments, "split-step segments (mnc-ssf)");
    sim->add_option("--seed", seed, "RNG seed");

    auto* verify = app.add_subcommand("verify", "run the invariant checks");
    verify->add_option("--config", config, "TOML file with the physical parameters");
    verify->add_flag("--full", full, "include the split-step and Monte Carlo oracles");
    verify->add_flag("--fast", [](std::int64_t) {}, "fast suite (default)");
    verify->add_option("--threads", threads, "worker threads");

    auto* plot = app.add_subcommand("plot", "render a bounds CSV as an SVG chart");
    plot->add_option("--in", in, "input CSV path")->required();
    plot->add_option("--out", out, "output SVG path, '-' for stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*bounds) {
            sweep.models = split_models(models_list);
            sweep.threads = threads;
            sweep.seed = seed;
            return cmd_bounds(config, sweep, out, svg);
        }
        if (*pdf) return cmd_pdf(config, r0, theta0, rbins, tbins, out);
        if (*sim) return cmd_simulate(config, sim_model, p_dbm, nsamples, segments, seed, out);
        if (*verify) return cmd_verify(config, full, threads);
        if (*plot) return cmd_plot(in, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
