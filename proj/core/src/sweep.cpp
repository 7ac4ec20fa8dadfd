#include "fob/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "fob/lpc.hpp"
#include "fob/mnc.hpp"
#include "fob/rpc.hpp"

namespace fob {

namespace {

using json = nlohmann::json;

bool parse_chi_k(const std::string& name, double* k) {
    if (name.rfind("mnc-chi:", 0) != 0) return false;
    try {
        *k = std::stod(name.substr(8));
    } catch (...) {
        return false;
    }
    return *k > 0.0;
}

bool is_mnc_model(const std::string& name) {
    double k;
    return name == "mnc-ub" || name == "mnc-max-chi" || parse_chi_k(name, &k);
}

std::string cache_key(const DiscreteChannelParams& d, const std::string& model, double p_dbm,
                      const QuadratureSpec& spec) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "eta=%.12g|pn=%.12g|model=%s|p_dbm=%.9g|atol=%g|rtol=%g|cut=%g",
                  d.eta, d.noise_power_w, model.c_str(), p_dbm, spec.abs_tol, spec.rel_tol,
                  spec.tail_cutoff_sigmas);
    return buf;
}

struct Cache {
    json entries = json::object();
    bool dirty = false;
    std::mutex mu;

    void load(const std::string& path) {
        std::ifstream f(path);
        if (!f) return;  // cold cache
        try {
            json j;
            f >> j;
            if (j.contains("entries")) entries = j["entries"];
        } catch (...) {
            entries = json::object();  // unreadable cache: start over
        }
    }

    bool get(const std::string& key, double* value) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = entries.find(key);
        if (it == entries.end()) return false;
        *value = it->get<double>();
        return true;
    }

    void put(const std::string& key, double value) {
        std::lock_guard<std::mutex> lock(mu);
        entries[key] = value;
        dirty = true;
    }

    void store(const std::string& path) {
        std::lock_guard<std::mutex> lock(mu);
        if (!dirty) return;
        // whole-file replace-on-commit
        const std::string tmp = path + ".tmp";
        {
            std::ofstream f(tmp, std::ios::binary);
            if (!f) throw std::runtime_error("cache: cannot open " + tmp);
            json j;
            j["entries"] = entries;
            f << j.dump(1);
        }
        std::rename(tmp.c_str(), path.c_str());
    }
};

double eval_model(const std::string& model, double p_w, const DiscreteChannelParams& d,
                  const QuadratureSpec& spec, std::string* flag) {
    if (model == "rpc-lb") return rpc::lower_bound(p_w, d).first;
    if (model == "rpc-ub") {
        auto r = rpc::upper_bound(p_w, d, spec);
        if (!r.converged) *flag = "optimizer-not-converged";
        return r.bits;
    }
    if (model == "rpc-ub-simple") {
        if (d.eta == 0.0) return std::log2(1.0 + p_w / d.noise_power_w);
        return rpc::upper_bound_simple(p_w, d);
    }
    if (model == "rpc-exact-mi") return rpc::exact_mi(p_w, d, spec);
    if (model == "lpc") return lpc::capacity(p_w, d);

    const auto mp = mnc::make_pdf_params(d);
    if (model == "mnc-ub") {
        auto r = mnc::upper_bound(p_w, mp, spec);
        if (r.flagged) *flag = "mnc-ub-flagged";
        return r.bits;
    }
    if (model == "mnc-max-chi") return mnc::max_chi_lower_bound(p_w, mp, spec).bits;
    double k;
    if (parse_chi_k(model, &k)) {
        auto b = mnc::chi_lower_bound(p_w, k, mp, spec);
        if (b.flagged) *flag = "chi-quadrature-flagged";
        return b.total_bits;
    }
    throw std::invalid_argument("unknown model: " + model);
}

}  // namespace

bool is_known_model(const std::string& name) {
    double k;
    return name == "rpc-lb" || name == "rpc-ub" || name == "rpc-ub-simple" ||
           name == "rpc-exact-mi" || name == "lpc" || name == "mnc-ub" ||
           name == "mnc-max-chi" || parse_chi_k(name, &k);
}

void SweepConfig::validate() const {
    if (!(p_min_dbm < p_max_dbm)) throw std::invalid_argument("sweep: p_min must be < p_max");
    if (!(step_db > 0.0)) throw std::invalid_argument("sweep: step must be > 0");
    if (models.empty()) throw std::invalid_argument("sweep: model list is empty");
    for (const auto& m : models) {
        if (!is_known_model(m)) throw std::invalid_argument("sweep: unknown model " + m);
    }
}

BoundCurve run_sweep(const SweepConfig& config, const PhysicalParams& phys) {
    config.validate();
    const DiscreteChannelParams d = derive_discrete(phys);

    std::vector<double> grid;
    for (double p = config.p_min_dbm; p <= config.p_max_dbm + 1e-9; p += config.step_db) {
        grid.push_back(p);
    }

    Cache cache;
    if (!config.cache_path.empty()) cache.load(config.cache_path);

    BoundCurve curve;
    curve.model_names = config.models;
    curve.phys = phys;
    curve.version = "fiberbounds-0.1.0";
    {
        std::ostringstream t;
        t << "abs_tol=" << config.spec.abs_tol << " rel_tol=" << config.spec.rel_tol;
        curve.tolerance_note = t.str();
    }
    curve.rows.resize(grid.size());

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= grid.size()) break;
            BoundCurve::Row& row = curve.rows[i];
            row.power_dbm = grid[i];
            const double p_w = dbm_to_watt(grid[i]);
            for (const auto& model : config.models) {
                std::string flag;
                double value = std::nan("");
                const bool cacheable = is_mnc_model(model) && !config.cache_path.empty();
                const std::string key = cacheable ? cache_key(d, model, grid[i], config.spec) : "";
                if (cacheable && cache.get(key, &value)) {
                    row.values.push_back(value);
                    row.flags.push_back("");
                    continue;
                }
                try {
                    value = eval_model(model, p_w, d, config.spec, &flag);
                } catch (const std::exception& e) {
                    flag = e.what();
                }
                row.values.push_back(value);
                row.flags.push_back(flag);
                if (cacheable && flag.empty()) cache.put(key, value);
            }
        }
    };

    const unsigned nthreads = std::max(1u, config.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (!config.cache_path.empty()) cache.store(config.cache_path);
    return curve;
}

}  // namespace fob
