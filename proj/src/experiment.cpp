#include "dqw/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dqw/errors.hpp"
#include "dqw/schedule_dsl.hpp"

namespace dqw {

namespace {

constexpr double kPi = std::numbers::pi;

struct TrajectoryResult {
    std::vector<ObservableRecord> records;
    std::map<std::uint64_t, Distribution> distributions;
};

TrajectoryResult run_one(const ExperimentConfig& config, const Schedule& schedule, std::uint64_t trajectory) {
    const std::uint64_t total = schedule.total_steps();
    std::set<std::uint64_t> dumps(config.dump_distribution_at.begin(), config.dump_distribution_at.end());
    dumps.insert(total);

    TrajectoryResult out;
    auto observe = [&](const WalkState& s) {
        const std::uint64_t t = s.step();
        if (t % config.record_every == 0 || t == total) out.records.push_back(measure(s));
        if (dumps.count(t)) out.distributions.emplace(t, probability_distribution(s));
    };
    observe(new_state(config.initial, total));
    run_schedule(config.initial, schedule, trajectory, observe);
    return out;
}

struct MeanSe {
    double mean;
    double se;
};

template <typename Get>
MeanSe mean_se(const std::vector<TrajectoryResult>& results, std::size_t row, Get&& get) {
    const double n = static_cast<double>(results.size());
    double sum = 0.0;
    for (const auto& r : results) sum += get(r.records[row]);
    const double mean = sum / n;
    if (results.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (const auto& r : results) {
        const double d = get(r.records[row]) - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

std::string stem_with_suffix(const std::string& path, const std::string& suffix) {
    const std::filesystem::path p(path);
    auto out = p.parent_path() / (p.stem().string() + suffix + p.extension().string());
    return out.string();
}

}  // namespace

const AggregateRecord& EnsembleSummary::record_at(std::uint64_t t) const {
    for (const auto& r : records) {
        if (r.t == t) return r;
    }
    throw std::out_of_range("no record at step " + std::to_string(t));
}

Schedule checked_schedule(const ExperimentConfig& config) {
    Schedule schedule = parse_schedule(config.schedule_text, config.seed, config.pawl);
    try {
        validate(schedule);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (config.ensemble < 1) throw ConfigError("ensemble size must be at least 1");
    if (config.record_every < 1) throw ConfigError("record interval must be at least 1");
    const std::uint64_t total = schedule.total_steps();
    for (auto t : config.dump_distribution_at) {
        if (t > total) {
            throw ConfigError("distribution dump at step " + std::to_string(t) + " exceeds schedule length " +
                              std::to_string(total));
        }
    }
    return schedule;
}

std::vector<ObservableRecord> run_trajectory(const ExperimentConfig& config, std::uint64_t trajectory) {
    return run_one(config, checked_schedule(config), trajectory).records;
}

EnsembleSummary run_experiment(const ExperimentConfig& config) {
    const Schedule schedule = checked_schedule(config);
    const std::uint64_t n = config.ensemble;
    std::vector<TrajectoryResult> results(n);

    unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) results[i] = run_one(config, schedule, i);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t i = next++; i < n && !failed; i = next++) {
                    try {
                        results[i] = run_one(config, schedule, i);
                    } catch (...) {
                        if (!failed.exchange(true)) failure = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    EnsembleSummary summary;
    summary.canonical_schedule = format_schedule(schedule);
    summary.seed = config.seed;
    summary.ensemble = n;
    summary.total_steps = schedule.total_steps();

    const std::size_t rows = results.front().records.size();
    for (std::size_t row = 0; row < rows; ++row) {
        AggregateRecord a;
        a.t = results.front().records[row].t;
        const auto mx = mean_se(results, row, [](const ObservableRecord& r) { return r.mean_x; });
        const auto sd = mean_se(results, row, [](const ObservableRecord& r) { return r.sd_x; });
        const auto se = mean_se(results, row, [](const ObservableRecord& r) { return r.entropy; });
        const auto nm = mean_se(results, row, [](const ObservableRecord& r) { return r.norm; });
        a.mean_x = mx.mean;
        a.se_mean_x = mx.se;
        a.sd_x = sd.mean;
        a.se_sd_x = sd.se;
        a.entropy = se.mean;
        a.se_entropy = se.se;
        a.norm = nm.mean;
        summary.records.push_back(a);
    }

    for (const auto& [t, unused] : results.front().distributions) {
        Distribution avg;
        for (const auto& r : results) {
            for (const auto& [x, p] : r.distributions.at(t).probabilities) avg.probabilities[x] += p;
        }
        for (auto& [x, p] : avg.probabilities) p /= static_cast<double>(n);
        summary.distributions.emplace(t, std::move(avg));
    }
    return summary;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

ExperimentConfig base_config(std::string schedule, std::uint64_t final_dump) {
    ExperimentConfig c;
    c.schedule_text = std::move(schedule);
    c.seed = 1;
    c.dump_distribution_at = {final_dump};
    return c;
}

Preset single(std::string name, std::string description, std::string schedule, std::uint64_t steps) {
    return {std::move(name), std::move(description), {{"", base_config(std::move(schedule), steps)}}};
}

constexpr const char* kOrderedAlternation = "PF(pi/30)^25 ; PD^25 ; PF(pi/30)^25 ; PD^25";

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig1-std", "fig1-disorder", "fig3",  "fig4",  "fig5a", "fig5b",
            "fig5c",    "fig6a",         "fig6b", "fig6c", "fig7"};
}

Preset fig3_preset(const std::vector<double>& thetas) {
    Preset p{"fig3", "pawl with fixed background coin after 100 steps, one series per angle", {}};
    for (double theta : thetas) {
        const std::string angle = format_angle(theta);
        p.series.push_back({"theta=" + angle, base_config("PF(" + angle + ")^100", 100)});
    }
    return p;
}

Preset preset(std::string_view name) {
    if (name == "fig1-std") return single("fig1-std", "standard walk, theta = pi/4, 200 steps", "F(pi/4)^200", 200);
    if (name == "fig1-disorder") return single("fig1-disorder", "temporally disordered walk, 200 steps", "D^200", 200);
    if (name == "fig3") return fig3_preset({kPi / 30, kPi / 6, kPi / 4, kPi / 3});
    if (name == "fig4") {
        Preset p{"fig4", "disordered walk with and without pawl, 200 steps", {}};
        auto pawl = base_config("PD^200", 200);
        pawl.dump_distribution_at = {50, 100, 150, 200};
        p.series.push_back({"pawl", pawl});
        p.series.push_back({"no-pawl", base_config("D^200", 200)});
        return p;
    }
    if (name == "fig5a") {
        return single("fig5a", "each step PF(pi/30) or PD with probability 1/2, 100 steps", "MIX(pi/30)^100", 100);
    }
    if (name == "fig5b") {
        return single("fig5b", "each step PF(pi/6) or PD with probability 1/2, 100 steps", "MIX(pi/6)^100", 100);
    }
    if (name == "fig5c") return single("fig5c", "ordered alternation of PF(pi/30) and PD blocks", kOrderedAlternation, 100);
    if (name == "fig6a") return single("fig6a", "PF(pi/30) for 50 steps, then PD for 50", "PF(pi/30)^50 ; PD^50", 100);
    if (name == "fig6b") {
        return single("fig6b", "PF(pi/30) for 100 steps, then PD for 100", "PF(pi/30)^100 ; PD^100", 200);
    }
    if (name == "fig6c") return single("fig6c", "PF(pi/30) for 160 steps, then PD for 50", "PF(pi/30)^160 ; PD^50", 210);
    if (name == "fig7") {
        Preset p{"fig7", "coin-position entanglement entropy per step", {}};
        p.series.push_back({"a", base_config("F(pi/4)^200", 200)});
        p.series.push_back({"b", base_config("D^200", 200)});
        p.series.push_back({"c", base_config("PD^200", 200)});
        p.series.push_back({"d", base_config("PF(pi/30)^50 ; PD^50", 100)});
        p.series.push_back({"e", base_config(kOrderedAlternation, 100)});
        return p;
    }
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + std::string(name) + "'; valid presets: " + names);
}

// ---------------------------------------------------------------------------
// Initial state text

namespace {

double parse_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError("bad " + std::string(what) + " '" + std::string(s) + "' in initial state");
    }
    return v;
}

}  // namespace

InitialSpec parse_initial(std::string_view text) {
    InitialSpec spec;
    if (const auto at = text.find('@'); at != std::string_view::npos) {
        const auto pos = text.substr(at + 1);
        int x = 0;
        const auto [ptr, ec] = std::from_chars(pos.data(), pos.data() + pos.size(), x);
        if (ec != std::errc{} || ptr != pos.data() + pos.size()) {
            throw ConfigError("bad initial position '" + std::string(pos) + "'");
        }
        spec.position = x;
        text = text.substr(0, at);
    }
    if (text == "symmetric") {
        spec.coin = coin::Symmetric{};
    } else if (text == "up") {
        spec.coin = coin::Up{};
    } else if (text == "down") {
        spec.coin = coin::Down{};
    } else if (text.starts_with("custom:")) {
        auto rest = text.substr(7);
        std::array<double, 4> v{};
        for (std::size_t i = 0; i < 4; ++i) {
            const auto comma = rest.find(',');
            if ((i < 3) == (comma == std::string_view::npos)) {
                throw ConfigError("custom initial coin needs exactly four numbers a_re,a_im,b_re,b_im");
            }
            v[i] = parse_double(rest.substr(0, comma), "amplitude");
            rest = i < 3 ? rest.substr(comma + 1) : std::string_view{};
        }
        const coin::Custom c{{v[0], v[1]}, {v[2], v[3]}};
        if (std::abs(std::norm(c.a) + std::norm(c.b) - 1.0) > 1e-12) {
            throw ConfigError("custom initial coin is not normalised");
        }
        spec.coin = c;
    } else {
        throw ConfigError("unknown initial state '" + std::string(text) + "' (symmetric, up, down, custom:...)");
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Output

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
    std::string s(buf);
    return s == "-0" ? "0" : s;
}

std::string observables_csv(const EnsembleSummary& summary) {
    std::string out = "t,mean_x,se_mean_x,sd_x,se_sd_x,entropy,se_entropy,norm\n";
    for (const auto& r : summary.records) {
        out += std::to_string(r.t);
        for (double v : {r.mean_x, r.se_mean_x, r.sd_x, r.se_sd_x, r.entropy, r.se_entropy, r.norm}) {
            out += ',';
            out += format_number(v);
        }
        out += '\n';
    }
    return out;
}

std::string distribution_csv(const Distribution& dist) {
    std::string out = "x,p\n";
    for (const auto& [x, p] : dist.probabilities) out += std::to_string(x) + "," + format_number(p) + "\n";
    return out;
}

std::string summary_json(const EnsembleSummary& summary, const ExperimentConfig& config) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["config"] = {
        {"schedule", summary.canonical_schedule},
        {"seed", summary.seed},
        {"ensemble", summary.ensemble},
        {"record_every", config.record_every},
        {"initial_position", config.initial.position},
        {"pawl", {{"reflect_site", config.pawl.reflect_site}, {"pass_site", config.pawl.pass_site}}},
    };
    ordered_json records = ordered_json::array();
    for (const auto& r : summary.records) {
        records.push_back({{"t", r.t},
                           {"mean_x", r.mean_x},
                           {"se_mean_x", r.se_mean_x},
                           {"sd_x", r.sd_x},
                           {"se_sd_x", r.se_sd_x},
                           {"entropy", r.entropy},
                           {"se_entropy", r.se_entropy},
                           {"norm", r.norm}});
    }
    doc["records"] = std::move(records);
    ordered_json dists = ordered_json::array();
    for (const auto& [t, dist] : summary.distributions) {
        ordered_json xs = ordered_json::array(), ps = ordered_json::array();
        for (const auto& [x, p] : dist.probabilities) {
            xs.push_back(x);
            ps.push_back(p);
        }
        dists.push_back({{"t", t}, {"x", std::move(xs)}, {"p", std::move(ps)}});
    }
    doc["distributions"] = std::move(dists);
    return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out << contents;
    out.flush();
    if (!out) throw IoError(path, "write failed");
}

std::string distribution_path(const std::string& path, std::uint64_t t) {
    return stem_with_suffix(path, "_dist_t" + std::to_string(t));
}

void emit(const EnsembleSummary& summary, const ExperimentConfig& config, OutputFormat format,
          const std::string& path) {
    if (format == OutputFormat::Json) {
        write_file(path, summary_json(summary, config));
        return;
    }
    write_file(path, observables_csv(summary));
    for (const auto& [t, dist] : summary.distributions) write_file(distribution_path(path, t), distribution_csv(dist));
}

std::vector<DispersionPoint> band_structure(double theta, std::uint64_t n_k) {
    if (n_k < 2) throw ConfigError("band structure needs at least 2 momentum points");
    std::vector<DispersionPoint> points;
    points.reserve(n_k);
    for (std::uint64_t i = 0; i < n_k; ++i) {
        const double k = (i + 1 == n_k) ? kPi : -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n_k - 1);
        points.push_back(dispersion_point(theta, k));
    }
    return points;
}

std::string band_structure_csv(const std::vector<DispersionPoint>& points) {
    std::string out = "k,e_plus,e_minus,vg_plus,vg_minus\n";
    for (const auto& p : points) {
        out += format_number(p.k) + "," + format_number(p.e_plus) + "," + format_number(p.e_minus) + "," +
               format_number(p.vg_plus) + "," + format_number(p.vg_minus) + "\n";
    }
    return out;
}

void run_band_structure(double theta, std::uint64_t n_k, const std::string& path) {
    write_file(path, band_structure_csv(band_structure(theta, n_k)));
}

}  // namespace dqw
