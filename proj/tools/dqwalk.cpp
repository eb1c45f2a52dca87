// dqwalk: run discrete-time quantum walk schedules and figure presets.
//
//   dqwalk --schedule "PF(pi/30)^50 ; PD^50" --ensemble 100 --out run.csv
//   dqwalk --preset fig6a --format json --out fig6a.json
//   dqwalk --band-structure pi/4,201 --out bands.csv
//
// Exit codes: 0 success, 2 parse/config error, 3 runtime error, 4 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dqw/errors.hpp"
#include "dqw/experiment.hpp"
#include "dqw/schedule_dsl.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitIo = 4;

struct Options {
    std::string schedule;
    std::string preset;
    std::string initial = "symmetric";
    std::uint64_t seed = 1;
    std::uint64_t ensemble = 1;
    std::uint64_t record_every = 1;
    std::vector<std::uint64_t> dump_dist;
    std::string out;
    std::string format = "csv";
    std::string band_structure;
    std::string thetas;
    unsigned threads = 0;
    int reflect_site = -1;
    int pass_site = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string file_safe(std::string label) {
    for (char& c : label) {
        if (c == '/' || c == '=' || c == ' ') c = '_';
    }
    return label;
}

// "out.csv" + "a" -> "out_a.csv"
std::string series_path(const std::string& out, const std::string& label) {
    if (label.empty()) return out;
    const std::filesystem::path p(out);
    return (p.parent_path() / (p.stem().string() + "_" + file_safe(label) + p.extension().string())).string();
}

int run_band_structure(const Options& opt) {
    const auto parts = split(opt.band_structure, ',');
    if (parts.size() != 2) throw dqw::ConfigError("--band-structure expects <theta>,<n_k>");
    const double theta = dqw::parse_angle(parts[0]);
    std::uint64_t n_k = 0;
    try {
        n_k = std::stoull(parts[1]);
    } catch (const std::exception&) {
        throw dqw::ConfigError("bad momentum count '" + parts[1] + "'");
    }
    const auto csv = dqw::band_structure_csv(dqw::band_structure(theta, n_k));
    if (opt.out.empty()) {
        std::cout << csv;
    } else {
        dqw::write_file(opt.out, csv);
    }
    return 0;
}

int run(const Options& opt) {
    if (!opt.band_structure.empty()) return run_band_structure(opt);
    if (opt.schedule.empty() == opt.preset.empty()) {
        throw dqw::ConfigError("exactly one of --schedule or --preset is required");
    }

    dqw::OutputFormat format;
    if (opt.format == "csv") {
        format = dqw::OutputFormat::Csv;
    } else if (opt.format == "json") {
        format = dqw::OutputFormat::Json;
    } else {
        throw dqw::ConfigError("unknown format '" + opt.format + "' (csv or json)");
    }

    std::vector<dqw::PresetSeries> series;
    if (!opt.preset.empty()) {
        dqw::Preset p;
        if (opt.preset == "fig3" && !opt.thetas.empty()) {
            std::vector<double> thetas;
            for (const auto& t : split(opt.thetas, ',')) thetas.push_back(dqw::parse_angle(t));
            p = dqw::fig3_preset(thetas);
        } else {
            p = dqw::preset(opt.preset);
        }
        series = p.series;
    } else {
        series.push_back({"", {}});
        series.back().config.schedule_text = opt.schedule;
    }

    const dqw::InitialSpec initial = dqw::parse_initial(opt.initial);
    const bool to_stdout = opt.out.empty();
    if (to_stdout && series.size() > 1) throw dqw::ConfigError("--out is required for multi-series presets");

    for (auto& [label, config] : series) {
        config.initial = initial;
        config.seed = opt.seed;
        config.ensemble = opt.ensemble;
        config.record_every = opt.record_every;
        config.threads = opt.threads;
        config.pawl = {opt.reflect_site, opt.pass_site};
        if (!opt.dump_dist.empty()) config.dump_distribution_at = opt.dump_dist;
        config.format = format;
        config.output_path = to_stdout ? "" : series_path(opt.out, label);

        const auto summary = dqw::run_experiment(config);
        if (to_stdout) {
            std::cout << (format == dqw::OutputFormat::Json ? dqw::summary_json(summary, config)
                                                             : dqw::observables_csv(summary));
        } else {
            dqw::emit(summary, config, format, config.output_path);
            std::cerr << "wrote " << config.output_path << " (" << summary.canonical_schedule << ")\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time quantum walk simulator with temporal disorder and pawl coins"};
    Options opt;

    app.add_option("--schedule", opt.schedule, "schedule text, e.g. \"PF(pi/30)^50 ; PD^50\"");
    app.add_option("--preset", opt.preset, "figure preset name");
    app.add_option("--initial", opt.initial, "symmetric|up|down|custom:a_re,a_im,b_re,b_im, optionally @pos")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "master seed")->capture_default_str();
    app.add_option("--ensemble", opt.ensemble, "number of disorder realisations")->capture_default_str();
    app.add_option("--record-every", opt.record_every, "record observables every n steps")->capture_default_str();
    app.add_option("--dump-dist", opt.dump_dist, "steps at which to dump the distribution")->delimiter(',');
    app.add_option("--out", opt.out, "output path (stdout when omitted)");
    app.add_option("--format", opt.format, "csv or json")->capture_default_str();
    app.add_option("--band-structure", opt.band_structure, "write k,E,v_g for <theta>,<n_k> and exit");
    app.add_option("--thetas", opt.thetas, "comma-separated angles for the fig3 preset");
    app.add_option("--threads", opt.threads, "ensemble worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--reflect-site", opt.reflect_site, "pawl site with the pi/2 coin")->capture_default_str();
    app.add_option("--pass-site", opt.pass_site, "pawl site with the identity coin")->capture_default_str();
    bool list = false;
    app.add_flag("--list-presets", list, "print preset names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (list) {
        for (const auto& name : dqw::preset_names()) std::cout << name << "  " << dqw::preset(name).description << "\n";
        return 0;
    }

    try {
        return run(opt);
    } catch (const dqw::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dqw::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
