// Copyright 2026 The photoprune Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "photoprune/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "photoprune/bloch.hpp"
#include "photoprune/errors.hpp"
#include "photoprune/fit.hpp"
#include "photoprune/mesh.hpp"
#include "photoprune/parallel.hpp"
#include "photoprune/pruning.hpp"
#include "photoprune/serialize.hpp"
#include "photoprune/universal.hpp"

namespace photoprune {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

void ensure_dir(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot write " + path.string());
    f << text;
    if (!f) throw IoError("write failed for " + path.string());
}

std::string read_text(const fs::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string metadata(const ExperimentConfig &cfg) {
    return "photoprune " + std::string(kVersion) + " command=" + cfg.command + " seed=" + std::to_string(cfg.seed);
}

void emit_table(const ExperimentConfig &cfg, const std::string &stem, const Table &table) {
    std::ostringstream os;
    if (cfg.format == "json") {
        write_table_json(os, table, metadata(cfg));
        write_text(cfg.out / (stem + ".json"), os.str());
    } else {
        write_csv(os, table, metadata(cfg));
        write_text(cfg.out / (stem + ".csv"), os.str());
    }
}

json config_json(const ExperimentConfig &cfg) {
    json j;
    j["command"] = cfg.command;
    j["n"] = cfg.n_list;
    j["ensemble"] = cfg.ensemble;
    j["seed"] = cfg.seed;
    j["delta0"] = cfg.delta0_pi;
    j["ratio_step"] = cfg.ratio_step;
    j["model"] = cfg.model;
    j["out"] = cfg.out.string();
    j["in"] = cfg.in.string();
    j["format"] = cfg.format;
    j["train"] = cfg.train;
    j["test"] = cfg.test;
    j["mode"] = cfg.bloch_mode;
    j["polar"] = cfg.polar;
    j["azimuthal"] = cfg.azimuthal;
    j["pooled"] = cfg.pooled;
    // jobs is left out on purpose: outputs do not depend on it.
    return j;
}

void write_manifest(const ExperimentConfig &cfg, json seeds) {
    json m;
    m["tool"] = "photoprune";
    m["version"] = kVersion;
    m["config"] = config_json(cfg);
    m["seeds"] = std::move(seeds);
    write_text(cfg.out / "manifest.json", m.dump(2) + "\n");
}

std::vector<double> delta0_radians(const ExperimentConfig &cfg) {
    std::vector<double> out;
    for (double d : cfg.delta0_pi) out.push_back(d * kPi);
    return out;
}

Table sweep_table(std::span<const SweepRow> rows) {
    Table t;
    t.columns = {"n", "mode", "delta0", "ratio", "realization", "fidelity"};
    for (const SweepRow &r : rows) {
        t.rows.push_back({static_cast<long long>(r.n), to_string(r.mode), r.delta0, r.defect_ratio,
                          static_cast<long long>(r.realization), r.fidelity});
    }
    return t;
}

// Mean and min/max band per curve point (the plotted quantities).
Table sweep_summary_table(std::span<const SweepRow> rows) {
    struct Acc {
        double sum = 0.0, lo = INFINITY, hi = -INFINITY;
        long long count = 0;
    };
    std::map<std::tuple<int, int, double, double>, Acc> acc;
    for (const SweepRow &r : rows) {
        Acc &a = acc[{r.n, static_cast<int>(r.mode), r.delta0, r.defect_ratio}];
        a.sum += r.fidelity;
        a.lo = std::min(a.lo, r.fidelity);
        a.hi = std::max(a.hi, r.fidelity);
        ++a.count;
    }
    Table t;
    t.columns = {"n", "mode", "delta0", "ratio", "mean_fidelity", "min_fidelity", "max_fidelity", "count"};
    for (const auto &[key, a] : acc) {
        const auto &[n, mode, delta0, ratio] = key;
        t.rows.push_back({static_cast<long long>(n), to_string(static_cast<DefectMode>(mode)), delta0, ratio,
                          a.sum / a.count, a.lo, a.hi, a.count});
    }
    return t;
}

void add_threshold_rows(Table &t, std::span<const SweepRow> rows, int n, std::span<const double> delta0s) {
    for (double d : delta0s) {
        for (DefectMode base : {DefectMode::NoiseBody, DefectMode::NoiseTail}) {
            t.rows.push_back({static_cast<long long>(n), d, to_string(base), pruning_threshold(rows, n, d, base)});
        }
    }
}

Table threshold_table() {
    Table t;
    t.columns = {"n", "delta0", "baseline_mode", "threshold"};
    return t;
}

std::vector<Model> requested_models(const std::string &name) {
    if (name == "all") {
        return {Model::PowerLaw, Model::PowerLawCutoff, Model::LogNormal, Model::Exponential};
    }
    return {parse_model(name)};
}

std::vector<double> thetas_of(const MeshPlan &plan) {
    std::vector<double> out;
    out.reserve(plan.blocks.size());
    for (const Block &b : plan.blocks) out.push_back(b.theta);
    return out;
}

struct PlanFile {
    int n;
    long long realization;
    fs::path path;
};

std::vector<PlanFile> find_plans(const fs::path &dir, const std::vector<int> &n_filter) {
    if (!fs::is_directory(dir)) {
        throw IoError("plan directory " + dir.string() + " does not exist");
    }
    static const std::regex pattern(R"(plan_n(\d+)_r(\d+)\.json)");
    std::vector<PlanFile> out;
    for (const auto &entry : fs::directory_iterator(dir)) {
        std::smatch m;
        const std::string name = entry.path().filename().string();
        if (!std::regex_match(name, m, pattern)) continue;
        const int n = std::stoi(m[1]);
        if (!n_filter.empty() && std::find(n_filter.begin(), n_filter.end(), n) == n_filter.end()) continue;
        out.push_back({n, std::stoll(m[2]), entry.path()});
    }
    if (out.empty()) {
        throw IoError("no plan_n*_r*.json files in " + dir.string());
    }
    std::sort(out.begin(), out.end(), [](const PlanFile &a, const PlanFile &b) {
        return std::tie(a.n, a.realization) < std::tie(b.n, b.realization);
    });
    return out;
}

void append_fit_row(Table &t, const FitResult &f, int n, const std::string &realization, const Sample &sample) {
    const auto names = param_names(f.model);
    std::vector<Table::Cell> row = {to_string(f.model), static_cast<long long>(n), realization};
    for (std::size_t p = 0; p < 2; ++p) {
        if (p < names.size()) {
            row.emplace_back(names[p]);
            row.emplace_back(f.params[p]);
        } else {
            row.emplace_back(std::string());
            row.emplace_back(std::string());
        }
    }
    row.emplace_back(f.lower_bound);
    row.emplace_back(f.ks_distance);
    row.emplace_back(f.log_likelihood);
    row.emplace_back(static_cast<long long>(f.tail_count));
    row.emplace_back(empirical_ccdf(sample, f.lower_bound));
    t.rows.push_back(std::move(row));
}

Table fit_table() {
    Table t;
    t.columns = {"model",       "n",           "realization",  "param1_name",    "param1_value", "param2_name",
                 "param2_value", "lower_bound", "ks_distance", "log_likelihood", "tail_count",   "empirical_ccdf_at_bound"};
    return t;
}

}  // namespace

ExperimentConfig default_config(const std::string &command) {
    ExperimentConfig cfg;
    cfg.command = command;
    if (command == "threshold") {
        cfg.n_list = {16, 32, 64, 128};
        cfg.delta0_pi = {0.02, 0.04, 0.06, 0.08, 0.10};
    } else if (command == "universal") {
        cfg.n_list = {16, 32};
        cfg.delta0_pi = {0.10, 0.20};
    } else if (command == "sweep") {
        cfg.n_list = {64};
        cfg.delta0_pi = {0.04, 0.08};
    } else if (command == "bloch") {
        cfg.n_list = {};
    } else if (command == "fit") {
        cfg.n_list = {};
    } else {
        cfg.n_list = {128};
    }
    return cfg;
}

void apply_json_config(ExperimentConfig &cfg, const std::string &json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        throw InvalidArgument(std::string("config: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
    try {
        for (const auto &[key, value] : j.items()) {
            if (key == "n") {
                cfg.n_list = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
            } else if (key == "ensemble") {
                cfg.ensemble = value.get<std::size_t>();
            } else if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "delta0") {
                cfg.delta0_pi =
                    value.is_array() ? value.get<std::vector<double>>() : std::vector<double>{value.get<double>()};
            } else if (key == "ratio_step") {
                cfg.ratio_step = value.get<double>();
            } else if (key == "model") {
                cfg.model = value.get<std::string>();
            } else if (key == "out") {
                cfg.out = value.get<std::string>();
            } else if (key == "in") {
                cfg.in = value.get<std::string>();
            } else if (key == "format") {
                cfg.format = value.get<std::string>();
            } else if (key == "jobs") {
                cfg.jobs = value.get<int>();
            } else if (key == "train") {
                cfg.train = value.get<std::size_t>();
            } else if (key == "test") {
                cfg.test = value.get<std::size_t>();
            } else if (key == "mode") {
                cfg.bloch_mode = value.get<std::string>();
            } else if (key == "polar") {
                cfg.polar = value.get<int>();
            } else if (key == "azimuthal") {
                cfg.azimuthal = value.get<int>();
            } else if (key == "pooled") {
                cfg.pooled = value.get<bool>();
            } else {
                throw InvalidArgument("config: unknown key '" + key + "'");
            }
        }
    } catch (const json::exception &e) {
        throw InvalidArgument(std::string("config: wrong value type: ") + e.what());
    }
}

void validate_config(const ExperimentConfig &cfg) {
    for (int n : cfg.n_list) {
        if (n < 1) throw InvalidArgument("n must be >= 1, got " + std::to_string(n));
        if (n < 2 && (cfg.command == "sweep" || cfg.command == "threshold" || cfg.command == "universal")) {
            throw InvalidArgument("n must be >= 2 for " + cfg.command);
        }
    }
    if (cfg.ensemble < 1) throw InvalidArgument("ensemble must be >= 1");
    if (cfg.train < 1 || cfg.test < 1) throw InvalidArgument("train and test must be >= 1");
    for (double d : cfg.delta0_pi) {
        if (!(d >= 0.0)) throw InvalidArgument("delta0 must be >= 0");
    }
    if (!(cfg.ratio_step > 0.0 && cfg.ratio_step <= 1.0)) throw InvalidArgument("ratio-step must lie in (0, 1]");
    if (cfg.format != "csv" && cfg.format != "json") throw InvalidArgument("format must be csv or json");
    if (cfg.model != "all") parse_model(cfg.model);
    parse_bloch_mode(cfg.bloch_mode);
    if (cfg.polar < 1 || cfg.azimuthal < 1) throw InvalidArgument("polar and azimuthal grids must be >= 1");
    if (cfg.out.empty()) throw InvalidArgument("out must not be empty");
}

void run_gen(const ExperimentConfig &cfg) {
    ensure_dir(cfg.out);
    json seeds = json::array();
    for (int n : cfg.n_list) {
        std::vector<std::string> docs(cfg.ensemble);
        parallel_for(cfg.ensemble, cfg.jobs, [&](std::size_t k) {
            docs[k] = plan_to_json(decompose(haar_random_unitary(n, realization_seed(cfg.seed, k))));
        });
        for (std::size_t k = 0; k < cfg.ensemble; ++k) {
            const std::string name = "plan_n" + std::to_string(n) + "_r" + std::to_string(k) + ".json";
            write_text(cfg.out / name, docs[k]);
            const RngSeed s = realization_seed(cfg.seed, k);
            seeds.push_back({{"file", name}, {"n", n}, {"realization", k},
                             {"base_seed", s.base_seed}, {"stream_index", s.stream_index}});
        }
    }
    write_manifest(cfg, std::move(seeds));
}

void run_fit(const ExperimentConfig &cfg) {
    const fs::path in = cfg.in.empty() ? cfg.out : cfg.in;
    const auto files = find_plans(in, cfg.n_list);
    ensure_dir(cfg.out);
    const auto models = requested_models(cfg.model);

    std::vector<Sample> samples(files.size());
    std::vector<std::vector<FitResult>> fits(files.size());
    parallel_for(files.size(), cfg.jobs, [&](std::size_t i) {
        const MeshPlan plan = plan_from_json(read_text(files[i].path));
        if (plan.n != files[i].n) {
            throw IoError(files[i].path.string() + ": file name says n=" + std::to_string(files[i].n) +
                          " but plan has n=" + std::to_string(plan.n));
        }
        samples[i] = Sample::from(thetas_of(plan));
        for (Model m : models) fits[i].push_back(fit_model(m, samples[i]));
    });

    Table t = fit_table();
    for (std::size_t i = 0; i < files.size(); ++i) {
        for (const FitResult &f : fits[i]) {
            append_fit_row(t, f, files[i].n, std::to_string(files[i].realization), samples[i]);
        }
    }
    if (cfg.pooled) {
        std::map<int, std::vector<double>> pooled;
        for (std::size_t i = 0; i < files.size(); ++i) {
            auto &dst = pooled[files[i].n];
            dst.insert(dst.end(), samples[i].values.begin(), samples[i].values.end());
            dst.insert(dst.end(), samples[i].excluded_zeros, 0.0);
        }
        for (const auto &[n, values] : pooled) {
            const Sample s = Sample::from(values);
            for (Model m : models) append_fit_row(t, fit_model(m, s), n, "pooled", s);
        }
    }
    emit_table(cfg, "fits", t);

    // Ensemble mean and RMS deviation of every fitted quantity per (n, model).
    std::map<std::tuple<int, std::string, std::string>, std::vector<double>> by_param;
    for (std::size_t i = 0; i < files.size(); ++i) {
        for (const FitResult &f : fits[i]) {
            const auto names = param_names(f.model);
            for (std::size_t p = 0; p < names.size(); ++p) {
                by_param[{files[i].n, to_string(f.model), names[p]}].push_back(f.params[p]);
            }
            by_param[{files[i].n, to_string(f.model), "lower_bound"}].push_back(f.lower_bound);
        }
    }
    Table summary;
    summary.columns = {"n", "model", "quantity", "mean", "rmse", "min", "max", "count"};
    for (const auto &[key, vals] : by_param) {
        const auto &[n, model, name] = key;
        double mean = 0.0;
        for (double v : vals) mean += v;
        mean /= static_cast<double>(vals.size());
        double sq = 0.0;
        for (double v : vals) sq += (v - mean) * (v - mean);
        const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
        summary.rows.push_back({static_cast<long long>(n), model, name, mean,
                                std::sqrt(sq / static_cast<double>(vals.size())), *lo, *hi,
                                static_cast<long long>(vals.size())});
    }
    emit_table(cfg, "fit_summary", summary);

    // Example distribution per degree: the first realization found.
    Table ccdf;
    ccdf.columns = {"n", "realization", "theta", "ccdf"};
    Table pdf;
    pdf.columns = {"n", "realization", "bin_lo", "bin_hi", "bin_center", "pdf"};
    constexpr int kBins = 40;
    std::map<int, bool> seen;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (seen[files[i].n]) continue;
        seen[files[i].n] = true;
        const Sample &s = samples[i];
        const auto &v = s.values;
        if (v.empty()) continue;
        const double total = static_cast<double>(s.total_count());
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k > 0 && v[k] == v[k - 1]) continue;
            ccdf.rows.push_back({static_cast<long long>(files[i].n), files[i].realization, v[k],
                                 static_cast<double>(v.size() - k) / total});
        }
        const double lo = v.front();
        const double hi = v.back();
        if (!(hi > lo)) continue;
        const double ratio = std::log(hi / lo);
        std::vector<long long> counts(kBins, 0);
        for (double x : v) {
            int b = static_cast<int>(std::floor(kBins * std::log(x / lo) / ratio));
            counts[std::clamp(b, 0, kBins - 1)]++;
        }
        for (int b = 0; b < kBins; ++b) {
            const double e0 = lo * std::exp(ratio * b / kBins);
            const double e1 = lo * std::exp(ratio * (b + 1) / kBins);
            pdf.rows.push_back({static_cast<long long>(files[i].n), files[i].realization, e0, e1, std::sqrt(e0 * e1),
                                static_cast<double>(counts[b]) / (total * (e1 - e0))});
        }
    }
    emit_table(cfg, "ccdf", ccdf);
    emit_table(cfg, "pdf", pdf);

    json inputs = json::array();
    for (const PlanFile &f : files) inputs.push_back(f.path.filename().string());
    write_manifest(cfg, json{{"inputs", inputs}});
}

void run_sweep(const ExperimentConfig &cfg) {
    ensure_dir(cfg.out);
    std::vector<SweepRow> rows;
    for (int n : cfg.n_list) {
        SweepConfig sc;
        sc.n = n;
        sc.ensemble_size = cfg.ensemble;
        sc.ratio_grid = make_ratio_grid(cfg.ratio_step);
        sc.delta0_list = delta0_radians(cfg);
        sc.base_seed = cfg.seed;
        sc.jobs = cfg.jobs;
        auto part = fidelity_sweep(sc);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    emit_table(cfg, "sweep", sweep_table(rows));
    emit_table(cfg, "sweep_summary", sweep_summary_table(rows));
    write_manifest(cfg, json{{"base_seed", cfg.seed}});
}

void run_threshold(const ExperimentConfig &cfg) {
    ensure_dir(cfg.out);
    const auto delta0s = delta0_radians(cfg);
    Table t = threshold_table();
    std::vector<SweepRow> all;
    for (int n : cfg.n_list) {
        SweepConfig sc;
        sc.n = n;
        sc.ensemble_size = cfg.ensemble;
        sc.ratio_grid = make_ratio_grid(cfg.ratio_step);
        sc.delta0_list = delta0s;
        sc.base_seed = cfg.seed;
        sc.jobs = cfg.jobs;
        const auto rows = fidelity_sweep(sc);
        add_threshold_rows(t, rows, n, delta0s);
        all.insert(all.end(), rows.begin(), rows.end());
    }
    emit_table(cfg, "thresholds", t);
    emit_table(cfg, "sweep_summary", sweep_summary_table(all));
    write_manifest(cfg, json{{"base_seed", cfg.seed}});
}

void run_universal(const ExperimentConfig &cfg) {
    ensure_dir(cfg.out);
    const auto delta0s = delta0_radians(cfg);
    Table thresholds = threshold_table();
    std::vector<SweepRow> all;
    for (int n : cfg.n_list) {
        UniversalConfig uc;
        uc.n = n;
        uc.train_size = cfg.train;
        uc.test_size = cfg.test;
        uc.ratio_grid = make_ratio_grid(cfg.ratio_step);
        uc.delta0_list = delta0s;
        uc.base_seed = cfg.seed;
        uc.jobs = cfg.jobs;
        const UniversalResult res = universal_defect_sweep(uc);

        Table pos;
        pos.columns = {"m", "l", "mesh_column", "mean_theta", "mean_phi", "rank"};
        const auto ranks = res.stats.ranks();
        for (std::size_t b = 0; b < res.stats.positions.size(); ++b) {
            const PositionMean &p = res.stats.positions[b];
            pos.rows.push_back({static_cast<long long>(p.m), static_cast<long long>(p.l),
                                static_cast<long long>(p.mesh_column), p.mean_theta, p.mean_phi,
                                static_cast<long long>(ranks[b])});
        }
        emit_table(cfg, "positions_n" + std::to_string(n), pos);
        add_threshold_rows(thresholds, res.rows, n, delta0s);
        all.insert(all.end(), res.rows.begin(), res.rows.end());
    }
    emit_table(cfg, "universal_sweep", sweep_table(all));
    emit_table(cfg, "universal_sweep_summary", sweep_summary_table(all));
    emit_table(cfg, "universal_thresholds", thresholds);
    write_manifest(cfg, json{{"base_seed", cfg.seed}, {"train_streams", 2}, {"test_streams", 3}});
}

void run_bloch(const ExperimentConfig &cfg) {
    ensure_dir(cfg.out);
    const BlochMode mode = parse_bloch_mode(cfg.bloch_mode);
    const BlochSampleSet set = bloch_transform_samples(mode, cfg.polar, cfg.azimuthal, RngSeed{cfg.seed, 0});
    Table t;
    t.columns = {"x0", "y0", "z0", "x", "y", "z"};
    for (std::size_t k = 0; k < set.points.size(); ++k) {
        const auto &a = set.initial[k];
        const auto &b = set.points[k];
        t.rows.push_back({a[0], a[1], a[2], b[0], b[1], b[2]});
    }
    emit_table(cfg, "bloch_" + to_string(mode), t);
    write_manifest(cfg, json{{"base_seed", cfg.seed}, {"stream_index", 0}});
}

void run_command(const ExperimentConfig &cfg) {
    validate_config(cfg);
    static const std::map<std::string, std::function<void(const ExperimentConfig &)>> table = {
        {"gen", run_gen},           {"fit", run_fit},           {"sweep", run_sweep},
        {"threshold", run_threshold}, {"universal", run_universal}, {"bloch", run_bloch},
    };
    const auto it = table.find(cfg.command);
    if (it == table.end()) throw InvalidArgument("unknown command '" + cfg.command + "'");
    it->second(cfg);
}

namespace {

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

// Flag values parsed by CLI11; copied over the config only when given.
struct FlagValues {
    std::vector<int> n;
    std::size_t ensemble = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string in;
    std::string format;
    int jobs = 0;
    std::string model;
    bool pooled = false;
    std::vector<double> delta0;
    double ratio_step = 0.0;
    std::size_t train = 0;
    std::size_t test = 0;
    std::string mode;
    int polar = 0;
    int azimuthal = 0;
    std::string config;
};

struct Binding {
    CLI::Option *option;
    std::function<void(ExperimentConfig &)> apply;
};

}  // namespace

int run_cli(int argc, char **argv) {
    CLI::App app{"Clements-mesh rotation statistics, fitting and pruning experiments"};
    app.require_subcommand(1);
    FlagValues flags;
    std::map<std::string, std::vector<Binding>> bindings;

    auto common = [&](CLI::App *sub) {
        auto &b = bindings[sub->get_name()];
        b.push_back({sub->add_option("--n", flags.n, "matrix degree(s)")->delimiter(','),
                     [&](ExperimentConfig &c) { c.n_list = flags.n; }});
        b.push_back({sub->add_option("--ensemble", flags.ensemble, "number of Haar realizations"),
                     [&](ExperimentConfig &c) { c.ensemble = flags.ensemble; }});
        b.push_back({sub->add_option("--seed", flags.seed, "base seed"), [&](ExperimentConfig &c) { c.seed = flags.seed; }});
        b.push_back({sub->add_option("--out", flags.out, "output directory"), [&](ExperimentConfig &c) { c.out = flags.out; }});
        b.push_back({sub->add_option("--format", flags.format, "csv or json"),
                     [&](ExperimentConfig &c) { c.format = flags.format; }});
        b.push_back({sub->add_option("--jobs", flags.jobs, "worker threads (0 = all cores)"),
                     [&](ExperimentConfig &c) { c.jobs = flags.jobs; }});
        sub->add_option("--config", flags.config, "JSON config file; explicit flags take precedence");
    };
    auto noise = [&](CLI::App *sub) {
        auto &b = bindings[sub->get_name()];
        b.push_back({sub->add_option("--delta0", flags.delta0, "noise amplitude in units of pi (repeatable)")->delimiter(','),
                     [&](ExperimentConfig &c) { c.delta0_pi = flags.delta0; }});
        b.push_back({sub->add_option("--ratio-step", flags.ratio_step, "defect-ratio grid step"),
                     [&](ExperimentConfig &c) { c.ratio_step = flags.ratio_step; }});
    };

    CLI::App *gen = app.add_subcommand("gen", "decompose Haar-random unitaries into mesh plans");
    common(gen);
    CLI::App *fit = app.add_subcommand("fit", "fit theta distributions of stored plans");
    common(fit);
    bindings["fit"].push_back({fit->add_option("--model", flags.model, "pl, plc, ln, exp or all"),
                               [&](ExperimentConfig &c) { c.model = flags.model; }});
    bindings["fit"].push_back({fit->add_option("--in", flags.in, "directory holding plan files (default: --out)"),
                               [&](ExperimentConfig &c) { c.in = flags.in; }});
    bindings["fit"].push_back({fit->add_flag("--pooled", flags.pooled, "also fit the pooled ensemble per n"),
                               [&](ExperimentConfig &c) { c.pooled = flags.pooled; }});
    CLI::App *sweep = app.add_subcommand("sweep", "fidelity versus defect ratio, per-circuit ranking");
    common(sweep);
    noise(sweep);
    CLI::App *threshold = app.add_subcommand("threshold", "pruning thresholds versus noise level");
    common(threshold);
    noise(threshold);
    CLI::App *universal = app.add_subcommand("universal", "ensemble-averaged architecture and its sweep");
    common(universal);
    noise(universal);
    bindings["universal"].push_back({universal->add_option("--train", flags.train, "training ensemble size"),
                                     [&](ExperimentConfig &c) { c.train = flags.train; }});
    bindings["universal"].push_back({universal->add_option("--test", flags.test, "test ensemble size"),
                                     [&](ExperimentConfig &c) { c.test = flags.test; }});
    CLI::App *bloch = app.add_subcommand("bloch", "Bloch-sphere images of a grid of states");
    common(bloch);
    bindings["bloch"].push_back({bloch->add_option("--mode", flags.mode, "theta, phi or both"),
                                 [&](ExperimentConfig &c) { c.bloch_mode = flags.mode; }});
    bindings["bloch"].push_back({bloch->add_option("--polar", flags.polar, "polar grid points"),
                                 [&](ExperimentConfig &c) { c.polar = flags.polar; }});
    bindings["bloch"].push_back({bloch->add_option("--azimuthal", flags.azimuthal, "azimuthal grid points"),
                                 [&](ExperimentConfig &c) { c.azimuthal = flags.azimuthal; }});

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: usage: " << one_line(e.what()) << '\n';
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        ExperimentConfig cfg = default_config(command);
        if (!flags.config.empty()) apply_json_config(cfg, read_text(flags.config));
        for (const Binding &b : bindings[command]) {
            if (b.option->count() > 0) b.apply(cfg);
        }
        run_command(cfg);
    } catch (const std::exception &e) {
        std::cerr << "error: " << command << ": " << one_line(e.what()) << '\n';
        return 1;
    }
    return 0;
}

}  // namespace photoprune
