#include "gabm/experiments.hpp"

#include "gabm/checkpoint.hpp"
#include "gabm/csv.hpp"
#include "gabm/error.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace gabm {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view to_string(BackendKind k)
{
    switch (k) {
    case BackendKind::Llm:
        return "llm";
    case BackendKind::Oracle:
        return "oracle";
    case BackendKind::AlwaysOut:
        return "always-out";
    case BackendKind::AlwaysHome:
        return "always-home";
    }
    return "?";
}

BackendKind parse_backend_kind(std::string_view s)
{
    for (auto k : {BackendKind::Llm, BackendKind::Oracle, BackendKind::AlwaysOut, BackendKind::AlwaysHome}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw ConfigError(fmt::format("unknown backend '{}' (expected llm, oracle, always-out or always-home)", s));
}

json to_json(const BackendSpec& spec)
{
    return json{{"kind", to_string(spec.kind)}, {"oracle", to_json(spec.oracle)}, {"llm", to_json(spec.llm)}};
}

BackendSpec backend_spec_from_json(const json& j, std::string_view where)
{
    if (!j.is_object()) {
        throw ConfigError(fmt::format("{}: expected an object", where));
    }
    BackendSpec spec;
    auto it = j.find("kind");
    if (it == j.end() || !it->is_string()) {
        throw ConfigError(fmt::format("{}.kind: missing or not a string", where));
    }
    try {
        spec.kind = parse_backend_kind(it->get<std::string>());
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}.kind: {}", where, e.what()));
    }
    if (auto o = j.find("oracle"); o != j.end()) {
        spec.oracle = oracle_policy_from_json(*o, fmt::format("{}.oracle", where));
    }
    if (auto l = j.find("llm"); l != j.end()) {
        spec.llm = llm_config_from_json(*l, fmt::format("{}.llm", where));
    }
    return spec;
}

std::unique_ptr<DecisionBackend> make_backend(const BackendSpec& spec, std::uint64_t seed, std::shared_ptr<LlmClient> llm_client)
{
    switch (spec.kind) {
    case BackendKind::AlwaysOut:
        return std::make_unique<ConstantBackend>(false);
    case BackendKind::AlwaysHome:
        return std::make_unique<ConstantBackend>(true);
    case BackendKind::Oracle:
        return std::make_unique<OracleBackend>(spec.oracle, seed);
    case BackendKind::Llm:
        if (!llm_client) {
            llm_client = std::make_shared<LlmClient>(spec.llm);
        }
        return std::make_unique<LlmBackend>(std::move(llm_client));
    }
    throw ConfigError("unhandled backend kind");
}

WorldConfig ExperimentConfig::replication_world(int k) const
{
    WorldConfig w = world;
    w.seed = base_seed + static_cast<std::uint64_t>(k);
    w.run_name = fmt::format("{}/replication-{}", label, k);
    return w;
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.replications < 1) {
        throw ConfigError(fmt::format("replications must be >= 1 (got {})", cfg.replications));
    }
    if (cfg.label.empty() || cfg.label.find_first_of("/\\") != std::string::npos || cfg.label == "." || cfg.label == "..") {
        throw ConfigError(fmt::format("label '{}' must be a non-empty single path component", cfg.label));
    }
    try {
        validate(cfg.world);
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("world.{}", e.what()));
    }
    validate(cfg.backend.oracle);
}

json to_json(const ExperimentConfig& cfg)
{
    json world = to_json(cfg.world);
    world.erase("seed");
    world.erase("run_name");
    return json{{"schema_version", kConfigSchemaVersion},
                {"label", cfg.label},
                {"replications", cfg.replications},
                {"base_seed", cfg.base_seed},
                {"world", world},
                {"backend", to_json(cfg.backend)}};
}

ExperimentConfig experiment_config_from_json(const json& j)
{
    if (!j.is_object()) {
        throw ConfigError("config: expected a JSON object");
    }
    auto v = j.find("schema_version");
    if (v == j.end() || !v->is_number_integer()) {
        throw ConfigError("schema_version: missing or not an integer");
    }
    if (v->get<int>() != kConfigSchemaVersion) {
        throw ConfigError(fmt::format("schema_version: expected {}, got {}", kConfigSchemaVersion, v->get<int>()));
    }
    ExperimentConfig cfg;
    if (auto it = j.find("label"); it != j.end()) {
        if (!it->is_string()) {
            throw ConfigError("label: expected a string");
        }
        cfg.label = it->get<std::string>();
    }
    if (auto it = j.find("replications"); it != j.end()) {
        if (!it->is_number_integer()) {
            throw ConfigError("replications: expected an integer");
        }
        cfg.replications = it->get<int>();
    }
    if (auto it = j.find("base_seed"); it != j.end()) {
        if (!it->is_number_unsigned()) {
            throw ConfigError("base_seed: expected a non-negative integer");
        }
        cfg.base_seed = it->get<std::uint64_t>();
    }
    auto w = j.find("world");
    if (w == j.end()) {
        throw ConfigError("world: missing field");
    }
    if (!w->is_object()) {
        throw ConfigError("world: expected an object");
    }
    // Fields left out keep their defaults.
    WorldConfig defaults;
    defaults.seed = cfg.base_seed;
    defaults.run_name = cfg.label;
    json world = to_json(defaults);
    for (const auto& [key, value] : w->items()) {
        if (!world.contains(key)) {
            throw ConfigError(fmt::format("world.{}: unknown field", key));
        }
        world[key] = value;
    }
    cfg.world = world_config_from_json(world, "world");
    auto b = j.find("backend");
    if (b != j.end()) {
        cfg.backend = backend_spec_from_json(*b, "backend");
    }
    validate(cfg);
    return cfg;
}

ExperimentConfig load_experiment_config(const fs::path& path)
{
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("{}: invalid JSON ({})", path.string(), e.what()));
    }
    return experiment_config_from_json(doc);
}

double implied_r0(const WorldConfig& world)
{
    return world.infection_rate * world.contact_rate * kInfectionDays;
}

const std::vector<PresetInfo>& preset_catalog()
{
    static const std::vector<PresetInfo> catalog = {
        {"town100-base", 3.0, "100 agents, no feedback"},
        {"town100-selfhealth", 3.0, "100 agents, own-symptom feedback"},
        {"town100-full", 3.0, "100 agents, own-symptom and prevalence feedback"},
        {"town1000-r2", 2.0, "1000 agents, full feedback, contact rate 4, infectivity 0.0833"},
        {"town1000-r2.5", 2.5, "1000 agents, full feedback, contact rate 5, infectivity 0.0833"},
        {"town1000-r3", 3.0, "1000 agents, full feedback, contact rate 5, infectivity 0.1"},
    };
    return catalog;
}

ExperimentConfig preset(std::string_view name)
{
    ExperimentConfig cfg;
    cfg.label = std::string(name);
    cfg.backend.kind = BackendKind::Oracle;
    cfg.world.step_count = kDefaultStepCount;
    cfg.world.contact_rate = 5;
    cfg.world.infection_rate = 0.1;
    if (name.starts_with("town100-")) {
        cfg.world.initial_healthy = 99;
        cfg.world.initial_infected = 1;
        cfg.replications = 10;
        if (name == "town100-base") {
            cfg.world.condition = Condition::Base;
        } else if (name == "town100-selfhealth") {
            cfg.world.condition = Condition::SelfHealth;
        } else if (name == "town100-full") {
            cfg.world.condition = Condition::Full;
        } else {
            cfg.label.clear();
        }
    } else if (name.starts_with("town1000-")) {
        cfg.world.initial_healthy = 990;
        cfg.world.initial_infected = 10;
        cfg.world.condition = Condition::Full;
        cfg.replications = 2;
        if (name == "town1000-r2") {
            cfg.world.contact_rate = 4;
            cfg.world.infection_rate = 0.0833;
        } else if (name == "town1000-r2.5") {
            cfg.world.infection_rate = 0.0833;
        } else if (name != "town1000-r3") {
            cfg.label.clear();
        }
    } else {
        cfg.label.clear();
    }
    if (cfg.label.empty()) {
        std::vector<std::string> names;
        for (const auto& p : preset_catalog()) {
            names.push_back(p.name);
        }
        throw ConfigError(fmt::format("unknown preset '{}' (valid presets: {})", name, fmt::join(names, ", ")));
    }
    cfg.world.run_name = cfg.label;
    cfg.world.seed = cfg.base_seed;

    for (const auto& info : preset_catalog()) {
        if (info.name == name) {
            const double r0 = implied_r0(cfg.world);
            if (std::abs(r0 - info.labeled_r0) > 0.02 * info.labeled_r0) {
                throw ConfigError(fmt::format("preset {}: implied R0 {} deviates from {}", name, r0, info.labeled_r0));
            }
        }
    }
    return cfg;
}

std::string_view to_string(ReplicationStatus s)
{
    switch (s) {
    case ReplicationStatus::Completed:
        return "completed";
    case ReplicationStatus::Skipped:
        return "skipped";
    case ReplicationStatus::Failed:
        return "failed";
    }
    return "?";
}

fs::path replication_dir(const fs::path& out_root, const ExperimentConfig& cfg, int k)
{
    return out_root / cfg.label / fmt::format("replication-{}", k);
}

json run_summary_json(const RunRecord& record, std::string_view status)
{
    return json{{"status", status},
                {"config", to_json(record.config)},
                {"population", record.population},
                {"initial_infected", record.initial_infected},
                {"days_run", record.days_run},
                {"early_stopped", record.early_stopped},
                {"ever_infected", record.ever_infected},
                {"new_infections", record.new_infections},
                {"summary", to_json(summarize(record))}};
}

void write_run_outputs(const RunRecord& record, const fs::path& dir, std::string_view status)
{
    write_file_atomic(dir / "day_metrics.csv", metrics_csv(record.metrics));
    write_file_atomic(dir / "decisions.csv", decisions_csv(record.decisions));
    write_file_atomic(dir / "summary.json", run_summary_json(record, status).dump(2) + "\n");
}

namespace {

json read_json_file(const fs::path& path)
{
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw IoError(fmt::format("{}: invalid JSON ({})", path.string(), e.what()));
    }
}

bool completed_run_exists(const fs::path& dir)
{
    std::error_code ec;
    if (!fs::exists(dir / "summary.json", ec) || !fs::exists(dir / "day_metrics.csv", ec)) {
        return false;
    }
    try {
        return read_json_file(dir / "summary.json").value("status", "") == "completed";
    } catch (const IoError&) {
        return false;
    }
}

} // namespace

RunRecord load_run_directory(const fs::path& dir)
{
    const json summary = read_json_file(dir / "summary.json");
    RunRecord r;
    try {
        r.config = world_config_from_json(summary.at("config"), "config");
        r.population = summary.at("population").get<int>();
        r.initial_infected = summary.at("initial_infected").get<int>();
        r.days_run = summary.at("days_run").get<int>();
        r.early_stopped = summary.at("early_stopped").get<bool>();
        r.ever_infected = summary.at("ever_infected").get<int>();
        r.new_infections = summary.at("new_infections").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw IoError(fmt::format("{}: {}", (dir / "summary.json").string(), e.what()));
    } catch (const ConfigError& e) {
        throw IoError(fmt::format("{}: {}", (dir / "summary.json").string(), e.what()));
    }
    r.metrics = read_metrics_csv(dir / "day_metrics.csv");
    std::error_code ec;
    if (fs::exists(dir / "decisions.csv", ec)) {
        r.decisions = read_decisions_csv(dir / "decisions.csv");
    }
    return r;
}

std::vector<ReplicationResult> run_replications(const ExperimentConfig& cfg, const ReplicationOptions& options)
{
    validate(cfg);
    std::shared_ptr<LlmClient> client = options.llm_client;
    if (cfg.backend.kind == BackendKind::Llm && !client) {
        // Fails fast on a missing key before any simulation work.
        client = std::make_shared<LlmClient>(cfg.backend.llm);
    }

    std::vector<ReplicationResult> results(static_cast<std::size_t>(cfg.replications));
    auto run_one = [&](int k) {
        ReplicationResult& res = results[static_cast<std::size_t>(k)];
        res.index = k;
        const WorldConfig world_cfg = cfg.replication_world(k);
        res.seed = world_cfg.seed;
        std::optional<fs::path> dir;
        if (options.out_root) {
            dir = replication_dir(*options.out_root, cfg, k);
            res.directory = *dir;
            if (!options.force && completed_run_exists(*dir)) {
                try {
                    res.record = load_run_directory(*dir);
                    res.status = ReplicationStatus::Skipped;
                    return;
                } catch (const IoError&) {
                    // unreadable leftovers are recomputed
                }
            }
        }
        RunOptions run_opts;
        if (dir) {
            run_opts.checkpoint_path = *dir / "checkpoint.json";
        }
        run_opts.attachments = json{{"backend", to_json(cfg.backend)}, {"label", cfg.label}, {"replication", k}};
        if (options.on_day) {
            run_opts.on_day = [&, k](const WorldState& w) { options.on_day(k, w); };
        }
        try {
            auto backend = make_backend(cfg.backend, world_cfg.seed, client);
            WorldState world = init_world(world_cfg);
            continue_run(world, *backend, run_opts);
            res.record = make_record(world);
            if (dir) {
                write_run_outputs(*res.record, *dir);
            }
            res.status = ReplicationStatus::Completed;
        } catch (const RunAborted& e) {
            res.status = ReplicationStatus::Failed;
            res.error = e.what();
            res.checkpoint = e.checkpoint();
        } catch (const std::exception& e) {
            res.status = ReplicationStatus::Failed;
            res.error = e.what();
        }
        if (res.status == ReplicationStatus::Failed && dir) {
            try {
                json failed{{"status", "failed"}, {"error", res.error}, {"config", to_json(world_cfg)}};
                if (res.checkpoint) {
                    failed["checkpoint"] = res.checkpoint->string();
                }
                write_file_atomic(*dir / "summary.json", failed.dump(2) + "\n");
            } catch (const IoError&) {
            }
        }
    };

    const bool deterministic = cfg.backend.kind != BackendKind::Llm;
    const std::size_t threads =
        options.parallel && deterministic ? std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), results.size()) : 1;
    if (threads <= 1) {
        for (int k = 0; k < cfg.replications; ++k) {
            run_one(k);
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (int k = next++; k < cfg.replications; k = next++) {
                    run_one(k);
                }
            });
        }
    }
    return results;
}

ResumeResult resume_from_checkpoint(const fs::path& checkpoint, const std::optional<BackendSpec>& backend_override,
                                    std::function<void(const WorldState&)> on_day, std::shared_ptr<LlmClient> llm_client)
{
    LoadedCheckpoint loaded = load_checkpoint(checkpoint);
    ResumeResult result;
    result.directory = checkpoint.parent_path();
    WorldState& world = loaded.world;
    if (world.finished()) {
        result.already_finished = true;
        result.record = make_record(world);
        return result;
    }
    BackendSpec spec;
    if (backend_override) {
        spec = *backend_override;
    } else if (loaded.attachments.contains("backend")) {
        spec = backend_spec_from_json(loaded.attachments.at("backend"), "attachments.backend");
    } else {
        throw ConfigError("checkpoint does not record its backend; pass --backend");
    }
    json attachments = loaded.attachments;
    attachments["backend"] = to_json(spec);

    auto backend = make_backend(spec, world.config.seed, std::move(llm_client));
    RunOptions opts;
    opts.checkpoint_path = checkpoint;
    opts.attachments = attachments;
    opts.on_day = std::move(on_day);
    continue_run(world, *backend, opts);
    result.record = make_record(world);
    write_run_outputs(result.record, result.directory);
    return result;
}

json to_json(const LogitResult& r)
{
    json coefs = json::array();
    for (std::size_t i = 0; i < r.names.size(); ++i) {
        coefs.push_back(json{{"name", r.names[i]}, {"coefficient", r.coefficients[i]}, {"std_error", r.standard_errors[i]}});
    }
    return json{{"coefficients", coefs},
                {"log_likelihood", r.log_likelihood},
                {"null_log_likelihood", r.null_log_likelihood},
                {"pseudo_r2", r.pseudo_r2},
                {"bic", r.bic},
                {"n_observations", r.n_observations},
                {"n_parameters", r.n_parameters},
                {"n_groups", r.n_groups},
                {"n_dropped_groups", r.n_dropped_groups},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"separation", r.separation}};
}

namespace {

std::string band_csv(const Band& band, std::size_t window)
{
    const auto smooth = moving_average(band.mean, window);
    std::string out = "day,mean,lower,upper,mean_smoothed\n";
    for (std::size_t d = 0; d < band.mean.size(); ++d) {
        out += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f}\n", d, band.mean[d], band.lower[d], band.upper[d], smooth[d]);
    }
    return out;
}

json fit_json(const std::optional<ExpFit>& fit)
{
    if (!fit) {
        return nullptr;
    }
    return json{{"a", fit->a}, {"b", fit->b}, {"rss", fit->rss}, {"points_used", fit->points_used}};
}

} // namespace

json analyze_directory(const fs::path& dir, const AnalyzeOptions& options)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw IoError(fmt::format("{}: not a directory", dir.string()));
    }
    std::vector<fs::path> run_dirs;
    const bool single = fs::exists(dir / "day_metrics.csv", ec);
    if (single) {
        run_dirs.push_back(dir);
    } else {
        std::vector<std::pair<int, fs::path>> found;
        for (const auto& entry : fs::directory_iterator(dir)) {
            const auto name = entry.path().filename().string();
            if (entry.is_directory() && name.starts_with("replication-") && completed_run_exists(entry.path())) {
                try {
                    found.emplace_back(std::stoi(name.substr(12)), entry.path());
                } catch (const std::exception&) {
                }
            }
        }
        std::sort(found.begin(), found.end());
        for (auto& [k, p] : found) {
            run_dirs.push_back(p);
        }
    }
    if (run_dirs.empty()) {
        throw IoError(fmt::format("{}: no completed runs found", dir.string()));
    }
    if (options.logit) {
        for (const auto& d : run_dirs) {
            if (!fs::exists(d / "decisions.csv", ec)) {
                throw IoError(fmt::format("{}: decisions.csv is missing; --logit needs decision logs", d.string()));
            }
        }
    }

    std::vector<RunRecord> runs;
    for (const auto& d : run_dirs) {
        runs.push_back(load_run_directory(d));
    }

    json doc = single ? run_summary_json(runs.front(), "completed") : json::object();
    json per_run = json::array();
    SeriesSummary mean_summary;
    double mean_cum = 0, mean_mob = 0, mean_peak = 0, mean_dur = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto s = summarize(runs[i]);
        per_run.push_back(json{{"directory", run_dirs[i].filename().string()}, {"summary", to_json(s)}});
        mean_cum += s.cumulative_cases;
        mean_mob += s.average_mobility;
        mean_peak += s.largest_peak;
        mean_dur += s.epidemic_duration;
    }
    const double nr = static_cast<double>(runs.size());
    json analysis;
    if (!single) {
        analysis["runs"] = per_run;
        analysis["mean"] = json{{"cumulative_cases", mean_cum / nr},
                                {"average_mobility", mean_mob / nr},
                                {"largest_peak", mean_peak / nr},
                                {"epidemic_duration", mean_dur / nr}};
    }

    const auto relation = prevalence_mobility_relation(runs);
    analysis["prevalence_mobility"] = json{{"points", relation.points.size()}, {"fit", fit_json(relation.fit)}};
    const auto histogram = stay_home_distribution(runs);
    analysis["stay_home_histogram"] = histogram;

    if (options.logit) {
        const auto data = design_from_logs(runs, *options.logit);
        analysis["logit"] = to_json(logit_fit(data));
        analysis["logit"]["fixed_effects"] = options.logit->fixed_effects;
    }

    if (!single) {
        std::vector<std::vector<double>> cases;
        std::vector<std::vector<double>> mobility;
        for (const auto& r : runs) {
            std::vector<double> c;
            std::vector<double> m;
            for (const auto& d : r.metrics) {
                c.push_back(d.new_cases);
                m.push_back(r.population > 0 ? static_cast<double>(d.mobility_count) / r.population : 0.0);
            }
            cases.push_back(std::move(c));
            mobility.push_back(std::move(m));
        }
        write_file_atomic(dir / "band_new_cases.csv", band_csv(cross_run_band(cases, options.band_level), options.smoothing_window));
        write_file_atomic(dir / "band_mobility.csv", band_csv(cross_run_band(mobility, options.band_level), options.smoothing_window));
        analysis["band_level"] = options.band_level;

        std::string points = "run,day,prevalence_pct,go_out_fraction\n";
        for (const auto& p : relation.points) {
            points += fmt::format("{},{},{:.1f},{:.6f}\n", p.run, p.day, p.prevalence_pct, p.go_out_fraction);
        }
        write_file_atomic(dir / "relation_points.csv", points);

        std::string hist = "stay_home_days,agents\n";
        for (std::size_t d = 0; d < histogram.size(); ++d) {
            hist += fmt::format("{},{}\n", d, histogram[d]);
        }
        write_file_atomic(dir / "stay_home_histogram.csv", hist);

        if (options.logit) {
            std::string table = "name,coefficient,std_error\n";
            for (const auto& c : analysis["logit"]["coefficients"]) {
                table += fmt::format("{},{:.6f},{:.6f}\n", c["name"].get<std::string>(), c["coefficient"].get<double>(),
                                     c["std_error"].get<double>());
            }
            write_file_atomic(dir / "logit.csv", table);
        }
    }
    doc["analysis"] = analysis;
    write_file_atomic(dir / "summary.json", doc.dump(2) + "\n");
    return doc;
}

} // namespace gabm
