#include "gabm/cli.hpp"

#include "gabm/error.hpp"
#include "gabm/experiments.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>

#include <iostream>
#include <mutex>
#include <sstream>

namespace gabm {

namespace fs = std::filesystem;

namespace {

struct LlmOverrides {
    std::optional<std::string> api_base;
    std::optional<std::string> model;
    std::optional<double> temperature;
    std::optional<double> rate_limit;
    std::optional<std::string> cache_dir;

    void add_to(CLI::App* cmd)
    {
        cmd->add_option("--api-base", api_base, "Chat-completions base URL for the llm backend");
        cmd->add_option("--model", model, "Model name for the llm backend");
        cmd->add_option("--temperature", temperature, "Sampling temperature (omitted from requests when unset)")
            ->check(CLI::Range(0.0, 2.0));
        cmd->add_option("--rate-limit", rate_limit, "Client-side request limit per minute (0 = unlimited)")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option("--cache-dir", cache_dir, "Directory for the response cache");
    }

    void apply(LlmConfig& cfg) const
    {
        if (api_base) {
            cfg.base_url = *api_base;
        }
        if (model) {
            cfg.model = *model;
        }
        if (temperature) {
            cfg.temperature = *temperature;
        }
        if (rate_limit) {
            cfg.rate_limit_rpm = *rate_limit;
        }
        if (cache_dir) {
            cfg.cache_dir = fs::path(*cache_dir);
        }
    }
};

int report(std::ostream& err, std::string_view category, std::string_view msg, int code)
{
    std::string line(msg);
    for (auto& c : line) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    err << "gabm: error[" << category << "]: " << line << "\n";
    return code;
}

std::string metric_progress(const WorldState& w)
{
    const auto& m = w.metrics.back();
    const double n = static_cast<double>(w.citizens.size());
    return fmt::format("day {} infected {} mobility {:.3f}", m.day, m.infected_count, n > 0 ? m.mobility_count / n : 0.0);
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Agent-based epidemic simulator with LLM-driven or scripted agent decisions", "gabm"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    // run
    std::optional<std::string> preset_name;
    std::optional<std::string> config_path;
    std::optional<std::string> backend_name;
    std::optional<std::uint64_t> seed;
    std::optional<int> replications;
    std::optional<int> steps;
    std::string out_dir = "runs";
    bool force = false;
    LlmOverrides llm;

    auto* run = app.add_subcommand("run", "Run an experiment from a preset or config file");
    auto* preset_opt = run->add_option("--preset", preset_name, "Named preset (see `gabm presets`)");
    auto* config_opt = run->add_option("--config", config_path, "Experiment config file (JSON)");
    preset_opt->excludes(config_opt);
    run->add_option("--backend", backend_name, "Decision backend: llm, oracle, always-out, always-home")
        ->check(CLI::IsMember({"llm", "oracle", "always-out", "always-home"}));
    run->add_option("--seed", seed, "Base seed; replication k uses seed + k");
    run->add_option("--replications", replications, "Number of replications")->check(CLI::PositiveNumber);
    run->add_option("--steps", steps, "Simulation horizon in days")->check(CLI::NonNegativeNumber);
    run->add_option("--out", out_dir, "Output root directory")->capture_default_str();
    run->add_flag("--force", force, "Re-run replications whose outputs already exist");
    llm.add_to(run);

    // resume
    std::string checkpoint_path;
    std::optional<std::string> resume_backend;
    LlmOverrides resume_llm;
    auto* resume = app.add_subcommand("resume", "Continue a run from its checkpoint");
    resume->add_option("checkpoint", checkpoint_path, "Path to checkpoint.json")->required();
    resume->add_option("--backend", resume_backend, "Override the recorded backend: llm, oracle, always-out, always-home")
        ->check(CLI::IsMember({"llm", "oracle", "always-out", "always-home"}));
    resume_llm.add_to(resume);

    // analyze
    std::string analyze_dir;
    std::optional<std::string> logit_spec;
    auto* analyze = app.add_subcommand("analyze", "Summarize a run directory or a directory of replications");
    analyze->add_option("directory", analyze_dir, "Run or experiment directory")->required();
    analyze->add_option("--logit", logit_spec, "Comma-separated regressors, e.g. lightcough,fever,prev,prev2 (add fe for agent fixed effects)");

    // presets
    auto* presets = app.add_subcommand("presets", "List the built-in experiment presets");

    // validate
    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Check an experiment config file");
    validate_cmd->add_option("config", validate_path, "Experiment config file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        std::ostringstream dummy;
        app.exit(e, help, dummy);
        out << help.str();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        std::ostringstream help;
        std::ostringstream dummy;
        app.exit(e, help, dummy);
        out << help.str();
        return 0;
    } catch (const CLI::ParseError& e) {
        return report(err, "config", e.what(), 2);
    }

    std::mutex progress_mu;
    try {
        if (*run) {
            ExperimentConfig cfg;
            if (preset_name) {
                cfg = preset(*preset_name);
            } else if (config_path) {
                cfg = load_experiment_config(*config_path);
            } else {
                throw ConfigError("run needs --preset or --config");
            }
            if (backend_name) {
                cfg.backend.kind = parse_backend_kind(*backend_name);
            }
            if (seed) {
                cfg.base_seed = *seed;
            }
            if (replications) {
                cfg.replications = *replications;
            }
            if (steps) {
                cfg.world.step_count = *steps;
            }
            llm.apply(cfg.backend.llm);
            validate(cfg);

            ReplicationOptions opts;
            opts.out_root = fs::path(out_dir);
            opts.force = force;
            if (cfg.backend.kind == BackendKind::Llm) {
                opts.llm_client = std::make_shared<LlmClient>(cfg.backend.llm);
            }
            opts.on_day = [&](int k, const WorldState& w) {
                std::lock_guard lock(progress_mu);
                err << cfg.label << " replication " << k << ": " << metric_progress(w) << "\n";
            };
            const auto results = run_replications(cfg, opts);
            int failed = 0;
            for (const auto& r : results) {
                if (r.status == ReplicationStatus::Failed) {
                    ++failed;
                    err << cfg.label << " replication " << r.index << ": failed: " << r.error;
                    if (r.checkpoint) {
                        err << " (resume with: gabm resume " << r.checkpoint->string() << ")";
                    }
                    err << "\n";
                } else if (r.status == ReplicationStatus::Skipped) {
                    err << cfg.label << " replication " << r.index << ": outputs exist, skipped (use --force to re-run)\n";
                }
            }
            err << "outputs in " << (fs::path(out_dir) / cfg.label).string() << "\n";
            if (failed > 0) {
                return report(err, "backend", fmt::format("{} of {} replications failed", failed, results.size()), 3);
            }
            return 0;
        }

        if (*resume) {
            std::optional<BackendSpec> override_spec;
            if (resume_backend) {
                BackendSpec spec;
                spec.kind = parse_backend_kind(*resume_backend);
                resume_llm.apply(spec.llm);
                override_spec = spec;
            }
            std::shared_ptr<LlmClient> client;
            if (override_spec && override_spec->kind == BackendKind::Llm) {
                client = std::make_shared<LlmClient>(override_spec->llm);
            }
            auto on_day = [&](const WorldState& w) { err << "resume: " << metric_progress(w) << "\n"; };
            const auto result = resume_from_checkpoint(checkpoint_path, override_spec, on_day, client);
            if (result.already_finished) {
                err << "run in " << result.directory.string() << " is already finished; nothing to do\n";
            } else {
                err << "outputs in " << result.directory.string() << "\n";
            }
            return 0;
        }

        if (*analyze) {
            AnalyzeOptions opts;
            if (logit_spec) {
                opts.logit = parse_logit_spec(*logit_spec);
            }
            analyze_directory(analyze_dir, opts);
            err << "wrote " << (fs::path(analyze_dir) / "summary.json").string() << "\n";
            return 0;
        }

        if (*presets) {
            for (const auto& p : preset_catalog()) {
                const auto cfg = preset(p.name);
                out << fmt::format("{:<20} R0 {:.1f}  N={:<5} {} replications  {}\n", p.name, implied_r0(cfg.world),
                                   cfg.world.initial_healthy + cfg.world.initial_infected, cfg.replications, p.description);
            }
            return 0;
        }

        if (*validate_cmd) {
            const auto cfg = load_experiment_config(validate_path);
            out << fmt::format("ok: {} ({} replications, backend {}, implied R0 {:.2f})\n", cfg.label, cfg.replications,
                               to_string(cfg.backend.kind), implied_r0(cfg.world));
            return 0;
        }
    } catch (const RunAborted& e) {
        return report(err, "backend", e.what(), 3);
    } catch (const ConfigError& e) {
        return report(err, "config", e.what(), 2);
    } catch (const BackendError& e) {
        return report(err, "backend", e.what(), 3);
    } catch (const AnalyticsError& e) {
        return report(err, "config", e.what(), 2);
    } catch (const IoError& e) {
        return report(err, "io", e.what(), 4);
    } catch (const fs::filesystem_error& e) {
        return report(err, "io", e.what(), 4);
    }
    return report(err, "config", "no subcommand given", 2);
}

int run_cli(int argc, const char* const* argv)
{
    return run_cli(argc, argv, std::cout, std::cerr);
}

} // namespace gabm
