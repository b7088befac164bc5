#include "initrec/cli.hpp"

#include "initrec/error.hpp"
#include "initrec/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>

namespace initrec {

namespace {

struct CommonOptions {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::IllPosedMode:
        return kExitSpectral;
    case ErrorKind::NumericFailure:
        return kExitFailure;
    default:
        return kExitConfig;
    }
}

void write_text(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    require(static_cast<bool>(f), ErrorKind::InvalidInput, "cannot write " + path);
    f << text;
}

class Session {
public:
    Session(const CommonOptions& opts, std::ostream& out, std::ostream& err)
        : opts_(opts), out_(out), err_(err), cfg_(parse_config(opts.config))
    {
        if (opts.seed) cfg_.seed = *opts.seed;
    }

    int evolve()
    {
        require(cfg_.u0.has_value(), ErrorKind::ConfigError, "field 'u0': required by evolve");
        const auto op = build_operator(cfg_);
        const auto u0 = resolve_state(*cfg_.u0, op);
        const auto u = forward_solve(op, u0, cfg_.nonlinearity, build_grid(cfg_));
        write_text(to_csv(trajectory_table(u)), opts_.out, out_);
        note("evolve: " + std::to_string(u.node_count()) + " nodes, ||u(T)||_0 = " +
             format_number(euclidean_norm(u.at(u.node_count() - 1))));
        return kExitOk;
    }

    int recover()
    {
        const auto op = build_operator(cfg_);
        const auto spec = build_norm_spec(cfg_, op);
        const auto grid = build_grid(cfg_);
        const auto cond = with_observation(build_condition(cfg_), resolve_observation(cfg_, op));
        const auto spectral = check_spectral_condition(op, cond, grid.final_time());
        if (!spectral.pass) return spectral_failure(spectral);

        auto options = build_picard_options(cfg_);
        nlohmann::json doc;
        doc["problem"] = std::string(problem_tag(cond));
        doc["spectral"] = to_json(spectral);
        if (!std::holds_alternative<ZeroNonlinearity>(cfg_.nonlinearity)) {
            try {
                ThresholdInputs in;
                in.seed = cfg_.seed;
                options.threshold = estimate_threshold(op, cond, cfg_.nonlinearity, grid, spec,
                                                       cfg_.solver.gamma, cfg_.solver.nu, in);
                doc["threshold"] = to_json(*options.threshold);
            } catch (const Error& e) {
                doc["threshold"] = nullptr;
                note(std::string("threshold estimate unavailable: ") + e.what());
            }
        }
        const auto rep = picard_recover(op, cond, cfg_.nonlinearity, grid, spec, options);
        doc["report"] = to_json(rep);
        write_text(doc.dump(2) + "\n", opts_.out, out_);
        note("recover: " + std::string(rep.converged ? "converged" : "NOT converged") +
             " after " + std::to_string(rep.iterations) + " iterations");
        return rep.converged ? kExitOk : kExitNotConverged;
    }

    int check_spectral()
    {
        const auto op = build_operator(cfg_);
        const auto report =
            check_spectral_condition(op, build_condition(cfg_), cfg_.grid.final_time);
        write_text(to_csv(spectral_table(report, op)), opts_.out, out_);
        if (!report.pass) return spectral_failure(report);
        note("check-spectral: all " + std::to_string(op.mode_count()) + " modes pass");
        return kExitOk;
    }

    int roundtrip_command()
    {
        require(cfg_.u0.has_value(), ErrorKind::ConfigError, "field 'u0': required by roundtrip");
        const auto op = build_operator(cfg_);
        const auto u0 = resolve_state(*cfg_.u0, op);
        const auto res = roundtrip(cfg_, u0);
        write_text(to_json(res).dump(2) + "\n", opts_.out, out_);
        if (res.failure_stage == "forward") {
            note("roundtrip: forward solve failed: " + res.failure_message);
            return kExitFailure;
        }
        if (!res.report || !res.report->converged) {
            note("roundtrip: recovery did not converge");
            return res.report ? kExitNotConverged : kExitFailure;
        }
        note("roundtrip: E_0 error " + format_number(res.error_e0));
        return kExitOk;
    }

    int sweep()
    {
        require(!cfg_.sweep_scales.empty(), ErrorKind::ConfigError,
                "field 'sweep.scales': required by sweep");
        const auto rows = sweep_threshold(cfg_, cfg_.sweep_scales);
        write_text(to_csv(sweep_table(rows)), opts_.out, out_);
        std::size_t ok = 0;
        for (const auto& r : rows) ok += r.converged ? 1 : 0;
        note("sweep: " + std::to_string(ok) + "/" + std::to_string(rows.size()) + " converged");
        return kExitOk;
    }

private:
    void note(const std::string& msg)
    {
        if (!opts_.quiet) err_ << msg << '\n';
    }

    int spectral_failure(const SpectralReport& r)
    {
        std::string modes;
        for (std::size_t m : r.violating) modes += (modes.empty() ? "" : ", ") + std::to_string(m);
        err_ << "spectral condition for problem " << r.problem << " violated at mode(s) " << modes
             << '\n';
        return kExitSpectral;
    }

    CommonOptions opts_;
    std::ostream& out_;
    std::ostream& err_;
    ExperimentConfig cfg_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Initial-state recovery for semilinear parabolic problems", "initrec"};
    app.require_subcommand(1);

    using Action = int (Session::*)();
    const std::vector<std::tuple<std::string, std::string, Action>> commands = {
        {"evolve", "forward solve from u0, trajectory as CSV", &Session::evolve},
        {"recover", "recover u0 from the observation M, JSON report", &Session::recover},
        {"check-spectral", "per-mode spectral margins as CSV", &Session::check_spectral},
        {"roundtrip", "forward, observe, recover and compare, JSON", &Session::roundtrip_command},
        {"sweep", "Picard runs over scaled observations, CSV", &Session::sweep},
    };
    std::map<CLI::App*, Action> actions;
    CommonOptions opts;
    for (const auto& [name, help, action] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opts.config, "experiment config (JSON)")->required();
        sub->add_option("--out", opts.out, "output file (default: stdout)");
        sub->add_option("--seed", opts.seed, "seed for randomized checks");
        sub->add_flag("--quiet", opts.quiet, "suppress progress messages");
        actions[sub] = action;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitConfig;
    }

    try {
        for (auto& [sub, action] : actions) {
            if (!sub->parsed()) continue;
            Session session(opts, out, err);
            return (session.*action)();
        }
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}

}  // namespace initrec
