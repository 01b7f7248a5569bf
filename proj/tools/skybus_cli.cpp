#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kInvariant = 4 };

int exit_for(skb_status s) {
    switch (s) {
        case SKB_ERR_INVALID_ARGUMENT:
        case SKB_ERR_DRIVE_CONDITION:
        case SKB_ERR_SINGULAR_POINT:
        case SKB_ERR_NON_UNIFORM_GRID:
            return kConfig;
        default:
            return kNumerical;
    }
}

// Sections a config file must name for each subcommand. Keys inside may be left at their defaults.
std::vector<std::string> required_sections(const std::string& cmd, const cli::Config& cfg) {
    const std::vector<std::string> texture = {"material", "disk", "skyrmion"};
    auto with = [&](std::vector<std::string> extra) {
        extra.insert(extra.begin(), texture.begin(), texture.end());
        return extra;
    };
    if (cmd == "coupling-nv") return with({"nv"});
    if (cmd == "coupling-transmon") return with({"squid", "transmon"});
    if (cmd == "field-map") return with({"field_map"});
    if (cmd == "regime") return {"transmon"};
    if (cmd == "dynamics")
        return cfg.dynamics.coupling_source == "geometry" ? with({"dynamics", "nv", "squid", "transmon"})
                                                          : std::vector<std::string>{"dynamics"};
    if (cmd == "thiele")
        return cfg.thiele.gyrocoupling_from_texture ? with({"thiele"}) : std::vector<std::string>{"thiele"};
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skybus: skyrmion-mediated NV / transmon coupling workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(skb_version()));

    std::string config_path;
    std::string out_dir;
    int workers = 1;
    double quad_tol = 0.0;
    int gm_cutoff = 0;
    bool timing = false;
    std::string kind, direction, route;

    app.add_option("-c,--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
    app.add_option("-o,--out", out_dir, "output directory (default $SKYBUS_OUT_DIR or ./skybus_out)");
    app.add_option("-j,--workers", workers, "worker threads for sweeps")->check(CLI::Range(1, 256));
    app.add_option("--quad-tolerance", quad_tol, "relative tolerance; switches quadrature to adaptive")
        ->check(CLI::PositiveNumber);
    app.add_flag("--timing", timing, "record wall time in report.json");
    app.add_option("--gm-cutoff", gm_cutoff, "gyration-mode Fock cutoff for dynamics")->check(CLI::Range(2, 64));

    struct Sub {
        const char* name;
        const char* help;
        cli::CommandResult (*run)(const cli::Config&, const cli::RunOptions&);
    };
    const Sub subs[] = {
        {"coupling-nv", "NV / gyration coupling sweep", cli::run_coupling_nv},
        {"coupling-transmon", "SQUID flux and transmon coupling sweep", cli::run_coupling_transmon},
        {"regime", "transmon regime diagnostics over bias and asymmetry", cli::run_regime},
        {"field-map", "stray-field mode on a plane above the disk", cli::run_field_map},
        {"dynamics", "tripartite open-system transfer", cli::run_dynamics},
        {"thiele", "classical gyration trajectory and spectrum", cli::run_thiele},
    };
    for (const auto& s : subs) {
        auto* sc = app.add_subcommand(s.name, s.help);
        if (std::string(s.name) == "dynamics") {
            sc->add_option("--kind", kind)->check(CLI::IsMember({"coherent", "nonreciprocal"}));
            sc->add_option("--direction", direction)->check(CLI::IsMember({"nv_to_tr", "tr_to_nv", "both"}));
            sc->add_option("--route", route)->check(CLI::IsMember({"full", "effective", "both"}));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    const Sub* chosen = nullptr;
    for (const auto& s : subs)
        if (app.got_subcommand(s.name)) chosen = &s;

    if (out_dir.empty()) {
        const char* env = std::getenv("SKYBUS_OUT_DIR");
        out_dir = env && *env ? env : "skybus_out";
    }

    const auto start = std::chrono::steady_clock::now();
    cli::Config cfg;
    try {
        cfg = cli::load_config(config_path);
        if (!config_path.empty())
            for (const auto& s : required_sections(chosen->name, cfg))
                if (!cfg.sections.count(s))
                    throw cli::ConfigError("missing section [" + s + "] required by " + chosen->name);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    }
    if (quad_tol > 0.0) {
        cfg.quad.relative_tolerance = quad_tol;
        cfg.quad.scheme = SKB_SCHEME_ADAPTIVE;
        cfg.echo["quadrature"]["relative_tolerance"] = quad_tol;
        cfg.echo["quadrature"]["scheme"] = "adaptive";
    }
    if (gm_cutoff > 0) {
        cfg.dynamics.gm_cutoff = gm_cutoff;
        cfg.echo["dynamics"]["gm_cutoff"] = gm_cutoff;
    }
    if (!kind.empty()) {
        cfg.dynamics.kind = kind;
        cfg.echo["dynamics"]["kind"] = kind;
    }
    if (!direction.empty()) {
        cfg.dynamics.direction = direction;
        cfg.echo["dynamics"]["direction"] = direction;
    }
    if (!route.empty()) {
        cfg.dynamics.route = route;
        cfg.echo["dynamics"]["route"] = route;
    }

    cli::RunOptions opt{out_dir, workers};
    cli::CommandResult res;
    try {
        std::filesystem::create_directories(opt.out_dir);
        res = chosen->run(cfg, opt);
    } catch (const cli::ApiError& e) {
        std::cerr << chosen->name << ": " << e.what() << "\n";
        return exit_for(e.status);
    } catch (const cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << chosen->name << ": " << e.what() << "\n";
        return kNumerical;
    }

    res.outputs.push_back("report.json");
    nlohmann::json report = {{"command", chosen->name},
                             {"tool_version", skb_version()},
                             {"inputs", cfg.echo},
                             {"outputs", res.outputs},
                             {"summary", res.summary},
                             {"invariant_report", res.invariant_report},
                             {"warnings", res.warnings}};
    if (timing)
        report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        cli::write_json(opt.out_dir / "report.json", report);
    } catch (const std::exception& e) {
        std::cerr << "writing report: " << e.what() << "\n";
        return kNumerical;
    }
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
    if (!res.invariants_ok) {
        std::cerr << chosen->name << ": invariant check failed, see report.json\n";
        return kInvariant;
    }
    return kOk;
}
