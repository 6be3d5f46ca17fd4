// SPDX-License-Identifier: Apache-2.0
//
// bdris - multiport models and RIS configuration solvers for full-duplex links
// Copyright (C) 2026 The bdris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command line front end:
//   bdris run <preset> [--config <path>] [--out <dir>] [--format csv|svg|both] [--threads N]
//   bdris oracle <random-unitary|phase-grid|model-consistency> [--seed S] [--trials T] ...
//   bdris check
//   bdris list
//
// Errors are reported on stderr as "error[<category>]: <message>".

#include <bdris/acceptance.hpp>
#include <bdris/bdris.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <thread>

namespace
{
    int exit_code(bdris::error_category c)
    {
        switch (c)
        {
        case bdris::error_category::argument:
            return 2;
        case bdris::error_category::config:
            return 3;
        case bdris::error_category::io:
            return 4;
        default:
            return 5;
        }
    }

    int report(std::string_view category, const std::string &what, int code)
    {
        std::cerr << "error[" << category << "]: " << what << std::endl;
        return code;
    }

    bdris::scenario_config load_config(const std::string &path)
    {
        return path.empty() ? bdris::scenario_config{} : bdris::parse_config(path);
    }

    int cmd_run(const std::string &preset_id, const std::string &config, const std::string &out_dir,
                const std::string &format, std::size_t threads)
    {
        const bdris::scenario_config cfg = load_config(config);
        const bdris::experiment_output out = bdris::run_sweep(cfg, preset_id, threads);

        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec)
            bdris::fail(bdris::error_category::io, "cannot create output directory " + out_dir + ": " + ec.message());

        const std::filesystem::path base = std::filesystem::path(out_dir) / out.setup.id;
        const bool csv = format != "svg", svg = format != "csv";
        std::vector<std::filesystem::path> written;
        if (out.setup.kind == bdris::preset_kind::beam_pattern)
        {
            if (csv)
                bdris::emit_csv(out.beams, written.emplace_back(base.string() + ".csv"));
            if (svg)
                bdris::emit_svg(out.beams, written.emplace_back(base.string() + ".svg"), out.setup.title);
        }
        else
        {
            if (csv)
                bdris::emit_csv(out.sweeps, written.emplace_back(base.string() + ".csv"));
            if (svg)
                bdris::emit_svg(out.sweeps, written.emplace_back(base.string() + ".svg"), out.setup.title, out.setup.kind);
        }
        for (const auto &p : written)
            std::cout << p.string() << '\n';
        return 0;
    }

    nlohmann::json to_json(const bdris::oracle_report &r)
    {
        nlohmann::json j;
        j["best_value"] = r.best_value;
        j["trials"] = r.trials;
        j["seed"] = r.seed;
        j["skipped"] = r.skipped;
        j["details"] = r.details;
        return j;
    }

    int cmd_oracle(const std::string &name, std::uint64_t seed, std::size_t trials, const std::string &config,
                   std::size_t elements, std::size_t grid)
    {
        nlohmann::json j;
        j["oracle"] = name;
        if (name == "random-unitary")
        {
            // Targets from the configured scenario; compared with the projection solver
            const bdris::scenario_config cfg = load_config(config);
            const bdris::channel_set ch = bdris::build_channels(cfg);
            const auto t = bdris::build_projection_targets(ch, cfg.design_with_ss);
            const auto rep = bdris::random_unitary_oracle(t.x, t.y, trials, seed);
            const auto sol = bdris::procrustes_unitary(t, cfg.design_with_ss);
            j["report"] = to_json(rep);
            j["solver_residual"] = sol.diagnostics->residual;
            j["solver_not_worse"] = sol.diagnostics->residual <= rep.best_value;
        }
        else if (name == "phase-grid")
        {
            bdris::scenario_config cfg = load_config(config);
            cfg.n_i = elements;
            const bdris::channel_set ch = bdris::build_channels(cfg);
            const auto rep = bdris::phase_grid_oracle(ch, grid, cfg.design_with_ss);
            const auto m = bdris::effective_scattering(bdris::reciprocal_design(cfg, ch, cfg.design_with_ss).theta, cfg.design_with_ss);
            const double cf = std::norm(bdris::bilinear(ch.h_bi, m, ch.h_itu));
            j["report"] = to_json(rep);
            j["closed_form_value"] = cf;
            j["relative_gap"] = std::abs(cf - rep.best_value) / rep.best_value;
        }
        else if (name == "model-consistency")
        {
            const auto rep = bdris::model_consistency_check({1, 1, elements, 1, 1}, seed, trials);
            j["report"] = to_json(rep);
        }
        else
            bdris::fail(bdris::error_category::argument,
                        "unknown oracle '" + name + "' (known: random-unitary, phase-grid, model-consistency)");
        std::cout << j.dump(2) << std::endl;
        return 0;
    }

    int cmd_check()
    {
        const std::size_t failed = bdris::acceptance::run_all([](const std::string &line)
                                                              { std::cout << line << std::endl; });
        if (failed != 0)
            return report("check", std::to_string(failed) + " criteria failed", 1);
        return 0;
    }

    int cmd_list()
    {
        std::cout << "custom  Sweep using the geometry and mode flags of the config\n";
        for (const auto &p : bdris::presets())
            std::cout << p.id << std::string(8 - std::min<std::size_t>(p.id.size(), 7), ' ') << p.title << '\n';
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"bdris - RIS configuration for full-duplex links"};
    app.require_subcommand(1);

    std::string preset_id, config, out_dir = "out", format = "both";
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    auto *run = app.add_subcommand("run", "Run a figure preset and write CSV / SVG output");
    run->add_option("preset", preset_id, "Preset id (see 'list')")->required();
    run->add_option("--config", config, "Config document (flat JSON object)");
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "svg", "both"}))->capture_default_str();
    run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    std::string oracle_name;
    std::uint64_t seed = 1;
    std::size_t trials = 1000, elements = 2, grid = 360;
    auto *oracle = app.add_subcommand("oracle", "Run an oracle and print a JSON report");
    oracle->add_option("name", oracle_name, "random-unitary, phase-grid or model-consistency")->required();
    oracle->add_option("--seed", seed, "Random seed")->capture_default_str();
    oracle->add_option("--trials", trials, "Number of trials")->capture_default_str();
    oracle->add_option("--config", config, "Config document for scenario-based oracles");
    oracle->add_option("--elements", elements, "RIS elements (phase-grid, model-consistency)")->capture_default_str();
    oracle->add_option("--grid", grid, "Phase steps per element (phase-grid)")->capture_default_str();

    auto *check = app.add_subcommand("check", "Run the acceptance suite");
    auto *list = app.add_subcommand("list", "List presets");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        return report("argument", e.what(), 2);
    }

    try
    {
        if (*run)
            return cmd_run(preset_id, config, out_dir, format, threads);
        if (*oracle)
            return cmd_oracle(oracle_name, seed, trials, config, elements, grid);
        if (*check)
            return cmd_check();
        if (*list)
            return cmd_list();
    }
    catch (const bdris::error &e)
    {
        return report(bdris::to_string(e.category()), e.what(), exit_code(e.category()));
    }
    catch (const std::exception &e)
    {
        return report("internal", e.what(), 6);
    }
    return 0;
}
