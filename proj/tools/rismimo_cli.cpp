// SPDX-License-Identifier: Apache-2.0
//
// rismimo: channel statistics of RIS-assisted massive MIMO links
// Copyright (C) 2026 The rismimo contributors
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

// Command line front end. All file I/O of the project happens here.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rismimo/config_io.hpp"
#include "rismimo/experiments.hpp"
#include "rismimo/report_io.hpp"

namespace
{
    using namespace rismimo;

    struct Options
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::size_t samples = 0; // 0: subcommand default
        std::string grid;
        std::string out;
        double rank_threshold = default_rank_threshold;
        unsigned workers = 1;
        std::string wavelength;
        std::string phase;
    };

    std::string read_file(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open config file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void emit(const Options &opt, const std::string &text)
    {
        if (opt.out.empty() || opt.out == "-")
        {
            std::cout << text;
            return;
        }
        std::ofstream out(opt.out, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write '" + opt.out + "'");
        out << text;
    }

    // "zero", "uniform-random:<seed>" or a comma-separated list of angles.
    PhaseSpec parse_phase(const std::string &text)
    {
        PhaseSpec p;
        const std::string prefix = "uniform-random";
        if (text == "zero")
            p.mode = PhaseSpec::Mode::zero;
        else if (text.rfind(prefix, 0) == 0)
        {
            p.mode = PhaseSpec::Mode::uniform_random;
            if (text.size() > prefix.size())
            {
                if (text[prefix.size()] != ':')
                    throw ConfigError("--phase: expected uniform-random:<seed>");
                p.seed = std::stoull(text.substr(prefix.size() + 1));
            }
        }
        else
        {
            p.mode = PhaseSpec::Mode::explicit_list;
            std::stringstream ss(text);
            std::string tok;
            while (std::getline(ss, tok, ','))
                p.thetas.push_back(parse_angle(tok));
        }
        return p;
    }

    ScenarioConfig load_config(const Options &opt)
    {
        ScenarioConfig c = opt.config_path.empty() ? ScenarioConfig{} : config_from_json(read_file(opt.config_path));
        if (opt.seed)
            c.master_seed = *opt.seed;
        if (!opt.wavelength.empty())
        {
            c.ris.wavelength = std::stod(opt.wavelength);
        }
        if (!opt.phase.empty())
            c.phase = parse_phase(opt.phase);
        c.validate();
        return c;
    }

    Grid grid_or(const Options &opt, Grid fallback)
    {
        return opt.grid.empty() ? fallback : parse_grid(opt.grid);
    }

    std::pair<Index, Index> single_point(const Options &opt, const ScenarioConfig &c)
    {
        const Grid g = grid_or(opt, {{c.antennas, c.ris.elements()}});
        if (g.size() != 1)
            throw ConfigError("--grid: this subcommand takes a single MxN point");
        return g.front();
    }

    int run_metrics(const Options &opt)
    {
        const ScenarioConfig c = load_config(opt);
        const auto [m, n] = single_point(opt, c);
        const ScenarioConfig sized = (m == c.antennas && n == c.ris.elements()) ? c : c.with_dimensions(m, n);
        emit(opt, metrics_json(build_scenario(sized)));
        return 0;
    }

    int run_sweep(const Options &opt)
    {
        const ScenarioConfig c = load_config(opt);
        emit(opt, sweep_csv(sweep_fp_ch(c, grid_or(opt, default_grid()), opt.workers)));
        return 0;
    }

    int run_eigen(const Options &opt)
    {
        const ScenarioConfig c = load_config(opt);
        const auto [m, n] = single_point(opt, c);
        const EigenProfile p = eigenvalue_profile(c, m, n, opt.rank_threshold);
        std::cerr << "numerical rank (threshold " << format_number(opt.rank_threshold)
                  << "): direct " << p.direct.numerical_rank << ", aggregated " << p.both.numerical_rank << " of "
                  << m << '\n';
        emit(opt, eigen_csv(p));
        return 0;
    }

    int run_montecarlo(const Options &opt)
    {
        ScenarioConfig c = load_config(opt);
        if (!opt.grid.empty())
        {
            const auto [m, n] = single_point(opt, c);
            c = c.with_dimensions(m, n);
        }
        const std::size_t samples = opt.samples ? opt.samples : 200000;
        const auto reports = validate_report(c, samples, c.master_seed, opt.workers);
        std::size_t failed = 0;
        for (const MetricReport &r : reports)
            failed += r.pass ? 0 : 1;
        std::cerr << reports.size() - failed << " of " << reports.size() << " gates passed\n";
        emit(opt, reports_json(reports));
        return 0;
    }

    int run_mrc_demo(const Options &opt)
    {
        const ScenarioConfig c = load_config(opt);
        std::vector<Index> antennas;
        for (const auto &[m, n] : grid_or(opt, {{8, 8}, {16, 16}, {32, 32}, {64, 64}, {128, 128}}))
            antennas.push_back(m);
        emit(opt, mrc_csv(mrc_demo(c, antennas, opt.samples ? opt.samples : 10000)));
        return 0;
    }

    int run_check_assumptions(const Options &opt)
    {
        const ScenarioConfig c = load_config(opt);
        std::vector<AssumptionRow> rows;
        for (const auto &[m, n] : grid_or(opt, {{16, 16}, {64, 64}, {256, 256}}))
        {
            const ScenarioConfig sized = c.with_dimensions(c.antennas, n);
            const Scenario s = build_scenario(sized);
            rows.push_back({n, check_fp_assumptions(s.phase, s.bundle.ris_side_cov)});
        }
        emit(opt, assumptions_json(rows));
        return 0;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Closed-form and Monte Carlo channel statistics of RIS-assisted massive MIMO"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", opt.config_path, "Scenario JSON file (defaults built in)")->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "Override the master seed");
        sub->add_option("--out", opt.out, "Output file (default stdout)");
        sub->add_option("--wavelength", opt.wavelength, "Override the wavelength [m]");
        sub->add_option("--phase", opt.phase, "zero | uniform-random:<seed> | comma-separated angles");
    };

    struct Sub
    {
        const char *name;
        const char *help;
        int (*run)(const Options &);
    };
    const Sub subs[] = {
        {"metrics", "Closed-form moments, FP, CH and ranks at one point (JSON)", run_metrics},
        {"sweep", "FP/CH for direct, both and indirect links over a grid (CSV)", run_sweep},
        {"eigen", "Sorted eigenvalues of R_k and the aggregated covariance (CSV)", run_eigen},
        {"montecarlo", "Closed forms against Monte Carlo estimates (JSON)", run_montecarlo},
        {"mrc-demo", "Median normalized inter-user interference vs M (CSV)", run_mrc_demo},
        {"check-assumptions", "Finite-N diagnostics of the RIS correlation (JSON)", run_check_assumptions},
    };

    int (*selected)(const Options &) = nullptr;
    for (const Sub &s : subs)
    {
        CLI::App *sub = app.add_subcommand(s.name, s.help);
        add_common(sub);
        const std::string name = s.name;
        if (name == "sweep" || name == "mrc-demo" || name == "check-assumptions")
            sub->add_option("--grid", opt.grid, "Grid: 16,32,64 (M = N) or 8x16,32x32");
        else
            sub->add_option("--grid", opt.grid, "Single point MxN (default: config dimensions)");
        if (name == "montecarlo" || name == "mrc-demo")
            sub->add_option("--samples", opt.samples, "Number of channel draws")->check(CLI::PositiveNumber);
        if (name == "eigen")
            sub->add_option("--rank-threshold", opt.rank_threshold, "Relative eigenvalue cutoff")
                ->check(CLI::Range(0.0, 1.0));
        if (name == "sweep" || name == "montecarlo")
            sub->add_option("--workers", opt.workers, "Worker threads (0: all cores)");
        sub->callback([&selected, run = s.run] { selected = run; });
    }

    CLI11_PARSE(app, argc, argv);
    try
    {
        return selected ? selected(opt) : 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
