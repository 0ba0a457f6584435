// Copyright 2026 The nonlocality-lab Authors
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

// Flag parsing and subcommand dispatch for nonlocality_lab.

#pragma once

#include <algorithm>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nonlocality/cli_harness.hpp>

namespace nonlocality::cli {

/// Runs the tool on `args` (without the program name). Returns the exit code.
inline int run_app(std::vector<std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Bell nonlocality laboratory", "nonlocality_lab"};
    app.require_subcommand(1);

    PrboxOptions prbox;
    auto *prbox_cmd = app.add_subcommand("prbox", "ideal PR box table, CHSH value and independence verdicts");
    prbox_cmd->add_flag("--json", prbox.json, "machine-readable report");

    SingletOptions singlet;
    auto *singlet_cmd = app.add_subcommand("singlet", "simulate singlet correlations with one PR box per round");
    singlet_cmd->add_option("--n", singlet.n, "rounds per direction pair")->check(CLI::PositiveNumber);
    singlet_cmd->add_option("--seed", singlet.seed, "master seed");
    singlet_cmd->add_option("--pairs", singlet.pairs, "number of random direction pairs")->check(CLI::PositiveNumber);
    singlet_cmd->add_flag("--json", singlet.json, "machine-readable report");

    auto *crypto_cmd = app.add_subcommand("crypto", "crypto-nonlocal hidden variable model");
    crypto_cmd->require_subcommand(1);

    CryptoEvalOptions eval;
    auto *eval_cmd = crypto_cmd->add_subcommand("eval", "conditional CHSH value at one (alpha, tau)");
    eval_cmd->add_option("--alpha", eval.alpha, "setting angle in [0, pi/4]")->required();
    eval_cmd->add_option("--tau", eval.tau, "hidden azimuth in [0, pi)")->required();
    eval_cmd->add_flag("--json", eval.json, "machine-readable report");

    CryptoScanOptions scan;
    std::string grid = "200x200";
    auto *scan_cmd = crypto_cmd->add_subcommand("scan", "conditional CHSH value over an (alpha, tau) grid");
    scan_cmd->add_option("--grid", grid, "grid size NxM (alpha x tau), each >= 2");
    scan_cmd->add_option("--out", scan.out_path, "output file (default: stdout)");
    scan_cmd->add_option("--format", scan.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    CryptoTauAverageOptions avg;
    auto *avg_cmd = crypto_cmd->add_subcommand("tau-average", "tau-averaged CHSH value against the quantum value");
    avg_cmd->add_option("--alpha", avg.alpha, "setting angle in [0, pi/4]")->required();
    avg_cmd->add_flag("--json", avg.json, "machine-readable report");

    TheoremOptions theorem;
    auto *theorem_cmd = app.add_subcommand("theorem", "residuals of the maximally entangled state identities");
    theorem_cmd->add_option("--nmin", theorem.nmin, "smallest dimension (>= 2)");
    theorem_cmd->add_option("--nmax", theorem.nmax, "largest dimension (<= 16)");
    theorem_cmd->add_option("--trials", theorem.trials, "random trials per dimension");
    theorem_cmd->add_option("--seed", theorem.seed, "master seed");
    theorem_cmd->add_option("--partition", theorem.partition, "curve partition size");
    theorem_cmd->add_flag("--json", theorem.json, "machine-readable report");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*prbox_cmd) {
            return cmd_prbox(prbox, out);
        }
        if (*singlet_cmd) {
            return cmd_singlet(singlet, out);
        }
        if (*eval_cmd) {
            const int code = cmd_crypto_eval(eval, out);
            if (code == kExitUsage) {
                err << "error: need 0 <= alpha <= pi/4 and 0 <= tau < pi\n";
            }
            return code;
        }
        if (*scan_cmd) {
            const auto dims = parse_grid(grid);
            if (!dims) {
                err << "error: --grid expects NxM with N, M >= 2\n";
                return kExitUsage;
            }
            scan.n_alpha = dims->first;
            scan.n_tau = dims->second;
            return cmd_crypto_scan(scan, out, err);
        }
        if (*avg_cmd) {
            const int code = cmd_crypto_tau_average(avg, out);
            if (code == kExitUsage) {
                err << "error: need 0 <= alpha <= pi/4\n";
            }
            return code;
        }
        if (*theorem_cmd) {
            const int code = cmd_theorem(theorem, out);
            if (code == kExitUsage) {
                err << "error: need 2 <= nmin <= nmax <= 16, trials >= 1, partition >= 1\n";
            }
            return code;
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitVerificationFailure;
    }
    return kExitUsage;
}

} // namespace nonlocality::cli
