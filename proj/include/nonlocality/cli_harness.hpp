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

/**
 * @file
 * Command implementations behind the `nonlocality_lab` binary. Each command
 * writes its report to `out` and returns the process exit code:
 * 0 success, 1 verification failure, 2 usage error.
 */

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "box_table_io.hpp"
#include "correlation_core.hpp"
#include "crypto_bell_model.hpp"
#include "entangled_algebra.hpp"
#include "format.hpp"
#include "pr_box.hpp"
#include "pr_singlet_sim.hpp"
#include "random.hpp"
#include "theorem_verification.hpp"

namespace nonlocality::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

namespace detail {
inline std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

inline std::string describe(const IndependenceWitness &w, bool outcome_independence) {
    std::ostringstream s;
    const char local = w.party == Party::Alice ? 'a' : 'b';
    const char remote = w.party == Party::Alice ? 'b' : 'a';
    if (outcome_independence) {
        s << "x=" << w.x << " y=" << w.y << ": P(" << local << "=" << w.outcome << "|x,y," << remote << "="
          << w.condition << ") = " << format_double(w.conditional) << " vs P(" << local << "=" << w.outcome
          << "|x,y) = " << format_double(w.unconditional);
    } else {
        const char remote_setting = w.party == Party::Alice ? 'y' : 'x';
        const char local_setting = w.party == Party::Alice ? 'x' : 'y';
        const int local_value = w.party == Party::Alice ? w.x : w.y;
        s << local_setting << "=" << local_value << ": P(" << local << "=" << w.outcome << ") = "
          << format_double(w.unconditional) << " at " << remote_setting << "=0 vs " << format_double(w.conditional)
          << " at " << remote_setting << "=1";
    }
    return s.str();
}

inline nlohmann::json witness_json(const std::optional<IndependenceWitness> &w) {
    if (!w) {
        return nullptr;
    }
    return {{"party", to_string(w->party)}, {"x", w->x},          {"y", w->y},
            {"condition", w->condition},    {"outcome", w->outcome}, {"conditional", w->conditional},
            {"unconditional", w->unconditional}};
}
} // namespace detail

// ---------------------------------------------------------------------------
// prbox

struct PrboxOptions {
    bool json = false;
};

inline int cmd_prbox(const PrboxOptions &opt, std::ostream &out) {
    const BoxTable table = pr_ideal_table();
    const CorrelationSet corr = correlations_from_table(table);
    const ChshReport chsh = chsh_value(corr);
    const NoSignalingResult ns = check_no_signaling(table);
    const IndependenceResult pi = check_parameter_independence(table);
    const IndependenceResult oi = check_outcome_independence(table);
    const bool hidden_reproduces = pr_table_from_hidden(PrPrior(0.5, 0.5)) == table;

    struct Slice {
        int lambda;
        IndependenceResult oi;
        IndependenceResult pi;
    };
    std::vector<Slice> slices;
    for (int lambda = 0; lambda < 2; ++lambda) {
        const BoxTable t = pr_slice_table(lambda);
        slices.push_back({lambda, check_outcome_independence(t), check_parameter_independence(t)});
    }

    bool expected = chsh.f == 4.0 && chsh.nonlocality == NonlocalityClass::Superquantum && ns.ok &&
                    ns.max_deviation == 0.0 && pi.ok && !oi.ok && hidden_reproduces;
    for (const auto &s : slices) {
        expected = expected && s.oi.ok && !s.pi.ok;
    }

    if (opt.json) {
        nlohmann::json j;
        j["table"] = to_json(table);
        j["correlations"] = crypto::correlations_json(corr);
        j["f"] = chsh.f;
        j["class"] = to_string(chsh.nonlocality);
        j["no_signaling"] = {{"pass", ns.ok}, {"max_deviation", ns.max_deviation}};
        j["parameter_independence"] = {{"pass", pi.ok}, {"witness", detail::witness_json(pi.witness)}};
        j["outcome_independence"] = {{"pass", oi.ok}, {"witness", detail::witness_json(oi.witness)}};
        j["hidden_bit_model_reproduces_table"] = hidden_reproduces;
        j["hidden_bit_slices"] = nlohmann::json::array();
        for (const auto &s : slices) {
            j["hidden_bit_slices"].push_back({{"lambda", s.lambda},
                                              {"outcome_independence", s.oi.ok},
                                              {"parameter_independence", s.pi.ok},
                                              {"pi_witness", detail::witness_json(s.pi.witness)}});
        }
        j["expected_verdicts_hold"] = expected;
        out << j.dump(2) << '\n';
        return expected ? kExitOk : kExitVerificationFailure;
    }

    out << "PR box: a + b = x y (mod 2)\n";
    out << "x,y   P(0,0)    P(0,1)    P(1,0)    P(1,1)    E(x,y)\n";
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            out << x << ',' << y << "  ";
            for (const double p : table.row(x, y)) {
                out << format_fixed(p) << "  ";
            }
            out << format_fixed(correlation_from_table(table, x, y)) << '\n';
        }
    }
    out << "F = " << format_fixed(chsh.f) << ", class = " << to_string(chsh.nonlocality) << '\n';
    out << "no-signaling: " << detail::verdict(ns.ok) << " (max marginal deviation "
        << format_double(ns.max_deviation) << ")\n";
    out << "parameter independence: " << detail::verdict(pi.ok) << '\n';
    out << "outcome independence: " << detail::verdict(oi.ok);
    if (oi.witness) {
        out << " (witness " << detail::describe(*oi.witness, true) << ")";
    }
    out << '\n';
    out << "hidden-bit model with prior (1/2,1/2) reproduces the table: " << (hidden_reproduces ? "yes" : "no")
        << '\n';
    for (const auto &s : slices) {
        out << "hidden bit " << s.lambda << " slice: outcome independence " << detail::verdict(s.oi.ok)
            << ", parameter independence " << detail::verdict(s.pi.ok);
        if (s.pi.witness) {
            out << " (" << to_string(s.pi.witness->party) << ", " << detail::describe(*s.pi.witness, false) << ")";
        }
        out << '\n';
    }
    out << "expected verdicts: " << (expected ? "all hold" : "MISMATCH") << '\n';
    return expected ? kExitOk : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------
// singlet

struct SingletOptions {
    std::uint64_t n = 1000000;
    std::uint64_t seed = 7;
    int pairs = 20;
    bool json = false;
};

struct DirectionPair {
    UnitVec3 a;
    UnitVec3 b;
};

/// Seeded random direction pairs; pair k is the k-th draw of the "pairs" substream.
inline std::vector<DirectionPair> random_direction_pairs(int count, std::uint64_t seed) {
    SphereSampler sampler(derive_seed(seed, "pairs"));
    std::vector<DirectionPair> pairs;
    for (int k = 0; k < count; ++k) {
        const UnitVec3 a = sampler();
        const UnitVec3 b = sampler();
        pairs.push_back({a, b});
    }
    return pairs;
}

inline int cmd_singlet(const SingletOptions &opt, std::ostream &out) {
    if (opt.n == 0 || opt.pairs < 1) {
        return kExitUsage;
    }
    const auto pairs = random_direction_pairs(opt.pairs, opt.seed);
    bool all = true;
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream text;
    text << "PR-box singlet simulation: n = " << opt.n << ", seed = " << opt.seed << "\n";
    text << "pair  a.b        e_hat      -a.b       stderr     verdict\n";
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto &[a, b] = pairs[k];
        const SingletEstimate est = estimate_singlet_correlation(a, b, opt.n, derive_seed(opt.seed, "pair", k));
        const bool ok = singlet_estimate_consistent(est, a, b);
        all = all && ok;
        nlohmann::json row = singlet_summary_json(a, b, opt.seed, est);
        row["pass"] = ok;
        rows.push_back(row);
        text << (k < 10 ? "   " : "  ") << k << "  " << format_fixed(dot(a, b), 6) << "  " << format_fixed(est.e_hat, 6)
             << "  " << format_fixed(-dot(a, b), 6) << "  " << format_fixed(est.std_error, 6) << "  "
             << detail::verdict(ok) << '\n';
    }
    if (opt.json) {
        out << nlohmann::json{{"n", opt.n}, {"seed", opt.seed}, {"pairs", rows}, {"pass", all}}.dump(2) << '\n';
    } else {
        out << text.str() << "singlet reproduction: " << detail::verdict(all) << '\n';
    }
    return all ? kExitOk : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------
// crypto

struct CryptoEvalOptions {
    double alpha = 0.0;
    double tau = 0.0;
    bool json = false;
};

inline bool alpha_in_domain(double alpha) { return alpha >= 0.0 && alpha <= crypto::kAlphaMax; }
inline bool tau_in_domain(double tau) { return tau >= 0.0 && tau < crypto::kPi; }

inline int cmd_crypto_eval(const CryptoEvalOptions &opt, std::ostream &out) {
    if (!alpha_in_domain(opt.alpha) || !tau_in_domain(opt.tau)) {
        return kExitUsage;
    }
    const crypto::ClosedFormComparison cmp = crypto::compare_closed_forms(opt.alpha, opt.tau);
    if (opt.json) {
        out << crypto::evaluation_json(cmp).dump(2) << '\n';
        return kExitOk;
    }
    const CorrelationSet &e = cmp.exact.correlations;
    out << "alpha = " << format_double(opt.alpha) << ", tau = " << format_double(opt.tau) << '\n';
    out << "E(a,b)   = " << format_fixed(e.e_ab, 9) << '\n';
    out << "E(a,b')  = " << format_fixed(e.e_ab_prime, 9) << '\n';
    out << "E(a',b)  = " << format_fixed(e.e_a_prime_b, 9) << '\n';
    out << "E(a',b') = " << format_fixed(e.e_a_prime_b_prime, 9) << '\n';
    out << "F = " << format_fixed(cmp.exact.f) << ", class = " << to_string(cmp.exact.nonlocality) << '\n';
    if (cmp.closed.singular) {
        out << "closed form: singular point\n";
    } else {
        out << "closed form (printed chi):    F = " << format_fixed(cmp.closed.printed.f, 9)
            << ", max |dE| = " << format_sci(cmp.printed_max_deviation) << '\n';
        out << "closed form (normalized chi): F = " << format_fixed(cmp.closed.normalized.f, 9)
            << ", max |dE| = " << format_sci(cmp.normalized_max_deviation) << '\n';
    }
    return kExitOk;
}

struct CryptoScanOptions {
    std::size_t n_alpha = 200;
    std::size_t n_tau = 200;
    std::string out_path; ///< empty: write the grid to `out`
    std::string format = "csv";
};

/// "200x200" -> (200, 200); nullopt on malformed input or dimensions < 2.
inline std::optional<std::pair<std::size_t, std::size_t>> parse_grid(const std::string &text) {
    const auto sep = text.find('x');
    if (sep == std::string::npos) {
        return std::nullopt;
    }
    auto parse = [](std::string_view s) -> std::optional<std::size_t> {
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size()) {
            return std::nullopt;
        }
        return v;
    };
    const std::string_view view(text);
    const auto a = parse(view.substr(0, sep));
    const auto t = parse(view.substr(sep + 1));
    if (!a || !t || *a < 2 || *t < 2) {
        return std::nullopt;
    }
    return std::pair{*a, *t};
}

inline int cmd_crypto_scan(const CryptoScanOptions &opt, std::ostream &out, std::ostream &err) {
    if (opt.n_alpha < 2 || opt.n_tau < 2 || (opt.format != "csv" && opt.format != "json")) {
        return kExitUsage;
    }
    const crypto::RegionScan scan = crypto::region_scan(opt.n_alpha, opt.n_tau);
    auto emit = [&](std::ostream &os) {
        if (opt.format == "csv") {
            crypto::write_region_csv(os, scan);
        } else {
            os << crypto::region_json(scan).dump() << '\n';
        }
    };
    if (opt.out_path.empty()) {
        emit(out);
        return kExitOk;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) {
        err << "cannot open " << opt.out_path << " for writing\n";
        return kExitVerificationFailure;
    }
    emit(file);

    std::map<NonlocalityClass, std::size_t> counts;
    double max_abs_f = 0.0;
    for (const auto &c : scan.cells) {
        ++counts[c.nonlocality];
        max_abs_f = std::max(max_abs_f, std::abs(c.f));
    }
    out << "wrote " << scan.cells.size() << " cells to " << opt.out_path << '\n';
    for (const auto cls : {NonlocalityClass::Local, NonlocalityClass::QuantumNonlocal, NonlocalityClass::Superquantum}) {
        out << to_string(cls) << ": " << counts[cls] << '\n';
    }
    out << "max |F| = " << format_fixed(max_abs_f) << '\n';
    return kExitOk;
}

struct CryptoTauAverageOptions {
    double alpha = 0.0;
    bool json = false;
};

inline constexpr double kTauAverageTolerance = 1e-6;

inline int cmd_crypto_tau_average(const CryptoTauAverageOptions &opt, std::ostream &out) {
    if (!alpha_in_domain(opt.alpha)) {
        return kExitUsage;
    }
    const crypto::TauAverage avg = crypto::tau_average_chsh(opt.alpha);
    const double diff = std::abs(avg.value - avg.quantum);
    const bool ok = diff <= kTauAverageTolerance;
    if (opt.json) {
        out << nlohmann::json{{"alpha", avg.alpha},
                              {"tau_average", avg.value},
                              {"quadrature_error_estimate", avg.error_estimate},
                              {"quantum", avg.quantum},
                              {"quoted_formula", avg.quoted},
                              {"difference", diff},
                              {"pass", ok}}
                   .dump(2)
            << '\n';
    } else {
        out << "alpha = " << format_double(opt.alpha) << '\n';
        out << "tau-averaged F = " << format_fixed(avg.value) << " (quadrature error estimate "
            << format_sci(avg.error_estimate) << ")\n";
        out << "quantum -3 cos 2a + cos 6a = " << format_fixed(avg.quantum) << '\n';
        out << "quoted -1 - 2 cos a + cos 2a = " << format_fixed(avg.quoted) << '\n';
        out << "|tau average - quantum| = " << format_sci(diff) << ": " << detail::verdict(ok) << '\n';
    }
    return ok ? kExitOk : kExitVerificationFailure;
}

// ---------------------------------------------------------------------------
// theorem

struct TheoremOptions {
    int nmin = 2;
    int nmax = 6;
    int trials = 50;
    std::uint64_t seed = 1;
    int partition = 8;
    bool json = false;
};

inline constexpr std::int64_t kBoundPartition = 1000000;

inline int cmd_theorem(const TheoremOptions &opt, std::ostream &out) {
    if (opt.nmin < 2 || opt.nmin > opt.nmax || opt.nmax > entangled::kMaxDimension || opt.trials < 1 ||
        opt.partition < 1) {
        return kExitUsage;
    }
    entangled::VerificationOptions vo;
    vo.trials = opt.trials;
    vo.partition_n = opt.partition;
    vo.seed = opt.seed;

    std::vector<entangled::DimensionReport> reports;
    for (int n = opt.nmin; n <= opt.nmax; ++n) {
        reports.push_back(entangled::verify_dimension(n, vo));
    }

    // The bound must decrease in the partition count and vanish as it grows.
    bool bound_ok = true;
    for (std::int64_t k = 2; k < 1024; ++k) {
        bound_ok = bound_ok && entangled::theorem_bound(k + 1, 1.0, 2) < entangled::theorem_bound(k, 1.0, 2);
    }

    bool all = bound_ok;
    for (const auto &r : reports) {
        all = all && r.pass();
    }

    if (opt.json) {
        nlohmann::json j;
        j["seed"] = opt.seed;
        j["trials"] = opt.trials;
        j["partition"] = opt.partition;
        j["dimensions"] = nlohmann::json::array();
        for (const auto &r : reports) {
            nlohmann::json rj = entangled::to_json(r);
            rj["bound_at_n_1e6"] = entangled::theorem_bound(kBoundPartition, 1.0, r.dimension);
            j["dimensions"].push_back(rj);
        }
        j["bound_strictly_decreasing"] = bound_ok;
        j["pass"] = all;
        out << j.dump(2) << '\n';
        return all ? kExitOk : kExitVerificationFailure;
    }

    out << "maximally entangled state identities: trials = " << opt.trials << ", seed = " << opt.seed
        << ", partition n = " << opt.partition << '\n';
    for (const auto &r : reports) {
        out << "N = " << r.dimension << (r.dimension == 2 ? " (spectrum {-1,+1})" : " (spectrum {-1,0,+1})") << '\n';
        for (const auto &res : r.residuals) {
            out << "  " << res.name;
            for (std::size_t pad = res.name.size(); pad < 30; ++pad) {
                out << ' ';
            }
            out << format_sci(res.max_residual) << "  " << detail::verdict(res.pass()) << '\n';
        }
        out << "  bound at n = 1e6 (||a||^2 = 1)  "
            << format_sci(entangled::theorem_bound(kBoundPartition, 1.0, r.dimension)) << '\n';
    }
    out << "bound strictly decreasing in n: " << detail::verdict(bound_ok) << '\n';
    out << "overall: " << detail::verdict(all) << '\n';
    return all ? kExitOk : kExitVerificationFailure;
}

} // namespace nonlocality::cli
