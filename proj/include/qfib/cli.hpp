#pragma once

/**
 * @file cli.hpp
 * @brief The qfib command line: table, enumerate, verify, det, validate-scheme.
 *
 * Exit codes: 0 success (every check passed), 1 a check failed, 2 usage error.
 * Output is a function of the flags only, so repeated runs are byte-identical.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qfib/error.hpp"
#include "qfib/identities.hpp"
#include "qfib/lgv.hpp"
#include "qfib/polyring.hpp"
#include "qfib/scheme_spec.hpp"
#include "qfib/serialize.hpp"
#include "qfib/statistics.hpp"
#include "qfib/tiling.hpp"

namespace qfib::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr int kMaxEnumerateN = 20;
inline constexpr int kMaxRecursiveN = 200;

// Flag values rejected after parsing; reported like a CLI11 parse error.
class UsageError : public Error {
public:
    using Error::Error;
};

namespace detail {

struct TableOptions {
    int n = 0;
    int k = 0;
    std::string stat;
    std::string append = "0,0";
    std::string format = "text";
};

struct EnumerateOptions {
    int n = 0;
    int k = 0;
    std::string object;
    std::string with_stat;
    std::string format = "text";
};

struct VerifyOptions {
    std::string identity = "all";
    int k = 0;
    int max_n = 0;
    std::string stat;
    int random_schemes = 0;
    std::uint64_t seed = 1;
    bool inject_fault = false;
    std::string format = "text";
};

struct DetOptions {
    int n = 0;
    int k = 0;
    std::string stat;
    std::string show = "both";
    bool at_ones = false;
    std::string format = "text";
};

struct ValidateOptions {
    int k = 0;
    std::string stat;
    int n_max = 10;
    bool inject_fault = false;
};

inline AppendSpec parse_append(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--append expects M-,M+");
    try {
        std::size_t used_a = 0, used_b = 0;
        const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        const int before = std::stoi(a, &used_a);
        const int after = std::stoi(b, &used_b);
        if (used_a != a.size() || used_b != b.size() || before < 0 || after < 0) throw UsageError("");
        return {before, after};
    } catch (const std::exception&) {
        throw UsageError("--append expects two nonnegative integers M-,M+");
    }
}

inline WeightScheme scheme_from_flag(const std::string& stat, int k) {
    try {
        return parse_scheme_spec(stat, k);
    } catch (const Error& e) {
        throw UsageError(std::string("--stat: ") + e.what());
    }
}

inline void print_poly(std::ostream& out, const Polynomial& p, const std::string& format) {
    if (format == "json")
        out << to_json(p).dump() << '\n';
    else
        out << qfib::format(p) << '\n';
}

inline int run_table(const TableOptions& o, std::ostream& out) {
    if (o.n < 0 || o.n > kMaxRecursiveN) throw UsageError("--n must be in [0, " + std::to_string(kMaxRecursiveN) + "]");
    if (o.k < 1) throw UsageError("--k must be >= 1");
    const AppendSpec app = parse_append(o.append);
    if (o.stat == "ls-lpi") {
        if (app.before != 0 || app.after != 0) throw UsageError("ls-lpi has no weight scheme; --append is unsupported");
        if (o.n > kMaxEnumerateN) throw UsageError("ls-lpi is enumerated; --n must be <= 20");
        print_poly(out, distribution({Statistic::ls, Family::lpi}, o.n, o.k), o.format);
        return kExitOk;
    }
    const WeightScheme w = scheme_from_flag(o.stat, o.k);
    print_poly(out, weighted_sum_recursive(o.n, o.k, w, app), o.format);
    return kExitOk;
}

inline int run_enumerate(const EnumerateOptions& o, std::ostream& out) {
    if (o.n < 0 || o.n > kMaxEnumerateN) throw UsageError("--n must be in [0, 20]");
    if (o.k < 1) throw UsageError("--k must be >= 1");
    const bool tilings = o.object == "tilings";
    std::optional<Family> family;
    if (!tilings) {
        family = parse_family(o.object);
        if (!family) throw UsageError("--object must be one of tilings, lp, rlp, prlp, lpi");
    }
    std::optional<StatSetPair> pair;
    if (!o.with_stat.empty()) {
        const auto stat = parse_statistic(o.with_stat);
        if (!stat) throw UsageError("--with-stat must be one of inv, maj, rb, ls");
        if (tilings) throw UsageError("--with-stat needs a permutation or partition --object");
        pair = StatSetPair{*stat, *family};
        if (!is_valid(*pair)) throw UsageError("statistic " + o.with_stat + " does not apply to " + o.object);
    }
    for (const Tiling& t : enumerate_tilings(o.n, o.k)) {
        std::string text;
        if (tilings)
            text = format_tiling(t);
        else if (*family == Family::lpi)
            text = format_partition(tiling_to_partition(t));
        else
            text = format_permutation(tiling_to_permutation(t, *family));
        if (o.format == "json") {
            nlohmann::ordered_json j;
            j["object"] = text;
            if (pair) j[o.with_stat] = statistic_of(t, *pair);
            out << j.dump() << '\n';
        } else {
            out << text;
            if (pair) out << ' ' << statistic_of(t, *pair);
            out << '\n';
        }
    }
    return kExitOk;
}

inline int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> identities{"recursion", "convolution", "kreduce", "det", "all"};
    if (std::find(identities.begin(), identities.end(), o.identity) == identities.end())
        throw UsageError("--identity must be one of recursion, convolution, kreduce, det, all");
    if (o.k < 1) throw UsageError("--k must be >= 1");
    if (o.max_n < 1 || o.max_n > kMaxEnumerateN) throw UsageError("--max-n must be in [1, 20]");
    if (o.identity == "kreduce" && o.k < 2) throw UsageError("kreduce needs --k >= 2");
    const bool wants_det = o.identity == "det" || (o.identity == "all" && !o.stat.empty());
    if (wants_det && o.k > kMaxDeterminantDim) throw UsageError("determinants need --k <= 6");
    if (o.stat.empty() && o.random_schemes <= 0) throw UsageError("give --stat or --random-schemes");
    if (o.random_schemes < 0) throw UsageError("--random-schemes must be >= 0");

    std::uint64_t seed = o.seed;
    if (const char* env = std::getenv("QFIB_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError("QFIB_SEED must be a nonnegative integer");
        }
    }

    std::vector<WeightScheme> schemes;
    std::optional<StatSetPair> named;
    if (!o.stat.empty()) {
        if (o.stat == "ls-lpi") throw UsageError("ls-lpi has no weight scheme to verify");
        schemes.push_back(scheme_from_flag(o.stat, o.k));
        named = parse_pair(o.stat);
    }
    for (int r = 0; r < o.random_schemes; ++r) schemes.push_back(random_scheme(o.k, seed, r));
    if (o.inject_fault)
        for (auto& w : schemes) w = corrupted_scheme(w);

    const bool all = o.identity == "all";
    const bool displays = all && named && !o.inject_fault;
    std::vector<IdentityReport> reports;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        const WeightScheme& w = schemes[s];
        // under "all", determinants only for the --stat scheme; random ones go through --identity det
        const bool det_here = o.identity == "det" || (all && !o.stat.empty() && s == 0);
        if (all || o.identity == "recursion")
            for (int n = 1; n <= o.max_n; ++n) reports.push_back(verify_recursion(n, o.k, w));
        if (all || o.identity == "convolution")
            for (int m = 1; m <= o.max_n; ++m)
                for (int n = 1; n <= o.max_n; ++n) reports.push_back(verify_convolution(m, n, o.k, w));
        if ((all && o.k >= 2) || o.identity == "kreduce")
            for (int n = 1; n <= o.max_n; ++n) reports.push_back(verify_k_reduction(n, o.k, w));
        if (det_here)
            for (int n = 1; n <= o.max_n; ++n) reports.push_back(verify_determinant(n, o.k, w));
    }
    if (displays) {
        for (int n = 1; n <= o.max_n; ++n) reports.push_back(display_recursion(*named, n, o.k));
        for (int m = 1; m <= o.max_n; ++m)
            for (int n = 1; n <= o.max_n; ++n) reports.push_back(display_convolution(*named, m, n, o.k));
        if (o.k >= 2)
            for (int n = 1; n <= o.max_n; ++n) reports.push_back(display_k_reduction(*named, n, o.k));
        for (int n = 1; n <= o.max_n; ++n) reports.push_back(display_determinant(*named, n, o.k));
    }
    if (all) {
        for (int m = 1; m <= o.max_n; ++m)
            for (int n = 1; n <= o.max_n; ++n) reports.push_back(convolution_count_identity(m, n, o.k));
        if (o.k >= 2)
            for (int n = 1; n <= o.max_n; ++n) reports.push_back(k_reduction_count_identity(n, o.k));
        if (o.k <= 5)
            for (int n = 1; n <= o.max_n; ++n) reports.push_back(miles_sign_check(n, o.k));
    }

    const IdentityReport* first_failure = nullptr;
    std::size_t failures = 0;
    for (const auto& r : reports) {
        if (o.format == "json")
            out << to_json(r).dump() << '\n';
        else
            out << summary_line(r) << '\n';
        if (!r.pass) {
            ++failures;
            if (!first_failure) first_failure = &r;
        }
    }
    if (o.format != "json") out << reports.size() << " reports, " << failures << " failed\n";
    if (first_failure) {
        err << "first failure: " << summary_line(*first_failure) << '\n';
        return kExitFailed;
    }
    return kExitOk;
}

inline int run_det(const DetOptions& o, std::ostream& out) {
    if (o.n < 1) throw UsageError("--n must be >= 1");
    if (o.k < 1) throw UsageError("--k must be >= 1");
    if (o.k > kMaxDeterminantDim) throw UsageError("determinants need --k <= 6");
    if (o.show != "closed" && o.show != "exact" && o.show != "both")
        throw UsageError("--show must be closed, exact or both");
    if (o.n > kMaxEnumerateN) throw UsageError("--n must be <= 20");
    const WeightScheme w = scheme_from_flag(o.stat, o.k);
    const MinorSpec spec{o.n, o.k};
    const PolyMatrix matrix = build_minor(spec, w);
    const Polynomial exact = determinant(matrix);
    const Polynomial closed = closed_form_det(spec, w);

    auto render = [&](const Polynomial& p) {
        return o.at_ones ? evaluate_at_ones(p).str() : qfib::format(p);
    };
    if (o.format == "json") {
        nlohmann::ordered_json j;
        j["n"] = o.n;
        j["k"] = o.k;
        j["scheme"] = w.name;
        j["matrix"] = to_json(matrix);
        if (o.show != "closed") j["exact"] = to_json(exact);
        if (o.show != "exact") j["closed"] = to_json(closed);
        j["match"] = exact == closed;
        out << j.dump() << '\n';
    } else {
        if (o.show != "closed") out << render(exact) << '\n';
        if (o.show != "exact") out << render(closed) << '\n';
    }
    return exact == closed ? kExitOk : kExitFailed;
}

inline int run_validate(const ValidateOptions& o, std::ostream& out) {
    if (o.k < 1) throw UsageError("--k must be >= 1");
    if (o.n_max < 1) throw UsageError("--n-max must be >= 1");
    WeightScheme w = scheme_from_flag(o.stat, o.k);
    if (o.inject_fault) w = corrupted_scheme(w);
    const SchemeValidation v = validate_weight_scheme(w, o.n_max);
    if (v.ok()) {
        out << "pass " << w.name << '\n';
        return kExitOk;
    }
    out << "fail " << w.name << ": " << describe(*v.violation) << '\n';
    return kExitFailed;
}

}  // namespace detail

/// Runs the command line given in args (args[0] is the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted k-Fibonacci tilings: q-analogue tables, identity checks and determinants", "qfib"};
    app.require_subcommand(1);

    const std::vector<std::string> formats{"text", "json"};

    detail::TableOptions table;
    auto* table_cmd = app.add_subcommand("table", "Print F_n^k(z;q) for a statistic or weight scheme");
    table_cmd->add_option("--n", table.n, "board length")->required();
    table_cmd->add_option("--k", table.k, "maximum tile length")->required();
    table_cmd->add_option("--stat", table.stat, "statistic pair (e.g. maj-lp) or generic:A,B,C")->required();
    table_cmd->add_option("--append", table.append, "untiled cells appended before,after (M-,M+)");
    table_cmd->add_option("--format", table.format)->check(CLI::IsMember(formats));

    detail::EnumerateOptions enumerate;
    auto* enumerate_cmd = app.add_subcommand("enumerate", "List tilings or layered objects");
    enumerate_cmd->add_option("--n", enumerate.n)->required();
    enumerate_cmd->add_option("--k", enumerate.k)->required();
    enumerate_cmd->add_option("--object", enumerate.object, "tilings, lp, rlp, prlp or lpi")->required();
    enumerate_cmd->add_option("--with-stat", enumerate.with_stat, "inv, maj, rb or ls");
    enumerate_cmd->add_option("--format", enumerate.format)->check(CLI::IsMember(formats));

    detail::VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Check identities exactly over a parameter grid");
    verify_cmd->add_option("--identity", verify.identity, "recursion, convolution, kreduce, det or all");
    verify_cmd->add_option("--k", verify.k)->required();
    verify_cmd->add_option("--max-n", verify.max_n)->required();
    verify_cmd->add_option("--stat", verify.stat, "statistic pair or generic:A,B,C");
    verify_cmd->add_option("--random-schemes", verify.random_schemes, "number of seeded random schemes");
    verify_cmd->add_option("--seed", verify.seed, "seed for random schemes (QFIB_SEED overrides)");
    verify_cmd->add_flag("--inject-fault", verify.inject_fault, "break shift coherence of every scheme (testing hook)");
    verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember(formats));

    detail::DetOptions det;
    auto* det_cmd = app.add_subcommand("det", "Determinant of the k x k Toeplitz minor and its closed form");
    det_cmd->add_option("--n", det.n)->required();
    det_cmd->add_option("--k", det.k)->required();
    det_cmd->add_option("--stat", det.stat)->required();
    det_cmd->add_option("--show", det.show, "closed, exact or both");
    det_cmd->add_flag("--at-ones", det.at_ones, "print values at z = 1, q = 1");
    det_cmd->add_option("--format", det.format)->check(CLI::IsMember(formats));

    detail::ValidateOptions validate;
    auto* validate_cmd = app.add_subcommand("validate-scheme", "Check shift coherence of a weight scheme");
    validate_cmd->add_option("--k", validate.k)->required();
    validate_cmd->add_option("--stat", validate.stat)->required();
    validate_cmd->add_option("--n-max", validate.n_max);
    validate_cmd->add_flag("--inject-fault", validate.inject_fault, "break shift coherence (testing hook)");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    CLI::App* active = &app;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        for (auto* sub : app.get_subcommands()) active = sub;
        if (table_cmd->parsed()) return detail::run_table(table, out);
        if (enumerate_cmd->parsed()) return detail::run_enumerate(enumerate, out);
        if (verify_cmd->parsed()) return detail::run_verify(verify, out, err);
        if (det_cmd->parsed()) return detail::run_det(det, out);
        if (validate_cmd->parsed()) return detail::run_validate(validate, out);
    } catch (const CLI::CallForHelp&) {
        for (auto* sub : app.get_subcommands()) active = sub;
        out << active->help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        for (auto* sub : app.get_subcommands()) active = sub;
        err << "error: " << e.what() << '\n' << active->help();
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n' << active->help();
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace qfib::cli
