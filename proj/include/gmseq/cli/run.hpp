#pragma once

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>

#include <json.hpp>

#include "../error.hpp"
#include "../localization.hpp"
#include "../multiplicity.hpp"
#include "../reduction.hpp"
#include "corpus.hpp"
#include "problem.hpp"
#include "report.hpp"

namespace gmseq::cli {

using nlohmann::json;

enum ExitCode : int {
    exit_ok = 0,
    exit_mismatch = 1,
    exit_indeterminate = 2,
    exit_input = 3,
    exit_computation = 4,
    exit_internal = 5,
};

enum class Task { compute, verify_formula, check_reduction, superficial, corpus };

inline std::optional<Task> parse_task(const std::string& s) {
    if (s == "compute") return Task::compute;
    if (s == "verify-formula") return Task::verify_formula;
    if (s == "check-reduction") return Task::check_reduction;
    if (s == "superficial") return Task::superficial;
    if (s == "corpus") return Task::corpus;
    return std::nullopt;
}

inline const char* to_string(Task t) {
    switch (t) {
    case Task::compute: return "compute";
    case Task::verify_formula: return "verify-formula";
    case Task::check_reduction: return "check-reduction";
    case Task::superficial: return "superficial";
    case Task::corpus: return "corpus";
    }
    return "compute";
}

/// Effective run parameters. Precedence: flags, then GMSEQ_* environment
/// variables, then the problem file, then these defaults.
struct Settings {
    unsigned umax = 0;
    unsigned vmax = 0;
    unsigned window_width = 3;
    unsigned grow_cap = 64;
    unsigned nmax = 12;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    unsigned trials = 10;
    bool validate_localizations = false;
    bool timings = false;

    MultiplicityOptions multiplicity() const {
        MultiplicityOptions o;
        o.initial_u = umax;
        o.initial_v = vmax;
        o.window_width = window_width;
        o.grow_cap = grow_cap;
        o.jobs = jobs;
        return o;
    }

    json to_json() const {
        return {{"umax", umax}, {"vmax", vmax}, {"window_width", window_width}, {"grow_cap", grow_cap},
                {"nmax", nmax}, {"seed", seed}, {"trials", trials}, {"validate_localizations", validate_localizations}};
    }
};

inline void apply_parameters(Settings& s, const json& p) {
    auto num = [&](const char* key, auto& field) {
        if (p.contains(key)) field = p[key].get<std::remove_reference_t<decltype(field)>>();
    };
    num("umax", s.umax);
    num("vmax", s.vmax);
    num("window_width", s.window_width);
    num("grow_cap", s.grow_cap);
    num("nmax", s.nmax);
    num("seed", s.seed);
    num("trials", s.trials);
    if (p.contains("validate_localizations")) s.validate_localizations = p["validate_localizations"].get<bool>();
}

/// Reads GMSEQ_UMAX, GMSEQ_VMAX, GMSEQ_WINDOW_WIDTH, GMSEQ_GROW_CAP,
/// GMSEQ_NMAX, GMSEQ_SEED, GMSEQ_JOBS and GMSEQ_TRIALS.
inline void apply_environment(Settings& s) {
    auto read = [](const char* name, auto& field) {
        const char* v = std::getenv(name);
        if (!v || !*v) return;
        char* end = nullptr;
        const unsigned long long x = std::strtoull(v, &end, 10);
        if (*end != '\0' || v[0] == '-') throw InputError(std::string("not a nonnegative integer: ") + v, std::string("$") + name);
        field = static_cast<std::remove_reference_t<decltype(field)>>(x);
    };
    read("GMSEQ_UMAX", s.umax);
    read("GMSEQ_VMAX", s.vmax);
    read("GMSEQ_WINDOW_WIDTH", s.window_width);
    read("GMSEQ_GROW_CAP", s.grow_cap);
    read("GMSEQ_NMAX", s.nmax);
    read("GMSEQ_SEED", s.seed);
    read("GMSEQ_JOBS", s.jobs);
    read("GMSEQ_TRIALS", s.trials);
}

inline void check_caps(const Settings& s, const Caps& caps) {
    if (s.grow_cap > caps.max_grow_cap) throw InputError("grow cap exceeds " + std::to_string(caps.max_grow_cap), "--grow-cap");
    if (s.nmax > caps.max_nmax) throw InputError("nmax exceeds " + std::to_string(caps.max_nmax), "--nmax");
    if (s.trials > caps.max_trials) throw InputError("trials exceed " + std::to_string(caps.max_trials), "--trials");
    if (s.window_width == 0) throw InputError("window width must be positive", "--window-width");
    if (s.jobs == 0) throw InputError("jobs must be positive", "--jobs");
}

struct RunResult {
    json report;
    int exit_code = exit_ok;
};

namespace detail {

inline json envelope(Task task, const Settings& s) {
    return {{"schema", 1}, {"engine", {{"name", "gmseq"}, {"version", kEngineVersion}}}, {"task", to_string(task)}, {"settings", s.to_json()}};
}

} // namespace detail

/// Runs one task on a parsed problem.
inline RunResult run(Task task, const Problem& p, const Settings& s) {
    const auto start = std::chrono::steady_clock::now();
    RunResult out;
    out.report = detail::envelope(task, s);
    out.report["input"] = p.echo;
    const CyclicModule m = module_of(p);
    const MultiplicityOptions mopt = s.multiplicity();
    json result;
    std::string status = "ok";
    switch (task) {
    case Task::compute: {
        result["sequence"] = to_json(multiplicity_sequence(p.i, m, mopt));
        result["diagnostics"] = to_json(diagnostics(p.i, m, true), p.ring);
        if (p.j) result["sequence_J"] = to_json(multiplicity_sequence(*p.j, m, mopt));
        break;
    }
    case Task::verify_formula: {
        const FormulaReport r = verify_formula(p.i, m, mopt, p.primes.empty() ? nullptr : &p.primes);
        result = to_json(r, p.ring);
        bool indeterminate = false;
        for (const auto& t : r.terms) indeterminate = indeterminate || t.verdict == Verdict::indeterminate;
        if (r.any_mismatch()) {
            status = "mismatch";
            out.exit_code = exit_mismatch;
        } else if (indeterminate) {
            status = "indeterminate";
            out.exit_code = exit_indeterminate;
        }
        break;
    }
    case Task::check_reduction: {
        if (!p.j) throw InputError("check-reduction needs ideal J", "/ideals/J");
        ReductionOptions ropt;
        ropt.multiplicity = mopt;
        ropt.n_max = s.nmax;
        ropt.n_max_escalated = std::max(s.nmax, 48u);
        const ReductionReport r = rees_criterion(p.i, *p.j, m, ropt);
        result = to_json(r);
        if (!r.consistent) {
            status = "inconsistent";
            out.exit_code = exit_mismatch;
        } else if (r.verdict == ReductionVerdict::indeterminate) {
            status = "indeterminate";
            out.exit_code = exit_indeterminate;
        }
        break;
    }
    case Task::superficial: {
        SuperficialOptions sopt;
        sopt.trials = s.trials;
        sopt.seed = s.seed;
        sopt.validate_localizations = s.validate_localizations;
        sopt.multiplicity = mopt;
        try {
            const SuperficialCandidate c = superficial_search(p.i, m, sopt);
            result["candidate"] = to_json(c);
            const bool again = revalidate(c, p.i, m, sopt);
            result["revalidated"] = again;
            if (!again) {
                status = "mismatch";
                out.exit_code = exit_mismatch;
            }
        } catch (const SuperficialSearchFailed& e) {
            json trials = json::array();
            for (const auto& t : e.trials()) trials.push_back(to_json(t.candidate));
            result["failed_trials"] = trials;
            status = "indeterminate";
            out.exit_code = exit_indeterminate;
        }
        break;
    }
    case Task::corpus: throw InputError("corpus takes no problem file", "--task");
    }
    out.report["result"] = result;
    out.report["status"] = status;
    if (s.timings)
        out.report["timings"] = {{"total_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};
    return out;
}

inline RunResult run_corpus(const CorpusOptions& c, const Settings& s) {
    RunResult out;
    out.report = detail::envelope(Task::corpus, s);
    out.report["corpus"] = {{"count", c.count}, {"nvars", c.nvars}, {"max_degree", c.max_degree}, {"seed", c.seed}};
    out.report["problems"] = generate_corpus(c);
    out.report["status"] = "ok";
    return out;
}

/// Exit code for an exception escaping `run`.
inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const ParseError*>(&e) || dynamic_cast<const RingMismatch*>(&e) ||
        dynamic_cast<const PreconditionError*>(&e))
        return exit_input;
    if (dynamic_cast<const ResourceLimit*>(&e) || dynamic_cast<const NonStabilization*>(&e)) return exit_computation;
    return exit_internal;
}

inline const char* error_kind(const std::exception& e) {
    if (dynamic_cast<const InputError*>(&e)) return "input";
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    if (dynamic_cast<const RingMismatch*>(&e)) return "ring-mismatch";
    if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
    if (dynamic_cast<const ResourceLimit*>(&e)) return "resource-limit";
    if (dynamic_cast<const NonStabilization*>(&e)) return "non-stabilization";
    if (dynamic_cast<const EngineError*>(&e)) return "engine";
    return "internal";
}

} // namespace gmseq::cli
