// gmseq: multiplicity sequences, the local formula, and reduction checks
// from a JSON problem file.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gmseq/cli/run.hpp"
#include "gmseq/gmseq.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gmseq::cli::InputError("cannot open file", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    using namespace gmseq::cli;
    CLI::App app{"Generalized multiplicity sequences of ideals on cyclic modules", "gmseq"};
    app.set_version_flag("--version", kEngineVersion);

    std::string input, task_name = "compute", format = "json";
    std::optional<unsigned> umax, vmax, window_width, grow_cap, nmax, jobs, trials;
    std::optional<std::uint64_t> characteristic, seed;
    bool timings = false, validate_localizations = false;
    CorpusOptions corpus;
    std::string kind = "ideal";

    app.add_option("--input,-i", input, "Problem file (JSON), or - for stdin");
    app.add_option("--task,-t", task_name, "compute | verify-formula | check-reduction | superficial | corpus");
    app.add_option("--umax", umax, "Initial table size in the m-direction");
    app.add_option("--vmax", vmax, "Initial table size in the I-direction");
    app.add_option("--window-width", window_width, "Width of the stability window (default 3)");
    app.add_option("--grow-cap", grow_cap, "Largest table size tried (default 64)");
    app.add_option("--nmax", nmax, "Largest n for the direct reduction test (default 12)");
    app.add_option("--char", characteristic, "Override the ring characteristic (0 or a prime)");
    app.add_option("--seed", seed, "Seed for superficial search and corpus generation");
    app.add_option("--jobs,-j", jobs, "Worker threads (default 1)");
    app.add_option("--trials", trials, "Superficial search trials (default 10)");
    app.add_flag("--validate-localizations", validate_localizations, "Also validate superficial candidates after localization");
    app.add_option("--format", format, "json | table")->check(CLI::IsMember({"json", "table"}));
    app.add_flag("--timings", timings, "Include wall-clock timings in the report");
    app.add_option("--count", corpus.count, "corpus: number of problems");
    app.add_option("--nvars", corpus.nvars, "corpus: number of variables");
    app.add_option("--max-degree", corpus.max_degree, "corpus: largest generator degree");
    app.add_option("--kind", kind, "corpus: ideal | pair | reduction-pair | m-primary")
        ->check(CLI::IsMember({"ideal", "pair", "reduction-pair", "m-primary"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "gmseq: " << e.what() << "\n";
        return exit_input;
    }

    try {
        const auto task = parse_task(task_name);
        if (!task) throw InputError("unknown task '" + task_name + "'", "--task");
        Settings s;
        std::optional<Problem> problem;
        if (*task != Task::corpus) {
            if (input.empty()) throw InputError("--input is required", "--input");
            problem = parse_problem_text(read_input(input), characteristic);
            apply_parameters(s, problem->parameters);
        }
        apply_environment(s);
        if (umax) s.umax = *umax;
        if (vmax) s.vmax = *vmax;
        if (window_width) s.window_width = *window_width;
        if (grow_cap) s.grow_cap = *grow_cap;
        if (nmax) s.nmax = *nmax;
        if (seed) s.seed = *seed;
        if (jobs) s.jobs = *jobs;
        if (trials) s.trials = *trials;
        if (validate_localizations) s.validate_localizations = true;
        s.timings = timings;
        check_caps(s, Caps{});

        RunResult r;
        if (*task == Task::corpus) {
            corpus.seed = s.seed;
            corpus.kind = kind == "pair"             ? CorpusKind::pair
                          : kind == "reduction-pair" ? CorpusKind::reduction_pair
                          : kind == "m-primary"      ? CorpusKind::m_primary
                                                     : CorpusKind::ideal;
            r = run_corpus(corpus, s);
        } else {
            r = run(*task, *problem, s);
        }
        if (format == "table")
            std::cout << render_table(r.report);
        else
            std::cout << r.report.dump(2) << "\n";
        return r.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "gmseq: " << error_kind(e) << " error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}
