// ctrlcheck: command-line front end.
//
// Exit codes: 0 all checked notions hold, 1 some notion fails,
// 2 the requested notion is not applicable, 3 input error,
// 4 lattice/theorem violation or oracle disagreement.

#include "ctrlcheck/aut_io.hpp"
#include "ctrlcheck/generator.hpp"
#include "ctrlcheck/oracles.hpp"
#include "ctrlcheck/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace ctrlcheck;
namespace fs = std::filesystem;

namespace
{

enum Exit
{
    kHolds = 0,
    kFails = 1,
    kNotApplicable = 2,
    kInputError = 3,
    kViolation = 4,
};

int exit_for(Status s)
{
    switch (s) {
    case Status::holds: return kHolds;
    case Status::fails: return kFails;
    case Status::not_applicable: return kNotApplicable;
    }
    return kInputError;
}

std::size_t default_det_cap()
{
    if (const char* env = std::getenv("CTRLCHECK_DET_CAP")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring malformed CTRLCHECK_DET_CAP\n";
        }
    }
    return kDefaultDeterminizationCap;
}

struct Common
{
    bool json = false;
    bool supervised = false;
    bool relax_scn = false;
    bool sc_reachable = false;
    std::size_t det_cap = default_det_cap();

    CheckOptions options() const { return {det_cap, relax_scn, sc_reachable}; }
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_flag("--json", c.json, "Emit JSON");
    cmd->add_flag("--supervised", c.supervised, "Check the supervised plant S||P against P");
    cmd->add_flag("--relax-scn", c.relax_scn, "Compute SCn even when L(S) is not included in L(P)");
    cmd->add_flag("--sc-reachable", c.sc_reachable, "Embed only reachable supervisor states for SC");
    cmd->add_option("--det-cap", c.det_cap, "Cap on determinized / subset-search states")->capture_default_str();
}

Notion notion_arg(const std::string& s)
{
    auto n = parse_notion(s);
    if (!n)
        throw CLI::ValidationError("notion", "unknown notion '" + s + "'");
    return *n;
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    out << text;
}

void print_matrix(const NotionMatrix& m)
{
    const auto& c = m.context;
    std::cout << "context: S " << (c.s_deterministic ? "deterministic" : "nondeterministic") << ", P "
              << (c.p_deterministic ? "deterministic" : "nondeterministic")
              << (c.subautomaton ? ", S subautomaton of P" : "")
              << (c.language_inclusion ? ", L(S) in L(P)" : "") << (m.supervised ? " (supervised)" : "") << "\n";
    for (Notion n : kAllNotions)
        std::cout << "  " << describe(m.at(n)) << "\n";
}

// FUZZ

struct FuzzArgs
{
    int theorem = 1;
    std::size_t count = 1000;
    std::uint64_t seed = 1;
    std::optional<std::size_t> max_states;
    std::optional<double> density;
    std::string config;
    std::string replay_dir;
    bool oracle = false;
};

/// Writes the original and shrunk instance of each violation plus a manifest.
void write_replays(const FuzzArgs& args, const GenParams& params, const TheoremReport& report, const CheckOptions& opts)
{
    fs::path root = fs::path(args.replay_dir) / ("theorem" + std::to_string(args.theorem));
    fs::create_directories(root);
    Json manifest;
    manifest["theorem"] = args.theorem;
    manifest["seed"] = args.seed;
    manifest["count"] = args.count;
    manifest["violations"] = Json::array();

    std::size_t k = 0;
    for (const auto& v : report.violations) {
        const fs::path dir = root / ("violation-" + std::to_string(k++));
        fs::create_directories(dir);
        emit(v.supervisor_aut, (dir / "supervisor.aut").string());
        emit(v.plant_aut, (dir / "plant.aut").string());

        const Instance inst{parse_aut(v.supervisor_aut), parse_aut(v.plant_aut)};
        const auto rel = std::find_if(report.relations.begin(), report.relations.end(),
                                      [&](const RelationTally& t) { return t.relation.name() == v.relation; });
        Json entry{{"index", v.index},
                   {"instance_seed", instance_seed(params.seed, v.index)},
                   {"relation", v.relation},
                   {"verdicts", v.verdicts},
                   {"dir", dir.filename().string()}};
        if (rel != report.relations.end()) {
            const LatticeRelation r = rel->relation;
            auto property = [&](const Automaton& s, const Automaton& p) {
                Verdict a = check(r.antecedent, s, p, opts);
                Verdict b = check(r.consequent, s, p, opts);
                if (!a.applicable() || !b.applicable())
                    return false;
                return r.equivalence ? a.holds() == b.holds() : (!a.holds() || b.holds());
            };
            const Instance small = shrink(inst, property);
            save_aut(small.supervisor, dir / "shrunk-supervisor.aut");
            save_aut(small.plant, dir / "shrunk-plant.aut");
            entry["shrunk_size"] = instance_size(small);
            entry["original_size"] = instance_size(inst);
        }
        manifest["violations"].push_back(entry);
    }
    emit(manifest.dump(2) + "\n", (root / "manifest.json").string());
}

int run_fuzz(const FuzzArgs& args, const Common& common)
{
    GenParams params = params_for_theorem(args.theorem, args.seed);
    if (!args.config.empty())
        params = load_gen_config(args.config, params);
    params.seed = args.seed;
    if (args.max_states)
        params.max_states = *args.max_states;
    if (args.density)
        params.density = *args.density;
    params.min_states = std::min(params.min_states, params.max_states);
    params.validate();

    const CheckOptions opts = common.options();
    TheoremVerifier verifier(args.theorem, opts);
    std::size_t oracle_compared = 0;
    std::vector<std::string> oracle_disagreements;
    for (std::size_t i = 0; i < args.count; ++i) {
        GenParams p = params;
        p.seed = instance_seed(params.seed, i);
        const Instance inst = generate_pair(p);
        verifier.add(inst.supervisor, inst.plant);
        if (!args.oracle)
            continue;
        for (Notion n : kAllNotions) {
            try {
                const Status expected = oracle(n, inst.supervisor, inst.plant, opts);
                ++oracle_compared;
                const Verdict got = check(n, inst.supervisor, inst.plant, opts);
                if (got.status != expected)
                    oracle_disagreements.push_back("instance " + std::to_string(i) + ": " + describe(got) +
                                                   ", oracle says " + std::string(to_string(expected)));
            } catch (const BudgetExceeded&) {
            }
        }
    }
    const TheoremReport& report = verifier.report();
    if (!args.replay_dir.empty() && !report.violations.empty())
        write_replays(args, params, report, opts);

    if (common.json) {
        Json j = to_json(report);
        j["seed"] = args.seed;
        if (args.oracle)
            j["oracle"] = {{"compared", oracle_compared}, {"disagreements", oracle_disagreements}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "theorem " << args.theorem << " (" << theorem_context(args.theorem) << "): " << report.instances
                  << " instances, seed " << args.seed << "\n";
        for (const auto& t : report.relations)
            std::cout << "  " << t.relation.name() << ": " << t.checked - t.violations << "/" << t.checked
                      << " agree, " << t.violations << " violations\n";
        std::cout << "  witnesses: " << report.witnesses_confirmed << "/" << report.witnesses_checked
                  << " confirmed";
        if (report.witnesses_inconclusive)
            std::cout << ", " << report.witnesses_inconclusive << " beyond oracle budget";
        std::cout << "\n";
        for (const auto& f : report.witness_failures)
            std::cout << "  witness failure: " << f << "\n";
        for (const auto& v : report.violations)
            std::cout << "  violation at instance " << v.index << ": " << v.relation << " (" << v.verdicts << ")\n";
        if (args.oracle) {
            std::cout << "  oracle: " << oracle_compared << " verdicts compared, " << oracle_disagreements.size()
                      << " disagreements\n";
            for (const auto& d : oracle_disagreements)
                std::cout << "  oracle disagreement: " << d << "\n";
        }
    }
    return report.ok() && oracle_disagreements.empty() ? kHolds : kViolation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Controllability checker for supervisors and plants given as finite automata"};
    app.require_subcommand(1);
    Common common;

    // check
    std::string notion_s, s_path, p_path;
    bool with_oracle = false;
    auto* check_cmd = app.add_subcommand("check", "Decide one notion for a supervisor and a plant");
    check_cmd->add_option("notion", notion_s, "LC, AC, CR, SC, PB, PBn, FM, KT, SCn or FMSub")->required();
    check_cmd->add_option("supervisor", s_path)->required();
    check_cmd->add_option("plant", p_path)->required();
    check_cmd->add_flag("--oracle", with_oracle, "Cross-check against the brute-force oracle");
    add_common(check_cmd, common);

    // matrix
    auto* matrix_cmd = app.add_subcommand("matrix", "Decide every notion and report the context");
    matrix_cmd->add_option("supervisor", s_path)->required();
    matrix_cmd->add_option("plant", p_path)->required();
    add_common(matrix_cmd, common);

    // export
    std::string what, output;
    std::vector<std::string> inputs;
    auto* export_cmd = app.add_subcommand("export", "Write a product, determinization or DOT drawing");
    export_cmd->add_option("what", what, "product, determinized or dot")
        ->required()
        ->check(CLI::IsMember({"product", "determinized", "dot"}));
    export_cmd->add_option("inputs", inputs, "one automaton, or two for product")->required();
    export_cmd->add_option("-o,--output", output, "Output file (default stdout)");
    add_common(export_cmd, common);

    // corpus
    std::string corpus_dir = "corpus";
    auto* corpus_cmd = app.add_subcommand("corpus", "Run the golden corpus");
    corpus_cmd->add_option("dir", corpus_dir)->capture_default_str();
    add_common(corpus_cmd, common);

    // fuzz
    FuzzArgs fuzz;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Verify a theorem's lattice on random instances");
    fuzz_cmd->add_option("theorem", fuzz.theorem)->required()->check(CLI::Range(1, 4));
    fuzz_cmd->add_option("--count", fuzz.count)->capture_default_str();
    fuzz_cmd->add_option("--seed", fuzz.seed)->capture_default_str();
    fuzz_cmd->add_option("--max-states", fuzz.max_states);
    fuzz_cmd->add_option("--density", fuzz.density)->check(CLI::Range(0.0, 1.0));
    fuzz_cmd->add_option("--config", fuzz.config, "key=value generator config")->check(CLI::ExistingFile);
    fuzz_cmd->add_option("--replay-dir", fuzz.replay_dir, "Directory for violation replay files");
    fuzz_cmd->add_flag("--oracle", fuzz.oracle, "Also compare every verdict against the oracles");
    add_common(fuzz_cmd, common);

    // oracle
    std::optional<std::size_t> depth;
    auto* oracle_cmd = app.add_subcommand("oracle", "Decide a notion by brute-force enumeration");
    oracle_cmd->add_option("notion", notion_s)->required();
    oracle_cmd->add_option("supervisor", s_path)->required();
    oracle_cmd->add_option("plant", p_path)->required();
    oracle_cmd->add_option("--depth", depth, "Word length for trace notions (default: sufficiency bound)");
    add_common(oracle_cmd, common);

    // gen
    GenParams gen;
    std::string gen_config, gen_mode = "pair", out_dir;
    std::optional<std::size_t> gen_max_states;
    std::optional<double> gen_density;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random automaton or pair");
    gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
    gen_cmd->add_option("--mode", gen_mode)->check(CLI::IsMember({"free", "pair", "subautomaton-pair"}));
    gen_cmd->add_option("--max-states", gen_max_states);
    gen_cmd->add_option("--density", gen_density)->check(CLI::Range(0.0, 1.0));
    gen_cmd->add_flag("--deterministic", gen.deterministic);
    gen_cmd->add_flag("--deterministic-supervisor", gen.deterministic_supervisor);
    gen_cmd->add_option("--config", gen_config)->check(CLI::ExistingFile);
    gen_cmd->add_option("--out-dir", out_dir, "Write supervisor.aut and plant.aut here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        const CheckOptions opts = common.options();

        if (*check_cmd) {
            const Notion n = notion_arg(notion_s);
            Automaton s = load_aut(s_path), p = load_aut(p_path);
            require_same_alphabet(s, p);
            if (common.supervised)
                s = product(s, p);
            Verdict v = check(n, s, p, opts);
            if (common.supervised && n == Notion::FMSub) {
                v.status = Status::not_applicable;
                v.witness.reset();
                v.reason = "not defined for a supervised plant";
            }
            int code = exit_for(v.status);
            std::optional<Status> oracle_status;
            if (with_oracle && !(common.supervised && n == Notion::FMSub)) {
                oracle_status = oracle(n, s, p, opts);
                if (*oracle_status != v.status)
                    code = kViolation;
            }
            if (common.json) {
                Json j = to_json(v);
                if (oracle_status)
                    j["oracle"] = to_string(*oracle_status);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << describe(v) << "\n";
                if (oracle_status)
                    std::cout << "oracle: " << to_string(*oracle_status)
                              << (*oracle_status == v.status ? " (agrees)" : " (DISAGREES)") << "\n";
            }
            return code;
        }

        if (*matrix_cmd) {
            const Automaton s = load_aut(s_path), p = load_aut(p_path);
            const NotionMatrix m = common.supervised ? supervised_matrix(s, p, opts) : matrix(s, p, opts);
            if (common.json)
                std::cout << to_json(m).dump(2) << "\n";
            else
                print_matrix(m);
            return m.all_applicable_hold() ? kHolds : kFails;
        }

        if (*export_cmd) {
            if (what == "product") {
                if (inputs.size() != 2)
                    throw Error("export product expects two automata");
                emit(write_aut(product(load_aut(inputs[0]), load_aut(inputs[1]))), output);
            } else {
                if (inputs.size() != 1)
                    throw Error("export " + what + " expects one automaton");
                const Automaton a = load_aut(inputs[0]);
                emit(what == "dot" ? to_dot(a) : write_aut(determinize(a, opts.det_cap).automaton), output);
            }
            return kHolds;
        }

        if (*corpus_cmd) {
            const auto entries = load_corpus(corpus_dir);
            const CorpusReport report = run_corpus(entries, opts);
            const auto seps = check_separations(entries, report);
            const bool separated =
                std::all_of(seps.begin(), seps.end(), [](const Separation& s) { return s.separated; });
            if (common.json) {
                Json j = to_json(report);
                j["separations"] = to_json(seps);
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& e : report.entries) {
                    std::cout << (e.passed() ? "PASS " : "FAIL ") << e.id << " (" << e.compared
                              << " annotated verdicts)\n";
                    if (e.error)
                        std::cout << "  error: " << *e.error << "\n";
                    for (const auto& m : e.mismatches)
                        std::cout << "  " << to_string(m.notion) << ": expected " << to_string(m.expected)
                                  << ", got " << describe(m.got) << "\n";
                }
                std::size_t ok = 0;
                for (const auto& s : seps) {
                    ok += s.separated;
                    if (!s.separated)
                        std::cout << "  not separated: " << to_string(s.claim.antecedent) << " vs "
                                  << to_string(s.claim.consequent) << " on " << s.detail << "\n";
                }
                std::cout << report.compared() - report.mismatches() << "/" << report.compared()
                          << " verdicts match; " << ok << "/" << seps.size() << " non-implications separated\n";
            }
            for (const auto& e : report.entries)
                if (e.error)
                    return kViolation;
            return report.passed() && separated ? kHolds : kFails;
        }

        if (*fuzz_cmd)
            return run_fuzz(fuzz, common);

        if (*oracle_cmd) {
            const Notion n = notion_arg(notion_s);
            Automaton s = load_aut(s_path), p = load_aut(p_path);
            require_same_alphabet(s, p);
            if (common.supervised)
                s = product(s, p);
            Json j{{"notion", to_string(n)}};
            Status st;
            const bool trace = n == Notion::LC || n == Notion::AC || n == Notion::FM || n == Notion::SCn ||
                               n == Notion::FMSub;
            if (trace && !(n == Notion::SCn && common.relax_scn)) {
                auto r = oracle_trace(s, p, n, depth);
                st = r.status;
                j["depth"] = r.depth;
                j["sufficient_depth"] = r.sufficient_depth;
                j["words"] = r.words;
                if (!r.sufficient())
                    std::cerr << "warning: depth " << r.depth << " is below the sufficiency bound "
                              << r.sufficient_depth << "\n";
            } else {
                st = oracle(n, s, p, opts);
            }
            j["status"] = to_string(st);
            if (common.json)
                std::cout << j.dump(2) << "\n";
            else
                std::cout << to_string(n) << " (oracle): " << to_string(st) << "\n";
            return exit_for(st);
        }

        if (*gen_cmd) {
            if (!gen_config.empty())
                gen = load_gen_config(gen_config, gen);
            gen.mode = *parse_gen_mode(gen_mode);
            if (gen_max_states)
                gen.max_states = *gen_max_states;
            if (gen_density)
                gen.density = *gen_density;
            gen.min_states = std::min(gen.min_states, gen.max_states);
            if (gen.mode == GenMode::free) {
                const Automaton a = generate_automaton(gen);
                emit(write_aut(a), out_dir.empty() ? "" : (fs::path(out_dir) / "automaton.aut").string());
            } else {
                const Instance inst = generate_pair(gen);
                if (out_dir.empty()) {
                    std::cout << write_aut(inst.supervisor) << "\n" << write_aut(inst.plant);
                } else {
                    fs::create_directories(out_dir);
                    save_aut(inst.supervisor, fs::path(out_dir) / "supervisor.aut");
                    save_aut(inst.plant, fs::path(out_dir) / "plant.aut");
                }
            }
            return kHolds;
        }
    } catch (const LatticeViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kViolation;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
