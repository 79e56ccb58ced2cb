#include "ctrlcheck/corpus.hpp"

#include "ctrlcheck/aut_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ctrlcheck
{

namespace fs = std::filesystem;

namespace
{

std::string slurp(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(path.string(), 0, "cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

CorpusEntry load_entry(const fs::path& dir)
{
    const fs::path ej = dir / "expected.json";
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(slurp(ej));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(ej.string(), 0, e.what());
    }

    CorpusEntry entry{dir.filename().string(), load_aut(dir / "supervisor.aut"), load_aut(dir / "plant.aut"), false, {}, {}};
    const std::string mode = j.value("mode", "direct");
    if (mode != "direct" && mode != "supervised")
        throw ParseError(ej.string(), 0, "mode must be 'direct' or 'supervised'");
    entry.supervised = mode == "supervised";
    if (!j.contains("expected") || !j["expected"].is_object())
        throw ParseError(ej.string(), 0, "missing 'expected' object");
    for (const auto& [key, value] : j["expected"].items()) {
        auto n = parse_notion(key);
        auto st = value.is_string() ? parse_status(value.get<std::string>()) : std::nullopt;
        if (!n || !st)
            throw ParseError(ej.string(), 0, "bad expectation '" + key + "'");
        entry.expected[*n] = *st;
    }
    if (fs::exists(dir / "source.txt"))
        entry.source = slurp(dir / "source.txt");
    return entry;
}

std::vector<CorpusEntry> load_corpus(const fs::path& dir)
{
    if (!fs::is_directory(dir))
        throw ParseError(dir.string(), 0, "corpus directory not found");
    std::vector<fs::path> dirs;
    for (const auto& d : fs::directory_iterator(dir))
        if (d.is_directory() && fs::exists(d.path() / "expected.json"))
            dirs.push_back(d.path());
    std::sort(dirs.begin(), dirs.end());
    std::vector<CorpusEntry> out;
    for (const auto& d : dirs)
        out.push_back(load_entry(d));
    return out;
}

EntryResult run_entry(const CorpusEntry& entry, const CheckOptions& opts)
{
    EntryResult r;
    r.id = entry.id;
    r.supervised = entry.supervised;
    try {
        r.matrix = entry.supervised ? supervised_matrix(entry.supervisor, entry.plant, opts)
                                    : matrix(entry.supervisor, entry.plant, opts);
    } catch (const Error& e) {
        r.error = e.what();
        return r;
    }
    for (const auto& [n, st] : entry.expected) {
        ++r.compared;
        const Verdict& got = r.matrix->at(n);
        if (got.status != st)
            r.mismatches.push_back({n, st, got});
    }
    return r;
}

bool CorpusReport::passed() const
{
    return std::all_of(entries.begin(), entries.end(), [](const EntryResult& e) { return e.passed(); });
}

std::size_t CorpusReport::compared() const
{
    std::size_t n = 0;
    for (const auto& e : entries)
        n += e.compared;
    return n;
}

std::size_t CorpusReport::mismatches() const
{
    std::size_t n = 0;
    for (const auto& e : entries)
        n += e.mismatches.size();
    return n;
}

CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, const CheckOptions& opts)
{
    CorpusReport report;
    for (const auto& e : entries)
        report.entries.push_back(run_entry(e, opts));
    return report;
}

CorpusReport run_corpus(const fs::path& dir, const CheckOptions& opts) { return run_corpus(load_corpus(dir), opts); }

const std::vector<NonImplication>& non_implications()
{
    using N = Notion;
    static const std::vector<NonImplication> list = {
        // nondeterministic supervisor and plant
        {1, N::LC, N::FM, "fig1-left"},
        {1, N::LC, N::KT, "fig1-left"},
        {1, N::FM, N::PBn, "fig1-middle"},
        {1, N::KT, N::PBn, "fig1-middle"},
        {1, N::LC, N::PBn, "fig1-middle"},
        {1, N::PBn, N::LC, "fig1-right"},
        {1, N::PBn, N::FM, "fig1-right"},
        {1, N::PBn, N::KT, "fig1-right"},
        // deterministic supervisor, nondeterministic plant
        {2, N::LC, N::SC, "fig2-left"},
        {2, N::FM, N::SC, "fig2-left"},
        {2, N::PBn, N::SC, "fig2-left"},
        {2, N::SC, N::LC, "fig2-right"},
        {2, N::SC, N::FM, "fig2-right"},
        {2, N::SC, N::PBn, "fig2-right"},
        {2, N::PBn, N::LC, "fig1-right"},
        {2, N::PBn, N::FM, "fig1-right"},
        // deterministic supervisor and plant
        {3, N::PB, N::SC, "fig2-left"},
        {3, N::PBn, N::SC, "fig2-left"},
        {3, N::LC, N::PB, "fig1-middle"},
        {3, N::LC, N::PBn, "fig1-middle"},
        {3, N::CR, N::PB, "fig1-middle"},
        // supervisor is a subautomaton of the plant
        {4, N::FM, N::FMSub, "fig3-left"},
        {4, N::SCn, N::FMSub, "fig3-left"},
        {4, N::PBn, N::FMSub, "fig3-left"},
        {4, N::LC, N::FM, "fig3-middle"},
        {4, N::LC, N::SCn, "fig3-middle"},
        {4, N::PBn, N::LC, "thm4-renamed"},
        {4, N::PBn, N::FM, "thm4-renamed"},
        {4, N::FM, N::PBn, "fig3-right"},
        {4, N::LC, N::PBn, "fig3-right"},
        // supervised plant
        {0, N::PBn, N::LC, "exa13-supervised"},
    };
    return list;
}

std::vector<Separation> check_separations(const std::vector<CorpusEntry>& entries, const CorpusReport& report)
{
    std::vector<Separation> out;
    for (const auto& ni : non_implications()) {
        Separation sep{ni, false, {}};
        const auto e = std::find_if(entries.begin(), entries.end(), [&](const auto& x) { return x.id == ni.entry; });
        const auto r = std::find_if(report.entries.begin(), report.entries.end(),
                                    [&](const auto& x) { return x.id == ni.entry; });
        if (e == entries.end() || r == report.entries.end() || !r->matrix) {
            sep.detail = "entry " + ni.entry + " missing or failed to evaluate";
            out.push_back(sep);
            continue;
        }
        const NotionMatrix& m = *r->matrix;
        const bool context_ok = ni.theorem == 0 ? e->supervised
                                                : !e->supervised && in_theorem_context(ni.theorem, m.context);
        const Verdict& a = m.at(ni.antecedent);
        const Verdict& b = m.at(ni.consequent);
        sep.separated = context_ok && a.holds() && b.fails();
        sep.detail = ni.entry + ": " + describe(a) + " / " + describe(b) + (context_ok ? "" : " (context mismatch)");
        out.push_back(sep);
    }
    return out;
}

} // namespace ctrlcheck
