#pragma once

// Golden regression corpus: one directory per entry holding supervisor.aut,
// plant.aut, expected.json and source.txt.

#include "ctrlcheck/lattice.hpp"

#include <filesystem>

namespace ctrlcheck
{

struct CorpusEntry
{
    std::string id;
    Automaton supervisor;
    Automaton plant;
    /// Verdicts are computed on (S ∥ P, P) instead of (S, P).
    bool supervised = false;
    std::map<Notion, Status> expected;
    std::string source;
};

/// Throws ParseError when a file is missing or malformed.
[[nodiscard]] CorpusEntry load_entry(const std::filesystem::path& dir);
/// All entries below `dir`, sorted by id.
[[nodiscard]] std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

struct Mismatch
{
    Notion notion;
    Status expected;
    Verdict got;
};

struct EntryResult
{
    std::string id;
    bool supervised = false;
    std::optional<NotionMatrix> matrix;
    std::vector<Mismatch> mismatches;
    std::size_t compared = 0;
    std::optional<std::string> error; // e.g. a lattice violation

    [[nodiscard]] bool passed() const { return !error && mismatches.empty(); }
};

struct CorpusReport
{
    std::vector<EntryResult> entries;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] std::size_t compared() const;
    [[nodiscard]] std::size_t mismatches() const;
};

[[nodiscard]] EntryResult run_entry(const CorpusEntry& entry, const CheckOptions& opts = {});
[[nodiscard]] CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, const CheckOptions& opts = {});
[[nodiscard]] CorpusReport run_corpus(const std::filesystem::path& dir, const CheckOptions& opts = {});

/// A missing arrow of a lattice and the entry that demonstrates it.
/// Theorem 0 stands for the supervised-plant setting.
struct NonImplication
{
    int theorem;
    Notion antecedent;
    Notion consequent;
    std::string entry;
};

[[nodiscard]] const std::vector<NonImplication>& non_implications();

struct Separation
{
    NonImplication claim;
    bool separated = false;
    std::string detail;
};

/// Checks every non-implication against computed verdicts: the entry must
/// lie in the theorem's context, the antecedent must hold and the
/// consequent must fail.
[[nodiscard]] std::vector<Separation> check_separations(const std::vector<CorpusEntry>& entries,
                                                        const CorpusReport& report);

} // namespace ctrlcheck
