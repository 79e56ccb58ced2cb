#pragma once

#include "ctrlcheck/automaton.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ctrlcheck
{

/// The controllability notions, supervisor w.r.t. plant.
enum class Notion
{
    LC,    // language controllability
    AC,    // automata controllability (state-level reading of LC)
    CR,    // control relation
    SC,    // state controllability via an embedding
    PB,    // partial bisimulation (deterministic)
    PBn,   // nondeterministic partial bisimulation
    FM,    // FM-controllability
    KT,    // Σu-admissibility
    SCn,   // nondeterministic state controllability
    FMSub, // FM-controllability for subautomata
};

inline constexpr std::array<Notion, 10> kAllNotions = {Notion::LC, Notion::AC,  Notion::CR, Notion::SC,  Notion::PB,
                                                       Notion::PBn, Notion::FM, Notion::KT, Notion::SCn, Notion::FMSub};

[[nodiscard]] std::string_view to_string(Notion n);
/// Case-insensitive; accepts "fm_sub", "fm-sub" and "fmsub" for FMSub.
[[nodiscard]] std::optional<Notion> parse_notion(std::string_view s);

enum class Status
{
    holds,
    fails,
    not_applicable,
};

[[nodiscard]] std::string_view to_string(Status s);
[[nodiscard]] std::optional<Status> parse_status(std::string_view s);

/// What a witness claims, and therefore how it is replayed.
enum class WitnessKind
{
    language,         // w ∈ L(S), wu ∈ L(P), wu ∉ L(S)
    supervisor_state, // S reaches sup_state on w, wu ∈ L(P), sup_state does not enable u
    product_state,    // (sup_state, plant_state) reached on w, plant enables u, supervisor does not
    transition,       // sup_state reached in S on w; plant_state -u-> plant_target in P but not in S
    transfer,         // relation notions: a chain of state pairs ending in a local transfer failure
    no_embedding,     // SC: the embedding search is exhausted
};

[[nodiscard]] std::string_view to_string(WitnessKind k);
[[nodiscard]] std::optional<WitnessKind> parse_witness_kind(std::string_view s);

struct StatePair
{
    std::string supervisor;
    std::string plant;

    bool operator==(const StatePair&) const = default;
};

/// Replayable evidence for a `fails` verdict. States and events are given
/// by name so a witness stays meaningful outside the process.
///
/// For `transfer` witnesses, `pair_path` starts at the initial pair and
/// follows `word` step by step; its last pair violates transfer condition
/// `condition` on `event`: 1 = the supervisor moves and the plant cannot
/// follow, 2 = the plant moves uncontrollably and the supervisor cannot
/// follow.
struct Witness
{
    WitnessKind kind = WitnessKind::language;
    std::vector<std::string> word;
    std::optional<std::string> event;
    std::optional<std::string> sup_state;
    std::optional<std::string> plant_state;
    std::optional<std::string> plant_target;
    std::vector<StatePair> pair_path;
    std::optional<int> condition;
    std::string detail;

    bool operator==(const Witness&) const = default;
};

struct Verdict
{
    Notion notion = Notion::LC;
    Status status = Status::holds;
    std::optional<Witness> witness;
    std::optional<std::string> reason;
    /// Relation notions that hold: the greatest relation restricted to the
    /// pairs reachable from the initial pair.
    std::vector<StatePair> relation;
    /// SC that holds: the embedding found, one pair per assigned state.
    std::vector<StatePair> embedding;
    double time_ms = 0.0;

    [[nodiscard]] bool holds() const { return status == Status::holds; }
    [[nodiscard]] bool fails() const { return status == Status::fails; }
    [[nodiscard]] bool applicable() const { return status != Status::not_applicable; }

    bool operator==(const Verdict&) const = default;
};

struct CheckOptions
{
    std::size_t det_cap = kDefaultDeterminizationCap;
    /// Compute SCn even when L(S) ⊄ L(P).
    bool relax_scn = false;
    /// Restrict the SC embedding to reachable supervisor states.
    bool sc_reachable_only = false;
};

/// Language controllability: L(S)Σu ∩ L(P) ⊆ L(S), decided on the product
/// of the two determinized automata.
[[nodiscard]] Verdict check_lc(const Automaton& s, const Automaton& p, const CheckOptions& opts = {});
/// The same property in its run-based formulation, decided by an on-the-fly
/// subset search that does not build either determinization.
[[nodiscard]] Verdict check_ac(const Automaton& s, const Automaton& p, const CheckOptions& opts = {});
[[nodiscard]] Verdict check_fm(const Automaton& s, const Automaton& p, const CheckOptions& opts = {});
[[nodiscard]] Verdict check_kt(const Automaton& s, const Automaton& p);
[[nodiscard]] Verdict check_pbn(const Automaton& s, const Automaton& p);
[[nodiscard]] Verdict check_pb(const Automaton& s, const Automaton& p);
[[nodiscard]] Verdict check_cr(const Automaton& s, const Automaton& p);
[[nodiscard]] Verdict check_sc(const Automaton& s, const Automaton& p, const CheckOptions& opts = {});
[[nodiscard]] Verdict check_scn(const Automaton& s, const Automaton& p, const CheckOptions& opts = {});
[[nodiscard]] Verdict check_fm_sub(const Automaton& s, const Automaton& p);

/// Dispatches to the checker for `n` and records the elapsed time.
[[nodiscard]] Verdict check(Notion n, const Automaton& s, const Automaton& p, const CheckOptions& opts = {});

struct InclusionResult
{
    bool included = true;
    /// Shortest, lexicographically least word of L(s) \ L(p).
    std::optional<std::vector<std::string>> counterexample;
};

[[nodiscard]] InclusionResult language_inclusion(const Automaton& s, const Automaton& p,
                                                 std::size_t det_cap = kDefaultDeterminizationCap);

struct ReplayResult
{
    bool confirmed = false;
    /// Set when the witness could not be checked within the oracle budget.
    bool inconclusive = false;
    std::string message;
};

/// Re-establishes the violation claimed by the witness of a `fails`
/// verdict directly against the inputs.
[[nodiscard]] ReplayResult replay(const Verdict& v, const Automaton& s, const Automaton& p,
                                  const CheckOptions& opts = {});

/// One-line human-readable rendering, e.g. "FM: fails, witness w=c u=u at s4".
[[nodiscard]] std::string describe(const Verdict& v);

} // namespace ctrlcheck
