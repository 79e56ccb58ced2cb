#pragma once

// Brute-force reference deciders. They read only the raw transition lists
// and share no code with the optimized checkers, so agreement between the
// two is meaningful. They are deliberately naive and guarded by budgets.

#include "ctrlcheck/automaton.hpp"
#include "ctrlcheck/notions.hpp"

#include <optional>

namespace ctrlcheck
{

class BudgetExceeded : public Error
{
public:
    using Error::Error;
};

struct OracleBudget
{
    /// Cap on |Q_S|·|Q_P| for relation enumeration (at most 16).
    std::size_t max_pairs = 12;
    /// Cap on the word length used by trace oracles.
    std::size_t max_depth = 12;
    /// Cap on the number of supervisor words enumerated by trace oracles.
    std::size_t max_words = 200000;
};

/// Enumerates every R ⊆ Q_S x Q_P holding the initial pair, smallest first,
/// and tests the closure conditions of CR, PB or PBn verbatim. CR and PB
/// are not-applicable unless both automata are deterministic.
[[nodiscard]] Status oracle_relation(const Automaton& s, const Automaton& p, Notion n, const OracleBudget& budget = {});

/// Number of reachable (X, Y) pairs of state sets reached on a common
/// supervisor word (Y may be empty). Every violation of a trace notion is
/// exhibited by a word no longer than this.
[[nodiscard]] std::size_t sufficiency_depth(const Automaton& s, const Automaton& p);

struct TraceOracleResult
{
    Status status = Status::holds;
    std::size_t depth = 0;            // word length actually enumerated
    std::size_t sufficient_depth = 0; // computed sufficiency bound
    std::size_t words = 0;            // supervisor words enumerated

    [[nodiscard]] bool sufficient() const { return depth >= sufficient_depth; }
};

/// Tests LC, AC, FM, SCn or FM⊆ verbatim on every supervisor word up to
/// `depth` (default: the sufficiency bound). KT is decided by exhaustive
/// search of the reachable product states and ignores the depth.
/// SCn and FM⊆ report not-applicable when their premise fails.
[[nodiscard]] TraceOracleResult oracle_trace(const Automaton& s, const Automaton& p, Notion n,
                                             std::optional<std::size_t> depth = std::nullopt,
                                             const OracleBudget& budget = {});

/// Enumerates every f: Q_S -> Q_P (reachable supervisor states only when
/// `reachable_only`) and tests the embedding conditions verbatim.
/// Not-applicable when the supervisor is nondeterministic.
[[nodiscard]] Status oracle_embedding(const Automaton& s, const Automaton& p, bool reachable_only = false);

/// Routes `n` to the matching oracle above.
[[nodiscard]] Status oracle(Notion n, const Automaton& s, const Automaton& p, const CheckOptions& opts = {},
                            const OracleBudget& budget = {});

} // namespace ctrlcheck
