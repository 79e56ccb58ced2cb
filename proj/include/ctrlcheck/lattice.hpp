#pragma once

// Context classification, the notion matrix of a pair, the supervised-plant
// variant and executable checks of the four implication lattices.

#include "ctrlcheck/notions.hpp"

#include <map>

namespace ctrlcheck
{

/// Raised when computed verdicts contradict a relation that must hold.
/// It signals a defect in the checkers, never bad input.
class LatticeViolation : public Error
{
public:
    using Error::Error;
};

/// Raised when an instance fed to a theorem check lies outside its context.
class ContextMismatch : public Error
{
public:
    using Error::Error;
};

struct ContextProfile
{
    bool s_deterministic = false;
    bool p_deterministic = false;
    bool subautomaton = false;
    bool language_inclusion = false;
    bool alphabets_equal = false;

    bool operator==(const ContextProfile&) const = default;
};

[[nodiscard]] ContextProfile classify(const Automaton& s, const Automaton& p,
                                      std::size_t det_cap = kDefaultDeterminizationCap);

/// Whether `n` is defined in context `c`. FM⊆ is never defined for a
/// supervised plant; SCn is always computed under `relax_scn`.
[[nodiscard]] bool applicable_in(Notion n, const ContextProfile& c, bool supervised = false, bool relax_scn = false);

struct NotionMatrix
{
    ContextProfile context;
    std::map<Notion, Verdict> verdicts;
    bool supervised = false;

    [[nodiscard]] const Verdict& at(Notion n) const { return verdicts.at(n); }
    /// True when every applicable notion holds.
    [[nodiscard]] bool all_applicable_hold() const;
    [[nodiscard]] bool any_fails() const;
};

/// Relations the matrix must satisfy, rendered as messages naming both
/// verdicts. Empty for a consistent matrix.
[[nodiscard]] std::vector<std::string> consistency_errors(const NotionMatrix& m, bool relax_scn = false);

/// Runs every checker on (s, p). Throws LatticeViolation on inconsistency.
[[nodiscard]] NotionMatrix matrix(const Automaton& s, const Automaton& p, const CheckOptions& opts = {});

/// matrix(s ∥ p, p) with FM⊆ reported not-applicable. Also requires
/// LC(s, p) to agree with LC(s ∥ p, p).
[[nodiscard]] NotionMatrix supervised_matrix(const Automaton& s, const Automaton& p, const CheckOptions& opts = {});

// THEOREMS

/// One arrow (implication) or identification (equivalence) of a lattice.
struct LatticeRelation
{
    Notion antecedent;
    Notion consequent;
    bool equivalence = false;

    [[nodiscard]] std::string name() const;
};

[[nodiscard]] std::vector<LatticeRelation> theorem_relations(int theorem);
[[nodiscard]] std::string theorem_context(int theorem);
[[nodiscard]] bool in_theorem_context(int theorem, const ContextProfile& c);

struct RelationTally
{
    LatticeRelation relation;
    std::size_t checked = 0;
    std::size_t antecedent_held = 0;
    std::size_t consequent_held = 0;
    std::size_t violations = 0;
};

struct TheoremViolation
{
    std::size_t index = 0; // position of the instance in the stream
    std::string relation;
    std::string verdicts; // both verdicts, described
    std::string supervisor_aut;
    std::string plant_aut;
};

struct TheoremReport
{
    int theorem = 0;
    std::size_t instances = 0;
    std::vector<RelationTally> relations;
    std::vector<TheoremViolation> violations;
    std::size_t witnesses_checked = 0;
    std::size_t witnesses_confirmed = 0;
    std::size_t witnesses_inconclusive = 0;
    std::vector<std::string> witness_failures;

    [[nodiscard]] bool ok() const { return violations.empty() && witness_failures.empty(); }
};

/// Incremental form of verify_theorem for streamed instances.
class TheoremVerifier
{
public:
    explicit TheoremVerifier(int theorem, CheckOptions opts = {}, bool replay_witnesses = true);

    /// Throws ContextMismatch if (s, p) is outside the theorem's context.
    void add(const Automaton& s, const Automaton& p);
    [[nodiscard]] const TheoremReport& report() const { return report_; }

private:
    CheckOptions opts_;
    bool replay_;
    TheoremReport report_;
};

struct Instance
{
    Automaton supervisor;
    Automaton plant;
};

[[nodiscard]] TheoremReport verify_theorem(int theorem, const std::vector<Instance>& instances,
                                           const CheckOptions& opts = {}, bool replay_witnesses = true);

} // namespace ctrlcheck
