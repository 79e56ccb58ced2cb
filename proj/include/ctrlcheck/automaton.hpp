#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ctrlcheck
{

using StateId = std::uint32_t;
using EventId = std::uint32_t;
using Word = std::vector<EventId>;

/// Default cap on the number of subset states built by determinization.
inline constexpr std::size_t kDefaultDeterminizationCap = std::size_t{1} << 16;

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Two automata that must share an alphabet do not.
class AlphabetMismatch : public Error
{
public:
    using Error::Error;
};

/// A subset construction exceeded its configured cap.
class StateExplosion : public Error
{
public:
    using Error::Error;
};

/// Structural invariants of an automaton are violated.
class InvalidAutomaton : public Error
{
public:
    explicit InvalidAutomaton(std::vector<std::string> violations);

    [[nodiscard]] const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Event names partitioned into controllable and uncontrollable events.
///
/// Events are numbered in lexicographic order of their names, so two
/// alphabets with the same partition assign the same ids, and comparing
/// event ids compares names.
class Alphabet
{
public:
    Alphabet() = default;
    Alphabet(const std::set<std::string>& controllable, const std::set<std::string>& uncontrollable);

    [[nodiscard]] std::size_t size() const { return names_.size(); }
    [[nodiscard]] bool empty() const { return names_.empty(); }
    [[nodiscard]] const std::string& name(EventId e) const { return names_.at(e); }
    [[nodiscard]] bool is_uncontrollable(EventId e) const { return uncontrollable_.at(e); }
    [[nodiscard]] bool is_controllable(EventId e) const { return !uncontrollable_.at(e); }
    [[nodiscard]] std::optional<EventId> find(std::string_view name) const;

    [[nodiscard]] std::set<std::string> controllable() const;
    [[nodiscard]] std::set<std::string> uncontrollable() const;
    [[nodiscard]] std::vector<EventId> uncontrollable_events() const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<bool> uncontrollable_;
};

struct TransitionSpec
{
    std::string source;
    std::string event;
    std::string target;

    bool operator==(const TransitionSpec&) const = default;
};

/// Name-level description of an automaton, before validation.
struct AutomatonDescription
{
    std::string name;
    std::vector<std::string> controllable;
    std::vector<std::string> uncontrollable;
    std::vector<std::string> states;
    std::string initial;
    std::vector<TransitionSpec> transitions;
};

/// Every violated structural invariant of `d`; empty when well formed.
[[nodiscard]] std::vector<std::string> validate(const AutomatonDescription& d);

struct Transition
{
    StateId source;
    EventId event;
    StateId target;

    auto operator<=>(const Transition&) const = default;
};

/// A finite automaton with a partitioned alphabet and a single initial state.
///
/// State ids follow the declaration order of the description. Names are
/// significant: the subautomaton relation compares automata by state name.
/// Instances are immutable once constructed.
class Automaton
{
public:
    /// Throws InvalidAutomaton listing every violation of `d`.
    explicit Automaton(const AutomatonDescription& d);

    [[nodiscard]] AutomatonDescription describe() const;

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Alphabet& alphabet() const { return alphabet_; }
    [[nodiscard]] std::size_t num_states() const { return state_names_.size(); }
    [[nodiscard]] const std::string& state_name(StateId q) const { return state_names_.at(q); }
    [[nodiscard]] std::optional<StateId> find_state(std::string_view name) const;
    [[nodiscard]] StateId initial() const { return initial_; }

    /// All transitions, sorted and free of duplicates.
    [[nodiscard]] std::span<const Transition> transitions() const { return transitions_; }
    /// Targets of `q` under `e`, sorted by id.
    [[nodiscard]] std::span<const StateId> successors(StateId q, EventId e) const
    {
        return succ_[static_cast<std::size_t>(q) * alphabet_.size() + e];
    }
    [[nodiscard]] bool enables(StateId q, EventId e) const { return !successors(q, e).empty(); }
    [[nodiscard]] bool has_transition(StateId q, EventId e, StateId t) const;

    bool operator==(const Automaton& other) const;

private:
    std::string name_;
    Alphabet alphabet_;
    std::vector<std::string> state_names_;
    std::unordered_map<std::string, StateId> state_index_;
    StateId initial_ = 0;
    std::vector<Transition> transitions_;
    std::vector<std::vector<StateId>> succ_;
};

/// Throws AlphabetMismatch unless `a` and `b` have identical alphabets.
void require_same_alphabet(const Automaton& a, const Automaton& b);

[[nodiscard]] bool is_deterministic(const Automaton& a);

/// States reachable from the initial state, in ascending id order.
[[nodiscard]] std::vector<StateId> reachable(const Automaton& a);

/// Events with at least one outgoing transition at `q`, ascending.
[[nodiscard]] std::vector<EventId> enabled(const Automaton& a, StateId q);

/// The set of states reached from any of `from` by reading `w`.
[[nodiscard]] std::vector<StateId> post(const Automaton& a, std::vector<StateId> from, std::span<const EventId> w);

/// Whether `w` is in the (prefix-closed) language of `a`.
[[nodiscard]] bool accepts(const Automaton& a, std::span<const EventId> w);

struct Product
{
    Automaton automaton;
    /// Component states of each product state, indexed by product state id.
    std::vector<std::pair<StateId, StateId>> pairs;
};

/// Synchronous product restricted to its reachable part. Product states are
/// named "(g,h)" and numbered in breadth-first discovery order.
[[nodiscard]] Product product_with_pairs(const Automaton& g, const Automaton& h);
[[nodiscard]] Automaton product(const Automaton& g, const Automaton& h);

/// Identifier-based subautomaton test; alphabets must be equal.
[[nodiscard]] bool is_subautomaton(const Automaton& s, const Automaton& p);

struct SubsetState
{
    std::vector<StateId> members; // sorted, nonempty

    auto operator<=>(const SubsetState&) const = default;
};

struct Determinized
{
    Automaton automaton;
    /// Source-state subset behind each state of `automaton`.
    std::vector<SubsetState> subsets;
};

/// Subset construction from {initial}. Subset states are named "{a,b}".
/// Throws StateExplosion when more than `cap` subsets are reached.
[[nodiscard]] Determinized determinize(const Automaton& a, std::size_t cap = kDefaultDeterminizationCap);

/// Every word of L(a) of length at most `k`.
[[nodiscard]] std::set<Word> bounded_language(const Automaton& a, std::size_t k);

/// Shortest, lexicographically least access word of every state; states
/// that are unreachable map to nullopt.
[[nodiscard]] std::vector<std::optional<Word>> access_words(const Automaton& a);

[[nodiscard]] std::vector<std::string> event_names(const Alphabet& sigma, std::span<const EventId> w);
[[nodiscard]] std::string format_word(const Alphabet& sigma, std::span<const EventId> w);

/// Resolves event names against `sigma`; nullopt if any name is unknown.
[[nodiscard]] std::optional<Word> resolve_word(const Alphabet& sigma, const std::vector<std::string>& names);

} // namespace ctrlcheck
