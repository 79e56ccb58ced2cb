#pragma once

// Seeded random automata shaped to each theorem's context, and greedy
// shrinking of failing instances.

#include "ctrlcheck/lattice.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>

namespace ctrlcheck
{

enum class GenMode
{
    free,              // a single automaton
    pair,              // supervisor and plant over one alphabet
    subautomaton_pair, // supervisor obtained from the plant by deleting transitions
};

[[nodiscard]] std::string_view to_string(GenMode m);
[[nodiscard]] std::optional<GenMode> parse_gen_mode(std::string_view s);

struct GenParams
{
    std::uint64_t seed = 1;
    std::size_t min_states = 2;
    std::size_t max_states = 6;
    /// Upper bounds; each instance draws between 1 and the bound (0 stays 0).
    std::size_t controllable_events = 2;
    std::size_t uncontrollable_events = 2;
    double density = 0.3;
    /// Plant (and supervisor) determinism.
    bool deterministic = false;
    /// Forces a deterministic supervisor over a possibly nondeterministic plant.
    bool deterministic_supervisor = false;
    GenMode mode = GenMode::pair;

    /// Throws Error on out-of-range values.
    void validate() const;
};

/// Generation parameters matching the context of a theorem (1 to 4).
[[nodiscard]] GenParams params_for_theorem(int theorem, std::uint64_t seed);

/// Seed of the i-th instance of a stream started from `seed`.
[[nodiscard]] std::uint64_t instance_seed(std::uint64_t seed, std::size_t i);

[[nodiscard]] Automaton generate_automaton(const GenParams& params);
[[nodiscard]] Instance generate_pair(const GenParams& params);
/// `count` pairs from the seeds instance_seed(params.seed, 0..count-1).
[[nodiscard]] std::vector<Instance> generate_pairs(const GenParams& params, std::size_t count);

/// Reads `key = value` lines over `base`; `#` starts a comment.
/// Keys: seed, min_states, max_states, controllable_events,
/// uncontrollable_events, density, deterministic, deterministic_supervisor, mode.
[[nodiscard]] GenParams parse_gen_config(std::string_view text, GenParams base = {},
                                         const std::string& origin = "<config>");
[[nodiscard]] GenParams load_gen_config(const std::filesystem::path& path, GenParams base = {});

/// True when the property holds on (s, p).
using PairProperty = std::function<bool(const Automaton& s, const Automaton& p)>;

/// Greedily deletes transitions, then states, while `property` keeps
/// failing and every context fact true of `instance` stays true.
/// Requires `property` to fail on `instance`.
[[nodiscard]] Instance shrink(const Instance& instance, const PairProperty& property);

/// States plus transitions of both automata.
[[nodiscard]] std::size_t instance_size(const Instance& instance);

} // namespace ctrlcheck
