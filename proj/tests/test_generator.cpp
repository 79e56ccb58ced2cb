#include "helpers.hpp"

#include "ctrlcheck/generator.hpp"

#include <doctest.h>

using namespace ctrlcheck;
using test::aut;

TEST_CASE("same seed, same output")
{
    GenParams g;
    g.seed = 99;
    CHECK(generate_automaton(g) == generate_automaton(g));
    auto a = generate_pair(g);
    auto b = generate_pair(g);
    CHECK(a.supervisor == b.supervisor);
    CHECK(a.plant == b.plant);
    CHECK(instance_seed(5, 3) == instance_seed(5, 3));
    CHECK(instance_seed(5, 3) != instance_seed(5, 4));

    g.seed = 100;
    CHECK_FALSE(generate_pair(g).plant == a.plant);
}

TEST_CASE("deterministic flags are honoured")
{
    auto d = params_for_theorem(3, 5);
    for (const auto& inst : generate_pairs(d, 300)) {
        REQUIRE(is_deterministic(inst.supervisor));
        REQUIRE(is_deterministic(inst.plant));
    }
    auto ds = params_for_theorem(2, 5);
    bool plant_nondet = false;
    for (const auto& inst : generate_pairs(ds, 300)) {
        REQUIRE(is_deterministic(inst.supervisor));
        plant_nondet |= !is_deterministic(inst.plant);
    }
    CHECK(plant_nondet);

    GenParams free;
    free.mode = GenMode::free;
    free.deterministic = true;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        free.seed = s;
        REQUIRE(is_deterministic(generate_automaton(free)));
    }
}

TEST_CASE("subautomaton mode on seeds 1 to 1000")
{
    auto g = params_for_theorem(4, 0);
    for (std::uint64_t s = 1; s <= 1000; ++s) {
        g.seed = s;
        auto inst = generate_pair(g);
        REQUIRE(is_subautomaton(inst.supervisor, inst.plant));
    }
}

TEST_CASE("generated states are reachable and sizes respected")
{
    GenParams g;
    g.seed = 8;
    g.min_states = 3;
    g.max_states = 5;
    for (const auto& inst : generate_pairs(g, 200)) {
        REQUIRE(reachable(inst.plant).size() == inst.plant.num_states());
        REQUIRE(inst.plant.num_states() <= 5);
        REQUIRE(inst.supervisor.alphabet() == inst.plant.alphabet());
    }
}

TEST_CASE("validate rejects bad parameters")
{
    GenParams g;
    g.density = 1.5;
    CHECK_THROWS_AS(g.validate(), Error);
    g = {};
    g.min_states = 4;
    g.max_states = 2;
    CHECK_THROWS_AS(g.validate(), Error);
    g = {};
    g.min_states = 0;
    CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("config parsing")
{
    auto g = parse_gen_config("# comment\nseed = 42\nmax_states=4\ndensity = 0.5\ndeterministic = true\n"
                              "mode = subautomaton-pair\n");
    CHECK(g.seed == 42);
    CHECK(g.max_states == 4);
    CHECK(g.density == doctest::Approx(0.5));
    CHECK(g.deterministic);
    CHECK(g.mode == GenMode::subautomaton_pair);
    CHECK(g.min_states == GenParams{}.min_states);

    CHECK_THROWS_AS((void)parse_gen_config("colour = red\n"), ParseError);
    CHECK_THROWS_AS((void)parse_gen_config("seed\n"), ParseError);
    CHECK_THROWS_AS((void)parse_gen_config("seed = many\n"), ParseError);
    CHECK(parse_gen_mode("pair") == GenMode::pair);
    CHECK(to_string(GenMode::subautomaton_pair) == "subautomaton-pair");
}

TEST_CASE("shrink drops a disconnected state")
{
    auto s = aut("controllable a\ninitial x\nx a x\n");
    auto p = aut("controllable a\ninitial q\nstate spare\nq a q\n");
    auto small = shrink({s, p}, [](const Automaton&, const Automaton& pl) { return pl.num_states() == 0; });
    CHECK(small.plant.num_states() == 1);
}

TEST_CASE("shrink keeps a small figure instance failing")
{
    auto e = test::corpus_entry("fig2-right");
    auto property = [](const Automaton& s, const Automaton& p) {
        return !(check_sc(s, p).holds() && check_lc(s, p).fails());
    };
    Instance orig{e.supervisor, e.plant};
    REQUIRE_FALSE(property(orig.supervisor, orig.plant));
    auto small = shrink(orig, property);
    CHECK(instance_size(small) <= instance_size(orig));
    CHECK_FALSE(property(small.supervisor, small.plant));
    CHECK(is_deterministic(small.supervisor));
}

TEST_CASE("shrink reaches one state when everything fails")
{
    GenParams g;
    g.seed = 3;
    auto inst = generate_pair(g);
    auto small = shrink(inst, [](const Automaton&, const Automaton&) { return false; });
    CHECK(small.supervisor.num_states() == 1);
    CHECK(small.plant.num_states() == 1);
    CHECK(small.supervisor.transitions().empty());
}
