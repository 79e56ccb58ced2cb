#include "helpers.hpp"

#include "ctrlcheck/generator.hpp"
#include "ctrlcheck/oracles.hpp"

#include <doctest.h>

using namespace ctrlcheck;
using test::aut;
using test::corpus_entry;

TEST_CASE("relation oracle")
{
    auto f1r = corpus_entry("fig1-right");
    OracleBudget wide;
    wide.max_pairs = 16;
    CHECK(oracle_relation(f1r.supervisor, f1r.plant, Notion::PBn, wide) == Status::holds);
    auto f1m = corpus_entry("fig1-middle");
    CHECK(oracle_relation(f1m.supervisor, f1m.plant, Notion::PBn) == Status::fails);
    CHECK(oracle_relation(f1m.supervisor, f1m.plant, Notion::CR) == Status::holds);
    CHECK(oracle_relation(f1r.supervisor, f1r.plant, Notion::PB, wide) == Status::not_applicable);

    auto idle = aut("controllable c\nuncontrollable u\ninitial s\nstate s\n");
    auto p = aut("controllable c\nuncontrollable u\ninitial a\na c b\nb c a\n");
    CHECK(oracle_relation(idle, p, Notion::PBn) == Status::holds);
}

TEST_CASE("trace oracle")
{
    auto f1l = corpus_entry("fig1-left");
    CHECK(oracle_trace(f1l.supervisor, f1l.plant, Notion::FM, 4).status == Status::fails);
    auto f2r = corpus_entry("fig2-right");
    CHECK(oracle_trace(f2r.supervisor, f2r.plant, Notion::LC, 4).status == Status::fails);

    auto full = oracle_trace(f1l.supervisor, f1l.plant, Notion::LC);
    CHECK(full.status == Status::holds);
    CHECK(full.sufficient());
    CHECK(full.sufficient_depth == sufficiency_depth(f1l.supervisor, f1l.plant));

    CHECK(oracle_trace(f1l.supervisor, f1l.plant, Notion::KT).status == Status::fails);
}

TEST_CASE("no uncontrollable events means every trace notion holds")
{
    auto s = aut("controllable a b\ninitial x\nx a y\nx a z\ny b x\n");
    auto p = aut("controllable a b\ninitial q\nq a r\nr b q\nr a r\n");
    for (Notion n : {Notion::LC, Notion::AC, Notion::FM, Notion::KT})
        CHECK(oracle_trace(s, p, n).status == Status::holds);
    CHECK(oracle_trace(p, p, Notion::SCn).status == Status::holds);
    CHECK(oracle_trace(p, p, Notion::FMSub).status == Status::holds);
}

TEST_CASE("embedding oracle")
{
    auto f2r = corpus_entry("fig2-right");
    CHECK(oracle_embedding(f2r.supervisor, f2r.plant) == Status::holds);
    auto f2l = corpus_entry("fig2-left");
    CHECK(oracle_embedding(f2l.supervisor, f2l.plant) == Status::fails);
    auto d = aut("controllable c\nuncontrollable u\ninitial x\nx c y\ny u x\n");
    CHECK(oracle_embedding(d, d) == Status::holds);
    CHECK(oracle_embedding(f2r.plant, f2r.plant) == Status::not_applicable);
}

TEST_CASE("budgets")
{
    auto f2r = corpus_entry("fig2-right");
    OracleBudget tight;
    tight.max_pairs = 4;
    CHECK_THROWS_AS((void)oracle_relation(f2r.supervisor, f2r.plant, Notion::PBn, tight), BudgetExceeded);
    tight.max_depth = 1;
    CHECK_THROWS_AS((void)oracle_trace(f2r.supervisor, f2r.plant, Notion::LC, 3, tight), BudgetExceeded);
}

TEST_CASE("PBn oracle equals PB oracle on deterministic pairs")
{
    auto g = params_for_theorem(3, 31);
    g.max_states = 3;
    for (const auto& inst : generate_pairs(g, 200)) {
        if (inst.supervisor.num_states() * inst.plant.num_states() > 12)
            continue;
        REQUIRE(oracle_relation(inst.supervisor, inst.plant, Notion::PB) ==
                oracle_relation(inst.supervisor, inst.plant, Notion::PBn));
    }
}

TEST_CASE("checkers agree with oracles on small pairs")
{
    GenParams g;
    g.seed = 32;
    g.min_states = 1;
    g.max_states = 3;
    std::size_t compared = 0;
    std::size_t over_budget = 0;
    for (const auto& inst : generate_pairs(g, 300)) {
        if (inst.supervisor.num_states() * inst.plant.num_states() > 12)
            continue;
        for (Notion n : kAllNotions) {
            auto fast = check(n, inst.supervisor, inst.plant).status;
            Status slow;
            try {
                slow = oracle(n, inst.supervisor, inst.plant);
            } catch (const BudgetExceeded&) {
                ++over_budget;
                continue;
            }
            REQUIRE_MESSAGE(fast == slow,
                            (std::string(to_string(n)) + "\n" + write_aut(inst.supervisor) + write_aut(inst.plant)));
            ++compared;
        }
    }
    CHECK(compared > 1000);
    CHECK(over_budget < compared / 4);
}
