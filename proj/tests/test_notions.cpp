#include "helpers.hpp"

#include "ctrlcheck/generator.hpp"

#include <doctest.h>

using namespace ctrlcheck;
using test::aut;
using test::corpus_entry;

namespace
{

std::set<std::pair<std::string, std::string>> as_set(const std::vector<StatePair>& v)
{
    std::set<std::pair<std::string, std::string>> out;
    for (const auto& p : v)
        out.insert({p.supervisor, p.plant});
    return out;
}

void check_replays(const Verdict& v, const Automaton& s, const Automaton& p)
{
    REQUIRE(v.fails());
    REQUIRE(v.witness);
    auto r = replay(v, s, p);
    CHECK_MESSAGE(r.confirmed, r.message);
}

} // namespace

TEST_CASE("LC")
{
    auto f1l = corpus_entry("fig1-left");
    CHECK(check_lc(f1l.supervisor, f1l.plant).holds());

    auto f2r = corpus_entry("fig2-right");
    auto v = check_lc(f2r.supervisor, f2r.plant);
    REQUIRE(v.fails());
    CHECK(v.witness->word == std::vector<std::string>{"u1"});
    CHECK(v.witness->event == "u3");
    check_replays(v, f2r.supervisor, f2r.plant);

    CHECK(check_lc(f2r.plant, f2r.plant).holds());
}

TEST_CASE("AC agrees with LC on the corpus")
{
    for (const auto& e : load_corpus(CTRLCHECK_CORPUS_DIR))
        CHECK_MESSAGE(check_ac(e.supervisor, e.plant).status == check_lc(e.supervisor, e.plant).status, e.id);
}

TEST_CASE("FM")
{
    auto f1l = corpus_entry("fig1-left");
    auto v = check_fm(f1l.supervisor, f1l.plant);
    REQUIRE(v.fails());
    CHECK(v.witness->word == std::vector<std::string>{"c"});
    CHECK(v.witness->event == "u");
    CHECK(v.witness->sup_state == "s4");
    CHECK(describe(v) == "FM: fails, witness w=c u=u at s4");
    check_replays(v, f1l.supervisor, f1l.plant);

    auto noun = aut("controllable a b\ninitial x\nx a y\nx a z\nz b x\n");
    auto sub = aut("controllable a b\ninitial s\nstate s\n");
    CHECK(check_fm(sub, noun).holds());

    auto f3l = corpus_entry("fig3-left");
    CHECK(check_fm(f3l.supervisor, f3l.plant).holds());
}

TEST_CASE("KT")
{
    auto f1l = corpus_entry("fig1-left");
    auto v = check_kt(f1l.supervisor, f1l.plant);
    check_replays(v, f1l.supervisor, f1l.plant);
    CHECK(check_kt(f1l.plant, f1l.plant).holds());
}

TEST_CASE("a nondeterministic automaton need not control itself")
{
    // The product of S with itself also pairs s4 with s2, and only s2
    // enables u.
    auto s = corpus_entry("fig1-left").supervisor;
    CHECK(check_kt(s, s).fails());
    CHECK(check_fm(s, s).fails());
    CHECK(check_lc(s, s).holds());
    CHECK(check_pbn(s, s).holds());
}

TEST_CASE("KT agrees with FM on random nondeterministic pairs")
{
    GenParams g;
    g.seed = 21;
    g.max_states = 4;
    for (const auto& inst : generate_pairs(g, 300))
        REQUIRE(check_kt(inst.supervisor, inst.plant).status == check_fm(inst.supervisor, inst.plant).status);
}

TEST_CASE("PBn")
{
    auto f1r = corpus_entry("fig1-right");
    auto v = check_pbn(f1r.supervisor, f1r.plant);
    REQUIRE(v.holds());
    CHECK(as_set(v.relation) == std::set<std::pair<std::string, std::string>>{{"s1", "p1"}, {"s2", "p2"}, {"s3", "p3"}});

    auto f1m = corpus_entry("fig1-middle");
    auto m = check_pbn(f1m.supervisor, f1m.plant);
    check_replays(m, f1m.supervisor, f1m.plant);
    CHECK(m.witness->kind == WitnessKind::transfer);
    CHECK(m.witness->condition == 1);

    CHECK(check_pbn(f1r.plant, f1r.plant).holds());
}

TEST_CASE("PB")
{
    auto f2l = corpus_entry("fig2-left");
    auto v = check_pb(f2l.supervisor, f2l.plant);
    REQUIRE(v.holds());
    CHECK(as_set(v.relation) == std::set<std::pair<std::string, std::string>>{{"s", "p"}, {"s", "p'"}});

    auto f1m = corpus_entry("fig1-middle");
    check_replays(check_pb(f1m.supervisor, f1m.plant), f1m.supervisor, f1m.plant);

    auto f1l = corpus_entry("fig1-left");
    auto na = check_pb(f1l.supervisor, f1l.plant);
    CHECK(na.status == Status::not_applicable);
    CHECK(describe(na) == "PB: not-applicable (supervisor nondeterministic)");
}

TEST_CASE("CR")
{
    auto f1m = corpus_entry("fig1-middle");
    CHECK(check_cr(f1m.supervisor, f1m.plant).holds());
    auto d = aut("controllable c\nuncontrollable u\ninitial x\nx c y\ny u x\n");
    CHECK(check_cr(d, d).holds());
}

TEST_CASE("CR agrees with LC on random deterministic pairs")
{
    auto g = params_for_theorem(3, 22);
    for (const auto& inst : generate_pairs(g, 300)) {
        auto cr = check_cr(inst.supervisor, inst.plant);
        REQUIRE(cr.status == check_lc(inst.supervisor, inst.plant).status);
        if (cr.fails())
            REQUIRE(replay(cr, inst.supervisor, inst.plant).confirmed);
    }
}

TEST_CASE("SC")
{
    auto f2r = corpus_entry("fig2-right");
    auto v = check_sc(f2r.supervisor, f2r.plant);
    REQUIRE(v.holds());
    CHECK(as_set(v.embedding) == std::set<std::pair<std::string, std::string>>{{"s1", "p1"}, {"s2", "p2"}, {"s3", "p3"}});

    auto f2l = corpus_entry("fig2-left");
    auto f = check_sc(f2l.supervisor, f2l.plant);
    check_replays(f, f2l.supervisor, f2l.plant);
    CHECK(f.witness->kind == WitnessKind::no_embedding);

    auto d = aut("controllable c\nuncontrollable u\ninitial x\nx c y\ny u x\n");
    CHECK(check_sc(d, d).holds());
}

TEST_CASE("SCn")
{
    auto f3l = corpus_entry("fig3-left");
    CHECK(check_scn(f3l.supervisor, f3l.plant).holds());
    CHECK(check_scn(f3l.plant, f3l.plant).holds());

    auto s = aut("controllable a b\ninitial x\nx b y\n");
    auto p = aut("controllable a b\ninitial q\nq a q\n");
    CHECK(check_scn(s, p).status == Status::not_applicable);
    CheckOptions relax;
    relax.relax_scn = true;
    CHECK(check_scn(s, p, relax).applicable());
}

TEST_CASE("FMSub")
{
    auto f3l = corpus_entry("fig3-left");
    auto v = check_fm_sub(f3l.supervisor, f3l.plant);
    REQUIRE(v.fails());
    CHECK(v.witness->word == std::vector<std::string>{"c"});
    CHECK(v.witness->event == "u");
    CHECK(v.witness->plant_state == "p2");
    CHECK(v.witness->plant_target == "p4");
    check_replays(v, f3l.supervisor, f3l.plant);

    CHECK(check_fm_sub(f3l.plant, f3l.plant).holds());

    auto renamed = corpus_entry("fig1-right");
    CHECK(check_fm_sub(renamed.supervisor, renamed.plant).status == Status::not_applicable);
}

TEST_CASE("FMSub on a supervisor equal to its plant with a blocked uncontrollable branch")
{
    // S = P here, so every plant transition is in S and FMSub holds by
    // reflexivity, while FM fails because p2 cannot follow u after c.
    auto f3m = corpus_entry("fig3-middle");
    CHECK(check_fm_sub(f3m.supervisor, f3m.plant).holds());
    CHECK(check_fm(f3m.supervisor, f3m.plant).fails());
}

TEST_CASE("language_inclusion")
{
    auto f3l = corpus_entry("fig3-left");
    CHECK(language_inclusion(f3l.supervisor, f3l.plant).included);
    CHECK(language_inclusion(f3l.plant, f3l.plant).included);

    auto s = aut("controllable a b\ninitial x\nx b y\n");
    auto p = aut("controllable a b\ninitial q\nq a q\n");
    auto r = language_inclusion(s, p);
    CHECK_FALSE(r.included);
    CHECK(r.counterexample == std::vector<std::string>{"b"});
}

TEST_CASE("parse_notion spellings")
{
    CHECK(parse_notion("fm") == Notion::FM);
    CHECK(parse_notion("PBN") == Notion::PBn);
    CHECK(parse_notion("fm_sub") == Notion::FMSub);
    CHECK(parse_notion("fm-sub") == Notion::FMSub);
    CHECK(parse_notion("FMSub") == Notion::FMSub);
    CHECK_FALSE(parse_notion("xyz"));
}

TEST_CASE("tampered witnesses are rejected")
{
    auto f1l = corpus_entry("fig1-left");
    auto v = check_fm(f1l.supervisor, f1l.plant);
    REQUIRE(replay(v, f1l.supervisor, f1l.plant).confirmed);

    auto wrong_state = v;
    wrong_state.witness->sup_state = "s2";
    CHECK_FALSE(replay(wrong_state, f1l.supervisor, f1l.plant).confirmed);

    auto wrong_word = v;
    wrong_word.witness->word = {"u"};
    CHECK_FALSE(replay(wrong_word, f1l.supervisor, f1l.plant).confirmed);

    auto unknown = v;
    unknown.witness->event = "zz";
    CHECK_FALSE(replay(unknown, f1l.supervisor, f1l.plant).confirmed);

    auto f2r = corpus_entry("fig2-right");
    auto lc = check_lc(f2r.supervisor, f2r.plant);
    auto controllable_event = lc;
    controllable_event.witness->event = "u2";
    CHECK_FALSE(replay(controllable_event, f2r.supervisor, f2r.plant).confirmed);

    auto f1m = corpus_entry("fig1-middle");
    auto pbn = check_pbn(f1m.supervisor, f1m.plant);
    auto bad_path = pbn;
    bad_path.witness->pair_path.front().plant = "nowhere";
    CHECK_FALSE(replay(bad_path, f1m.supervisor, f1m.plant).confirmed);

    auto holds = check_fm(f1l.plant, f1l.plant);
    CHECK_FALSE(replay(holds, f1l.plant, f1l.plant).confirmed);
}

TEST_CASE("every failing verdict on random pairs replays")
{
    GenParams g;
    g.seed = 23;
    g.max_states = 5;
    std::size_t failing = 0;
    for (const auto& inst : generate_pairs(g, 300))
        for (Notion n : kAllNotions) {
            auto v = check(n, inst.supervisor, inst.plant);
            if (!v.fails())
                continue;
            ++failing;
            auto r = replay(v, inst.supervisor, inst.plant);
            REQUIRE_MESSAGE(r.confirmed, (describe(v) + ": " + r.message));
        }
    CHECK(failing > 100);
}
