#include "helpers.hpp"

#include "ctrlcheck/generator.hpp"

#include <doctest.h>

using namespace ctrlcheck;
using test::aut;
using test::corpus_entry;

TEST_CASE("classify")
{
    auto f3l = corpus_entry("fig3-left");
    CHECK(classify(f3l.supervisor, f3l.plant) == ContextProfile{true, false, true, true, true});

    auto d = aut("controllable c\nuncontrollable u\ninitial x\nx c y\ny u x\n");
    CHECK(classify(d, d) == ContextProfile{true, true, true, true, true});

    auto renamed = aut("controllable c\nuncontrollable u\ninitial a\na c b\nb u a\n");
    auto c = classify(renamed, d);
    CHECK_FALSE(c.subautomaton);
    CHECK(c.language_inclusion);
}

TEST_CASE("applicable_in")
{
    ContextProfile nn{false, false, false, false, true};
    CHECK_FALSE(applicable_in(Notion::PB, nn));
    CHECK_FALSE(applicable_in(Notion::SC, nn));
    CHECK_FALSE(applicable_in(Notion::SCn, nn));
    CHECK(applicable_in(Notion::SCn, nn, false, true));
    CHECK(applicable_in(Notion::PBn, nn));
    ContextProfile sub{true, true, true, true, true};
    CHECK(applicable_in(Notion::FMSub, sub));
    CHECK_FALSE(applicable_in(Notion::FMSub, sub, true));
}

TEST_CASE("matrix on corpus pairs")
{
    auto f1l = corpus_entry("fig1-left");
    auto m = matrix(f1l.supervisor, f1l.plant);
    CHECK(m.at(Notion::LC).holds());
    CHECK(m.at(Notion::FM).fails());
    CHECK(m.at(Notion::KT).fails());
    CHECK(m.at(Notion::PBn).applicable());
    CHECK(m.any_fails());

    auto f1r = corpus_entry("fig1-right");
    auto r = matrix(f1r.supervisor, f1r.plant);
    CHECK(r.at(Notion::PBn).holds());
    CHECK(r.at(Notion::LC).fails());
    CHECK(r.at(Notion::FM).fails());
    CHECK(r.at(Notion::KT).fails());

    auto d = aut("controllable c\nuncontrollable u\ninitial x\nx c y\ny u x\ny c z\n");
    auto same = matrix(d, d);
    CHECK(same.all_applicable_hold());
    CHECK(consistency_errors(same).empty());
}

TEST_CASE("supervisor equal to plant with a blocked branch gives FMSub without FM")
{
    auto f3m = corpus_entry("fig3-middle");
    NotionMatrix m;
    REQUIRE_NOTHROW(m = matrix(f3m.supervisor, f3m.plant));
    CHECK(m.at(Notion::FMSub).holds());
    CHECK(m.at(Notion::FM).fails());
    CHECK(m.at(Notion::LC).holds());
    CHECK_FALSE(m.context.p_deterministic);
}

TEST_CASE("supervised_matrix")
{
    auto e = corpus_entry("exa13-supervised");
    auto m = supervised_matrix(e.supervisor, e.plant);
    CHECK(m.supervised);
    CHECK(m.at(Notion::PBn).holds());
    CHECK(m.at(Notion::LC).fails());
    CHECK(m.at(Notion::FMSub).status == Status::not_applicable);

    auto d = aut("controllable c\nuncontrollable u\ninitial x\nx c y\ny u x\n");
    CHECK(supervised_matrix(d, d).all_applicable_hold());
}

TEST_CASE("supervised trace notions agree on deterministic pairs")
{
    auto g = params_for_theorem(3, 41);
    for (const auto& inst : generate_pairs(g, 300)) {
        auto m = supervised_matrix(inst.supervisor, inst.plant);
        const Status lc = m.at(Notion::LC).status;
        REQUIRE(m.at(Notion::FM).status == lc);
        REQUIRE(m.at(Notion::KT).status == lc);
        REQUIRE(m.at(Notion::SCn).status == lc);
    }
}

TEST_CASE("theorem relations and contexts")
{
    CHECK(theorem_relations(1).size() == 4);
    CHECK(LatticeRelation{Notion::FM, Notion::KT, true}.name() == "FM=KT");
    CHECK(LatticeRelation{Notion::FMSub, Notion::FM, false}.name() == "FMSub=>FM");
    ContextProfile dn{true, false, false, false, true};
    CHECK(in_theorem_context(1, dn));
    CHECK(in_theorem_context(2, dn));
    CHECK_FALSE(in_theorem_context(3, dn));
    CHECK_FALSE(in_theorem_context(4, dn));
}

TEST_CASE("theorem 3 on 1000 deterministic pairs")
{
    auto report = verify_theorem(3, generate_pairs(params_for_theorem(3, 7), 1000));
    CHECK(report.instances == 1000);
    CHECK(report.violations.empty());
    CHECK(report.witness_failures.empty());
    CHECK(report.witnesses_confirmed == report.witnesses_checked);
}

TEST_CASE("theorem 1 on the first figure")
{
    std::vector<Instance> fig1;
    for (const auto* id : {"fig1-left", "fig1-middle", "fig1-right"}) {
        auto e = corpus_entry(id);
        fig1.push_back({e.supervisor, e.plant});
    }
    auto report = verify_theorem(1, fig1);
    CHECK(report.ok());
    for (const auto& t : report.relations)
        CHECK(t.checked == 3);
}

TEST_CASE("identical pairs satisfy every lattice")
{
    auto g = params_for_theorem(3, 42);
    std::vector<Instance> same;
    for (const auto& inst : generate_pairs(g, 100))
        same.push_back({inst.plant, inst.plant});
    for (int t = 1; t <= 4; ++t) {
        auto r = verify_theorem(t, same);
        CHECK(r.ok());
        for (const auto& tally : r.relations)
            CHECK(tally.consequent_held == tally.checked);
    }
}

TEST_CASE("context mismatch")
{
    auto f1l = corpus_entry("fig1-left");
    TheoremVerifier v(3);
    CHECK_THROWS_AS(v.add(f1l.supervisor, f1l.plant), ContextMismatch);
    auto f1r = corpus_entry("fig1-right");
    TheoremVerifier v4(4);
    CHECK_THROWS_AS(v4.add(f1r.supervisor, f1r.plant), ContextMismatch);
}

TEST_CASE("FMSub implies FM fails for nondeterministic plants")
{
    auto s = aut("controllable c2\nuncontrollable u1\ninitial p0\nstate p4\np0 c2 p4\n");
    auto p = aut("controllable c2\nuncontrollable u1\ninitial p0\nstate p2 p4\np0 c2 p2\np0 c2 p4\np2 u1 p2\n");
    REQUIRE(is_subautomaton(s, p));
    auto m = matrix(s, p);
    CHECK(m.at(Notion::FMSub).holds());
    CHECK(m.at(Notion::FM).fails());
    auto report = verify_theorem(4, {{s, p}});
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].relation == "FMSub=>FM");
}

TEST_CASE("FMSub implies FM and PBn for deterministic subautomaton pairs")
{
    auto g = params_for_theorem(4, 43);
    g.deterministic = true;
    for (const auto& inst : generate_pairs(g, 500)) {
        auto m = matrix(inst.supervisor, inst.plant);
        if (!m.at(Notion::FMSub).holds())
            continue;
        REQUIRE(m.at(Notion::FM).holds());
        REQUIRE(m.at(Notion::PBn).holds());
    }
}
