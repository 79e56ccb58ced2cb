#include "helpers.hpp"

#include "ctrlcheck/report.hpp"

#include <doctest.h>

#include <fstream>

using namespace ctrlcheck;

TEST_CASE("corpus loads sorted and complete")
{
    auto entries = load_corpus(CTRLCHECK_CORPUS_DIR);
    REQUIRE(entries.size() == 10);
    for (std::size_t i = 1; i < entries.size(); ++i)
        CHECK(entries[i - 1].id < entries[i].id);
    for (const auto& e : entries) {
        CHECK_FALSE(e.expected.empty());
        CHECK_FALSE(e.source.empty());
    }
}

TEST_CASE("corpus verdicts match")
{
    auto entries = load_corpus(CTRLCHECK_CORPUS_DIR);
    auto report = run_corpus(entries);
    for (const auto& e : report.entries) {
        CHECK_MESSAGE(e.passed(), e.id);
        for (const auto& m : e.mismatches)
            MESSAGE(e.id << ": " << describe(m.got));
    }
    CHECK(report.mismatches() == 0);
    CHECK(report.compared() == 35);
}

TEST_CASE("spec corpus examples")
{
    auto f1l = run_entry(test::corpus_entry("fig1-left"));
    CHECK(f1l.matrix->at(Notion::LC).holds());
    CHECK(f1l.matrix->at(Notion::FM).fails());
    CHECK(f1l.matrix->at(Notion::KT).fails());

    auto f2r = run_entry(test::corpus_entry("fig2-right"));
    CHECK(f2r.matrix->at(Notion::SC).holds());
    CHECK(f2r.matrix->at(Notion::LC).fails());
    CHECK(f2r.matrix->at(Notion::FM).fails());
    CHECK(f2r.matrix->at(Notion::PBn).fails());

    auto e13 = run_entry(test::corpus_entry("exa13-supervised"));
    CHECK(e13.supervised);
    CHECK(e13.matrix->at(Notion::PBn).holds());
    CHECK(e13.matrix->at(Notion::LC).fails());
}

TEST_CASE("every non-implication is separated")
{
    auto entries = load_corpus(CTRLCHECK_CORPUS_DIR);
    auto report = run_corpus(entries);
    auto seps = check_separations(entries, report);
    CHECK(seps.size() == non_implications().size());
    for (const auto& s : seps)
        CHECK_MESSAGE(s.separated, s.detail);
}

TEST_CASE("a wrong expectation is reported")
{
    auto e = test::corpus_entry("fig1-left");
    e.expected[Notion::FM] = Status::holds;
    auto r = run_entry(e);
    CHECK_FALSE(r.passed());
    REQUIRE(r.mismatches.size() == 1);
    CHECK(r.mismatches[0].notion == Notion::FM);
}

TEST_CASE("malformed entries")
{
    auto dir = std::filesystem::temp_directory_path() / "ctrlcheck-corpus-test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto src = std::filesystem::path(CTRLCHECK_CORPUS_DIR) / "fig1-left";
    std::filesystem::copy_file(src / "supervisor.aut", dir / "supervisor.aut");
    std::filesystem::copy_file(src / "plant.aut", dir / "plant.aut");

    CHECK_THROWS_AS((void)load_entry(dir), ParseError);

    std::ofstream(dir / "expected.json") << R"({"mode":"direct","expected":{"FM":"maybe"}})";
    CHECK_THROWS_AS((void)load_entry(dir), ParseError);

    std::ofstream(dir / "expected.json") << R"({"mode":"sideways","expected":{}})";
    CHECK_THROWS_AS((void)load_entry(dir), ParseError);

    std::ofstream(dir / "expected.json") << R"({"mode":"direct","expected":{"fm":"fails"}})";
    auto e = load_entry(dir);
    CHECK(e.expected.at(Notion::FM) == Status::fails);
    CHECK(e.source.empty());
    std::filesystem::remove_all(dir);
}
