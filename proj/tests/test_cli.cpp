#include "helpers.hpp"

#include "ctrlcheck/report.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

using ctrlcheck::Json;

namespace
{

struct Run
{
    int code = -1;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(CTRLCHECK_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string entry(const std::string& id, const std::string& file)
{
    return (std::filesystem::path(CTRLCHECK_CORPUS_DIR) / id / file).string();
}

std::string pair(const std::string& id) { return entry(id, "supervisor.aut") + " " + entry(id, "plant.aut"); }

} // namespace

TEST_CASE("check")
{
    auto fm = run("check fm " + pair("fig1-left"));
    CHECK(fm.code == 1);
    CHECK(fm.out == "FM: fails, witness w=c u=u at s4\n");

    const auto p = entry("fig1-left", "plant.aut");
    auto lc = run("check lc " + p + " " + p);
    CHECK(lc.code == 0);
    CHECK(lc.out.find("LC: holds") != std::string::npos);

    auto pb = run("check pb " + pair("fig1-left"));
    CHECK(pb.code == 2);
    CHECK(pb.out.find("not-applicable") != std::string::npos);

    auto json = run("check pbn --json " + pair("fig1-right"));
    CHECK(json.code == 0);
    CHECK(Json::parse(json.out)["status"] == "holds");

    CHECK(run("check fm --oracle " + pair("fig1-left")).code == 1);
}

TEST_CASE("matrix")
{
    auto r = run("matrix --json " + pair("fig1-right"));
    CHECK(r.code == 1);
    auto j = Json::parse(r.out);
    CHECK(j["verdicts"]["PBn"]["status"] == "holds");
    for (const char* n : {"LC", "FM", "KT"})
        CHECK(j["verdicts"][n]["status"] == "fails");

    const auto p = entry("fig1-left", "plant.aut");
    CHECK(run("matrix " + p + " " + p).code == 0);

    auto sup = run("matrix --supervised --json " + pair("exa13-supervised"));
    auto sj = Json::parse(sup.out);
    CHECK(sj["supervised"] == true);
    CHECK(sj["verdicts"]["PBn"]["status"] == "holds");
    CHECK(sj["verdicts"]["LC"]["status"] == "fails");
}

TEST_CASE("fuzz")
{
    auto t3 = run("fuzz 3 --count 1000 --seed 7 --json");
    CHECK(t3.code == 0);
    auto j3 = Json::parse(t3.out);
    CHECK(j3["violations"].empty());

    auto t1 = run("fuzz 1 --count 1000 --seed 7 --json");
    CHECK(t1.code == 0);
    auto j1 = Json::parse(t1.out);
    CHECK(j1["violations"].empty());
    bool found = false;
    for (const auto& rel : j1["relations"])
        if (rel["relation"] == "FM=KT") {
            found = true;
            CHECK(rel["checked"] == 1000);
            CHECK(rel["violations"] == 0);
        }
    CHECK(found);

    auto t4 = run("fuzz 4 --count 0");
    CHECK(t4.code == 0);
    CHECK(t4.out.find("0 instances") != std::string::npos);
}

TEST_CASE("fuzz writes replay files for violations")
{
    auto dir = std::filesystem::temp_directory_path() / "ctrlcheck-cli-replay";
    std::filesystem::remove_all(dir);
    auto r = run("fuzz 4 --count 200 --seed 7 --replay-dir " + dir.string());
    CHECK(r.code == 4);
    auto manifest = dir / "theorem4" / "manifest.json";
    REQUIRE(std::filesystem::exists(manifest));
    REQUIRE(std::filesystem::exists(dir / "theorem4" / "violation-0" / "shrunk-plant.aut"));
    auto shrunk_s = (dir / "theorem4" / "violation-0" / "shrunk-supervisor.aut").string();
    auto shrunk_p = (dir / "theorem4" / "violation-0" / "shrunk-plant.aut").string();
    CHECK(run("check fmsub " + shrunk_s + " " + shrunk_p).code == 0);
    CHECK(run("check fm " + shrunk_s + " " + shrunk_p).code == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("export")
{
    auto prod = run("export product " + pair("exa13-supervised"));
    CHECK(prod.code == 0);
    auto a = ctrlcheck::parse_aut(prod.out);
    CHECK(a.num_states() == 3);

    auto det = run("export determinized " + entry("fig1-middle", "plant.aut"));
    CHECK(det.code == 0);
    CHECK(ctrlcheck::parse_aut(det.out).num_states() == 1);

    auto dot = run("export dot " + entry("fig2-right", "plant.aut"));
    CHECK(dot.code == 0);
    CHECK(dot.out.find("digraph") != std::string::npos);
    CHECK(dot.out.find("dashed") != std::string::npos);
}

TEST_CASE("corpus and gen")
{
    auto c = run(std::string("corpus ") + CTRLCHECK_CORPUS_DIR);
    CHECK(c.code == 0);

    auto g1 = run("gen --seed 5 --mode free");
    auto g2 = run("gen --seed 5 --mode free");
    CHECK(g1.code == 0);
    CHECK(g1.out == g2.out);
    CHECK_NOTHROW((void)ctrlcheck::parse_aut(g1.out));
}

TEST_CASE("input errors")
{
    CHECK(run("check fm /nonexistent.aut /nonexistent.aut").code == 3);
    CHECK(run("check zz " + pair("fig1-left")).code != 0);
    auto tmp = std::filesystem::temp_directory_path() / "ctrlcheck-bad.aut";
    {
        std::ofstream(tmp) << "controllable a\ninitial q\nq b r\n";
    }
    auto r = run("check fm " + tmp.string() + " " + tmp.string());
    CHECK(r.code == 3);
    CHECK(r.out.find(":3") != std::string::npos);
    std::filesystem::remove(tmp);
}
