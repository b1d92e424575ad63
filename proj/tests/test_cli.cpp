#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "helpers.hpp"
#include "partsched/io.hpp"

using namespace partsched;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

const fs::path& scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("partsched-cli-" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run cli(const std::string& args)
{
    const auto log = scratch() / "out.txt";
    const std::string cmd = std::string(PARTSCHED_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::ostringstream text;
    text << in.rdbuf();
    r.out = text.str();
    return r;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("generate and solve example41")
    {
        REQUIRE(cli("generate --family example41 --eps 1/2 -o " + path("ex41.json")).code == 0);
        CHECK(read_instance(path("ex41.json")).jobs.size() == 12);
        CHECK(fs::exists(path("ex41.meta.json")));
        const auto spt = cli("solve -a spt-available " + path("ex41.json") + " -o " + path("ex41.spt.json"));
        CHECK(spt.code == 0);
        CHECK(th::contains(spt.out, "objective 51"));
        const auto orc = cli("solve -a oracle " + path("ex41.json") + " -o " + path("ex41.opt.json"));
        CHECK(th::contains(orc.out, "objective 47"));
        CHECK(cli("validate " + path("ex41.json") + " " + path("ex41.spt.json")).code == 0);
        CHECK(cli("validate " + path("ex41.json") + " " + path("ex41.opt.json")).code == 0);
    }

    TEST_CASE("lower-bound family resource count")
    {
        REQUIRE(cli("generate --family lb --c 4 --eps 1/100 -o " + path("lb4.json")).code == 0);
        CHECK(read_instance(path("lb4.json")).resource_count == 13);
        REQUIRE(cli("generate --family lb --c 2 --eps 1/100 -o " + path("lb2.json")).code == 0);
        CHECK(read_instance(path("lb2.json")).resource_count == 7);
    }

    TEST_CASE("random generation is reproducible")
    {
        REQUIRE(cli("generate --family random --seed 7 --n 6 --m 2 -o " + path("a.json")).code == 0);
        REQUIRE(cli("generate --family random --seed 7 --n 6 --m 2 -o " + path("b.json")).code == 0);
        std::ifstream a(path("a.json")), b(path("b.json"));
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        CHECK(sa.str() == sb.str());
        CHECK(read_instance(path("a.json")).jobs.size() == 6);
    }

    TEST_CASE("flow solve with network dump")
    {
        write_json(path("unit.json"), instance_to_json(th::plain(2, 2, {{1, 0}, {1, 0}, {1, 1}, {1, 1}})));
        const auto r = cli("solve -a flow " + path("unit.json") + " --dump-network " + path("net.txt"));
        CHECK(r.code == 0);
        CHECK(th::contains(r.out, "objective 6"));
        std::ifstream net(path("net.txt"));
        std::string header;
        std::getline(net, header);
        CHECK(header == "30 52");
    }

    TEST_CASE("precondition failures exit 1")
    {
        REQUIRE(cli("generate --family example41 --eps 1/2 -o " + path("ex41b.json")).code == 0);
        const auto r = cli("solve -a flow " + path("ex41b.json"));
        CHECK(r.code == 1);
        CHECK(th::contains(r.out, "p_j = 1"));
        CHECK(cli("solve -a oracle --budget 3 " + path("ex41b.json")).code == 1);
    }

    TEST_CASE("validate reports overlaps")
    {
        write_json(path("pair.json"), instance_to_json(th::plain(2, 1, {{1, 0}, {1, 0}})));
        write_json(path("bad.json"), schedule_to_json(th::sched({{0, 0, 0}, {1, 1, 0}})));
        const auto r = cli("validate " + path("pair.json") + " " + path("bad.json"));
        CHECK(r.code == 1);
        CHECK(th::contains(r.out, "resource overlap at t"));

        write_json(path("gap.json"), schedule_to_json(th::sched({{0, 0, 0}, {1, 0, 3}})));
        CHECK(cli("validate " + path("pair.json") + " " + path("gap.json") + " --normalize " + path("norm.json")).code == 0);
        const auto norm = read_schedule(path("norm.json"));
        CHECK(objective(read_instance(path("pair.json")), norm) == 3);
    }

    TEST_CASE("usage errors exit 2")
    {
        CHECK(cli("").code == 2);
        CHECK(cli("frobnicate").code == 2);
        CHECK(cli("solve -a nonsense x.json").code == 2);
        CHECK(cli("generate --family nope -o " + path("x.json")).code == 2);
    }

    TEST_CASE("bench exit status and csv")
    {
        const auto r = cli("bench --family lb --c 2,4 --eps 1/100 --algorithms spt-available -o " + path("lb.csv"));
        CHECK(r.code == 0);
        std::ifstream csv(path("lb.csv"));
        std::string line;
        int rows = 0;
        while (std::getline(csv, line)) ++rows;
        CHECK(rows == 3);
        CHECK(cli("bench --family random --seeds 5 --n 5 --m 2 -o " + path("rand.csv")).code == 0);
    }
}
