#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "ultras/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = ultras::cli::run(args, out, err);
    return RunResult{code, out.str(), err.str()};
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "ultras_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_scratch(const std::string& name, const std::string& text) {
    fs::path p = scratch_dir() / name;
    std::ofstream f(p, std::ios::binary);
    f << text;
    f.close();
    return p.string();
}

struct EnvVar {
    explicit EnvVar(const char* name, const std::string& value) : name_(name) {
        ::setenv(name, value.c_str(), 1);
    }
    ~EnvVar() { ::unsetenv(name_); }
    const char* name_;
};

std::string corpus(const std::string& name) { return oracle::corpus_path(name); }

}  // namespace

TEST_CASE("cli parse echoes the model canonically") {
    auto r = run_cli({"parse", corpus("pcsp_sum.ultras")});
    CHECK(r.code == 0);
    CHECK(r.out == "calculus pcsp\ninit a.stop +(3/10) a.b.stop\n");
    CHECK(r.err.empty());

    auto v = run_cli({"parse", corpus("csp_vending.ultras")});
    CHECK(v.code == 0);
    CHECK(v.out == "calculus csp\nconst V = coin.(tea.V + coffee.V)\ninit V\n");
}

TEST_CASE("cli space reports the graph size") {
    auto r = run_cli({"space", corpus("pcsp_sum.ultras")});
    CHECK(r.code == 0);
    CHECK(r.out == "STATES 3\nTRANSITIONS 3\n");
}

TEST_CASE("cli export") {
    SUBCASE("tra to stdout") {
        auto r = run_cli({"export", corpus("pepa_race.ultras"), "--format", "tra"});
        CHECK(r.code == 0);
        CHECK(r.out == "STATES 2\nTRANSITIONS 1\n0 a 1 5\n");
    }
    SUBCASE("dot to stdout") {
        auto r = run_cli({"export", corpus("pepa_race.ultras"), "--format", "dot"});
        CHECK(r.code == 0);
        CHECK(r.out.find("digraph ultras {") != std::string::npos);
        CHECK(r.out.find("0 -> 1 [label=\"a/5\"];") != std::string::npos);
    }
    SUBCASE("-o writes the same bytes to a file") {
        std::string path = (scratch_dir() / "race.tra").string();
        auto direct = run_cli({"export", corpus("pepa_race.ultras"), "--format", "tra"});
        auto filed = run_cli({"export", corpus("pepa_race.ultras"), "--format", "tra", "-o", path});
        CHECK(filed.code == 0);
        CHECK(filed.out.empty());
        CHECK(oracle::read_file(path) == direct.out);
    }
    SUBCASE("unknown format") {
        auto r = run_cli({"export", corpus("pepa_race.ultras"), "--format", "xml"});
        CHECK(r.code == 2);
        CHECK(r.err == "error: unknown format 'xml' (expected dot or tra)\n");
    }
}

TEST_CASE("cli equivalence checks") {
    std::string choice = corpus("csp_choice.ultras");
    std::string race = corpus("pepa_race.ultras");

    SUBCASE("trace equivalent branching pair") {
        auto r = run_cli({"check-trace", choice, "--left", "a.(b.stop + c.stop)", "--right",
                          "a.b.stop + a.c.stop"});
        CHECK(r.code == 0);
        CHECK(r.out == "EQUIVALENT depth=6\n");
    }
    SUBCASE("joined duplicate branches are bisimilar") {
        auto r = run_cli({"check-bisim", choice, "--left", "a.stop + a.stop", "--right",
                          "a.stop"});
        CHECK(r.code == 0);
        CHECK(r.out == "EQUIVALENT depth=6\n");
    }
    SUBCASE("bisim distinguishes the branching pair") {
        auto r = run_cli({"check-bisim", choice, "--left", "a.(b.stop + c.stop)", "--right",
                          "a.b.stop + a.c.stop"});
        CHECK(r.code == 1);
        CHECK(r.out == "DISTINGUISHED trace= class={a.(b.stop + c.stop)} lhs=true rhs=false\n");
    }
    SUBCASE("rates differ") {
        auto r = run_cli({"check-trace", race, "--left", "(a,2).stop", "--right", "(a,3).stop"});
        CHECK(r.code == 1);
        CHECK(r.out == "DISTINGUISHED trace=a lhs=2 rhs=3\n");
    }
    SUBCASE("depth zero sees nothing") {
        auto r = run_cli({"check-trace", race, "--left", "(a,2).stop", "--right", "(a,3).stop",
                          "--depth", "0"});
        CHECK(r.code == 0);
        CHECK(r.out == "EQUIVALENT depth=0\n");
    }
    SUBCASE("generated battery agrees with traces on the branching pair") {
        auto r = run_cli({"check-testing", choice, "--left", "a.(b.stop + c.stop)", "--right",
                          "a.b.stop + a.c.stop", "--gen-depth", "2"});
        CHECK(r.code == 0);
        CHECK(r.out == "EQUIVALENT depth=6\n");
    }
    SUBCASE("delta choice changes the testing verdict") {
        std::vector<std::string> base{"check-testing", race,      "--left", "(a,2).stop",
                                      "--right",       "(a,3).stop", "--gen-depth", "1"};
        auto r = run_cli(base);
        CHECK(r.code == 1);
        CHECK(r.out == "DISTINGUISHED observer=(a,1).OMEGA trace=a lhs=2 rhs=3\n");

        // a rate-1 observer caps both sides at 1 under the minimum delta
        auto slow_args = base;
        slow_args.insert(slow_args.end(), {"--delta", "min"});
        auto slow = run_cli(slow_args);
        CHECK(slow.code == 0);
        CHECK(slow.out == "EQUIVALENT depth=6\n");
    }
    SUBCASE("observer files") {
        std::string obs = write_scratch("tea.ultras", "calculus csp\ninit coin.tea.OMEGA\n");
        auto r = run_cli({"check-testing", corpus("csp_vending.ultras"), "--left", "V", "--right",
                          "coin.coffee.stop", "--tests", obs});
        CHECK(r.code == 1);
        CHECK(r.out == "DISTINGUISHED observer=" + obs + " trace=cointea lhs=true rhs=false\n");
    }
}

TEST_CASE("cli usage and input errors") {
    SUBCASE("unknown command") {
        auto r = run_cli({"frobnicate"});
        CHECK(r.code == 2);
        CHECK(r.out.empty());
        CHECK(r.err.substr(0, 7) == "error: ");
    }
    SUBCASE("missing required argument") {
        auto r = run_cli({"parse"});
        CHECK(r.code == 2);
    }
    SUBCASE("missing file") {
        auto r = run_cli({"parse", "/nonexistent/model.ultras"});
        CHECK(r.code == 2);
        CHECK(r.err == "error: cannot open file '/nonexistent/model.ultras'\n");
    }
    SUBCASE("parse errors carry file, line and column") {
        std::string bad = write_scratch("bad.ultras", "calculus csp\ninit a..stop\n");
        auto r = run_cli({"parse", bad});
        CHECK(r.code == 2);
        CHECK(r.err.find(bad + ":2:8: ") != std::string::npos);
    }
    SUBCASE("bad command line term") {
        auto r = run_cli({"check-trace", corpus("csp_vending.ultras"), "--left", "a.+b", "--right",
                          "stop"});
        CHECK(r.code == 2);
        CHECK(r.err.find("--left") != std::string::npos);
    }
    SUBCASE("mismatched calculus operators in a term") {
        auto r = run_cli({"check-trace", corpus("csp_vending.ultras"), "--left", "(a,2).stop",
                          "--right", "stop"});
        CHECK(r.code == 2);
    }
    SUBCASE("unknown delta") {
        auto r = run_cli({"check-testing", corpus("csp_vending.ultras"), "--left", "V", "--right",
                          "V", "--gen-depth", "1", "--delta", "bogus"});
        CHECK(r.code == 2);
        CHECK(r.err.find("unknown delta") != std::string::npos);
    }
    SUBCASE("delta incompatible with the calculus") {
        auto r = run_cli({"check-testing", corpus("csp_vending.ultras"), "--left", "V", "--right",
                          "V", "--gen-depth", "1", "--delta", "product"});
        CHECK(r.code == 2);
        CHECK(r.err.find("does not fit") != std::string::npos);
    }
    SUBCASE("no observers") {
        auto r = run_cli({"check-testing", corpus("csp_vending.ultras"), "--left", "V", "--right",
                          "V"});
        CHECK(r.code == 2);
        CHECK(r.err == "error: no observers given: use --tests and/or --gen-depth\n");
    }
    SUBCASE("gen-depth out of range") {
        auto r = run_cli({"check-testing", corpus("csp_vending.ultras"), "--left", "V", "--right",
                          "V", "--gen-depth", "9"});
        CHECK(r.code == 2);
    }
    SUBCASE("observer in a different calculus") {
        std::string obs = write_scratch("pepaobs.ultras", "calculus pepa\ninit (a,1).OMEGA\n");
        auto r = run_cli({"check-testing", corpus("csp_vending.ultras"), "--left", "V", "--right",
                          "V", "--tests", obs});
        CHECK(r.code == 2);
    }
}

TEST_CASE("cli state budgets") {
    std::string sum = corpus("pcsp_sum.ultras");

    SUBCASE("flag") {
        auto r = run_cli({"space", sum, "--max-states", "2"});
        CHECK(r.code == 3);
        CHECK(r.out.empty());
        CHECK(r.err.substr(0, 35) == "error: state budget exceeded: more ");
        CHECK(r.err.find('\n') == r.err.size() - 1);
    }
    SUBCASE("environment variable") {
        EnvVar guard("ULTRAS_MAX_STATES", "2");
        CHECK(run_cli({"space", sum}).code == 3);
    }
    SUBCASE("the flag overrides the environment") {
        EnvVar guard("ULTRAS_MAX_STATES", "2");
        auto r = run_cli({"space", sum, "--max-states", "10"});
        CHECK(r.code == 0);
    }
    SUBCASE("invalid environment values") {
        EnvVar guard("ULTRAS_MAX_STATES", "lots");
        auto r = run_cli({"space", sum});
        CHECK(r.code == 2);
        CHECK(r.err == "error: invalid ULTRAS_MAX_STATES value 'lots'\n");
    }
    SUBCASE("budget respected by checks") {
        auto r = run_cli({"check-bisim", corpus("csp_choice.ultras"), "--left", "a.b.stop",
                          "--right", "a.c.stop", "--max-states", "3"});
        CHECK(r.code == 3);
    }
}

TEST_CASE("cli help is available") {
    auto top = run_cli({"--help"});
    CHECK(top.code == 0);
    CHECK(top.out.find("ultras") != std::string::npos);
    CHECK(top.out.find("check-trace") != std::string::npos);

    auto sub = run_cli({"check-testing", "--help"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("--gen-depth") != std::string::npos);
}

TEST_CASE("cli output is byte deterministic") {
    std::vector<std::vector<std::string>> commands{
        {"parse", corpus("csp_vending.ultras")},
        {"space", corpus("pepa_mm1.ultras")},
        {"export", corpus("csp_par_sync.ultras"), "--format", "dot"},
        {"export", corpus("pcsp_coin.ultras"), "--format", "tra"},
        {"check-trace", corpus("csp_choice.ultras"), "--left", "a.(b.stop + c.stop)", "--right",
         "a.b.stop + a.c.stop"},
        {"check-bisim", corpus("csp_choice.ultras"), "--left", "a.(b.stop + c.stop)", "--right",
         "a.b.stop + a.c.stop"},
        {"check-testing", corpus("pepa_workers.ultras"), "--left", "W", "--right",
         "(work,1).(rest,2).W", "--gen-depth", "2"},
    };
    for (const auto& cmd : commands) {
        CAPTURE(cmd[0]);
        auto first = run_cli(cmd);
        auto second = run_cli(cmd);
        CHECK(first.code == second.code);
        CHECK(first.out == second.out);
        CHECK(first.err == second.err);
    }
}
