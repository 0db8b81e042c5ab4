#include "commands.hpp"
#include "config.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace laxscatter;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("laxscatter_cli_" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    std::string write(const std::string& file, const std::string& text) const {
        const fs::path p = dir / file;
        std::ofstream(p) << text;
        return p.string();
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int code = -1;
    std::string err;
};

Run run_cli(const Scratch& s, const std::string& args) {
    const std::string cmd = std::string(LAXSCATTER_CLI_PATH) + " " + args + " > " + (s.dir / "stdout.txt").string() +
                            " 2> " + (s.dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(s.dir / "stderr.txt");
    return r;
}

cli::Json report(const Scratch& s, const std::string& command) {
    return cli::Json::parse(slurp(s.dir / (command + ".json")));
}

}  // namespace

TEST_CASE("config file parsing") {
    Scratch s("parse");
    const std::string path = s.write("c.json", R"({
        "grid": {"L": 12, "n": 512},
        "k": [2, 4],
        "s": [-0.2],
        "seed": 9,
        "potential": {"kind": "gaussian", "amplitude": [0.03, 0.01], "width": 0.8, "mollify": [2, 3]},
        "dt": 0.002
    })");
    cli::RunConfig cfg;
    cli::load_config_file(path, cfg);
    CHECK(cfg.L == 12);
    CHECK(cfg.n == 512);
    CHECK(cfg.k == std::vector<double>{2, 4});
    CHECK(cfg.s == std::vector<double>{-0.2});
    CHECK(cfg.seed == 9);
    CHECK(cfg.q.kind == PotentialKind::gaussian);
    CHECK(cfg.q.amplitude == cplx(0.03, 0.01));
    REQUIRE(cfg.q.mollify.has_value());
    CHECK(cfg.q.mollify->first == 2);
    CHECK(cfg.dt == 0.002);
}

TEST_CASE("config errors name the field") {
    Scratch s("errors");
    auto message = [&](const std::string& text) -> std::string {
        cli::RunConfig cfg;
        try {
            cli::load_config_file(s.write("bad.json", text), cfg);
        } catch (const InputError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message(R"({"gird": {"n": 64}})").find("gird") != std::string::npos);
    CHECK(message(R"({"grid": {"n": "many"}})").find("config.grid.n") != std::string::npos);
    CHECK(message(R"({"potential": {"width": 1, "colour": 2}})").find("colour") != std::string::npos);
    CHECK(message(R"({"k": [2, )").find("JSON") != std::string::npos);
    CHECK_FALSE(message(R"({"seed": -1})").empty());

    cli::RunConfig cfg;
    cfg.command = "energy";
    cfg.s = {0.2};
    CHECK_THROWS_AS(cli::resolve(cfg), InputError);
}

TEST_CASE("verify-equality on the zero potential") {
    Scratch s("zero");
    const std::string cfg = s.write("c.json", R"({"potential": {"amplitude": 0}, "k": [2, 4]})");
    const Run r = run_cli(s, "verify-equality --config " + cfg + " --out " + s.dir.string());
    REQUIRE(r.code == 0);
    const cli::Json j = report(s, "verify-equality");
    CHECK(j["schema"] == "laxscatter/1");
    CHECK(j["passed"] == true);
    for (const auto& run : j["results"]["runs"]) {
        CHECK(run["deviations"]["matrix"].get<double>() == 0.0);
        CHECK(run["deviations"]["series"].get<double>() == 0.0);
    }
    CHECK(fs::exists(s.dir / "equality.csv"));
}

TEST_CASE("verify-equality on bumps") {
    Scratch s("bumps");
    for (const char* amp : {"[0.05, 0]", "[0.03, 0.04]", "[0, -0.06]"}) {
        const std::string cfg =
            s.write("c.json", std::string(R"({"potential": {"kind": "bump", "width": 2, "amplitude": )") + amp + "}}");
        const Run r = run_cli(s, "verify-equality --k 2 4 8 --config " + cfg + " --out " + s.dir.string());
        CHECK(r.code == 0);
        for (const auto& run : report(s, "verify-equality")["results"]["runs"])
            CHECK(run["deviations"]["matrix"].get<double>() < 1e-6);
    }
}

TEST_CASE("exit codes") {
    Scratch s("codes");
    const std::string bad = s.write("bad.json", R"({"potential": {"amplitude": "big"}})");
    Run r = run_cli(s, "transmission --config " + bad + " --out " + s.dir.string());
    CHECK(r.code == 1);
    CHECK(r.err.find("config.potential.amplitude") != std::string::npos);

    r = run_cli(s, "transmission --config " + s.write("m.json", "{\"k\": ") + " --out " + s.dir.string());
    CHECK(r.code == 1);

    r = run_cli(s, "no-such-command");
    CHECK(r.code == 1);

    r = run_cli(s, "jost --grid-n 100 --out " + s.dir.string());
    CHECK(r.code == 1);

    // a tolerance nothing can meet
    const std::string ok = s.write("ok.json", R"({"potential": {"amplitude": [0.05, 0]}})");
    r = run_cli(s, "verify-equality --tol 1e-300 --config " + ok + " --out " + s.dir.string());
    CHECK(r.code == 2);
    CHECK(report(s, "verify-equality")["passed"] == false);
}

TEST_CASE("every command writes a report") {
    Scratch s("all");
    const std::string cfg = s.write("c.json", R"({"potential": {"kind": "gaussian", "amplitude": [0.04, 0.01], "width": 0.7,
        "mollify": [2, 3]}, "grid": {"n": 512}, "dt": 0.01, "t_end": 0.1, "stride": 5, "n_k": 12})");
    for (const auto& command : cli::command_names()) {
        if (command == "full-report") continue;
        const Run r = run_cli(s, command + " --k 2 --config " + cfg + " --out " + s.dir.string());
        INFO(command << ": " << r.err);
        CHECK(r.code == 0);
        const cli::Json j = report(s, command);
        CHECK(j["command"] == command);
        CHECK(j.contains("results"));
    }
}
