// End-to-end command-line driver checks, run in process with captured
// streams. Files land under a scratch directory in the working directory.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dicke/cli.hpp"
#include "dicke/table.hpp"

namespace fs = std::filesystem;

namespace {
struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    std::streambuf* old_out = std::cout.rdbuf(out.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(err.rdbuf());
    int code = -1;
    try {
        code = dicke::run_cli(args);
    } catch (...) {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
        throw;
    }
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

const fs::path scratch = fs::temp_directory_path() / "dicke_cli_test";

struct ScratchDir {
    ScratchDir() {
        fs::remove_all(scratch);
        fs::create_directories(scratch);
    }
};
ScratchDir scratch_guard;
} // namespace

TEST_CASE("cli: exit codes") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"sweep", "--help"}).code == 0);
    CHECK(run({}).code == 2);                     // missing subcommand
    CHECK(run({"analytic", "--bogus"}).code == 2); // unknown flag
    CHECK(run({"analytic", "--omega", "0"}).code == 2);
    CHECK(run({"analytic", "--format", "xml"}).code == 2);
    CHECK(run({"analytic", "--plot"}).code == 2); // plot requires --out
    CHECK(run({"sweep", "--lambda-min", "2.0", "--lambda-max", "2.5", "--lambda-steps", "2",
               "--n-ladder", "8", "--m-max-factor", "0.2"})
              .code == 3); // sector scan hits its ceiling
    CHECK(run({"gp-loop", "--n-ladder", "2", "--loop-steps", "4"}).code == 2);
    CHECK(run({"analytic", "--out", (scratch / "no_such_dir" / "x.csv").string()}).code == 4);
    CHECK(run({"scaling", "--n-ladder", "2,4"}).code == 2); // ladder too short to fit
}

TEST_CASE("cli: error text names the offending option") {
    const RunResult omega = run({"analytic", "--omega", "0"});
    CHECK(omega.err.find("omega") != std::string::npos);
    const RunResult steps = run({"gp-loop", "--n-ladder", "2", "--loop-steps", "4"});
    CHECK(steps.err.find("loop-steps") != std::string::npos);
}

TEST_CASE("cli: analytic writes a parseable table") {
    const fs::path out = scratch / "analytic.csv";
    const RunResult r = run({"analytic", "--lambda-min", "0.2", "--lambda-max", "1.4",
                             "--lambda-steps", "7", "--out", out.string()});
    REQUIRE(r.code == 0);
    const std::string text = slurp(out);
    CHECK(text.rfind("# omega=1 omega0=1 lambda_c=0.70710678118654757", 0) == 0);
    CHECK(text.find("lambda,lambda_c,alpha,beta,e0_per_atom,gp_per_atom,gp_slope") !=
          std::string::npos);
    // 7 data rows after the comment and the header
    std::istringstream is(text);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#' && line[0] != 'l') ++rows;
    CHECK(rows == 7);

    SECTION("json format") {
        const fs::path jout = scratch / "analytic.json";
        REQUIRE(run({"analytic", "--lambda-steps", "5", "--format", "json", "--out",
                     jout.string()})
                    .code == 0);
        const nlohmann::json j = nlohmann::json::parse(slurp(jout));
        CHECK(j["rows"].size() == 5);
        CHECK(j["lambda_c"].get<double>() == std::sqrt(0.5));
    }
    SECTION("stdout when --out is omitted") {
        const RunResult s = run({"analytic", "--lambda-steps", "3"});
        REQUIRE(s.code == 0);
        CHECK(s.out.find("gp_per_atom") != std::string::npos);
    }
}

TEST_CASE("cli: sweep json covers ladder x grid and honors comma ladders") {
    const fs::path out = scratch / "sweep.json";
    const RunResult r = run({"sweep", "--n-ladder", "2,4", "--lambda-min", "0.4",
                             "--lambda-max", "1.2", "--lambda-steps", "3", "--format", "json",
                             "--out", out.string()});
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    CHECK(j["n_ladder"] == nlohmann::json({2, 4}));
    REQUIRE(j["rows"].size() == 6);
    CHECK(j["rows"][0]["n_atoms"].get<long long>() == 2);
    CHECK(j["rows"][0]["sector"].get<long long>() == 0); // vacuum below the transition
    CHECK(j["rows"][5]["n_atoms"].get<long long>() == 4);
}

TEST_CASE("cli: plot flag emits an svg next to the table") {
    const fs::path out = scratch / "plotted.csv";
    const fs::path svg = scratch / "plotted.svg";
    REQUIRE(run({"sweep", "--n-ladder", "2", "--lambda-min", "0.4", "--lambda-max", "1.2",
                 "--lambda-steps", "5", "--out", out.string(), "--plot"})
                .code == 0);
    CHECK(fs::exists(svg));
    const std::string body = slurp(svg);
    CHECK(body.rfind("<svg", 0) == 0);

    const fs::path out2 = scratch / "unplotted.csv";
    REQUIRE(run({"sweep", "--n-ladder", "2", "--lambda-min", "0.4", "--lambda-max", "1.2",
                 "--lambda-steps", "5", "--out", out2.string()})
                .code == 0);
    CHECK_FALSE(fs::exists(scratch / "unplotted.svg"));
}

TEST_CASE("cli: config file feeds options and flags override it") {
    const fs::path cfg = scratch / "run.cfg";
    {
        std::ofstream f(cfg);
        f << "omega=2.0\nlambda-steps=3\n";
    }
    const fs::path out = scratch / "from_config.csv";
    REQUIRE(run({"analytic", "--config", cfg.string(), "--out", out.string()}).code == 0);
    CHECK(slurp(out).rfind("# omega=2 omega0=1 lambda_c=1", 0) == 0);

    const fs::path out2 = scratch / "override.csv";
    REQUIRE(run({"analytic", "--config", cfg.string(), "--omega", "1", "--out",
                 out2.string()})
                .code == 0);
    CHECK(slurp(out2).rfind("# omega=1 omega0=1 lambda_c=0.70710678118654757", 0) == 0);
}

TEST_CASE("cli: gp-loop reports loop against closed form") {
    const fs::path out = scratch / "loop.csv";
    const RunResult r = run({"gp-loop", "--n-ladder", "2,4", "--lambda-min", "0.9",
                             "--lambda-max", "1.2", "--lambda-steps", "2", "--loop-steps",
                             "256", "--out", out.string()});
    REQUIRE(r.code == 0);
    std::istringstream is(slurp(out));
    std::string header;
    REQUIRE(std::getline(is, header));
    CHECK(header ==
          "n_atoms,lambda,sector,loop_steps,gp_loop,gp_closed_form,abs_error,rel_error");
    std::string line;
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        ++rows;
        const std::size_t last_comma = line.rfind(',');
        const std::size_t prev_comma = line.rfind(',', last_comma - 1);
        const double abs_err =
            std::strtod(line.substr(prev_comma + 1, last_comma - prev_comma - 1).c_str(),
                        nullptr);
        CHECK(abs_err <= 1e-3);
    }
    CHECK(rows == 4);
}

TEST_CASE("cli: scaling prints a fit report and writes json on request") {
    const fs::path out = scratch / "scaling.json";
    const RunResult r = run({"scaling", "--n-ladder", "8,16,32,64", "--lambda-min", "0.55",
                             "--lambda-max", "0.95", "--lambda-steps", "41", "--out",
                             out.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("slope") != std::string::npos);
    CHECK(r.out.find("r_squared") != std::string::npos);
    const dicke::ScalingFit f = dicke::scaling_from_json(nlohmann::json::parse(slurp(out)));
    REQUIRE(f.n_ladder.size() == 4);
    CHECK(f.slope > 0.0);

    SECTION("ladder outside the grid bracket is a config error") {
        CHECK(run({"scaling", "--n-ladder", "8,16,32,64", "--lambda-min", "0.8",
                   "--lambda-max", "1.2", "--lambda-steps", "11"})
                  .code == 2);
    }
}

TEST_CASE("cli: outputs are byte-identical across worker counts") {
    const fs::path a = scratch / "w1.csv";
    const fs::path b = scratch / "w7.csv";
    const std::vector<std::string> base = {"sweep",          "--n-ladder",    "4,8",
                                           "--lambda-min",   "0.4",           "--lambda-max",
                                           "1.3",            "--lambda-steps", "7"};
    auto with = [&](const fs::path& out, const char* workers) {
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--workers", workers, "--out", out.string()});
        return run(args).code;
    };
    REQUIRE(with(a, "1") == 0);
    REQUIRE(with(b, "7") == 0);
    CHECK(slurp(a) == slurp(b));
}
