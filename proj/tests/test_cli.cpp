#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "pushrec/gait.hpp"
#include "pushrec/trial_io.hpp"
#include "test_helpers.hpp"

#ifndef PUSHREC_CLI_PATH
#error "PUSHREC_CLI_PATH must be defined by the build"
#endif

namespace fs = std::filesystem;
using namespace pushrec;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path make_temp_dir() {
    static int counter = 0;
    const fs::path dir =
        fs::temp_directory_path() /
        ("pushrec_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

CliResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
    const std::string cmd = std::string(PUSHREC_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text_file(out.string());
    r.err = read_text_file(err.string());
    return r;
}

}  // namespace

TEST_CASE("cli: help lists the subcommands, unknown flags fail with usage exit") {
    const auto dir = make_temp_dir();
    const auto help = run_cli("--help", dir);
    CHECK(help.exit_code == 0);
    for (const char* sub : {"ingest", "smooth", "simulate", "analyze", "synth", "plot"})
        CHECK(help.out.find(sub) != std::string::npos);

    CHECK(run_cli("simulate --no-such-flag -o x.csv", dir).exit_code == 1);
    CHECK(run_cli("", dir).exit_code == 1);  // a subcommand is required
}

TEST_CASE("cli: ingest matches the golden converted file byte for byte") {
    const auto dir = make_temp_dir();
    const fs::path out = dir / "converted.csv";
    const auto r = run_cli("ingest " + testutil::fixture_path("trial_ramp.csv") + " -o " +
                               out.string(),
                           dir);
    REQUIRE(r.exit_code == 0);
    CHECK(read_text_file(out.string()) ==
          read_text_file(testutil::fixture_path("golden_converted.csv")));
}

TEST_CASE("cli: ingest failures use the data exit code") {
    const auto dir = make_temp_dir();
    SUBCASE("empty file") {
        const fs::path empty = dir / "empty.csv";
        write_text_file(empty.string(), "");
        const auto r = run_cli("ingest " + empty.string() + " -o " + (dir / "x.csv").string(),
                               dir);
        CHECK(r.exit_code == 2);
        CHECK(!r.err.empty());
    }
    SUBCASE("out-of-range count names the row") {
        const fs::path bad = dir / "bad.csv";
        std::string text = read_text_file(testutil::fixture_path("trial_ramp.csv"));
        text += "0.12,1000,394,450,448,494,460,0,500,500,500,500,500,500\n";
        write_text_file(bad.string(), text);
        const auto r = run_cli("ingest " + bad.string() + " -o " + (dir / "x.csv").string(),
                               dir);
        CHECK(r.exit_code == 2);
        CHECK(r.err.find(":18") != std::string::npos);  // data row 18
        CHECK(r.err.find("rhip") != std::string::npos);
    }
}

TEST_CASE("cli: simulate verdicts and determinism") {
    const auto dir = make_temp_dir();
    SUBCASE("zero push is recoverable") {
        const auto r = run_cli(
            "simulate --z0 0.98 --mass 50 -o " + (dir / "phase.csv").string(), dir);
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.find("recoverable") == 0);
    }
    SUBCASE("documented fall fixture: xdot 1.0, omega 3.16228, cop_max 0.15") {
        const auto r = run_cli("simulate --z0 0.98 --mass 50 --xdot0 1.0 -o " +
                                   (dir / "phase.csv").string(),
                               dir);
        REQUIRE(r.exit_code == 0);
        CHECK(r.out.find("fall") == 0);
        CHECK(r.out.find("capture_point=0.31622") != std::string::npos);
    }
    SUBCASE("identical flags produce identical files") {
        const std::string flags = "simulate --z0 0.98 --mass 50 --impulse 20 --boundary-out ";
        const auto r1 = run_cli(flags + (dir / "b1.csv").string() + " --report-out " +
                                    (dir / "r1.json").string() + " -o " +
                                    (dir / "p1.csv").string(),
                                dir);
        const auto r2 = run_cli(flags + (dir / "b2.csv").string() + " --report-out " +
                                    (dir / "r2.json").string() + " -o " +
                                    (dir / "p2.csv").string(),
                                dir);
        REQUIRE(r1.exit_code == 0);
        REQUIRE(r2.exit_code == 0);
        CHECK(read_text_file((dir / "p1.csv").string()) ==
              read_text_file((dir / "p2.csv").string()));
        CHECK(read_text_file((dir / "b1.csv").string()) ==
              read_text_file((dir / "b2.csv").string()));
        CHECK(read_text_file((dir / "r1.json").string()) ==
              read_text_file((dir / "r2.json").string()));
    }
    SUBCASE("invalid physics parameters fail") {
        CHECK(run_cli("simulate --z0 -1 -o " + (dir / "p.csv").string(), dir).exit_code == 2);
    }
}

TEST_CASE("cli: smooth reproduces the hand-solved spline value at 0.5") {
    const auto dir = make_temp_dir();
    const fs::path out = dir / "smoothed.csv";
    const auto r = run_cli("smooth " + testutil::fixture_path("knots.csv") +
                               " --smooth spline --resample 2 -o " + out.string(),
                           dir);
    REQUIRE(r.exit_code == 0);
    const std::string text = read_text_file(out.string());
    CHECK(text.find("0.5,0.6875\n") != std::string::npos);
    CHECK(text.find("1.5,0.6875\n") != std::string::npos);
    CHECK(text.rfind("t,y\n", 0) == 0);
}

TEST_CASE("cli: synth with one seed is reproducible, different seeds differ") {
    const auto dir = make_temp_dir();
    const std::string flags =
        "synth --handedness right --stance dynamic --noise 2 --impulse 1 --seed 42 -o ";
    REQUIRE(run_cli(flags + (dir / "a.csv").string(), dir).exit_code == 0);
    REQUIRE(run_cli(flags + (dir / "b.csv").string(), dir).exit_code == 0);
    CHECK(read_text_file((dir / "a.csv").string()) ==
          read_text_file((dir / "b.csv").string()));

    const std::string flags2 =
        "synth --handedness right --stance dynamic --noise 2 --impulse 1 --seed 7 -o ";
    REQUIRE(run_cli(flags2 + (dir / "c.csv").string(), dir).exit_code == 0);
    CHECK(read_text_file((dir / "a.csv").string()) !=
          read_text_file((dir / "c.csv").string()));
}

TEST_CASE("cli: analyze infers handedness and flips on mirrored channels") {
    const auto dir = make_temp_dir();
    const fs::path trial = dir / "right.csv";
    REQUIRE(run_cli("synth --handedness right --stance static --noise 1 --impulse 1 "
                    "--seed 3 -o " + trial.string(),
                    dir).exit_code == 0);

    const auto r = run_cli("analyze " + trial.string() + " -o " +
                               (dir / "report.json").string(),
                           dir);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("right") != std::string::npos);
    const std::string report = read_text_file((dir / "report.json").string());
    CHECK(report.find("\"report_version\": 1") != std::string::npos);
    CHECK(report.find("\"inferred\": \"right\"") != std::string::npos);

    // mirrored channels flip the verdict
    const RawTrial parsed = parse_trial_file(trial.string());
    const fs::path mirrored = dir / "mirrored.csv";
    write_trial_file(mirrored.string(), mirror_trial(parsed));
    const auto r2 = run_cli("analyze " + mirrored.string() + " -o " +
                                (dir / "report2.json").string(),
                            dir);
    REQUIRE(r2.exit_code == 0);
    CHECK(read_text_file((dir / "report2.json").string()).find("\"inferred\": \"left\"") !=
          std::string::npos);
}

TEST_CASE("cli: analyze rejects mixed raw and converted schemas") {
    const auto dir = make_temp_dir();
    const fs::path raw = dir / "raw.csv", conv = dir / "conv.csv";
    REQUIRE(run_cli("synth --seed 1 -o " + raw.string(), dir).exit_code == 0);
    REQUIRE(run_cli("ingest " + raw.string() + " -o " + conv.string(), dir).exit_code == 0);

    // converted alone is fine
    CHECK(run_cli("analyze " + conv.string() + " -o " + (dir / "r1.json").string(), dir)
              .exit_code == 0);
    // mixing schemas is a data error
    const auto r = run_cli("analyze " + raw.string() + " " + conv.string() + " -o " +
                               (dir / "r2.json").string(),
                           dir);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("mixed schema") != std::string::npos);
}

TEST_CASE("cli: analyze a directory of trials") {
    const auto dir = make_temp_dir();
    const fs::path trials = dir / "trials";
    fs::create_directories(trials);
    for (int seed : {1, 2, 3})
        REQUIRE(run_cli("synth --handedness left --stance static --impulse 1 --seed " +
                            std::to_string(seed) + " -o " +
                            (trials / ("t" + std::to_string(seed) + ".csv")).string(),
                        dir).exit_code == 0);
    const auto r = run_cli("analyze " + trials.string() + " -o " +
                               (dir / "batch.json").string(),
                           dir);
    REQUIRE(r.exit_code == 0);
    const std::string report = read_text_file((dir / "batch.json").string());
    CHECK(report.find("\"spearman_left\"") != std::string::npos);
    // three trials: the per-side correlations are present (not null)
    CHECK(report.find("\"spearman_left\": null") == std::string::npos);
}

TEST_CASE("cli: numeric failures use exit code 3") {
    const auto dir = make_temp_dir();
    // duplicated abscissae leave the cubic Vandermonde rank deficient
    const fs::path in = dir / "dup.csv";
    write_text_file(in.string(), "t,y\n0,1\n0,1\n1,2\n1,2\n");
    const auto r = run_cli("smooth " + in.string() + " --smooth poly:3 -o " +
                               (dir / "out.csv").string(),
                           dir);
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("rank") != std::string::npos);
}

TEST_CASE("cli: ingest a directory into --out-dir") {
    const auto dir = make_temp_dir();
    const fs::path trials = dir / "in";
    fs::create_directories(trials);
    for (int seed : {1, 2, 3, 4})
        REQUIRE(run_cli("synth --seed " + std::to_string(seed) + " -o " +
                            (trials / ("t" + std::to_string(seed) + ".csv")).string(),
                        dir).exit_code == 0);
    const fs::path out = dir / "out";
    const auto r = run_cli("ingest " + trials.string() + " --out-dir " + out.string() +
                               " --threads 3",
                           dir);
    REQUIRE(r.exit_code == 0);
    for (int seed : {1, 2, 3, 4}) {
        const fs::path f = out / ("t" + std::to_string(seed) + "_converted.csv");
        CHECK(fs::exists(f));
        const std::string text = read_text_file(f.string());
        CHECK(text.find("rhip_deg") != std::string::npos);
    }
    // many inputs without --out-dir is a usage-level data error
    CHECK(run_cli("ingest " + trials.string(), dir).exit_code == 2);
}

TEST_CASE("cli: PUSHREC_CONFIG supplies option defaults") {
    const auto dir = make_temp_dir();
    const fs::path cfg = dir / "defaults.ini";
    write_text_file(cfg.string(), "[simulate]\nz0=0.98\nmass=50\nxdot0=1.0\n");
    const std::string cmd = "PUSHREC_CONFIG=" + cfg.string() + " " + PUSHREC_CLI_PATH +
                            " simulate -o " + (dir / "p.csv").string() + " > " +
                            (dir / "o.txt").string() + " 2> " + (dir / "e.txt").string();
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    REQUIRE(WEXITSTATUS(status) == 0);
    const std::string out = read_text_file((dir / "o.txt").string());
    CHECK(out.find("fall") == 0);  // xdot 1.0 at omega sqrt(10): capture point 0.316
    CHECK(out.find("capture_point=0.31622") != std::string::npos);
}

TEST_CASE("cli: analyze with per-foot force files reports cop asymmetry") {
    const auto dir = make_temp_dir();
    const fs::path trial = dir / "t.csv";
    REQUIRE(run_cli("synth --seed 2 -o " + trial.string(), dir).exit_code == 0);
    write_text_file((dir / "left.csv").string(), "t,force\n0,6\n0.1,6\n0.2,6\n");
    write_text_file((dir / "right.csv").string(), "t,force\n0,4\n0.1,4\n0.2,4\n");
    const auto r = run_cli("analyze " + trial.string() + " --cop-left " +
                               (dir / "left.csv").string() + " --cop-right " +
                               (dir / "right.csv").string() + " -o " +
                               (dir / "r.json").string(),
                           dir);
    REQUIRE(r.exit_code == 0);
    CHECK(read_text_file((dir / "r.json").string()).find("\"cop_asymmetry\": 0.2") !=
          std::string::npos);

    // one foot alone is rejected
    CHECK(run_cli("analyze " + trial.string() + " --cop-left " +
                      (dir / "left.csv").string() + " -o " + (dir / "r2.json").string(),
                  dir).exit_code == 2);
}

TEST_CASE("cli: plot emits a well-formed standalone SVG") {
    const auto dir = make_temp_dir();
    const fs::path phase = dir / "phase.csv", boundary = dir / "boundary.csv";
    REQUIRE(run_cli("simulate --z0 0.98 --mass 50 --impulse 15 -o " + phase.string() +
                        " --boundary-out " + boundary.string(),
                    dir).exit_code == 0);
    const fs::path svg = dir / "phase.svg";
    const auto r = run_cli("plot " + phase.string() + " --boundary " + boundary.string() +
                               " -o " + svg.string(),
                           dir);
    REQUIRE(r.exit_code == 0);
    const std::string text = read_text_file(svg.string());
    CHECK(text.rfind("<?xml", 0) == 0);
    CHECK(text.find("<svg xmlns=") != std::string::npos);
    CHECK(text.find("<polyline") != std::string::npos);
    CHECK(text.find("decision boundary") != std::string::npos);
    CHECK(text.find("</svg>") != std::string::npos);

    // joint-angle series plot from a converted trial
    const fs::path raw = dir / "raw.csv", conv = dir / "conv.csv";
    REQUIRE(run_cli("synth --stance dynamic --seed 5 -o " + raw.string(), dir).exit_code == 0);
    REQUIRE(run_cli("ingest " + raw.string() + " -o " + conv.string(), dir).exit_code == 0);
    const auto r2 = run_cli("plot " + conv.string() + " -o " + (dir / "joints.svg").string(),
                            dir);
    REQUIRE(r2.exit_code == 0);
    CHECK(read_text_file((dir / "joints.svg").string()).find("rknee_deg") !=
          std::string::npos);
}
