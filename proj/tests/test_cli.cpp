/*
Copyright (c) 2026 the lusline authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// End-to-end checks of the command-line tool run as a subprocess.
// Invoked as: test_cli <path-to-lusline-binary>

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_cli;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path out = fs::temp_directory_path() / ("lusline_cli_out_" +
                                                std::to_string(++counter));
    fs::path err = out;
    err += ".err";
    std::string cmd = g_cli + " " + args + " >" + out.string() + " 2>" + err.string();
    int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
    res.out = slurp(out);
    res.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return res;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lusline_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string dir(const std::string& name) const { return (path / name).string(); }
};

// every file except the timing-bearing manifest, keyed by name
std::vector<std::string> corpus_files(const fs::path& dir) {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().filename() != "manifest.json")
            names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace

TEST_CASE("filters subcommand lists the full catalog") {
    RunResult res = run_cli("filters");
    CHECK(res.exit_code == 0);
    int lines = 0;
    for (char c : res.out)
        if (c == '\n') ++lines;
    CHECK(lines == 61);
    CHECK(res.out.find("haar") != std::string::npos);
    CHECK(res.out.find("bior6.8") != std::string::npos);

    RunResult taps = run_cli("filters --family db4");
    CHECK(taps.exit_code == 0);
    CHECK(taps.out.find("analysis_low") != std::string::npos);
}

TEST_CASE("phantom reruns are byte identical") {
    TempDir tmp;
    std::string a = tmp.dir("a");
    std::string b = tmp.dir("b");
    std::string args = "phantom --count 2 --seed 4242 --width 96 --height 96 --out ";
    REQUIRE(run_cli(args + a).exit_code == 0);
    REQUIRE(run_cli(args + b).exit_code == 0);

    auto names = corpus_files(a);
    CHECK(names == corpus_files(b));
    CHECK(!names.empty());
    bool found_pgm = false;
    for (const auto& name : names) {
        CHECK(slurp(fs::path(a) / name) == slurp(fs::path(b) / name));
        if (name.size() > 4 && name.substr(name.size() - 4) == ".pgm") found_pgm = true;
    }
    CHECK(found_pgm);

    // a different seed changes the noisy data
    std::string c = tmp.dir("c");
    REQUIRE(run_cli("phantom --count 2 --seed 4243 --width 96 --height 96 --out " + c)
                .exit_code == 0);
    CHECK(slurp(fs::path(a) / "p0000_noisy.pgm") !=
          slurp(fs::path(c) / "p0000_noisy.pgm"));
}

TEST_CASE("detect reruns are identical and eval scores them") {
    TempDir tmp;
    std::string corpus = tmp.dir("corpus");
    REQUIRE(run_cli("phantom --count 2 --seed 11 --width 128 --height 128 --out " +
                    corpus)
                .exit_code == 0);

    std::string det1 = tmp.dir("det1");
    std::string det2 = tmp.dir("det2");
    fs::create_directories(det1);
    fs::create_directories(det2);
    for (const char* stem : {"p0000", "p0001"}) {
        std::string img = corpus + "/" + stem + "_noisy.pgm";
        std::string base = " --family sym8 --level 4 --threshold 40 ";
        REQUIRE(run_cli("detect --image " + img + base + "--out " + det1 + "/" + stem +
                        ".json")
                    .exit_code == 0);
        REQUIRE(run_cli("detect --image " + img + base + "--out " + det2 + "/" + stem +
                        ".json")
                    .exit_code == 0);
        CHECK(slurp(fs::path(det1) / (std::string(stem) + ".json")) ==
              slurp(fs::path(det2) / (std::string(stem) + ".json")));
    }

    std::string report = tmp.dir("report.json");
    RunResult ev = run_cli("eval --detections " + det1 + " --truth " + corpus +
                           " --tolerance 3 --stroke-width 5 --out " + report);
    CHECK(ev.exit_code == 0);
    std::string doc = slurp(report);
    CHECK(doc.find("\"averaging\": \"micro\"") != std::string::npos);
    CHECK(doc.find("\"pleural\"") != std::string::npos);
    CHECK(doc.find("\"f2\"") != std::string::npos);
}

TEST_CASE("failures exit nonzero with a stable error prefix") {
    RunResult res = run_cli("detect --image /nope/missing.pgm --out /tmp/x.json");
    CHECK(res.exit_code != 0);
    CHECK(res.err.rfind("E_", 0) == 0);

    RunResult bad_arg = run_cli("detect --image a.pgm --level 9 --out /tmp/x.json");
    CHECK(bad_arg.exit_code != 0);

    RunResult unknown = run_cli("frobnicate");
    CHECK(unknown.exit_code != 0);
}

int main(int argc, char** argv) {
    doctest::Context ctx(argc, argv);
    for (int i = 1; i < argc; ++i)
        if (argv[i][0] != '-') g_cli = argv[i];
    if (g_cli.empty()) {
        std::fprintf(stderr, "usage: test_cli <path-to-lusline-binary>\n");
        return 2;
    }
    return ctx.run();
}
