// End-to-end checks of the CLI: exit codes, output schemas, and the
// byte-identical determinism contract. Driven through the installed binary
// passed as --tool.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_tool;
std::string g_tmpdir;

struct RunOutput {
    int exit_code;
    std::string stdout_text;
};

RunOutput run_cli(const std::string& args) {
    std::string out_file = g_tmpdir + "/cli_stdout.txt";
    std::string cmd = g_tool + " " + args + " > " + out_file + " 2> " + g_tmpdir +
                      "/cli_stderr.txt";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string write_config(const std::string& name, const std::string& text) {
    std::string path = g_tmpdir + "/" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

} // namespace

TEST_CASE("extend on z^2 at the origin returns the origin") {
    std::string cfg = write_config("extend1.json", R"({"map": {"power": 2}})");
    RunOutput r = run_cli("extend --config " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"residual\"") != std::string::npos);
    CHECK(r.stdout_text.find("\"point\"") != std::string::npos);
}

TEST_CASE("malformed config exits 1") {
    std::string cfg = write_config("bad.json", "{ this is not json");
    RunOutput r = run_cli("extend --config " + cfg);
    CHECK(r.exit_code == 1);
}

TEST_CASE("unknown config fields are rejected") {
    std::string cfg = write_config("unknown.json", R"({"map": {"power": 2}, "bogus": 1})");
    RunOutput r = run_cli("extend --config " + cfg);
    CHECK(r.exit_code == 1);
}

TEST_CASE("delta command emits one row per grid point, all positive") {
    std::string cfg = write_config("delta.json", R"({"grid": [0.5, 1.0, 2.0]})");
    RunOutput r = run_cli("delta --config " + cfg);
    CHECK(r.exit_code == 0);
    int rows = 0;
    std::istringstream ss(r.stdout_text);
    std::string line;
    bool header = false;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            CHECK(line == "r,delta,radial_image");
            continue;
        }
        rows++;
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        double delta = std::atof(line.substr(c1 + 1, c2 - c1 - 1).c_str());
        CHECK(delta > 0.0);
    }
    CHECK(rows == 3);
}

TEST_CASE("treecheck validates the interval fold") {
    std::string tree_map = R"({
      "degree": 2,
      "source": {"vertices": ["a", "c", "b"],
                 "edges": [{"u": "a", "v": "c", "length": 1.0},
                            {"u": "c", "v": "b", "length": 1.0}]},
      "target": {"vertices": ["x", "y"],
                 "edges": [{"u": "x", "v": "y", "length": 1.0}]},
      "vertex_images": {"a": {"vertex": "x"}, "c": {"vertex": "y"}, "b": {"vertex": "x"}},
      "edge_slopes": [{"u": "a", "v": "c", "slope": 1}, {"u": "c", "v": "b", "slope": 1}],
      "witness": ["c"]
    })";
    std::string path = write_config("fold.json", tree_map);
    std::string cfg = write_config("treecheck.json",
                                   std::string(R"({"tree_map": ")") + path + "\"}");
    RunOutput r = run_cli("treecheck --config " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"valid\": true") != std::string::npos);
}

TEST_CASE("byte identical reruns") {
    std::string cfg = write_config(
        "lipscan.json", R"({"map": {"power": 2}, "samples": 24, "max_depth": 4.0, "seed": 9})");
    RunOutput a = run_cli("lipscan --config " + cfg);
    RunOutput b = run_cli("lipscan --config " + cfg);
    CHECK(a.exit_code == 0);
    CHECK(a.stdout_text == b.stdout_text);
    CHECK(a.stdout_text.find("bound_ok: true") != std::string::npos);

    std::string cfg2 = write_config(
        "fam.json",
        R"({"family": {"kind": "offset_power", "degree": 2, "parameters": [10.0, 100.0]},
            "analysis": "indicator", "seed": 3})");
    RunOutput c = run_cli("family --config " + cfg2);
    RunOutput d = run_cli("family --config " + cfg2);
    CHECK(c.exit_code == 0);
    CHECK(c.stdout_text == d.stdout_text);
}

TEST_CASE("fit-tree on inline points") {
    // three points along distinct rays: exact tripod
    std::string cfg = write_config("fit.json", R"({
        "scale": 2.0,
        "points": [
          {"label": "p", "x": 1.0, "y": 0.0, "z": 0.0},
          {"label": "q", "x": -1.0, "y": 0.0, "z": 0.0},
          {"label": "r", "x": 0.0, "y": 1.0, "z": 0.0}],
        "fit_tolerance": 1e-6})");
    RunOutput r = run_cli("fit-tree --config " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("\"ok\": true") != std::string::npos);
}

int run_doctest(int argc, char** argv) {
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}

int main(int argc, char** argv) {
    std::vector<char*> forwarded;
    for (int i = 0; i < argc; i++) {
        std::string a = argv[i];
        if (a == "--tool" && i + 1 < argc) {
            g_tool = argv[++i];
            continue;
        }
        forwarded.push_back(argv[i]);
    }
    if (g_tool.empty()) {
        std::fprintf(stderr, "usage: barytree_cli_tests --tool <path-to-barytree>\n");
        return 1;
    }
    char tmpl[] = "/tmp/barytree_cli_XXXXXX";
    g_tmpdir = mkdtemp(tmpl);
    return run_doctest(static_cast<int>(forwarded.size()), forwarded.data());
}
