#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

std::string tmp_path(const std::string& name) {
    return std::string(SCJL_TEST_TMP) + "/" + name;
}

int run_cli(const std::string& args, const std::string& capture = "") {
    std::string cmd = std::string(SCJL_CLI_BIN) + " " + args;
    cmd += capture.empty() ? " > /dev/null 2>&1" : " > " + capture + " 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("version and help exit cleanly") {
    const std::string cap = tmp_path("version.txt");
    CHECK(run_cli("--version", cap) == 0);
    CHECK(slurp(cap).find("0.1.0") != std::string::npos);
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("params --help") == 0);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("") == 1);                     // missing subcommand
    CHECK(run_cli("params --frobnicate 3") == 1);
    CHECK(run_cli("sample --eps 0.5 --delta 0.05 --n 8") == 1);  // --seed required
    CHECK(run_cli("params --eps 0.5 --delta 0.05 --B 1.0") == 1);  // B below e
    CHECK(run_cli("params --eps 0.5 --delta 0.05 --B 2.72 --constants nonsense") == 1);
}

TEST_CASE("params renders the resolved configuration") {
    const std::string cap = tmp_path("params.csv");
    CHECK(run_cli("params --eps 0.5 --delta 0.05 --B 2.718281828459045 --format csv", cap) == 0);
    const std::string text = slurp(cap);
    CHECK(text.find("# artifact=scjl-params-v1") != std::string::npos);
    CHECK(text.find("98") != std::string::npos);

    const std::string cap2 = tmp_path("params.json");
    CHECK(run_cli("params --eps 0.5 --delta 0.05 --B 20 --format json --out " + cap2) == 0);
    const std::string js = slurp(cap2);
    CHECK(js.find("\"artifact\": \"scjl-params-v1\"") != std::string::npos);
    CHECK(js.find("\"m\": 80") != std::string::npos);
}

TEST_CASE("sample then apply pipeline round trips") {
    const std::string matrix = tmp_path("A.json");
    CHECK(run_cli("sample --eps 0.5 --delta 0.05 --B 5 --n 12 --seed 3 --out " + matrix) == 0);
    const std::string matrix2 = tmp_path("A2.json");
    CHECK(run_cli("sample --eps 0.5 --delta 0.05 --B 5 --n 12 --seed 3 --out " + matrix2) == 0);
    CHECK(slurp(matrix) == slurp(matrix2));

    const std::string vecs = tmp_path("vecs.csv");
    write_file(vecs, "1,0,0,0,0,0,0,0,0,0,0,0\n0,0,0,0,0,0,0,0,0,0,0,2\n");
    const std::string ycsv = tmp_path("y.csv");
    CHECK(run_cli("apply --matrix " + matrix + " --vectors " + vecs + " --out " + ycsv) == 0);
    const std::string y = slurp(ycsv);
    CHECK(y.find("# artifact=scjl-apply-v1") != std::string::npos);
    // header (3 lines) + one row per vector
    int lines = 0;
    for (char c : y)
        if (c == '\n') ++lines;
    CHECK(lines == 5);

    const std::string ycsv2 = tmp_path("y2.csv");
    CHECK(run_cli("apply --matrix " + matrix + " --vectors " + vecs + " --out " + ycsv2) == 0);
    CHECK(slurp(ycsv2) == y);

    // sparse_jl kind flows through the same pipeline
    const std::string jlm = tmp_path("J.json");
    CHECK(run_cli("sample --eps 0.5 --delta 0.05 --B 5 --n 12 --seed 3 --kind sparse_jl --out " +
                  jlm) == 0);
    CHECK(run_cli("apply --matrix " + jlm + " --vectors " + vecs + " --format json --out " +
                  tmp_path("yj.json")) == 0);
    CHECK(slurp(tmp_path("yj.json")).find("sparse_jl") != std::string::npos);

    // dimension mismatch is an argument error
    const std::string shortvecs = tmp_path("short.csv");
    write_file(shortvecs, "1,0\n");
    CHECK(run_cli("apply --matrix " + matrix + " --vectors " + shortvecs) == 1);
}

TEST_CASE("distortion runs are reproducible byte for byte") {
    const std::string a = tmp_path("dist_a.csv");
    const std::string b = tmp_path("dist_b.csv");
    const std::string flags =
        "distortion --eps 0.5 --delta 0.05 --B 2.718281828459045 --n 16 --trials 200 --seed 7 ";
    CHECK(run_cli(flags + "--out " + a) == 0);
    CHECK(run_cli(flags + "--out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("# artifact=scjl-distortion-v1") != std::string::npos);
    CHECK(slurp(a).find("seed=7") != std::string::npos);

    const std::string c = tmp_path("dist_c.csv");
    CHECK(run_cli(flags + "--families basis,uniform --format json --out " + c) == 0);
    CHECK(slurp(c).find("\"families\"") != std::string::npos);
}

TEST_CASE("tradeoff covers the grid and reports per-B rows") {
    const std::string cap = tmp_path("tradeoff.csv");
    CHECK(run_cli("tradeoff --eps 0.5 --delta 0.05 --n 16 --trials 150 --seed 5 --out " + cap) ==
          0);
    const std::string text = slurp(cap);
    CHECK(text.find("# artifact=scjl-tradeoff-v1") != std::string::npos);
    CHECK(text.find("B_request,s,m,B,trials,failures,rate,ci_low,ci_high,pass") !=
          std::string::npos);
    // the endpoint row resolves to s=2, m=80
    CHECK(text.find(",2,80,") != std::string::npos);

    CHECK(run_cli("tradeoff --eps 0.5 --delta 0.05 --n 16 --trials 50 --seed 5 "
                  "--B-grid 3,5,9 --out " +
                  tmp_path("tg.csv")) == 0);
}

TEST_CASE("bounds report passes its frozen windows and honors the budget") {
    const std::string a = tmp_path("bounds_a.csv");
    const std::string b = tmp_path("bounds_b.csv");
    CHECK(run_cli("bounds-report --seed 1 --out " + a) == 0);
    CHECK(run_cli("bounds-report --seed 1 --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("# artifact=scjl-bounds-report-v1") != std::string::npos);
    CHECK(slurp(a).find("manybin") != std::string::npos);

    CHECK(run_cli("bounds-report --seed 1 --enum-budget 10") == 3);
}

TEST_CASE("counterexample report is deterministic and tagged") {
    const std::string a = tmp_path("ce_a.csv");
    const std::string b = tmp_path("ce_b.csv");
    const std::string flags = "counterexample --eps 0.5 --delta 1e-3 --trials 60 --seed 5 ";
    CHECK(run_cli(flags + "--out " + a) == 0);
    CHECK(run_cli(flags + "--out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).find("# artifact=scjl-counterexample-v1") != std::string::npos);
    CHECK(slurp(a).find("p,s,m,B,u_p") != std::string::npos);

    const std::string j = tmp_path("ce.json");
    CHECK(run_cli(flags + "--format json --out " + j) == 0);
    CHECK(slurp(j).find("\"looseness\"") != std::string::npos);
}

}  // TEST_SUITE
