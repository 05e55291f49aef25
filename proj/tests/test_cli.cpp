#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "expbasis/cli.hpp"

using namespace expbasis;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("classify subcommand") {
    auto r = run({"classify", "broken:a=0.3,L=0.8,r=1.1"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "frame=true"));
    CHECK(contains(r.out, "riesz_sequence=false"));
    CHECK(contains(r.out, "method=closed_form"));

    auto r2 = run({"classify", "square:h=0.7,theta=0.7853981634"});
    CHECK(r2.code == 0);
    CHECK(contains(r2.out, "frame=true"));

    auto r3 = run({"classify", "intervals:0,2", "--oracle"});
    CHECK(r3.code == 0);
    CHECK(contains(r3.out, "riesz_sequence=true"));
    CHECK(contains(r3.out, "A=2"));
    CHECK(contains(r3.out, "B=2"));
    CHECK(contains(r3.out, "method=covering_oracle"));
}

TEST_CASE("classify --deg converts angles") {
    auto rad = run({"classify", "square:h=0.7,theta=0.7853981634"});
    auto deg = run({"--deg", "classify", "square:h=0.7,theta=45"});
    CHECK(deg.code == 0);
    CHECK(deg.out == rad.out);
}

TEST_CASE("exit codes") {
    CHECK(run({"classify", "nonsense"}).code == 2);
    CHECK(run({"classify", "broken:a=2,L=1,r=0"}).code == 2);
    CHECK(run({"blorp"}).code == 2);
    CHECK(run({"covering", "square:h=0.5,theta=0.2", "--resolution", "100000"}).code == 3);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("deterministic output") {
    auto a = run({"classify", "broken:a=0.3,L=0.8,r=1.1"});
    auto b = run({"classify", "broken:a=0.3,L=0.8,r=1.1"});
    CHECK(a.out == b.out);

    const std::string p1 = "det_a_tmp.csv", p2 = "det_b_tmp.csv";
    auto r1 = run({"--out", p1, "sweep", "square", "--h", "0.4:1.2:0.05", "--theta", "0:0.78:0.06"});
    auto r2 = run({"--out", p2, "sweep", "square", "--h", "0.4:1.2:0.05", "--theta", "0:0.78:0.06"});
    CHECK(r1.code == 0);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(!slurp(p1).empty());
    std::remove(p1.c_str());
    std::remove(p2.c_str());
}

TEST_CASE("eps override changes threshold tagging") {
    // h exactly 1e-8 below the axis-aligned frame threshold 1
    auto strict = run({"classify", "square:h=0.99999999,theta=0"});
    auto loose = run({"--eps", "1e-6", "classify", "square:h=0.99999999,theta=0"});
    CHECK(!contains(strict.out, "boundary"));
    CHECK(contains(loose.out, "boundary"));
}

TEST_CASE("covering subcommand") {
    auto r = run({"covering", "intervals:0,0.6;1.0,1.4"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "0 2"));
    CHECK(contains(r.out, "0.4 1"));
    CHECK(contains(r.out, "0.6 0"));
    CHECK(contains(r.out, "phi_min=0"));
    CHECK(contains(r.out, "phi_max=2"));

    auto r2 = run({"covering", "box:1,0.5;0,1", "--resolution", "256"});
    CHECK(r2.code == 0);
    CHECK(contains(r2.out, "phi_min=1"));
    CHECK(contains(r2.out, "phi_max=1"));

    auto r3 = run({"covering", "intervals:0,1"});
    CHECK(contains(r3.out, "0 1"));
    CHECK(contains(r3.out, "phi_max=1"));
}

TEST_CASE("sweep subcommand") {
    const std::string path = "sweep_test_tmp.csv";
    auto r = run({"--out", path, "sweep", "square", "--h", "0.9:0.9:1", "--theta", "0:0:1"});
    CHECK(r.code == 0);
    auto csv = slurp(path);
    CHECK(contains(csv, "# expbasis-csv v1"));
    CHECK(contains(csv, "h,theta,frame,riesz_seq,riesz_basis,complete,onb,warnings"));
    CHECK(contains(csv, "0.9,0,1,0,0,1,0,0"));  // frame only at h=0.9, theta=0

    auto r2 = run({"--out", path, "sweep", "broken", "--a", "0.2:0.4:0.2", "--L", "0.5:0.5:1",
                   "--r", "0:1:0.5"});
    CHECK(r2.code == 0);
    auto csv2 = slurp(path);
    // 2 x 1 x 3 grid: header plus six rows
    int rows = 0;
    for (char ch : csv2)
        if (ch == '\n') ++rows;
    CHECK(rows == 2 + 6);
    CHECK(contains(r2.out, "rows=6"));

    CHECK(run({"--out", path, "sweep", "broken", "--a", "0:1:0.00001", "--L", "0:1:0.001",
               "--r", "0:1:0.001"})
              .code == 3);
    CHECK(run({"sweep", "broken", "--a", "0:1:0.1", "--L", "0:1:0.1", "--r", "0:1:0.1"}).code == 2);
    std::remove(path.c_str());
}

TEST_CASE("covering and gram CSV exports") {
    const std::string path = "export_test_tmp.csv";
    auto r = run({"--out", path, "covering", "box:1,0;0,1", "--resolution", "8"});
    CHECK(r.code == 0);
    auto csv = slurp(path);
    CHECK(contains(csv, "# expbasis-csv v1"));
    CHECK(contains(csv, "i0,i1,count"));
    int rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 2 + 64);

    auto r2 = run({"--out", path, "gram", "intervals:0,1", "--N", "1"});
    CHECK(r2.code == 0);
    auto dump = slurp(path);
    CHECK(contains(dump, "m,n,re,im"));
    CHECK(contains(dump, "0,0,1,0"));  // identity Gram for the unit tile
    std::remove(path.c_str());
}

TEST_CASE("gram subcommand") {
    auto r = run({"gram", "intervals:0,2", "--N", "8"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "lambda_min=2"));
    CHECK(contains(r.out, "lambda_max=2"));

    auto r2 = run({"gram", "intervals:0,1", "--N", "8"});
    CHECK(contains(r2.out, "lambda_min=1"));
    CHECK(contains(r2.out, "lambda_max=1"));

    // sup-ball section over {-1,0,1}: eigenvalues 0.5 and 0.5 -+ sqrt(2)/pi
    auto r3 = run({"gram", "intervals:0,0.5", "--N", "1", "--identities", "--trials", "2"});
    CHECK(r3.code == 0);
    CHECK(contains(r3.out, "lambda_min=0.0498418419214"));
    CHECK(contains(r3.out, "lambda_max=0.950158158079"));
    CHECK(contains(r3.out, "trial=1"));
    CHECK(contains(r3.out, "d12=") );
}
