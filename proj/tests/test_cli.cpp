#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "nss/dataio.hpp"

#ifndef NSSLAB_CLI_PATH
#error "NSSLAB_CLI_PATH must point at the built CLI binary"
#endif

using namespace nss;

namespace {

int run(const std::string& args) {
    const std::string cmd =
        std::string(NSSLAB_CLI_PATH) + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return status < 0 ? status : WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    std::string path;
    TempDir() {
        char tmpl[] = "/tmp/nsslab-test-XXXXXX";
        path = mkdtemp(tmpl);
    }
    ~TempDir() {
        [[maybe_unused]] const int rc = std::system(("rm -rf " + path).c_str());
    }
    std::string file(const std::string& name) const { return path + "/" + name; }
};

}  // namespace

TEST_CASE("gen writes a loadable dataset with a metadata sidecar") {
    TempDir dir;
    const std::string csv = dir.file("sub.csv");
    REQUIRE(run("gen --data subspace-paper:n=300 --seed 5 --out " + csv) == 0);

    const LabeledDataset data = read_csv(csv);
    CHECK(data.n() == 300);
    CHECK(data.dim() == 50);
    CHECK(data.num_classes == 3);

    const Metadata meta = read_metadata_file(csv + ".meta");
    CHECK(meta.at("generator") == "subspace-paper");
    CHECK(meta.at("seed") == "5");
    CHECK(meta.at("param_n") == "300");

    // same seed, same bytes
    const std::string csv2 = dir.file("sub2.csv");
    REQUIRE(run("gen --data subspace-paper:n=300 --seed 5 --out " + csv2) == 0);
    CHECK(slurp(csv) == slurp(csv2));
}

TEST_CASE("fit and predict round trip on generated data") {
    TempDir dir;
    const std::string train_csv = dir.file("train.csv");
    const std::string model = dir.file("m.model");
    const std::string labels = dir.file("labels.csv");
    REQUIRE(run("gen --data subspace-paper:n=600 --seed 21 --out " + train_csv) == 0);
    REQUIRE(run("fit --data " + train_csv + " --classifier nss --dim 2 --out " + model) == 0);
    REQUIRE(run("predict --model " + model + " --data " + train_csv + " --out " + labels) == 0);

    const std::string text = slurp(labels);
    CHECK(text.substr(0, 10) == "predicted\n");

    // residual output carries one residual per class
    const std::string res = dir.file("residuals.csv");
    REQUIRE(run("predict --model " + model + " --data " + train_csv + " --residuals --out " +
                res) == 0);
    std::istringstream in(slurp(res));
    std::string header;
    std::getline(in, header);
    CHECK(header == "predicted,residual1,residual2,residual3");
}

TEST_CASE("exit codes follow the error classes") {
    TempDir dir;
    CHECK(run("definitely-not-a-subcommand") == 1);
    CHECK(run("fit --data missing.csv") == 1);  // missing required --out
    CHECK(run("--help") == 0);

    // unreadable data file -> parse error
    CHECK(run("fit --data " + dir.file("absent.csv") + " --dim 2 --out " + dir.file("m")) == 2);

    const std::string bad = dir.file("bad.csv");
    std::ofstream(bad) << "1,2,oops\n";
    CHECK(run("fit --data " + bad + " --dim 1 --out " + dir.file("m")) == 2);

    // numeric error: requested dimension too large for the data
    const std::string tiny = dir.file("tiny.csv");
    std::ofstream(tiny) << "1,2,1\n3,4,2\n5,6,1\n7,8,2\n";
    CHECK(run("fit --data " + tiny + " --dim 5 --out " + dir.file("m")) == 3);

    // dimension mismatch between model and features
    const std::string train_csv = dir.file("train.csv");
    const std::string model = dir.file("m.model");
    REQUIRE(run("gen --data subspace-paper:n=300 --seed 3 --out " + train_csv) == 0);
    REQUIRE(run("fit --data " + train_csv + " --dim 2 --out " + model) == 0);
    CHECK(run("predict --model " + model + " --data " + tiny) == 3);
}

TEST_CASE("bench CSV is deterministic and aggregates match the raw rows") {
    TempDir dir;
    const std::string out_a = dir.file("a.csv");
    const std::string out_b = dir.file("b.csv");
    const std::string args =
        "bench --data gaussian-paper --classifier nss --classifier lda --repeats 3 "
        "--dim 2 --seed 9 --out ";
    REQUIRE(run(args + out_a) == 0);
    REQUIRE(run(args + out_b) == 0);
    CHECK(slurp(out_a) == slurp(out_b));

    std::istringstream in(slurp(out_a));
    std::string line;
    std::getline(in, line);
    CHECK(line == "repeat,classifier,accuracy,chosen_dim,error");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 6);  // 3 repeats x 2 classifiers
}

TEST_CASE("consistency emits deterministic per-trial rows") {
    TempDir dir;
    const std::string out_a = dir.file("a.csv");
    const std::string out_b = dir.file("b.csv");
    const std::string args =
        "consistency --data theorem1 --train-sizes 100,300 --trials 3 --n-test 1000 "
        "--mc-samples 500 --seed 4 --out ";
    REQUIRE(run(args + out_a) == 0);
    REQUIRE(run(args + out_b) == 0);
    CHECK(slurp(out_a) == slurp(out_b));

    std::istringstream in(slurp(out_a));
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 6);  // 2 sizes x 3 trials

    // a single-trial smoke run still emits one row per train size
    const std::string smoke = dir.file("smoke.csv");
    REQUIRE(run("consistency --data theorem1 --train-sizes 100,200,300,400,500 --trials 1 "
                "--n-test 500 --mc-samples 200 --seed 2 --out " +
                smoke) == 0);
    std::istringstream sin(slurp(smoke));
    rows = -1;
    while (std::getline(sin, line)) ++rows;
    CHECK(rows >= 5);
}
