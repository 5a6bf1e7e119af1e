#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ncfa/serialize.hpp"

using namespace ncfa;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(NCFA_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) { return read_text_file(path); }

int line_count(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("verify command exit codes") {
    CHECK(run("verify --model cyclic:6 --checks plancherel,hy,ds --samples 200 --seed 7") == 0);
    CHECK(run("verify --model s3 --checks "
              "plancherel,hy,holder,young,norm_bounds,ds,hb,up1,up2,lemma37,lemma43 "
              "--samples 60 --seed 13") == 0);
    CHECK(run("verify --model tl:1.4142135623730951 --checks up2 "
              "--grid-pq conjugate:1.0:2.0:0.1 --samples 50 --seed 3") == 0);
    CHECK(run("verify --model cyclic:0 --checks plancherel") == 2);
    CHECK(run("verify --model cyclic:4 --checks nosuchcheck") == 2);
    // cross-branch up2 failures are expected, still exit 0
    CHECK(run("verify --model cyclic:2 --checks up2 --grid 0.75:1.25:0.25 --samples 50") == 0);
}

TEST_CASE("sweep command and CSV output") {
    CHECK(run("sweep --model cyclic:4 --grid 0:1.25:0.25 --restarts 8 --iters 400 --seed 1 "
              "--out /tmp/ncfa_sweep.csv") == 0);
    const std::string text = slurp("/tmp/ncfa_sweep.csv");
    CHECK(line_count(text) == 37); // header + 36 rows
    // rows re-parse
    std::istringstream ss(text);
    std::string line;
    std::getline(ss, line);
    CHECK(line == sweep_csv_header());
    int rows = 0;
    while (std::getline(ss, line)) {
        const SweepRow r = sweep_from_csv(line);
        CHECK(r.gap >= -1e-6);
        ++rows;
    }
    CHECK(rows == 36);

    CHECK(run("sweep --model s3 --grid 0:1:0.5 --restarts 4 --iters 200 --seed 1 "
              "--out /tmp/ncfa_sweep_s3.csv") == 0);
    CHECK(line_count(slurp("/tmp/ncfa_sweep_s3.csv")) == 10); // header + 9 rows

    CHECK(run("sweep --model cyclic:4 --grid 1:0:0.5") == 2);
}

TEST_CASE("identical seeds give byte-identical CSV") {
    CHECK(run("sweep --model cyclic:5 --grid 0:1:0.5 --restarts 5 --iters 200 --seed 11 "
              "--out /tmp/ncfa_a.csv") == 0);
    CHECK(run("sweep --model cyclic:5 --grid 0:1:0.5 --restarts 5 --iters 200 --seed 11 "
              "--jobs 4 --out /tmp/ncfa_b.csv") == 0);
    CHECK(slurp("/tmp/ncfa_a.csv") == slurp("/tmp/ncfa_b.csv"));
}

TEST_CASE("classify command") {
    const ModelPtr m = cyclic_model(4);
    write_text_file("/tmp/ncfa_delta1.json", element_to_json(group_delta(*m, 1)));
    CHECK(run("classify --model cyclic:4 --element /tmp/ncfa_delta1.json --p 1 --q 1 "
              "--out /tmp/ncfa_cls.csv") == 0);
    const std::string text = slurp("/tmp/ncfa_cls.csv");
    CHECK(text.find("TraceOneProjection") != std::string::npos);

    // element of a different model: shape mismatch, exit 2
    const ModelPtr m6 = cyclic_model(6);
    write_text_file("/tmp/ncfa_bad.json", element_to_json(group_delta(*m6, 1)));
    CHECK(run("classify --model cyclic:4 --element /tmp/ncfa_bad.json --p 1 --q 1") == 2);
    CHECK(run("classify --model cyclic:4 --element /nonexistent.json --p 1 --q 1") == 2);
}

TEST_CASE("anomaly command") {
    CHECK(run("anomaly --model cyclic:2 --grid 0.5:1.5:0.25 --samples 100 --seed 5 "
              "--out /tmp/ncfa_anomaly.csv") == 0);
    std::istringstream ss(slurp("/tmp/ncfa_anomaly.csv"));
    std::string line;
    std::getline(ss, line);
    CHECK(line == validity_csv_header());
    bool found_11 = false;
    while (std::getline(ss, line)) {
        const ValidityRow r = validity_from_csv(line);
        if (r.inv_p == 1.0 && r.inv_q == 1.0) {
            found_11 = true;
            CHECK(r.min_slack < -1e-6);
            CHECK(r.regime == "cross_branch");
        }
    }
    CHECK(found_11);
    // grid entirely outside the region
    CHECK(run("anomaly --model cyclic:2 --grid 0:0.25:0.25 --samples 10") == 2);
}

TEST_CASE("search and validate-model commands") {
    CHECK(run("search --model tl:1.4142135623730951 --p inf --q 1 --restarts 6 --seed 2 "
              "--element-out /tmp/ncfa_best.json") == 0);
    const ModelPtr tl = tl_model(std::sqrt(2.0));
    const Element best = element_from_json(tl, slurp("/tmp/ncfa_best.json"));
    CHECK(pnorm(sft(*tl, best), 1.0) == doctest::Approx(2.0).epsilon(1e-5));

    CHECK(run("validate-model --model s3 --samples 200 --seed 1") == 0);
    CHECK(run("validate-model --model abelian:2x2 --samples 200") == 0);
    CHECK(run("validate-model --model tl:2.5 --samples 100") == 0);

    // irrep tables load from files, inline configs from JSON
    write_text_file("/tmp/ncfa_s3_table.json", irrep_table_to_json(s3()));
    CHECK(run("validate-model --model nonabelian:/tmp/ncfa_s3_table.json --samples 100") == 0);
    write_text_file("/tmp/ncfa_model.json",
                    "{\"kind\":\"nonabelian\",\"irrep_table_path\":\"/tmp/ncfa_s3_table.json\"}");
    CHECK(run("validate-model --model /tmp/ncfa_model.json --samples 100") == 0);
}

TEST_CASE("json output format") {
    CHECK(run("verify --model cyclic:3 --checks ds --samples 20 --format json "
              "--out /tmp/ncfa_ds.json") == 0);
    const std::string text = slurp("/tmp/ncfa_ds.json");
    CHECK(text.find("\"name\": \"ds\"") != std::string::npos);
}
