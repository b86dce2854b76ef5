#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oscint/experiment.hpp"
#include "oscint/grid.hpp"

using namespace oscint;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = fs::path(TEST_SOURCE_DIR) / "fixtures";

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("oscint_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("config parsing") {
    const Config c = Config::from_string(
        "# comment\n"
        "[decay]\n"
        "kappa = 1\n"
        "lambda_min = 10 # inline comment\n"
        "cutoff_center = 0 0\n"
        "seed = 42\n");
    CHECK(c.get_int("decay", "kappa") == 1);
    CHECK(c.get_double("decay", "lambda_min") == 10.0);
    CHECK(c.get_doubles("decay", "cutoff_center").size() == 2);
    CHECK(c.get_seed_or("decay", 0) == 42);
    CHECK(c.get_or("decay", "missing", "fallback") == "fallback");
    CHECK_THROWS_AS(c.get("decay", "absent"), validation_error);
    CHECK_THROWS_AS(c.get("nosuch", "x"), validation_error);

    CHECK_THROWS_AS(Config::from_string("[open\n"), parse_error);
    CHECK_THROWS_AS(Config::from_string("key = 1\n"), parse_error);
    try {
        Config::from_string("[a]\nnocolon\n", "cfg.txt");
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("fnv hash is stable") {
    CHECK(fnv1a64("") == 14695981039346656037ULL);
    CHECK(fnv1a64("a") != fnv1a64("b"));
    CHECK(fnv1a64("config") == fnv1a64("config"));
}

TEST_CASE("norm runner reports the known quotient norm") {
    const fs::path dir = fresh_dir("norm");
    const fs::path cfg = dir / "norm.cfg";
    write_file(cfg, "[norm]\npolynomial = " + (kFixtures / "x2y.poly").string() +
                        "\nkappa = 1\nd = 3\nseed = 1\n");
    RunOptions opt;
    opt.out_dir = dir.string();
    CHECK(run_command("norm", cfg.string(), opt) == 0);

    const std::string csv = read_file(dir / "norm.csv");
    CHECK(csv.find("norm_full,norm_nc,norm_nd") != std::string::npos);
    CHECK(csv.find("0.7071067811865") != std::string::npos);
    CHECK(csv.find("# seed=1 version=") != std::string::npos);
}

TEST_CASE("exit code taxonomy") {
    const fs::path dir = fresh_dir("exits");
    RunOptions opt;
    opt.out_dir = dir.string();

    // parse error in the polynomial file -> 2
    const fs::path cfg2 = dir / "broken.cfg";
    write_file(cfg2, "[norm]\npolynomial = " + (kFixtures / "broken.poly").string() +
                         "\nkappa = 1\nd = 3\n");
    CHECK(run_command("norm", cfg2.string(), opt) == 2);

    // missing config file -> 2
    CHECK(run_command("norm", (dir / "nope.cfg").string(), opt) == 2);

    // cap violation -> 3
    const fs::path cfg3 = dir / "badkappa.cfg";
    write_file(cfg3, "[norm]\npolynomial = " + (kFixtures / "x2y.poly").string() +
                         "\nkappa = 5\nd = 3\n");
    CHECK(run_command("norm", cfg3.string(), opt) == 3);

    // panel budget -> 4 with a partial flag in the CSV
    const fs::path cfg4 = dir / "budget.cfg";
    write_file(cfg4, "[integrate]\npolynomial = " + (kFixtures / "x2y.poly").string() +
                         "\nkappa = 1\nlambda = 5000\nmax_panels = 64\nthreads = 1\n");
    CHECK(run_command("integrate", cfg4.string(), opt) == 4);
    CHECK(read_file(dir / "integrate.csv").find("partial=1") != std::string::npos);

    // unknown command -> 3
    CHECK(run_command("frobnicate", cfg3.string(), opt) == 3);
}

TEST_CASE("decay runner is byte-deterministic across runs and threads") {
    const fs::path dir = fresh_dir("decay");
    const fs::path cfg = dir / "decay.cfg";
    write_file(cfg, "[decay]\npolynomial = " + (kFixtures / "x2y.poly").string() +
                        "\nkappa = 1\nd = 3\nlambda_min = 10\nlambda_max = 200\n"
                        "lambda_points = 8\nseed = 7\nthreads = 1\n");
    RunOptions opt;
    opt.out_dir = dir.string();
    REQUIRE(run_command("decay", cfg.string(), opt) == 0);
    const std::string first = read_file(dir / "decay.csv");
    CHECK(first.find("lambda,abs_I,err_est,nd_norm,panels") == 0);

    REQUIRE(run_command("decay", cfg.string(), opt) == 0);
    CHECK(read_file(dir / "decay.csv") == first);

    RunOptions opt3 = opt;
    opt3.threads = 3;
    REQUIRE(run_command("decay", cfg.string(), opt3) == 0);
    CHECK(read_file(dir / "decay.csv") == first);

    // --seed overrides the config seed and lands in the metadata line
    RunOptions opt_seed = opt;
    opt_seed.seed = 99;
    REQUIRE(run_command("decay", cfg.string(), opt_seed) == 0);
    CHECK(read_file(dir / "decay.csv").find("# seed=99") != std::string::npos);
}

TEST_CASE("sublevel runner") {
    const fs::path dir = fresh_dir("sublevel");
    const fs::path cfg = dir / "sub.cfg";
    write_file(cfg, "[sublevel]\npolynomial = " + (kFixtures / "q_x2y.poly").string() +
                        "\nepsilons = 0.1 0.01 0.001\nmethod = grid\nsamples = 250000\nseed = 3\n");
    RunOptions opt;
    opt.out_dir = dir.string();
    CHECK(run_command("sublevel", cfg.string(), opt) == 0);
    const std::string csv = read_file(dir / "sublevel.csv");
    CHECK(csv.find("epsilon,measure,stderr,method,samples") == 0);
    CHECK(csv.find("grid") != std::string::npos);

    // byte-identical rerun
    const std::string again = (run_command("sublevel", cfg.string(), opt),
                               read_file(dir / "sublevel.csv"));
    CHECK(again == csv);

    // monte carlo emits a nonzero stderr column
    const fs::path cfg_mc = dir / "sub_mc.cfg";
    write_file(cfg_mc, "[sublevel]\npolynomial = " + (kFixtures / "q_x2y.poly").string() +
                           "\nepsilons = 0.01\nmethod = monte_carlo\nsamples = 50000\nseed = 3\n");
    CHECK(run_command("sublevel", cfg_mc.string(), opt) == 0);
}

TEST_CASE("q-poly runner emits the symbolic square") {
    const fs::path dir = fresh_dir("qpoly");
    const fs::path cfg = dir / "q.cfg";
    write_file(cfg, "[q-poly]\npolynomial = " + (kFixtures / "p4_x2x1sqy1.poly").string() +
                        "\nd = 3\n");
    RunOptions opt;
    opt.out_dir = dir.string();
    CHECK(run_command("q-poly", cfg.string(), opt) == 0);
    // Q(x2, y2) = x2^2 / 2
    const std::string out = read_file(dir / "q_poly.poly");
    CHECK(out.find("2 0 : 0.5") != std::string::npos);
}

TEST_CASE("normalize runner") {
    const fs::path dir = fresh_dir("normalize");
    const fs::path cfg = dir / "n.cfg";
    write_file(cfg, "[normalize]\nprojections = " + (kFixtures / "skew_k1.proj").string() + "\n");
    RunOptions opt;
    opt.out_dir = dir.string();
    CHECK(run_command("normalize", cfg.string(), opt) == 0);
    const std::string out = read_file(dir / "normalize.out");
    CHECK(out.find("T_domain") != std::string::npos);
    CHECK(out.find("0.5") != std::string::npos);
}

TEST_CASE("counterexample runner flatness") {
    const fs::path dir = fresh_dir("cex");
    const fs::path cfg = dir / "c.cfg";
    write_file(cfg, "[counterexample]\nkappa = 1\nd = 2\nseed = 11\nlambdas = 10 100\n"
                    "grid_n = 512\nthreads = 1\n");
    RunOptions opt;
    opt.out_dir = dir.string();
    CHECK(run_command("counterexample", cfg.string(), opt) == 0);
    const std::string csv = read_file(dir / "counterexample.csv");
    CHECK(csv.find("lambda,abs_I,err_est,nd_norm,panels") == 0);
    CHECK(fs::exists(dir / "f1.grid"));
    CHECK(fs::exists(dir / "f3.grid"));

    // grid files parse back
    const GridFunction f1 = read_grid_function_file((dir / "f1.grid").string());
    CHECK(f1.dim() == 1);
    CHECK(f1.samples_per_axis() == 512);
}

TEST_CASE("lemma runners") {
    const fs::path dir = fresh_dir("lemmas");
    RunOptions opt;
    opt.out_dir = dir.string();

    const fs::path cfg_f = dir / "f.cfg";
    write_file(cfg_f, "[lemma-frust]\nn = 128\nD = 1\nR = 0.25\nseed = 5\n");
    CHECK(run_command("lemma-frust", cfg_f.string(), opt) == 0);
    CHECK(read_file(dir / "lemma_frust.csv").find("x0,x0p") == 0);
    CHECK(fs::exists(dir / "frust_E.set"));

    const fs::path cfg_c = dir / "c.cfg";
    write_file(cfg_c, "[lemma-cousin]\nn = 128\nD = 1\nd = 2\nseed = 5\n");
    CHECK(run_command("lemma-cousin", cfg_c.string(), opt) == 0);
    const std::string csv = read_file(dir / "lemma_cousin.csv");
    CHECK(csv.find("measure_E,measure_E1") == 0);

    // determinism
    const std::string first = read_file(dir / "lemma_frust.csv");
    CHECK(run_command("lemma-frust", cfg_f.string(), opt) == 0);
    CHECK(read_file(dir / "lemma_frust.csv") == first);
}

TEST_CASE("seminorm-const runner") {
    const fs::path dir = fresh_dir("seminorm");
    const fs::path cfg = dir / "s.cfg";
    write_file(cfg, "[seminorm-const]\nd = 2\nsamples = 500\nseed = 9\n");
    RunOptions opt;
    opt.out_dir = dir.string();
    CHECK(run_command("seminorm-const", cfg.string(), opt) == 0);
    CHECK(read_file(dir / "seminorm_const.csv").find("d,samples,seed,c_hat") == 0);
    CHECK(fs::exists(dir / "worst_case.poly"));
}
