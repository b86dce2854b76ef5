#include <CLI11.hpp>
#include <cstdint>
#include <string>

#include "oscint/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"oscint - trilinear oscillatory integral experiments"};
    app.require_subcommand(1);

    const char* commands[] = {"norm",      "q-poly",        "integrate",   "decay",
                              "sublevel",  "normalize",     "counterexample",
                              "lemma-frust", "lemma-cousin", "seminorm-const"};
    const char* descriptions[] = {
        "coefficient and quotient norms of a polynomial",
        "symbolic Q(x2,y2), the squared nd norm of the frozen inner polynomial",
        "one oscillatory integral evaluation",
        "lambda sweep and decay exponent fit",
        "sublevel set measure estimates",
        "canonical coordinates for a projection triple",
        "degenerate-phase extremizers and a flatness check",
        "two-point slicing lemma on a synthetic instance",
        "joint polynomial approximation lemma on a synthetic instance",
        "sampled lower bound for the split-seminorm constant"};

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    bool verbose = false;

    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < std::size(commands); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
        sub->add_option("--config", config_path, "experiment config file")->required();
        sub->add_option("--seed", seed, "overrides the config seed")
            ->each([&seed_set](const std::string&) { seed_set = true; });
        sub->add_option("--out", out_dir, "output directory (default: .)");
        sub->add_option("--threads", threads, "worker pool size (default: hardware)");
        sub->add_flag("--verbose", verbose, "chatty progress output");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    oscint::RunOptions options;
    options.out_dir = out_dir;
    options.verbose = verbose;
    if (seed_set) options.seed = seed;
    if (threads > 0) options.threads = threads;

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i]->parsed()) return oscint::run_command(commands[i], config_path, options);
    }
    return 1;
}
