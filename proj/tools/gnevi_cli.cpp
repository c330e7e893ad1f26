#include <iostream>

#include <CLI11.hpp>

#include "gnevi/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"generalized-game equilibria via variational inequalities"};
    app.require_subcommand(1);

    gnevi::cli::Options opts;
    auto add_common = [&](CLI::App* sub, bool needs_instance) {
        if (needs_instance)
            sub->add_option("instance", opts.instance_path, "instance file (JSON)")->required();
        sub->add_option("--grid", opts.grid, "grid points per axis");
        sub->add_option("--tol", opts.tol, "verification tolerance");
        auto* seed = sub->add_option("--seed", opts.seed, "root seed");
        sub->callback([&opts, seed] { opts.seed_set = seed->count() > 0; });
        sub->add_option("--max-iters", opts.max_iters, "iteration cap for the projection solver");
        sub->add_option("--out", opts.out_path, "report base path (writes .json and .txt)");
        sub->add_option("--format", opts.format, "stdout format: machine or human")
            ->check(CLI::IsMember({"machine", "human"}));
        sub->add_flag("--trace", opts.trace, "record solver traces in the report");
        sub->add_flag("--serial", opts.serial, "run the data-parallel kernels serially");
    };

    add_common(app.add_subcommand("classify", "mid-point/lsc/openness verdicts per sampled point"),
               true);
    add_common(app.add_subcommand("solve-vi", "solve VI(F, K) and verify maximality"), true);
    add_common(app.add_subcommand("solve-qvi", "solve QVI(F, K) and verify equilibria"), true);
    auto* verify = app.add_subcommand("verify", "check a user-supplied point");
    add_common(verify, true);
    verify->add_option("--point", opts.point, "comma-separated coordinates")->required();
    add_common(app.add_subcommand("audit", "hypothesis audit of an instance"), true);
    add_common(app.add_subcommand("reproduce-paper", "builtin fixture suites and pipeline"),
               false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    opts.command = app.get_subcommands().front()->get_name();
    return gnevi::cli::run(opts, std::cout, std::cerr);
}
