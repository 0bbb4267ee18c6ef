#include <iostream>

#include "CLI11.hpp"
#include "geoscan/cli.hpp"

int main(int argc, char** argv) {
    using namespace geoscan;
    CLI::App app{"Totally geodesic surface search in cusped hyperbolic 3-manifolds"};
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    RunConfig config;
    std::optional<int> threads;
    std::optional<int> euler_bound;
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--threshold", config.threshold_im, "imaginary-part threshold for realness")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--timeout", config.surface_timeout_s, "per-surface time limit in seconds")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--euler-bound", euler_bound, "force the |chi| bound of the scan")->check(CLI::NonNegativeNumber);
        cmd->add_option("--points", config.num_points, "limit-set sample size")->check(CLI::PositiveNumber);
        cmd->add_option("--max-word", config.max_word, "longest word in the limit-set sample")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", config.seed, "limit-set RNG seed");
        cmd->add_option("--threads", threads, "worker threads (default GEOSCAN_THREADS or all cores)")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--strict", config.strict, "exit 1 on negative verdicts");
        cmd->add_flag("--exact", config.exact, "require exact shapes and certified realness");
        cmd->add_option("--out", config.out_dir, "directory for reports, SVG and CSV files");
    };

    std::string tri, surface;
    std::optional<std::string> limit_surface;
    auto* validate = app.add_subcommand("validate", "check gluing equations and print the volume");
    validate->add_option("triangulation", tri)->required();
    add_common(validate);

    auto* check = app.add_subcommand("check", "decide one surface");
    check->add_option("triangulation", tri)->required();
    check->add_option("surface", surface, "coordinate vector file")->required();
    add_common(check);

    auto* scan = app.add_subcommand("scan", "enumerate and check all surfaces up to the Euler bound");
    scan->add_option("triangulation", tri)->required();
    add_common(scan);

    auto* limitset = app.add_subcommand("limitset", "sample and fit a limit set");
    limitset->add_option("file", tri, "generator set, or triangulation with a surface")->required();
    limitset->add_option("surface", limit_surface, "coordinate vector file");
    add_common(limitset);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }
    config.threads = resolve_threads(threads);
    config.euler_bound_override = euler_bound;

    try {
        if (*validate) return cmd_validate(tri, config, std::cout, std::cerr);
        if (*check) return cmd_check(tri, surface, config, std::cout, std::cerr);
        if (*scan) return cmd_scan(tri, config, std::cout, std::cerr);
        return cmd_limitset(tri, limit_surface, config, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInconsistent;
    }
}
