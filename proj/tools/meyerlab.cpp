// Command-line front end: meyerlab gen|check|plot --config <path> [--out <dir>] ...

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "meyerlab/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Cut-and-project model sets: generation, Meyer and return-time checks, torus diagnostics"};
    app.require_subcommand(1);
    meyerlab::CliArgs args;

    auto* gen = app.add_subcommand("gen", "generate a point set from a config");
    gen->add_option("--config", args.config, "run config (JSON)")->required();
    gen->add_option("--out", args.out, "output directory");

    auto* check = app.add_subcommand("check", "run a check and write its verdict JSON");
    check->add_option("--config", args.config, "run config (JSON)")->required();
    check->add_option("--out", args.out, "output directory");
    check->add_option("--which", args.which, "meyer|schlottmann|additivity|aa")
        ->required()
        ->check(CLI::IsMember({"meyer", "schlottmann", "additivity", "aa"}));
    check->add_option("--input", args.input, "point-set file to use instead of generating");

    auto* plot = app.add_subcommand("plot", "render an SVG from a previous output");
    plot->add_option("--config", args.config, "config whose hash is embedded");
    plot->add_option("--out", args.out, "output directory");
    plot->add_option("--kind", args.kind, "patch|returns|moduli")->required();
    plot->add_option("--input", args.input, "point set, psets.json or moduli.csv")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    args.command = app.get_subcommands().front()->get_name();
    return meyerlab::run_cli(args, std::cerr);
}
