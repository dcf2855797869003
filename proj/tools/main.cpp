#include "commands.hpp"

#include <CLI11.hpp>

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Meshfree RBF-FD option pricer"};
    app.require_subcommand(1);

    std::string config;
    std::string out = ".";
    auto add = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config, "INI run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out, "output directory")->capture_default_str();
        return sub;
    };
    CLI::App* nodes = add("nodes", "generate a node layout");
    CLI::App* price = add("price", "price one configuration and compare with the reference");
    CLI::App* converge = add("converge", "convergence, timing and conditioning sweep over run.N");

    CLI11_PARSE(app, argc, argv);

    try {
        const mfp::cli::RunConfig cfg = mfp::cli::load_config(config);
        if (nodes->parsed()) mfp::cli::cmd_nodes(cfg, out, std::cout);
        if (price->parsed()) mfp::cli::cmd_price(cfg, out, std::cout);
        if (converge->parsed()) mfp::cli::cmd_converge(cfg, out, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
