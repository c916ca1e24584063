#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "cli.hpp"

using holomnum::SumAlgorithm;
namespace cli = holomnum::cli;

int main(int argc, char** argv) {
    CLI::App app{"Rigorous evaluation of D-finite functions"};
    app.require_subcommand(1);

    cli::Request req;
    req.max_retries = holomnum::max_retries_from_env(8);
    std::string format = "text";
    std::string algorithm = "auto";
    const std::map<std::string, SumAlgorithm> algorithms{
        {"auto", SumAlgorithm::Auto}, {"naive", SumAlgorithm::Naive}, {"binsplit", SumAlgorithm::BinarySplitting}};

    auto common = [&](CLI::App* sub) {
        sub->add_option("--op", req.op, "differential operator in x and Dx, e.g. \"x*Dx^2 + Dx - x\"")->required();
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto numeric = [&](CLI::App* sub) {
        sub->add_option("--path", req.path, "comma-separated path vertices, e.g. \"0,1/2+i,1\"")->required();
        sub->add_option("--eps", req.eps, "target accuracy (read exactly)");
        sub->add_option("--algorithm", algorithm, "series summation algorithm")
            ->check(CLI::IsMember({"auto", "naive", "binsplit"}));
    };

    auto* eval = app.add_subcommand("eval", "value of a solution at the end of a path");
    common(eval);
    numeric(eval);
    eval->add_option("--ini", req.ini, "initial values in the canonical basis at the start, e.g. \"-1, log(2)-euler_gamma\"")
        ->required();

    auto* transition = app.add_subcommand("transition", "transition matrix along a path");
    common(transition);
    numeric(transition);

    auto* local_basis = app.add_subcommand("local-basis", "distinguished monomials of the canonical local basis");
    common(local_basis);
    local_basis->add_option("--point", req.point, "expansion point (rational, Gaussian, or alg(...))");

    auto* singularities = app.add_subcommand("singularities", "singular points with their classification");
    common(singularities);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    if (eval->parsed()) req.command = cli::Command::Eval;
    else if (transition->parsed()) req.command = cli::Command::Transition;
    else if (local_basis->parsed()) req.command = cli::Command::LocalBasis;
    else req.command = cli::Command::Singularities;
    req.format = format == "json" ? cli::Format::Json : cli::Format::Text;
    req.algorithm = algorithms.at(algorithm);
    return cli::run(req, std::cout, std::cerr);
}
