#include <iostream>

#include <CLI11.hpp>

#include "motivic/cli.hpp"

using namespace motivic;

int main(int argc, char** argv) {
    CLI::App app{"motivic: period, L-value and representation checks"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opt;
    app.add_option("--precision-bits", opt.bits, "working precision in bits");
    app.add_option("--terms", opt.terms, "number of Dirichlet coefficients (default: from the precision)");
    app.add_option("--height-bound", opt.height_bound, "height bound for rational recognition");
    app.add_option("--fixtures", opt.fixtures, "fixture file or directory (default: $MOTIVIC_FIXTURES or bundled)");
    app.add_option("--cache", opt.cache_dir, "cache directory");
    app.add_flag("--json", opt.json, "JSON output");
    app.add_flag("--timing", opt.timing, "include wall times in reports");

    std::string label, check_id, chain = "main", lambda_str;
    LValueRequest lv;
    long k = 2;
    std::optional<long> m;
    bool pk = false, packet = false, sheaves = false;

    auto* periods = app.add_subcommand("periods", "period lattices of a fixture curve");
    periods->add_option("label", label)->required();

    auto* lvalue = app.add_subcommand("lvalue", "L-value or derivative of a curve's L-function");
    lvalue->add_option("label", lv.label)->required();
    lvalue->add_option("--kind", lv.kind, "spin | asai | ressym2 | sym2ind | adjoint")->required();
    lvalue->add_option("--s", lv.s, "real evaluation point")->required();
    lvalue->add_flag("--derivative", lv.derivative, "derivative order (repeat for higher order)");

    auto* verify = app.add_subcommand("verify", "run checks: all, or an id such as asai-cw-ratio:Qi-65a");
    verify->add_option("check", check_id)->required();

    auto* predict = app.add_subcommand("predict", "predicted regulator pairings (emitted, not asserted)");
    predict->add_option("label", label)->required();

    auto* reps = app.add_subcommand("reps", "GSp4(R) representation data for a Harish-Chandra parameter");
    reps->add_option("--lambda", lambda_str, "l1,l2")->required();
    reps->add_option("--m", m, "central character parity (default: the one allowed by lambda)");
    auto* g = reps->add_option_group("mode");
    g->add_flag("--pk", pk, "Hom table of the (p,K)-cohomology");
    g->add_flag("--packet", packet, "L-packet and Sp4 restriction");
    g->add_flag("--sheaves", sheaves, "automorphic vector bundle weights");
    g->require_option(0, 1);

    auto* pcalc = app.add_subcommand("pcalc", "period-calculus proof chains");
    pcalc->add_option("--chain", chain, "main | whittaker | bianchi | bianchi-dual | asai-spin");
    pcalc->add_option("--k", k, "even weight");

    CLI11_PARSE(app, argc, argv);

    try {
        CliContext ctx(opt);
        if (*periods) return cmd_periods(ctx, label, std::cout);
        if (*lvalue) return cmd_lvalue(ctx, lv, std::cout);
        if (*verify) return cmd_verify(ctx, check_id, std::cout);
        if (*predict) return cmd_predict(ctx, label, std::cout);
        if (*reps) {
            auto comma = lambda_str.find(',');
            if (comma == std::string::npos) throw CliError("--lambda expects l1,l2");
            Weight2 lam{std::stol(lambda_str.substr(0, comma)), std::stol(lambda_str.substr(comma + 1))};
            RepsMode mode = pk ? RepsMode::PK : packet ? RepsMode::Packet : sheaves ? RepsMode::Sheaves : RepsMode::Summary;
            return cmd_reps(ctx, lam, m, mode, std::cout);
        }
        if (*pcalc) return cmd_pcalc(ctx, chain, k, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
