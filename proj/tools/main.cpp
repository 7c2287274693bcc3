#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "muhs/io.hpp"

namespace {

std::vector<int> parse_ns(const std::string& csv) {
    std::vector<int> out;
    std::istringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral solver and verification lab for the weakly "
                 "dissipative mu-Hunter-Saxton equation on the circle"};
    app.require_subcommand(1);

    muhs::io::RunOptions opts;
    std::string ns_csv = "8,16,32,64";

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", opts.config_path, "JSON config file");
        if (needs_config) c->required();
        sub->add_option("--out", opts.out_dir, "output directory (overrides config)");
        return sub;
    };

    auto* sim = add_common(app.add_subcommand("simulate", "run one simulation"), true);
    auto* inv = add_common(
        app.add_subcommand("invariants", "run and gate on the decay-law checks"), true);
    auto* chr = add_common(
        app.add_subcommand("characteristics", "co-integrate the characteristic flow"),
        true);
    chr->add_option("--seeds", opts.seeds, "number of equispaced seeds");
    auto* cnv = add_common(
        app.add_subcommand("converge", "mollified-family convergence study"), true);
    cnv->add_option("--ns", ns_csv, "comma-separated mollifier indices");
    cnv->add_option("--jobs", opts.jobs, "parallel member runs (0 = all cores)");
    auto* enb = add_common(
        app.add_subcommand("energy-balance", "mollified energy-balance residuals"),
        true);
    enb->add_option("--mollify-n", opts.mollify_n, "mollifier index");
    auto* krn = add_common(
        app.add_subcommand("kernel-check", "cross-check the three A^{-1} routes"),
        false);
    krn->add_option("--n", opts.kernel_n, "grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);  // usage errors exit with CLI11's own nonzero codes
    }

    muhs::io::Command cmd;
    if (sim->parsed()) cmd = muhs::io::Command::simulate;
    else if (inv->parsed()) cmd = muhs::io::Command::invariants;
    else if (chr->parsed()) cmd = muhs::io::Command::characteristics;
    else if (cnv->parsed()) cmd = muhs::io::Command::converge;
    else if (enb->parsed()) cmd = muhs::io::Command::energy_balance;
    else cmd = muhs::io::Command::kernel_check;

    if (cnv->parsed()) {
        try {
            opts.ns = parse_ns(ns_csv);
        } catch (const std::exception&) {
            std::cerr << "config error: --ns must be comma-separated integers\n";
            return muhs::io::kExitConfig;
        }
    }
    return muhs::io::run(cmd, opts);
}
