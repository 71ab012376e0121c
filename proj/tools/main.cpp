#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ptspec/cli.hpp"

namespace {

void add_common_options(CLI::App* cmd, ptspec::RunConfig& cfg) {
    cmd->add_option("--potential", cfg.potential,
                    "Potential: builtin name (paper, zero) or an expression in x")
        ->required();
    cmd->add_option("--kmin", cfg.kmin, "Lower end of the k window")->capture_default_str();
    cmd->add_option("--kmax", cfg.kmax, "Upper end of the k window")->capture_default_str();
    cmd->add_option("--n", cfg.n_scan, "Scan points across the window")->capture_default_str();
    cmd->add_option("--tol", cfg.tol, "Integrator tolerance")->capture_default_str();
    cmd->add_option("--nodes", cfg.n_nodes, "Output grid nodes (odd)")->capture_default_str();
    cmd->add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();
    cmd->add_flag("--json", cfg.write_json, "Write JSON reports");
    cmd->add_flag("--csv", cfg.write_csv, "Write CSV grids");
    cmd->set_config("--config", "", "Read options from a key=value file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral analysis of complex Sturm-Liouville problems on [-pi, pi]"};
    app.require_subcommand(1);

    ptspec::RunConfig cfg;
    const char* names[] = {"scan", "spectrum", "modes", "basis", "completeness", "report"};
    const char* blurbs[] = {"Tabulate the characteristic function over a k window",
                            "Locate and classify the roots of the characteristic function",
                            "Export eigenfunctions, associated functions, and their norms",
                            "Build the orthonormalized xi-basis and its Gram matrix",
                            "Reconstruction-error curves with and without associated members",
                            "Aggregate spectrum, basis, and completeness diagnostics"};
    for (int i = 0; i < 6; ++i)
        add_common_options(app.add_subcommand(names[i], blurbs[i]), cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ptspec::finalize_formats(cfg);
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return ptspec::dispatch(cmd, cfg);
    } catch (const ptspec::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return ptspec::exit_code_for(err);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
}
