#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace laxscatter;

int main(int argc, char** argv) {
    CLI::App app{"Jost solutions, transmission coefficients and renormalized Fredholm determinants for N x N Lax operators"};
    app.set_version_flag("--version", "laxscatter 0.1.0");

    std::string command, config_path;
    std::vector<double> k, s;
    std::optional<int> grid_n;
    std::optional<double> grid_L, tol;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;

    app.add_option("command", command, "One of: jost, transmission, det2, verify-equality, greens, gradcheck, energy, evolve, norms, full-report")
        ->required()
        ->check(CLI::IsMember(cli::command_names()));
    app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--k", k, "Spectral parameter(s)");
    app.add_option("--s", s, "Sobolev exponent(s) in (-1/2, 0)");
    app.add_option("--grid-n", grid_n, "Grid points (power of two >= 16)");
    app.add_option("--grid-L", grid_L, "Grid half-width");
    app.add_option("--tol", tol, "Tolerance for the command's pass/fail check");
    app.add_option("--out", out, "Output directory");
    app.add_option("--seed", seed, "Seed for random specs and directions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        cli::RunConfig cfg;
        cfg.command = command;
        if (!config_path.empty()) cli::load_config_file(config_path, cfg);
        if (!k.empty()) {
            cfg.k = k;
            cfg.k_given = true;
        }
        if (!s.empty()) cfg.s = s;
        if (grid_n) cfg.n = *grid_n;
        if (grid_L) cfg.L = *grid_L;
        if (tol) cfg.tol = *tol;
        if (out) cfg.out = *out;
        if (seed) cfg.seed = *seed;
        cli::resolve(cfg);
        return cli::run_command(cfg);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
