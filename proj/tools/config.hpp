#pragma once

#include "laxscatter/lax.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace laxscatter::cli {

struct PotentialConfig {
    PotentialKind kind = PotentialKind::bump;
    cplx amplitude{0.05, 0.0};
    double width = 2.0;
    double center = 0.0;
    std::optional<std::pair<double, double>> mollify;  // plateau, edge
    std::string csv;  // overrides the analytic profile when set
};

struct RunConfig {
    std::string command;
    double L = 16;
    int n = 1024;
    std::vector<double> k{2.0};
    bool k_given = false;
    std::vector<double> s{-0.1, -0.25, -0.4};
    std::optional<double> tol;
    std::string out = ".";
    std::uint64_t seed = 1;

    PotentialConfig q;
    std::optional<PotentialConfig> r;  // conj(q) when absent
    std::string spec_file;
    int random_n = 0;  // > 0 selects a seeded random general spec
    double random_amplitude = 0.1;

    double k0 = 1.0;
    int n_k = 24;
    double dt = 1e-3;
    double t_end = 1.0;
    int stride = 100;
    bool apriori = false;
    double plateau = 10, edge = 13;
    double p = 4;
    int directions = 3;
};

// Merges a JSON config file into cfg. Unknown keys and type mismatches raise InputError
// naming the offending field.
void load_config_file(const std::string& path, RunConfig& cfg);

SampledField make_potential(const PotentialConfig& pc, const GridSpec& grid);

// General spec file: {"omegas": [[re, im], ...], "U0": rows of entries, each entry a list of
// {"exponents": [...], "coefficient": [re, im]}, "fields": [csv path or potential object, ...]}.
LaxSpec load_spec_file(const std::string& path, const GridSpec& grid, double k);

// Validates the merged config; takes k from the spec file when none was given.
void resolve(RunConfig& cfg);

// The operator selected by the config at spectral parameter k.
LaxSpec build_spec(const RunConfig& cfg, double k);

// q for the qdNLS commands (energy, evolve, norms).
SampledField primary_field(const RunConfig& cfg);

}  // namespace laxscatter::cli
