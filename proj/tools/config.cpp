#include "config.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>

namespace laxscatter::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) fail(where, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(where + "." + it.key(), "unknown key");
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) fail(where, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<int>();
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

cplx complex_value(const json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(where, "expected a number or [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array() || j.empty()) fail(where, "expected a number or a non-empty array of numbers");
    std::vector<double> v;
    for (size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

json parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("cannot read " + path);
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": malformed JSON (" + e.what() + ")");
    }
}

PotentialConfig parse_potential(const json& j, const std::string& where, const std::filesystem::path& base) {
    check_keys(j, where, {"kind", "amplitude", "width", "center", "mollify", "csv"});
    PotentialConfig pc;
    if (j.contains("kind")) {
        try {
            pc.kind = parse_potential_kind(text(j["kind"], where + ".kind"));
        } catch (const InputError& e) {
            fail(where + ".kind", e.what());
        }
    }
    if (j.contains("amplitude")) pc.amplitude = complex_value(j["amplitude"], where + ".amplitude");
    if (j.contains("width")) pc.width = number(j["width"], where + ".width");
    if (j.contains("center")) pc.center = number(j["center"], where + ".center");
    if (j.contains("mollify")) {
        const auto v = number_list(j["mollify"], where + ".mollify");
        if (v.size() != 2 || !(0 <= v[0] && v[0] < v[1])) fail(where + ".mollify", "expected [plateau, edge] with 0 <= plateau < edge");
        pc.mollify = std::make_pair(v[0], v[1]);
    }
    if (j.contains("csv")) pc.csv = (base / text(j["csv"], where + ".csv")).string();
    if (!(pc.width > 0)) fail(where + ".width", "must be positive");
    return pc;
}

}  // namespace

void load_config_file(const std::string& path, RunConfig& cfg) {
    const json j = parse_file(path);
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    check_keys(j, "config", {"grid", "k", "s", "tol", "out", "seed", "potential", "r", "spec", "random_spec", "k0", "n_k",
                             "dt", "t_end", "stride", "apriori", "mollifier", "p", "directions"});
    if (j.contains("grid")) {
        check_keys(j["grid"], "config.grid", {"L", "n"});
        if (j["grid"].contains("L")) cfg.L = number(j["grid"]["L"], "config.grid.L");
        if (j["grid"].contains("n")) cfg.n = integer(j["grid"]["n"], "config.grid.n");
    }
    if (j.contains("k")) {
        cfg.k = number_list(j["k"], "config.k");
        cfg.k_given = true;
    }
    if (j.contains("s")) cfg.s = number_list(j["s"], "config.s");
    if (j.contains("tol")) cfg.tol = number(j["tol"], "config.tol");
    if (j.contains("out")) cfg.out = text(j["out"], "config.out");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) fail("config.seed", "expected a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("potential")) cfg.q = parse_potential(j["potential"], "config.potential", base);
    if (j.contains("r")) cfg.r = parse_potential(j["r"], "config.r", base);
    if (j.contains("spec")) cfg.spec_file = (base / text(j["spec"], "config.spec")).string();
    if (j.contains("random_spec")) {
        check_keys(j["random_spec"], "config.random_spec", {"n", "amplitude"});
        cfg.random_n = j["random_spec"].contains("n") ? integer(j["random_spec"]["n"], "config.random_spec.n") : 4;
        if (j["random_spec"].contains("amplitude"))
            cfg.random_amplitude = number(j["random_spec"]["amplitude"], "config.random_spec.amplitude");
        if (cfg.random_n < 2) fail("config.random_spec.n", "must be at least 2");
    }
    if (j.contains("k0")) cfg.k0 = number(j["k0"], "config.k0");
    if (j.contains("n_k")) cfg.n_k = integer(j["n_k"], "config.n_k");
    if (j.contains("dt")) cfg.dt = number(j["dt"], "config.dt");
    if (j.contains("t_end")) cfg.t_end = number(j["t_end"], "config.t_end");
    if (j.contains("stride")) cfg.stride = integer(j["stride"], "config.stride");
    if (j.contains("apriori")) {
        if (!j["apriori"].is_boolean()) fail("config.apriori", "expected true or false");
        cfg.apriori = j["apriori"].get<bool>();
    }
    if (j.contains("mollifier")) {
        const auto v = number_list(j["mollifier"], "config.mollifier");
        if (v.size() != 2 || !(0 <= v[0] && v[0] < v[1])) fail("config.mollifier", "expected [plateau, edge]");
        cfg.plateau = v[0];
        cfg.edge = v[1];
    }
    if (j.contains("p")) cfg.p = number(j["p"], "config.p");
    if (j.contains("directions")) cfg.directions = integer(j["directions"], "config.directions");
    if (!cfg.spec_file.empty() && cfg.random_n > 0) fail("config", "spec and random_spec are mutually exclusive");
}

SampledField make_potential(const PotentialConfig& pc, const GridSpec& grid) {
    SampledField f;
    if (!pc.csv.empty()) {
        f = read_field_csv(pc.csv);
        if (f.grid != grid) throw InputError(pc.csv + ": grid differs from the configured grid");
    } else {
        f = standard_potential(pc.kind, pc.amplitude, pc.width, pc.center, grid);
    }
    if (pc.mollify) f = mollify(f, pc.mollify->first, pc.mollify->second);
    return f;
}

LaxSpec load_spec_file(const std::string& path, const GridSpec& grid, double k) {
    const json j = parse_file(path);
    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    check_keys(j, "spec", {"omegas", "U0", "fields", "k"});
    for (const char* key : {"omegas", "U0", "fields"})
        if (!j.contains(key)) fail(std::string("spec.") + key, "missing");
    if (!j["omegas"].is_array()) fail("spec.omegas", "expected an array");
    std::vector<cplx> omegas;
    for (size_t i = 0; i < j["omegas"].size(); ++i)
        omegas.push_back(complex_value(j["omegas"][i], "spec.omegas[" + std::to_string(i) + "]"));

    if (!j["fields"].is_array() || j["fields"].empty()) fail("spec.fields", "expected a non-empty array");
    std::vector<SampledField> u;
    for (size_t c = 0; c < j["fields"].size(); ++c) {
        const std::string where = "spec.fields[" + std::to_string(c) + "]";
        const json& fj = j["fields"][c];
        PotentialConfig pc;
        if (fj.is_string())
            pc.csv = (base / fj.get<std::string>()).string();
        else
            pc = parse_potential(fj, where, base);
        u.push_back(make_potential(pc, grid));
    }
    const int m = static_cast<int>(u.size());

    const json& rows = j["U0"];
    if (!rows.is_array() || rows.size() != omegas.size()) fail("spec.U0", "expected one row per omega");
    PotentialMatrix U0(rows.size());
    for (size_t a = 0; a < rows.size(); ++a) {
        const std::string wa = "spec.U0[" + std::to_string(a) + "]";
        if (!rows[a].is_array() || rows[a].size() != omegas.size()) fail(wa, "expected one entry per omega");
        for (size_t b = 0; b < rows[a].size(); ++b) {
            const std::string wb = wa + "[" + std::to_string(b) + "]";
            const json& entry = rows[a][b];
            if (!entry.is_array()) fail(wb, "expected a list of monomials");
            Polynomial poly;
            for (size_t t = 0; t < entry.size(); ++t) {
                const std::string wt = wb + "[" + std::to_string(t) + "]";
                check_keys(entry[t], wt, {"exponents", "coefficient"});
                if (!entry[t].contains("exponents") || !entry[t]["exponents"].is_array())
                    fail(wt + ".exponents", "expected an array of integers");
                Monomial mono;
                for (size_t e = 0; e < entry[t]["exponents"].size(); ++e) {
                    const int ex = integer(entry[t]["exponents"][e], wt + ".exponents[" + std::to_string(e) + "]");
                    if (ex < 0) fail(wt + ".exponents", "negative exponent");
                    mono.exponents.push_back(ex);
                }
                if (static_cast<int>(mono.exponents.size()) != m) fail(wt + ".exponents", "length must equal the number of fields");
                mono.coefficient = entry[t].contains("coefficient") ? complex_value(entry[t]["coefficient"], wt + ".coefficient") : 1.0;
                poly.terms.push_back(mono);
            }
            U0[a][b] = poly;
        }
    }
    return build_general_spec(omegas, U0, u, k);
}

void resolve(RunConfig& cfg) {
    make_grid(cfg.L, cfg.n);
    if (!cfg.spec_file.empty() && !cfg.k_given) {
        const json j = parse_file(cfg.spec_file);
        if (j.is_object() && j.contains("k")) cfg.k = {number(j["k"], "spec.k")};
    }
    for (double k : cfg.k)
        if (!(k > 0)) fail("k", "must be positive");
    for (double s : cfg.s)
        if (!(s > -0.5 && s < 0)) fail("s", "must lie in (-1/2, 0)");
    if (cfg.tol && !(*cfg.tol > 0)) fail("tol", "must be positive");
    if (!(cfg.k0 > 0)) fail("k0", "must be positive");
    if (cfg.n_k < 2) fail("n_k", "must be at least 2");
    if (!(cfg.dt > 0) || !(cfg.t_end > 0)) fail("dt", "dt and t_end must be positive");
    if (cfg.stride < 1) fail("stride", "must be at least 1");
    if (!(cfg.p >= 1)) fail("p", "must be >= 1");
    if (cfg.directions < 1) fail("directions", "must be at least 1");
}

SampledField primary_field(const RunConfig& cfg) { return make_potential(cfg.q, make_grid(cfg.L, cfg.n)); }

LaxSpec build_spec(const RunConfig& cfg, double k) {
    const GridSpec grid = make_grid(cfg.L, cfg.n);
    if (!cfg.spec_file.empty()) return load_spec_file(cfg.spec_file, grid, k);
    if (cfg.random_n > 0) return random_general_spec(cfg.random_n, grid, k, cfg.random_amplitude, cfg.seed);
    const SampledField q = make_potential(cfg.q, grid);
    const SampledField r = cfg.r ? make_potential(*cfg.r, grid) : q.conj();
    return build_qdnls_spec(q, r, k);
}

}  // namespace laxscatter::cli
