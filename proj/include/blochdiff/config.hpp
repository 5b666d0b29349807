#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "blochdiff/criteria.hpp"
#include "blochdiff/errors.hpp"
#include "blochdiff/symbols.hpp"
#include "blochdiff/verify.hpp"

namespace blochdiff {

using ojson = nlohmann::ordered_json;

struct GridConfig {
    int levels = 12;
    int angular_base = 8;
    int refine = 4;
};

struct AGridConfig {
    int levels = 12;
    int angular_base = 8;
    int angular_cap = 64;
};

struct ScheduleConfig {
    long head_max = 64;
    long pow2_max = 4096;
    long pow3_max = 3072;
    std::vector<long> explicit_values; // overrides the generated schedule when set
};

struct VerifyGridConfig {
    int z_levels = 9;
    int z_angular = 4;
    int a_levels = 9;
    int a_angular = 4;
    int a_cap = 32;
    int refine = 3;
};

/// One fully-resolved run: space data, symbols, grids, schedules, seed.
struct RunConfig {
    int schema = 1;
    double alpha = 1.0;
    int m = 0;
    WeightSpec weight = WeightSpec::standard_power(1.0);
    std::string phi1_text, u1_text, phi2_text, u2_text;
    GridConfig grid;
    AGridConfig a_grid;
    ScheduleConfig schedule;
    long tail_start = 256;
    uint64_t seed = 1;
    int n_random = 8;
    OracleFamilySpec oracle;
    VerifyGridConfig verify;

    SpaceParams space() const { return SpaceParams(alpha, m, weight); }
    SymbolPair pair() const {
        return SymbolPair{parse_symbol(phi1_text), parse_symbol(u1_text), parse_symbol(phi2_text),
                          parse_symbol(u2_text)};
    }
    DiskGrid make_grid() const { return DiskGrid(grid.levels, grid.angular_base); }
    DiskGrid make_a_grid() const {
        return DiskGrid(a_grid.levels, a_grid.angular_base, a_grid.angular_cap);
    }
    std::vector<long> make_schedule() const {
        if (!schedule.explicit_values.empty()) {
            auto v = schedule.explicit_values;
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            if (v.front() < 0) throw ConfigError("n_schedule: powers must be >= 0");
            return v;
        }
        return default_n_schedule(schedule.head_max, schedule.pow2_max, schedule.pow3_max);
    }
    ReportOptions report_options() const {
        ReportOptions opt;
        opt.n_schedule = make_schedule();
        opt.tail_start = tail_start;
        opt.refine_quantities = grid.refine + 1;
        opt.refine_curves = grid.refine;
        opt.oracle = oracle;
        opt.seed = seed;
        return opt;
    }
    VerifyConfig verify_config() const {
        VerifyConfig vc;
        vc.z_levels = verify.z_levels;
        vc.z_angular = verify.z_angular;
        vc.a_levels = verify.a_levels;
        vc.a_angular = verify.a_angular;
        vc.a_cap = verify.a_cap;
        vc.refine = verify.refine;
        vc.n_schedule = make_schedule();
        vc.tail_start = tail_start;
        vc.n_random = n_random;
        vc.seed = seed;
        return vc;
    }
    void validate() const {
        if (schema != 1) throw ConfigError("unsupported schema version");
        if (grid.levels < 2 || grid.levels > 16) throw ConfigError("grid.levels out of range [2,16]");
        if (grid.angular_base < 1 || grid.angular_base > 64)
            throw ConfigError("grid.angular_base out of range [1,64]");
        if (grid.refine < 0 || grid.refine > 8) throw ConfigError("grid.refine out of range [0,8]");
        if (a_grid.levels < 2 || a_grid.levels > 16)
            throw ConfigError("a_grid.levels out of range [2,16]");
        if (a_grid.angular_base < 1 || a_grid.angular_base > 64)
            throw ConfigError("a_grid.angular_base out of range [1,64]");
        if (a_grid.angular_cap < 0) throw ConfigError("a_grid.angular_cap must be >= 0");
        if (tail_start < 1) throw ConfigError("tail_start must be >= 1");
        auto sched = make_schedule();
        if (sched.empty()) throw ConfigError("n_schedule is empty");
        if (sched.back() < tail_start)
            throw ConfigError("tail_start lies beyond the n-schedule");
        if (n_random < 0 || n_random > 64) throw ConfigError("n_random out of range [0,64]");
        space(); // alpha/m/weight constraints
        pair();  // symbol expressions parse
    }
};

namespace detail {

inline WeightSpec weight_from_json(const ojson& j) {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("weight: expected {kind: ...}");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return WeightSpec::standard_power(j.at("beta").get<double>());
    if (kind == "one") return WeightSpec::one();
    if (kind == "radial_poly")
        return WeightSpec::custom_radial(j.at("coeffs").get<std::vector<double>>());
    throw ConfigError("weight: unknown kind '" + kind + "'");
}

inline ojson weight_to_json(const WeightSpec& w) {
    ojson j;
    switch (w.kind) {
    case WeightSpec::Kind::StandardPower:
        j["kind"] = "power";
        j["beta"] = w.beta;
        break;
    case WeightSpec::Kind::ConstantOne: j["kind"] = "one"; break;
    case WeightSpec::Kind::CustomRadial:
        j["kind"] = "radial_poly";
        j["coeffs"] = w.coeffs;
        break;
    }
    return j;
}

template <typename T>
void maybe(const ojson& j, const char* key, T& into) {
    if (j.contains(key)) into = j.at(key).get<T>();
}

} // namespace detail

inline RunConfig config_from_json(const ojson& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    RunConfig c;
    detail::maybe(j, "schema", c.schema);
    for (const char* key : {"alpha", "m", "weight", "phi1", "u1", "phi2", "u2"})
        if (!j.contains(key)) throw ConfigError(std::string("config: missing field '") + key + "'");
    c.alpha = j.at("alpha").get<double>();
    c.m = j.at("m").get<int>();
    c.weight = detail::weight_from_json(j.at("weight"));
    c.phi1_text = j.at("phi1").get<std::string>();
    c.u1_text = j.at("u1").get<std::string>();
    c.phi2_text = j.at("phi2").get<std::string>();
    c.u2_text = j.at("u2").get<std::string>();
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        detail::maybe(g, "levels", c.grid.levels);
        detail::maybe(g, "angular_base", c.grid.angular_base);
        detail::maybe(g, "refine", c.grid.refine);
    }
    if (j.contains("a_grid")) {
        const auto& g = j.at("a_grid");
        detail::maybe(g, "levels", c.a_grid.levels);
        detail::maybe(g, "angular_base", c.a_grid.angular_base);
        detail::maybe(g, "angular_cap", c.a_grid.angular_cap);
    }
    if (j.contains("n_schedule")) {
        const auto& s = j.at("n_schedule");
        if (s.is_array()) {
            c.schedule.explicit_values = s.get<std::vector<long>>();
        } else {
            detail::maybe(s, "head_max", c.schedule.head_max);
            detail::maybe(s, "pow2_max", c.schedule.pow2_max);
            detail::maybe(s, "pow3_max", c.schedule.pow3_max);
        }
    }
    detail::maybe(j, "tail_start", c.tail_start);
    detail::maybe(j, "seed", c.seed);
    detail::maybe(j, "n_random", c.n_random);
    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        detail::maybe(o, "monomial_max", c.oracle.monomial_max);
        detail::maybe(o, "poly_count", c.oracle.poly_count);
        detail::maybe(o, "poly_degree", c.oracle.poly_degree);
        detail::maybe(o, "a_modulus_cap", c.oracle.a_modulus_cap);
        detail::maybe(o, "a_angles", c.oracle.a_angles);
    }
    if (j.contains("verify")) {
        const auto& v = j.at("verify");
        detail::maybe(v, "z_levels", c.verify.z_levels);
        detail::maybe(v, "z_angular", c.verify.z_angular);
        detail::maybe(v, "a_levels", c.verify.a_levels);
        detail::maybe(v, "a_angular", c.verify.a_angular);
        detail::maybe(v, "a_cap", c.verify.a_cap);
        detail::maybe(v, "refine", c.verify.refine);
    }
    c.validate();
    return c;
}

/// Fully-resolved echo; loading it back reproduces the run.
inline ojson config_to_json(const RunConfig& c) {
    ojson j;
    j["schema"] = c.schema;
    j["alpha"] = c.alpha;
    j["m"] = c.m;
    j["weight"] = detail::weight_to_json(c.weight);
    j["phi1"] = c.phi1_text;
    j["u1"] = c.u1_text;
    j["phi2"] = c.phi2_text;
    j["u2"] = c.u2_text;
    j["grid"] = ojson{{"levels", c.grid.levels},
                      {"angular_base", c.grid.angular_base},
                      {"refine", c.grid.refine}};
    j["a_grid"] = ojson{{"levels", c.a_grid.levels},
                        {"angular_base", c.a_grid.angular_base},
                        {"angular_cap", c.a_grid.angular_cap}};
    if (!c.schedule.explicit_values.empty())
        j["n_schedule"] = c.schedule.explicit_values;
    else
        j["n_schedule"] = ojson{{"head_max", c.schedule.head_max},
                                {"pow2_max", c.schedule.pow2_max},
                                {"pow3_max", c.schedule.pow3_max}};
    j["tail_start"] = c.tail_start;
    j["seed"] = c.seed;
    j["n_random"] = c.n_random;
    j["oracle"] = ojson{{"monomial_max", c.oracle.monomial_max},
                        {"poly_count", c.oracle.poly_count},
                        {"poly_degree", c.oracle.poly_degree},
                        {"a_modulus_cap", c.oracle.a_modulus_cap},
                        {"a_angles", c.oracle.a_angles}};
    j["verify"] = ojson{{"z_levels", c.verify.z_levels}, {"z_angular", c.verify.z_angular},
                        {"a_levels", c.verify.a_levels}, {"a_angular", c.verify.a_angular},
                        {"a_cap", c.verify.a_cap},       {"refine", c.verify.refine}};
    return j;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    ojson j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    return config_from_json(j);
}

/// Built-in configs mirroring the four operator-family presets.
inline RunConfig preset_config(const std::string& name) {
    RunConfig c;
    if (name == "case1") {
        c.alpha = 1.0; c.m = 0;
        c.weight = WeightSpec::standard_power(1.0);
        c.phi1_text = "mobius(0.3)";
        c.u1_text = "constant(1)";
        c.phi2_text = "scale(0.7, identity)";
        c.u2_text = "constant(1)";
    } else if (name == "case2") {
        c.alpha = 1.2; c.m = 0;
        c.weight = WeightSpec::standard_power(0.2);
        c.phi1_text = "mobius(-0.4)";
        c.u1_text = "sum(constant(1), scale(0.5, identity))";
        c.phi2_text = "compose(mobius(-0.4), scale(0.9, identity))";
        c.u2_text = "sum(constant(0.8), scale(0.25i, identity))";
    } else if (name == "case3") {
        c.alpha = 1.0; c.m = 1;
        c.weight = WeightSpec::standard_power(1.0);
        c.phi1_text = "mobius(0.5)";
        c.u1_text = "constant(1)";
        c.phi2_text = "compose(mobius(0.5), scale(0.95, identity))";
        c.u2_text = "constant(1)";
    } else if (name == "case4") {
        c.alpha = 0.8; c.m = 1;
        c.weight = WeightSpec::standard_power(0.8);
        c.phi1_text = "compose(mobius(0.3), scale(0.8, identity))";
        c.u1_text = "sum(constant(1), scale(-0.3, identity))";
        c.phi2_text = "scale(0.45, sum(identity, product(identity, identity)))";
        c.u2_text = "constant(0.9)";
    } else {
        throw ConfigError("unknown preset '" + name + "' (expected case1..case4)");
    }
    c.validate();
    return c;
}

} // namespace blochdiff
