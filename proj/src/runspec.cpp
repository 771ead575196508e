#include "fracrd/runspec.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace fracrd {

namespace {

using json = nlohmann::json;

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

const json* child(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) throw ConfigError(path, "expected an object");
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const std::string& path, const char* key, std::optional<double> fallback) {
    const json* v = child(obj, path, key);
    const std::string full = join(path, key);
    if (v == nullptr) {
        if (fallback) return *fallback;
        throw ConfigError(full, "missing required number");
    }
    if (!v->is_number()) throw ConfigError(full, "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) throw ConfigError(full, "must be finite");
    return x;
}

int integer(const json& obj, const std::string& path, const char* key, std::optional<int> fallback) {
    const json* v = child(obj, path, key);
    const std::string full = join(path, key);
    if (v == nullptr) {
        if (fallback) return *fallback;
        throw ConfigError(full, "missing required integer");
    }
    if (!v->is_number_integer()) throw ConfigError(full, "expected an integer");
    return v->get<int>();
}

bool boolean(const json& obj, const std::string& path, const char* key, bool fallback) {
    const json* v = child(obj, path, key);
    if (v == nullptr) return fallback;
    if (!v->is_boolean()) throw ConfigError(join(path, key), "expected true or false");
    return v->get<bool>();
}

std::string text(const json& obj, const std::string& path, const char* key, const std::string& fallback) {
    const json* v = child(obj, path, key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) throw ConfigError(join(path, key), "expected a string");
    return v->get<std::string>();
}

const json& section(const json& doc, const char* key) {
    static const json empty = json::object();
    const json* s = child(doc, "", key);
    if (s == nullptr) return empty;
    if (!s->is_object()) throw ConfigError(key, "expected an object");
    return *s;
}

// Reruns a validate() that reports "section.field ..." and rethrows it as a
// ConfigError carrying that path.
void with_path(const std::function<void()>& validate) {
    try {
        validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const ParameterError& e) {
        std::string msg = e.what();
        const auto sp = msg.find(' ');
        const std::string path = msg.substr(0, sp);
        throw ConfigError(path, sp == std::string::npos ? "invalid" : msg.substr(sp + 1));
    }
}

ProfileSpec parse_profile(const json& obj, const std::string& path) {
    if (!obj.is_object()) throw ConfigError(path, "expected an object");
    ProfileSpec p;
    p.kind = text(obj, path, "profile", "");
    if (p.kind == "single_mode") {
        p.k = integer(obj, path, "k", 1);
        p.amplitude = number(obj, path, "amplitude", 1.0);
        p.offset = number(obj, path, "offset", 0.0);
        if (p.k < 0) throw ConfigError(join(path, "k"), "must be >= 0");
    } else if (p.kind == "bump") {
        p.center = number(obj, path, "center", std::nullopt);
        p.width = number(obj, path, "width", std::nullopt);
        p.height = number(obj, path, "height", 1.0);
        if (!(p.width > 0)) throw ConfigError(join(path, "width"), "must be > 0");
        if (!(p.height > 0)) throw ConfigError(join(path, "height"), "must be > 0");
    } else if (p.kind == "constant") {
        p.c = number(obj, path, "c", std::nullopt);
        if (!(p.c > 0)) throw ConfigError(join(path, "c"), "must be > 0 (initial data may not vanish identically)");
    } else if (p.kind == "random") {
        if (const json* s = child(obj, path, "seed")) {
            if (!s->is_number_unsigned() && !(s->is_number_integer() && s->get<long long>() >= 0)) {
                throw ConfigError(join(path, "seed"), "expected a nonnegative integer");
            }
            p.seed = s->get<std::uint64_t>();
        }
        p.Lambda = number(obj, path, "Lambda", 1.0);
        if (!(p.Lambda > 0)) throw ConfigError(join(path, "Lambda"), "must be > 0");
    } else {
        throw ConfigError(join(path, "profile"),
                          "expected one of single_mode, bump, constant, random");
    }
    return p;
}

// Replaces the number at a dotted path inside a JSON document.
void set_path(json& doc, const std::string& dotted, double value) {
    json* node = &doc;
    std::stringstream ss(dotted);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw ConfigError("sweep.grid", "empty parameter path");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!node->is_object()) throw ConfigError("sweep.grid." + dotted, "path does not name a config field");
        node = &(*node)[parts[i]];
    }
    if (!node->is_object()) throw ConfigError("sweep.grid." + dotted, "path does not name a config field");
    const json* existing = node->contains(parts.back()) ? &(*node)[parts.back()] : nullptr;
    if (existing != nullptr && existing->is_number_integer() && std::floor(value) == value) {
        (*node)[parts.back()] = static_cast<long long>(value);
    } else {
        (*node)[parts.back()] = value;
    }
}

}  // namespace

RunSpec parse_runspec(const json& doc) {
    if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
    RunSpec s;
    s.raw = doc;

    const json& dom = section(doc, "domain");
    s.domain.length = number(dom, "domain", "length", 1.0);
    s.domain.n_modes = integer(dom, "domain", "n_modes", 256);
    const std::string bc = text(dom, "domain", "boundary", "neumann");
    if (bc == "dirichlet") {
        s.domain.boundary = Boundary::dirichlet;
    } else if (bc == "neumann") {
        s.domain.boundary = Boundary::neumann;
    } else {
        throw ConfigError("domain.boundary", "expected dirichlet or neumann");
    }
    const std::string ext = text(dom, "domain", "exterior", "boundary");
    if (ext == "boundary") {
        s.domain.exterior = Exterior::boundary;
    } else if (ext == "complement") {
        s.domain.exterior = Exterior::complement;
    } else {
        throw ConfigError("domain.exterior", "expected boundary or complement");
    }
    if (!(s.domain.length > 0)) throw ConfigError("domain.length", "must be > 0");
    if (s.domain.n_modes < 4) throw ConfigError("domain.n_modes", "must be >= 4");

    const json& kin = section(doc, "kinetics");
    s.kinetics.alpha1 = number(kin, "kinetics", "alpha1", std::nullopt);
    s.kinetics.alpha2 = number(kin, "kinetics", "alpha2", std::nullopt);
    s.kinetics.beta1 = number(kin, "kinetics", "beta1", std::nullopt);
    s.kinetics.beta2 = number(kin, "kinetics", "beta2", std::nullopt);
    s.kinetics.k_f = number(kin, "kinetics", "k_f", 1.0);
    s.kinetics.k_b = number(kin, "kinetics", "k_b", 1.0);
    with_path([&] { s.kinetics.validate(); });

    const json& dif = section(doc, "diffusion");
    s.diffusion.d_u = number(dif, "diffusion", "d_u", 1.0);
    s.diffusion.d_v = number(dif, "diffusion", "d_v", 1.0);
    s.diffusion.sigma1 = number(dif, "diffusion", "sigma1", 0.5);
    s.diffusion.sigma2 = number(dif, "diffusion", "sigma2", 0.5);
    s.diffusion.rho = number(dif, "diffusion", "rho", 1.0);
    with_path([&] { s.diffusion.validate(); });

    const json& init = section(doc, "initial");
    const json* iu = child(init, "initial", "u");
    const json* iv = child(init, "initial", "v");
    if (iu == nullptr) throw ConfigError("initial.u", "missing initial profile");
    if (iv == nullptr) throw ConfigError("initial.v", "missing initial profile");
    s.u = parse_profile(*iu, "initial.u");
    s.v = parse_profile(*iv, "initial.v");

    const json& sol = section(doc, "solver");
    const std::string scheme = text(sol, "solver", "scheme", "L1_IMEX");
    if (scheme == "L1_IMEX") {
        s.solver.scheme = Scheme::l1_imex;
    } else if (scheme == "ML_MILD") {
        s.solver.scheme = Scheme::ml_mild;
    } else {
        throw ConfigError("solver.scheme", "expected L1_IMEX or ML_MILD");
    }
    s.solver.dt = number(sol, "solver", "dt", std::nullopt);
    s.solver.t_end = number(sol, "solver", "t_end", std::nullopt);
    s.solver.blowup_threshold = number(sol, "solver", "blowup_threshold", 1e8);
    s.solver.growth_factor = number(sol, "solver", "growth_factor", 10.0);
    s.solver.growth_window = integer(sol, "solver", "growth_window", 10);
    s.solver.snapshot_stride = integer(sol, "solver", "snapshot_stride", 0);
    s.solver.clamp_tol = number(sol, "solver", "clamp_tol", 1e-12);
    s.solver.lyapunov_p = number(sol, "solver", "lyapunov_p", 2.0);
    with_path([&] { s.solver.validate(); });

    const json& out = section(doc, "outputs");
    s.outputs.dir = text(out, "outputs", "dir", "out");
    s.outputs.csv = text(out, "outputs", "csv", "diagnostics.csv");
    s.outputs.plot = boolean(out, "outputs", "plot", false);
    s.outputs.snapshots = boolean(out, "outputs", "snapshots", false);

    const json& conv = section(doc, "converge");
    if (const json* d = child(conv, "converge", "dts")) {
        if (!d->is_array()) throw ConfigError("converge.dts", "expected an array of numbers");
        s.converge.dts.clear();
        for (const auto& x : *d) {
            if (!x.is_number()) throw ConfigError("converge.dts", "expected an array of numbers");
            s.converge.dts.push_back(x.get<double>());
        }
    }
    s.converge.mode = integer(conv, "converge", "mode", 0);
    s.converge.amplitude = number(conv, "converge", "amplitude", 1.0);

    const json& ver = section(doc, "verify");
    s.verify.random_fields = integer(ver, "verify", "random_fields", 20);
    s.verify.random_tuples = integer(ver, "verify", "random_tuples", 10000);
    s.verify.convexity_paths = integer(ver, "verify", "convexity_paths", 10);
    s.verify.corrupt = boolean(ver, "verify", "corrupt", false);

    if (const json* sd = child(doc, "", "seed")) {
        if (!sd->is_number_integer() || sd->get<long long>() < 0) throw ConfigError("seed", "expected a nonnegative integer");
        s.seed = sd->get<std::uint64_t>();
    }

    const json& sw = section(doc, "sweep");
    if (const json* grid = child(sw, "sweep", "grid")) {
        if (!grid->is_object()) throw ConfigError("sweep.grid", "expected an object of path -> [values]");
        for (const auto& [key, vals] : grid->items()) {
            const std::string path = "sweep.grid." + key;
            if (!vals.is_array() || vals.empty()) throw ConfigError(path, "expected a nonempty array of numbers");
            std::vector<double> xs;
            for (const auto& x : vals) {
                if (!x.is_number()) throw ConfigError(path, "expected a nonempty array of numbers");
                xs.push_back(x.get<double>());
            }
            s.sweep.emplace_back(key, std::move(xs));
        }
    }
    return s;
}

RunSpec load_runspec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path, std::string("malformed JSON: ") + e.what());
    }
    return parse_runspec(doc);
}

std::string RunSpec::hash() const {
    // 64-bit FNV-1a of the canonical dump.
    const std::string text = raw.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Field make_profile(const ProfileSpec& p, const Domain1D& dom, std::uint64_t fallback_seed) {
    const double L = dom.length;
    if (p.kind == "single_mode") {
        const bool dirichlet = dom.boundary == Boundary::dirichlet;
        return Field::sample(dom, [&](double x) {
            const double arg = p.k * std::numbers::pi * x / L;
            return p.offset + p.amplitude * (dirichlet ? std::sin(arg) : std::cos(arg));
        });
    }
    if (p.kind == "bump") {
        return Field::sample(dom, [&](double x) {
            const double z = (x - p.center * L) / (p.width * L);
            return p.height * std::exp(-z * z);
        });
    }
    if (p.kind == "constant") {
        return Field::sample(dom, [&](double) { return p.c; });
    }
    if (p.kind == "random") {
        std::mt19937_64 rng(p.seed.value_or(fallback_seed));
        return random_nonnegative_field(dom, rng, p.Lambda);
    }
    throw ParameterError("make_profile: unknown profile kind " + p.kind);
}

std::vector<std::pair<std::vector<double>, RunSpec>> expand_sweep(const RunSpec& spec) {
    std::vector<std::pair<std::vector<double>, RunSpec>> out;
    if (spec.sweep.empty()) {
        RunSpec copy = spec;
        out.emplace_back(std::vector<double>{}, std::move(copy));
        return out;
    }
    std::vector<std::size_t> idx(spec.sweep.size(), 0);
    while (true) {
        json doc = spec.raw;
        doc.erase("sweep");
        std::vector<double> point;
        for (std::size_t a = 0; a < idx.size(); ++a) {
            const double x = spec.sweep[a].second[idx[a]];
            set_path(doc, spec.sweep[a].first, x);
            point.push_back(x);
        }
        RunSpec r = parse_runspec(doc);
        // Command-line overrides live on spec, not in raw.
        r.seed = spec.seed;
        r.outputs = spec.outputs;
        out.emplace_back(std::move(point), std::move(r));
        // Advance the last axis fastest.
        std::size_t a = idx.size();
        while (a > 0) {
            --a;
            if (++idx[a] < spec.sweep[a].second.size()) break;
            idx[a] = 0;
            if (a == 0) return out;
        }
    }
}

SuiteConfig suite_config(const RunSpec& spec) {
    SuiteConfig c;
    c.seed = spec.seed;
    c.domain = spec.domain;
    c.diffusion = spec.diffusion;
    c.kinetics = spec.kinetics;
    c.solver = spec.solver;
    c.initial = std::make_pair(make_profile(spec.u, spec.domain, spec.seed),
                               make_profile(spec.v, spec.domain, spec.seed + 1));
    c.random_fields = spec.verify.random_fields;
    c.random_tuples = spec.verify.random_tuples;
    c.convexity_paths = spec.verify.convexity_paths;
    c.corrupt = spec.verify.corrupt;
    c.config_hash = spec.hash();
    return c;
}

}  // namespace fracrd
