#pragma once

// Small random generators for property tests. Each property runs a fixed
// number of cases from a fixed seed so failures reproduce.

#include "fracrd/operators.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace gen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    // Log-uniform on [a, b], a > 0.
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }

    std::vector<double> vec(int n, double a, double b) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& x : v) x = uniform(a, b);
        return v;
    }

    // Random combination of the first few eigenmodes, amplitudes ~ 1/(i+1).
    fracrd::Field smooth_field(const fracrd::Domain1D& dom, int modes = 8) {
        std::vector<double> c(static_cast<std::size_t>(dom.n_modes), 0.0);
        for (int i = 0; i < modes && i < dom.n_modes; ++i) c[static_cast<std::size_t>(i)] = uniform(-1, 1) / (1 + i);
        return fracrd::Field::from_spectral(dom, c);
    }

    // Nodal white noise; fine for round-trip checks.
    fracrd::Field noise_field(const fracrd::Domain1D& dom) {
        return fracrd::Field::from_nodal(dom, vec(dom.n_modes, -1, 1));
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

template <class Prop>
void for_all(int cases, std::uint64_t seed, Prop&& prop) {
    Gen g(seed);
    for (int i = 0; i < cases; ++i) prop(g, i);
}

}  // namespace gen
