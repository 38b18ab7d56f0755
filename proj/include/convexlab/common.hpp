#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace convexlab {

inline constexpr const char* kVersion = "0.1.0";

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Mathematically meaningful negative outcomes (CLI exit code 2).
/// Usage and precondition errors stay std::invalid_argument (exit code 1).
class MathFailure : public std::runtime_error {
public:
    explicit MathFailure(const std::string& what) : std::runtime_error(what) {}
};

class NotStronglyConvexError : public MathFailure {
public:
    using MathFailure::MathFailure;
};

class NotConvexDomainError : public MathFailure {
public:
    using MathFailure::MathFailure;
};

class InfeasibleBumpError : public MathFailure {
public:
    using MathFailure::MathFailure;
};

class FlatPointError : public MathFailure {
public:
    using MathFailure::MathFailure;
};

class IndeterminateOrderError : public MathFailure {
public:
    using MathFailure::MathFailure;
};

namespace detail {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Fractional offset in [0,1) derived from a seed; used to shift
/// low-discrepancy sequences deterministically.
inline double seed_fraction(uint64_t seed, uint64_t salt) {
    const uint64_t h = splitmix64(seed ^ splitmix64(salt));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline int thread_budget() {
    if (const char* env = std::getenv("CONVEXLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
}

/// Index-parallel map with deterministic, index-ordered results.
template <typename T>
std::vector<T> parallel_map(int count, const std::function<T(int)>& fn) {
    std::vector<T> out(static_cast<size_t>(count));
    const int threads = count >= 16 ? thread_budget() : 1;
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) out[static_cast<size_t>(i)] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < count; i += threads) out[static_cast<size_t>(i)] = fn(i);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

inline double sqr(double x) { return x * x; }

/// Integer power, exact for the monomial arithmetic used throughout.
inline double ipow(double base, int e) {
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace detail

}  // namespace convexlab
