#pragma once

#include "convexlab/common.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace convexlab {

namespace detail {

/// Generalized golden-ratio (R_d / Kronecker) increments: the unique real
/// root of x^{d+1} = x + 1 gives the most uniform additive sequence known
/// for each dimension.
inline std::vector<double> rd_alphas(int dim) {
    double phi = 1.5;
    for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
    std::vector<double> a(static_cast<size_t>(dim));
    double g = 1.0 / phi;
    for (int i = 0; i < dim; ++i) {
        a[static_cast<size_t>(i)] = g;
        g /= phi;
    }
    return a;
}

}  // namespace detail

/// Deterministic low-discrepancy stream of points in [0,1)^dim.
class UnitCubeSequence {
public:
    UnitCubeSequence(int dim, uint64_t seed, uint64_t salt = 0)
        : alphas_(detail::rd_alphas(dim)), state_(static_cast<size_t>(dim)) {
        for (int i = 0; i < dim; ++i)
            state_[static_cast<size_t>(i)] =
                detail::seed_fraction(seed, salt * 1000003ull + static_cast<uint64_t>(i));
    }

    Vec next() {
        Vec u(static_cast<int>(state_.size()));
        for (size_t i = 0; i < state_.size(); ++i) {
            state_[i] += alphas_[i];
            state_[i] -= std::floor(state_[i]);
            u[static_cast<int>(i)] = state_[i];
        }
        return u;
    }

private:
    std::vector<double> alphas_;
    std::vector<double> state_;
};

/// Deterministic quasi-uniform stream of unit directions in R^dim (dim <= 4).
class DirectionSequence {
public:
    DirectionSequence(int dim, uint64_t seed, uint64_t salt = 0)
        : dim_(dim), cube_(dim > 1 ? dim - 1 : 1, seed, salt + 0x5eedull), toggle_(false) {
        if (dim < 1 || dim > 4)
            throw std::invalid_argument("DirectionSequence: dimension must be in [1,4]");
    }

    Vec next() {
        Vec d(dim_);
        switch (dim_) {
            case 1: {
                toggle_ = !toggle_;
                d[0] = toggle_ ? 1.0 : -1.0;
                break;
            }
            case 2: {
                const double theta = 2.0 * std::numbers::pi * cube_.next()[0];
                d[0] = std::cos(theta);
                d[1] = std::sin(theta);
                break;
            }
            case 3: {
                // area-preserving cylindrical map
                const Vec u = cube_.next();
                const double z = 2.0 * u[0] - 1.0;
                const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
                const double theta = 2.0 * std::numbers::pi * u[1];
                d[0] = r * std::cos(theta);
                d[1] = r * std::sin(theta);
                d[2] = z;
                break;
            }
            case 4: {
                // uniform S^3 from three uniforms
                const Vec u = cube_.next();
                const double s = std::sqrt(u[0]);
                const double c = std::sqrt(1.0 - u[0]);
                const double a = 2.0 * std::numbers::pi * u[1];
                const double b = 2.0 * std::numbers::pi * u[2];
                d[0] = c * std::sin(a);
                d[1] = c * std::cos(a);
                d[2] = s * std::sin(b);
                d[3] = s * std::cos(b);
                break;
            }
            default: break;
        }
        return d;
    }

private:
    int dim_;
    UnitCubeSequence cube_;
    bool toggle_;
};

/// Fixed quasi-uniform batch of unit directions (equispaced circle for 2D,
/// spherical Fibonacci otherwise). Unseeded: identical across runs.
inline std::vector<Vec> unit_direction_batch(int dim, int count) {
    std::vector<Vec> dirs;
    dirs.reserve(static_cast<size_t>(count));
    if (dim == 1) {
        Vec p(1), m(1);
        p[0] = 1.0;
        m[0] = -1.0;
        dirs.push_back(p);
        if (count > 1) dirs.push_back(m);
        return dirs;
    }
    if (dim == 2) {
        for (int k = 0; k < count; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / count;
            Vec d(2);
            d[0] = std::cos(theta);
            d[1] = std::sin(theta);
            dirs.push_back(d);
        }
        return dirs;
    }
    if (dim == 3) {
        const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < count; ++k) {
            const double z = 1.0 - 2.0 * (k + 0.5) / count;
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            Vec d(3);
            d[0] = r * std::cos(ga * k);
            d[1] = r * std::sin(ga * k);
            d[2] = z;
            dirs.push_back(d);
        }
        return dirs;
    }
    DirectionSequence seq(dim, 0, 0x4d1ull);
    for (int k = 0; k < count; ++k) dirs.push_back(seq.next());
    return dirs;
}

}  // namespace convexlab
