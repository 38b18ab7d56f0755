#pragma once

#include "convexlab/convexity.hpp"

#include <cmath>
#include <functional>
#include <optional>

namespace convexlab {

/// One tangent-direction probe: the raw (s, |value|) table and the fitted
/// leading vanishing order.
struct DirectionProbe {
    Vec direction;
    std::vector<std::pair<double, double>> table;  // (s, |rho(P + s t) - rho(P)|)
    bool below_floor = false;                      // all values < 1e-14
    double slope = 0.0;
    int rounded = 0;
    double residual = 0.0;
};

struct OrderVerdict {
    bool finite = false;
    int order = 0;  // meaningful when finite
    int cutoff = 12;
    std::vector<DirectionProbe> probes;
};

namespace detail {

inline constexpr double kOrderFloor = 1e-14;

/// Least-squares slope of log|f(s)| against log s over s = 2^-4 .. 2^-20.
inline DirectionProbe fit_vanishing_order(const std::function<double(double)>& f) {
    DirectionProbe p;
    for (int k = 4; k <= 20; ++k) {
        const double s = std::ldexp(1.0, -k);
        p.table.emplace_back(s, std::abs(f(s)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& [s, v] : p.table) {
        if (v < kOrderFloor) continue;
        const double x = std::log(s), y = std::log(v);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) {
        p.below_floor = true;
        return p;
    }
    p.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    p.rounded = static_cast<int>(std::lround(p.slope));
    p.residual = std::abs(p.slope - p.rounded);
    return p;
}

/// Probe directions: tangent basis vectors (both signs) plus quasi-random
/// tangent combinations, deduplicated up to sign.
inline std::vector<Vec> order_probe_directions(const BoundaryPoint& P, int extra = 16,
                                               uint64_t seed = 0) {
    std::vector<Vec> dirs;
    auto push_unique = [&](Vec v) {
        const double n = v.norm();
        if (n < 1e-12) return;
        v /= n;
        for (const Vec& u : dirs)
            if (std::abs(std::abs(u.dot(v)) - 1.0) < 1e-9) return;
        dirs.push_back(std::move(v));
    };
    for (const Vec& t : P.tangent_basis) {
        push_unique(t);
        push_unique(-t);
    }
    const int nt = static_cast<int>(P.tangent_basis.size());
    if (nt >= 2) {
        UnitCubeSequence seq(nt, seed, 0x0f2d3ull);
        for (int i = 0; i < extra; ++i) {
            const Vec c = seq.next();
            Vec v = Vec::Zero(P.location.size());
            for (int j = 0; j < nt; ++j)
                v += (2.0 * c[j] - 1.0) * P.tangent_basis[static_cast<size_t>(j)];
            push_unique(v);
        }
    }
    return dirs;
}

}  // namespace detail

/// Raw probe: slope fits in every tangent direction with no preconditions.
inline OrderVerdict contact_order_probe(const DomainSpec& d, const BoundaryPoint& P,
                                        int cutoff = 12, uint64_t seed = 0) {
    OrderVerdict v;
    v.cutoff = cutoff;
    const double rho_p = d.rho()(P.location);
    bool any_floor = false;
    int max_order = 0;
    for (const Vec& t : detail::order_probe_directions(P, 16, seed)) {
        DirectionProbe p = detail::fit_vanishing_order(
            [&](double s) { return d.rho()(P.location + s * t) - rho_p; });
        p.direction = t;
        any_floor = any_floor || p.below_floor;
        if (!p.below_floor) max_order = std::max(max_order, p.rounded);
        v.probes.push_back(std::move(p));
    }
    if (any_floor || max_order > cutoff) {
        v.finite = false;
        v.order = 0;
    } else {
        v.finite = true;
        v.order = max_order;
    }
    return v;
}

/// Order of contact of the tangent plane at a convex boundary point: the
/// largest leading vanishing order over probed tangent directions, Infinite
/// (cutoff) when some direction stays below the floor.
inline OrderVerdict contact_order(const DomainSpec& d, const BoundaryPoint& P, int cutoff = 12,
                                  uint64_t seed = 0) {
    if (cutoff < 2 || cutoff % 2 != 0)
        throw std::invalid_argument("contact_order: cutoff must be a positive even integer");
    if (classify_point(d, P).cls == VerdictClass::NotConvex)
        throw std::invalid_argument("contact_order: point is not convex");
    OrderVerdict v = contact_order_probe(d, P, cutoff, seed);
    for (const auto& p : v.probes) {
        if (!p.below_floor && p.residual > 0.2) {
            IndeterminateOrderError err("contact_order: slope " + std::to_string(p.slope) +
                                        " is farther than 0.2 from an integer");
            throw err;
        }
    }
    return v;
}

inline bool evenness_check(const OrderVerdict& v) {
    if (!v.finite) throw std::invalid_argument("evenness_check: order is not finite");
    return v.order % 2 == 0;
}

/// Max order among boundary points near P; each must be <= the order at P.
inline int order_stability_scan(const DomainSpec& d, const BoundaryPoint& P, double radius,
                                int count, int cutoff = 12, uint64_t seed = 0) {
    const OrderVerdict at_p = contact_order(d, P, cutoff, seed);
    if (!at_p.finite) throw std::invalid_argument("order_stability_scan: center order not finite");
    const int nt = static_cast<int>(P.tangent_basis.size());
    UnitCubeSequence seq(nt + 1, seed, 0x57ab1ull);
    int max_order = at_p.order;
    int collected = 0;
    for (int attempt = 0; attempt < 64 * count && collected < count; ++attempt) {
        const Vec u = seq.next();
        Vec step = Vec::Zero(d.dim());
        for (int j = 0; j < nt; ++j)
            step += (2.0 * u[j] - 1.0) * P.tangent_basis[static_cast<size_t>(j)];
        if (step.norm() < 1e-9) continue;
        step *= radius * (0.1 + 0.9 * u[nt]) / step.norm();
        Vec q;
        try {
            q = project_near(d, P.location + step);
        } catch (const std::runtime_error&) {
            continue;
        }
        if ((q - P.location).norm() > radius) continue;
        const OrderVerdict v = contact_order(d, boundary_point_at(d, q, 1e3), cutoff, seed);
        if (!v.finite || v.order > at_p.order)
            throw MathFailure("order_stability_scan: neighbor exceeds center order");
        max_order = std::max(max_order, v.order);
        ++collected;
    }
    if (collected < count)
        throw std::runtime_error("order_stability_scan: could not collect neighbor samples");
    return max_order;
}

/// The boundary sample farthest from a far-away internal reference point is
/// strongly convex, along with a patch around it (externally osculating
/// sphere argument). Returns that sample.
inline BoundaryPoint farthest_point_patch(const DomainSpec& d, int samples = 512,
                                          uint64_t seed = 0) {
    const Vec ones = Vec::Constant(d.dim(), 1.0 / std::sqrt(static_cast<double>(d.dim())));
    const Vec x0 = d.bbox().center() - 12.0 * d.bbox().diameter() * ones;
    const auto pts = sample_boundary(d, samples, seed);
    int best = 0;
    double best_dist = -1.0;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        const double dist = (pts[static_cast<size_t>(i)].location - x0).norm();
        if (dist > best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    const BoundaryPoint& star = pts[static_cast<size_t>(best)];
    if (classify_point(d, star).cls != VerdictClass::StronglyConvex)
        throw MathFailure("farthest_point_patch: farthest sample is not strongly convex");
    const double radius = 0.02 * d.bbox().diameter();
    const int nt = static_cast<int>(star.tangent_basis.size());
    UnitCubeSequence seq(nt, seed, 0xfa47ull);
    int checked = 0;
    for (int attempt = 0; attempt < 512 && checked < 20; ++attempt) {
        const Vec u = seq.next();
        Vec step = Vec::Zero(d.dim());
        for (int j = 0; j < nt; ++j)
            step += (2.0 * u[j] - 1.0) * star.tangent_basis[static_cast<size_t>(j)];
        if (step.norm() < 1e-9) continue;
        step *= radius / step.norm();
        Vec q;
        try {
            q = project_near(d, star.location + step);
        } catch (const std::runtime_error&) {
            continue;
        }
        if (classify_point(d, boundary_point_at(d, q, 1e3)).cls != VerdictClass::StronglyConvex)
            throw MathFailure("farthest_point_patch: neighbor is not strongly convex");
        ++checked;
    }
    return star;
}

}  // namespace convexlab
