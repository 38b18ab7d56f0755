#pragma once

#include "convexlab/field.hpp"
#include "convexlab/sampling.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace convexlab {

struct BBox {
    Vec lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }
    Vec center() const { return 0.5 * (lo + hi); }
    double diameter() const { return (hi - lo).norm(); }

    bool contains(const Vec& x, double tol = 0.0) const {
        for (int i = 0; i < dim(); ++i)
            if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
        return true;
    }

    bool strictly_contains(const Vec& x) const {
        for (int i = 0; i < dim(); ++i)
            if (x[i] <= lo[i] || x[i] >= hi[i]) return false;
        return true;
    }

    std::vector<Vec> corners() const {
        std::vector<Vec> out;
        const int n = dim();
        for (int mask = 0; mask < (1 << n); ++mask) {
            Vec c(n);
            for (int i = 0; i < n; ++i) c[i] = (mask >> i) & 1 ? hi[i] : lo[i];
            out.push_back(std::move(c));
        }
        return out;
    }

    /// Largest t >= 0 with x + t*dir still inside the box.
    double ray_exit(const Vec& x, const Vec& dir) const {
        double t = std::numeric_limits<double>::infinity();
        for (int i = 0; i < dim(); ++i) {
            if (dir[i] > 0)
                t = std::min(t, (hi[i] - x[i]) / dir[i]);
            else if (dir[i] < 0)
                t = std::min(t, (lo[i] - x[i]) / dir[i]);
        }
        return std::max(0.0, t);
    }

    static BBox cube(int dim, double lo_v, double hi_v) {
        BBox b;
        b.lo = Vec::Constant(dim, lo_v);
        b.hi = Vec::Constant(dim, hi_v);
        return b;
    }

    static BBox of(std::initializer_list<double> lo_v, std::initializer_list<double> hi_v) {
        BBox b;
        b.lo = Vec(static_cast<int>(lo_v.size()));
        b.hi = Vec(static_cast<int>(hi_v.size()));
        int i = 0;
        for (double v : lo_v) b.lo[i++] = v;
        i = 0;
        for (double v : hi_v) b.hi[i++] = v;
        return b;
    }
};

inline Vec make_vec(std::initializer_list<double> vals) {
    Vec v(static_cast<int>(vals.size()));
    int i = 0;
    for (double x : vals) v[i++] = x;
    return v;
}

/// A bounded domain {rho < 0} clipped to a bounding box that contains the
/// closure of the component under analysis. The box doubles as the clipping
/// region for graph-style defining functions whose global sublevel set is
/// unbounded.
class DomainSpec {
public:
    DomainSpec(std::string name, ScalarField rho, BBox bbox, int smoothness)
        : name_(std::move(name)), rho_(std::move(rho)), bbox_(std::move(bbox)),
          smoothness_(smoothness) {
        if (rho_.dim() != bbox_.dim())
            throw std::invalid_argument("DomainSpec: field/bbox dimension mismatch");
        if (smoothness_ < 1) throw std::invalid_argument("DomainSpec: smoothness must be >= 1");
        scale_ = 0.0;
        for (const Vec& c : bbox_.corners()) scale_ = std::max(scale_, std::abs(rho_(c)));
        if (!(scale_ > 0.0)) scale_ = 1.0;
    }

    const std::string& name() const { return name_; }
    const ScalarField& rho() const { return rho_; }
    const BBox& bbox() const { return bbox_; }
    int smoothness() const { return smoothness_; }
    int dim() const { return rho_.dim(); }

    /// max |rho| over bbox corners; all boundary tolerances are relative to it.
    double scale() const { return scale_; }
    double boundary_tol() const { return 1e-10 * scale_; }

    bool contains(const Vec& x) const { return bbox_.strictly_contains(x) && rho_(x) < 0.0; }
    bool contains_closed(const Vec& x, double tol = 0.0) const {
        return bbox_.contains(x, tol) && rho_(x) <= boundary_tol() + tol * scale_;
    }

    DomainSpec renamed(std::string name) const {
        DomainSpec d = *this;
        d.name_ = std::move(name);
        return d;
    }

    nlohmann::json to_json() const {
        std::vector<double> lo(bbox_.lo.data(), bbox_.lo.data() + bbox_.lo.size());
        std::vector<double> hi(bbox_.hi.data(), bbox_.hi.data() + bbox_.hi.size());
        return {{"name", name_},
                {"dim", dim()},
                {"smoothness", smoothness_},
                {"bbox", {lo, hi}},
                {"rho", rho_.to_json()}};
    }

    static DomainSpec from_json(const nlohmann::json& j) {
        ScalarField rho = ScalarField::from_json(j.at("rho"));
        const auto lo = j.at("bbox").at(0).get<std::vector<double>>();
        const auto hi = j.at("bbox").at(1).get<std::vector<double>>();
        BBox box;
        box.lo = Eigen::Map<const Vec>(lo.data(), static_cast<int>(lo.size()));
        box.hi = Eigen::Map<const Vec>(hi.data(), static_cast<int>(hi.size()));
        return DomainSpec(j.at("name").get<std::string>(), std::move(rho), std::move(box),
                          j.at("smoothness").get<int>());
    }

private:
    std::string name_;
    ScalarField rho_;
    BBox bbox_;
    int smoothness_;
    double scale_;
};

/// A located boundary point with its outward unit normal and an orthonormal
/// basis of the tangent hyperplane.
struct BoundaryPoint {
    Vec location;
    Vec normal;
    std::vector<Vec> tangent_basis;
};

namespace detail {

/// Golden-section minimization of a 1D function on [lo, hi].
template <typename F>
double golden_section_min(F&& f, double lo, double hi, int iters = 90) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iters && (b - a) > 0.0; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

}  // namespace detail

/// Deepest interior point found by a coarse grid scan (32 per axis, N <= 4)
/// refined by windowed per-coordinate golden-section descent. Deterministic.
inline Vec interior_anchor(const DomainSpec& d) {
    const int n = d.dim();
    if (n > 4) throw std::invalid_argument("interior_anchor: grid scan capped at N <= 4");
    const int g = 32;
    const Vec lo = d.bbox().lo, hi = d.bbox().hi;
    Vec cell = (hi - lo) / g;
    Vec best;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<int> idx(static_cast<size_t>(n), 0);
    Vec x(n);
    const long total = static_cast<long>(std::pow(g, n));
    for (long k = 0; k < total; ++k) {
        long r = k;
        for (int i = 0; i < n; ++i) {
            x[i] = lo[i] + (r % g + 0.5) * cell[i];
            r /= g;
        }
        const double v = d.rho()(x);
        if (v < best_val) {
            best_val = v;
            best = x;
        }
    }
    if (!(best_val < 0.0))
        throw std::runtime_error("interior_anchor: no interior point found in bbox grid scan");
    // Windowed refinement keeps the anchor in the grid minimizer's basin.
    Vec a = best;
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (int i = 0; i < n; ++i) {
            const double w = 2.0 * cell[i];
            const double axis_lo = std::max(lo[i], a[i] - w);
            const double axis_hi = std::min(hi[i], a[i] + w);
            Vec probe = a;
            a[i] = detail::golden_section_min(
                [&](double t) {
                    probe[i] = t;
                    return d.rho()(probe);
                },
                axis_lo, axis_hi);
        }
    }
    return d.rho()(a) < best_val ? a : best;
}

namespace detail {

/// All parameter values t in (0, t_exit] where rho(x0 + t dir) crosses zero,
/// refined by bisection to the domain's boundary tolerance.
inline std::vector<double> ray_crossings(const DomainSpec& d, const Vec& x0, const Vec& dir,
                                         int march_steps = 4096) {
    std::vector<double> out;
    const double t_exit = d.bbox().ray_exit(x0, dir);
    if (t_exit <= 0.0) return out;
    const auto& rho = d.rho();
    double t_prev = 0.0;
    double f_prev = rho(x0);
    const double tol = d.boundary_tol();
    for (int k = 1; k <= march_steps; ++k) {
        const double t = t_exit * k / march_steps;
        const double f = rho(x0 + t * dir);
        if ((f_prev < 0.0 && f >= 0.0) || (f_prev >= 0.0 && f < 0.0)) {
            double a = t_prev, b = t, fa = f_prev;
            for (int it = 0; it < 200 && b - a > 0.0; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = rho(x0 + m * dir);
                if (std::abs(fm) <= tol) {
                    a = b = m;
                    break;
                }
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push_back(0.5 * (a + b));
        }
        t_prev = t;
        f_prev = f;
    }
    return out;
}

/// Orthonormal tangent frame for a unit normal: the N-1 coordinate axes
/// least aligned with nu, Gram-Schmidt orthogonalized in that order.
inline std::vector<Vec> tangent_frame(const Vec& nu) {
    const int n = static_cast<int>(nu.size());
    std::vector<int> axes(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) axes[static_cast<size_t>(i)] = i;
    std::stable_sort(axes.begin(), axes.end(),
                     [&](int a, int b) { return std::abs(nu[a]) < std::abs(nu[b]); });
    std::vector<Vec> basis;
    for (int axis : axes) {
        if (static_cast<int>(basis.size()) == n - 1) break;
        Vec v = Vec::Zero(n);
        v[axis] = 1.0;
        v -= nu.dot(v) * nu;
        for (const Vec& b : basis) v -= b.dot(v) * b;
        const double norm = v.norm();
        if (norm < 1e-6) continue;
        basis.push_back(v / norm);
    }
    if (static_cast<int>(basis.size()) != n - 1)
        throw std::runtime_error("tangent_frame: failed to complete orthonormal basis");
    return basis;
}

}  // namespace detail

/// Builds the normal/tangent frame at a point already on the boundary.
inline BoundaryPoint boundary_point_at(const DomainSpec& d, const Vec& p,
                                       double tol_factor = 1.0) {
    if (std::abs(d.rho()(p)) > d.boundary_tol() * tol_factor)
        throw std::invalid_argument("boundary_point_at: point is not on the boundary");
    const Vec g = d.rho().gradient(p);
    const double gn = g.norm();
    if (gn < 1e-8)
        throw std::invalid_argument("boundary_point_at: vanishing gradient (degenerate point)");
    BoundaryPoint bp;
    bp.location = p;
    bp.normal = g / gn;
    bp.tangent_basis = detail::tangent_frame(bp.normal);
    return bp;
}

/// First boundary crossing of the ray x0 + t*dir, t > 0.
inline BoundaryPoint project_to_boundary(const DomainSpec& d, const Vec& x0, const Vec& dir) {
    if (!(d.rho()(x0) < 0.0))
        throw std::invalid_argument("project_to_boundary: x0 is not interior");
    const Vec u = dir / dir.norm();
    const auto ts = detail::ray_crossings(d, x0, u);
    if (ts.empty())
        throw std::invalid_argument("project_to_boundary: ray misses the boundary before bbox exit");
    return boundary_point_at(d, Vec(x0 + ts.front() * u), 10.0);
}

/// Newton projection onto the boundary from a near-boundary seed.
inline Vec project_near(const DomainSpec& d, Vec x, int max_iters = 60) {
    const double tol = d.boundary_tol();
    for (int i = 0; i < max_iters; ++i) {
        const double f = d.rho()(x);
        if (std::abs(f) <= tol) return x;
        const Vec g = d.rho().gradient(x);
        const double g2 = g.squaredNorm();
        if (g2 < 1e-16) break;
        x -= (f / g2) * g;
    }
    if (std::abs(d.rho()(x)) > tol)
        throw std::runtime_error("project_near: Newton projection did not converge");
    return x;
}

/// `count` boundary points from rays out of the interior anchor, directions
/// from the 2N axes followed by a seeded low-discrepancy sphere sequence.
/// Every sign-change crossing along a ray contributes; points with
/// near-vanishing gradient are skipped; duplicates within 1e-8 are dropped.
inline std::vector<BoundaryPoint> sample_boundary(const DomainSpec& d, int count, uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_boundary: count must be >= 1");
    const Vec anchor = interior_anchor(d);
    const int n = d.dim();
    std::vector<BoundaryPoint> out;
    out.reserve(static_cast<size_t>(count));
    auto try_direction = [&](const Vec& u) {
        for (double t : detail::ray_crossings(d, anchor, u)) {
            if (static_cast<int>(out.size()) >= count) return;
            const Vec p = anchor + t * u;
            const Vec g = d.rho().gradient(p);
            if (g.norm() < 1e-8) continue;
            bool dup = false;
            for (const auto& q : out)
                if ((q.location - p).norm() <= 1e-8) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            BoundaryPoint bp;
            bp.location = p;
            bp.normal = g / g.norm();
            bp.tangent_basis = detail::tangent_frame(bp.normal);
            out.push_back(std::move(bp));
        }
    };
    for (int i = 0; i < n && static_cast<int>(out.size()) < count; ++i) {
        Vec u = Vec::Zero(n);
        u[i] = 1.0;
        try_direction(u);
        u[i] = -1.0;
        try_direction(u);
    }
    DirectionSequence dirs(n, seed, 0xb0d7ull);
    const long max_attempts = 64L * count + 16;
    for (long k = 0; k < max_attempts && static_cast<int>(out.size()) < count; ++k)
        try_direction(dirs.next());
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("sample_boundary: could not collect requested point count");
    return out;
}

/// Defining-function algebra: rho' = h * rho. h must be positive (margin
/// 1e-6) on a sampled neighborhood of the boundary.
inline DomainSpec multiply_by_h(const DomainSpec& d, const ScalarField& h, int check_samples = 64) {
    if (h.dim() != d.dim()) throw std::invalid_argument("multiply_by_h: dimension mismatch");
    for (const auto& bp : sample_boundary(d, check_samples, 0)) {
        if (h(bp.location) <= 1e-6)
            throw std::invalid_argument("multiply_by_h: h is not positive near the boundary");
    }
    return DomainSpec(d.name() + "*h", h * d.rho(), d.bbox(),
                      std::min(d.smoothness(), h.smoothness()));
}

}  // namespace convexlab
