#pragma once

#include "convexlab/convexity.hpp"
#include "convexlab/distance.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace convexlab {

/// A sampled compact subset of a domain.
struct CompactSet {
    std::vector<Vec> points;
    std::string label;
};

/// The function families of the F-hull construction.
struct FunctionFamily {
    enum class Kind { RealLinear, Continuous, Custom };
    Kind kind = Kind::RealLinear;
    int directions = 256;  // RealLinear: quasi-uniform unit functionals
    std::vector<ScalarField> functions;

    static FunctionFamily real_linear(int dirs = 256) {
        FunctionFamily f;
        f.kind = Kind::RealLinear;
        f.directions = dirs < 256 ? 256 : dirs;
        return f;
    }
    static FunctionFamily continuous() {
        FunctionFamily f;
        f.kind = Kind::Continuous;
        return f;
    }
    static FunctionFamily custom(std::vector<ScalarField> fns) {
        FunctionFamily f;
        f.kind = Kind::Custom;
        f.functions = std::move(fns);
        return f;
    }
};

/// Convex hull of K in Omega with respect to F, restricted to a lattice of
/// grid^N cell centers over the bounding box (plus the K points themselves).
inline CompactSet f_hull(const DomainSpec& d, const CompactSet& K, const FunctionFamily& F,
                         int grid) {
    if (K.points.empty()) throw std::invalid_argument("f_hull: K is empty");
    for (const Vec& p : K.points)
        if (!d.contains(p)) throw std::invalid_argument("f_hull: K is not contained in the domain");
    const int n = d.dim();
    std::vector<Vec> candidates;
    {
        const Vec lo = d.bbox().lo;
        const Vec cell = (d.bbox().hi - d.bbox().lo) / grid;
        std::vector<int> idx(static_cast<size_t>(n), 0);
        const long total = static_cast<long>(std::pow(grid, n));
        Vec x(n);
        for (long k = 0; k < total; ++k) {
            long r = k;
            for (int i = 0; i < n; ++i) {
                x[i] = lo[i] + (r % grid + 0.5) * cell[i];
                r /= grid;
            }
            if (d.contains(x)) candidates.push_back(x);
        }
        if (candidates.empty()) throw std::runtime_error("f_hull: empty grid intersection");
        for (const Vec& p : K.points) candidates.push_back(p);
    }
    CompactSet hull;
    hull.label = K.label + "_hull";
    switch (F.kind) {
        case FunctionFamily::Kind::RealLinear: {
            const auto dirs = unit_direction_batch(n, F.directions);
            std::vector<double> kmax(dirs.size(), -std::numeric_limits<double>::infinity());
            for (size_t a = 0; a < dirs.size(); ++a)
                for (const Vec& t : K.points)
                    kmax[a] = std::max(kmax[a], dirs[a].dot(t));
            for (const Vec& x : candidates) {
                bool keep = true;
                for (size_t a = 0; a < dirs.size() && keep; ++a)
                    keep = dirs[a].dot(x) <= kmax[a] + 1e-9;
                if (keep) hull.points.push_back(x);
            }
            break;
        }
        case FunctionFamily::Kind::Continuous: {
            // Separators f_c(x) = 1/(1+|x-c|) for every candidate center c:
            // f_c(x) <= max_K f_c  <=>  |x-c| >= min_{t in K} |c-t|.
            std::vector<double> dmin(candidates.size());
            for (size_t c = 0; c < candidates.size(); ++c) {
                double m = std::numeric_limits<double>::infinity();
                for (const Vec& t : K.points) m = std::min(m, (candidates[c] - t).norm());
                dmin[c] = m;
            }
            for (size_t i = 0; i < candidates.size(); ++i) {
                bool keep = true;
                for (size_t c = 0; c < candidates.size() && keep; ++c)
                    keep = (candidates[i] - candidates[c]).norm() >= dmin[c] - 1e-12;
                if (keep) hull.points.push_back(candidates[i]);
            }
            break;
        }
        case FunctionFamily::Kind::Custom: {
            std::vector<double> kmax(F.functions.size(), -std::numeric_limits<double>::infinity());
            for (size_t a = 0; a < F.functions.size(); ++a)
                for (const Vec& t : K.points) kmax[a] = std::max(kmax[a], F.functions[a](t));
            for (const Vec& x : candidates) {
                bool keep = true;
                for (size_t a = 0; a < F.functions.size() && keep; ++a)
                    keep = F.functions[a](x) <= kmax[a] + 1e-12;
                if (keep) hull.points.push_back(x);
            }
            break;
        }
    }
    return hull;
}

struct SegmentRow {
    Vec a, b;
    double endpoint_dist = 0.0;
    double segment_dist = 0.0;
};

struct SegmentReport {
    std::vector<SegmentRow> rows;
    double min_endpoint_dist = std::numeric_limits<double>::infinity();
    double min_segment_dist = std::numeric_limits<double>::infinity();
    /// endpoints bounded below while segments reach below a tenth of it
    bool contrast = false;
};

/// The segment characterization data: endpoint vs whole-segment distances
/// to the boundary, sampled along each segment.
inline SegmentReport segment_compactness_check(const DomainSpec& d,
                                               const std::vector<std::pair<Vec, Vec>>& segments,
                                               int samples_per_segment = 256) {
    BoundaryCloud cloud(d, 1024, 0);
    SegmentReport rep;
    for (const auto& [a, b] : segments) {
        if (!d.contains(a) || !d.contains(b))
            throw std::invalid_argument("segment_compactness_check: endpoint outside the domain");
        SegmentRow row;
        row.a = a;
        row.b = b;
        row.endpoint_dist = std::min(cloud.refined_distance(a), cloud.refined_distance(b));
        row.segment_dist = row.endpoint_dist;
        for (int s = 0; s < samples_per_segment; ++s) {
            const double t = static_cast<double>(s) / (samples_per_segment - 1);
            const Vec x = (1.0 - t) * a + t * b;
            if (!d.contains(x)) {
                row.segment_dist = 0.0;
                break;
            }
            row.segment_dist = std::min(row.segment_dist, cloud.refined_distance(x));
        }
        rep.min_endpoint_dist = std::min(rep.min_endpoint_dist, row.endpoint_dist);
        rep.min_segment_dist = std::min(rep.min_segment_dist, row.segment_dist);
        rep.rows.push_back(std::move(row));
    }
    rep.contrast = rep.min_segment_dist < rep.min_endpoint_dist / 10.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Non-smooth gallery shapes
// ---------------------------------------------------------------------------

/// Convex 2D polygon with counterclockwise vertices.
class Polytope {
public:
    explicit Polytope(std::vector<Vec> verts) : verts_(std::move(verts)) {
        if (verts_.size() < 3) throw std::invalid_argument("Polytope: need at least 3 vertices");
        double area2 = 0.0;
        const int m = static_cast<int>(verts_.size());
        for (int i = 0; i < m; ++i) {
            const Vec& p = verts_[static_cast<size_t>(i)];
            const Vec& q = verts_[static_cast<size_t>((i + 1) % m)];
            area2 += p[0] * q[1] - q[0] * p[1];
        }
        if (area2 < 0.0) std::reverse(verts_.begin(), verts_.end());
        for (int i = 0; i < m; ++i) {
            if (cross_at(i, verts_[static_cast<size_t>((i + 2) % m)]) < -1e-12)
                throw std::invalid_argument("Polytope: vertices are not convex");
        }
    }

    static Polytope square(double half = 1.0) {
        return Polytope({make_vec({half, -half}), make_vec({half, half}),
                         make_vec({-half, half}), make_vec({-half, -half})});
    }

    int dim() const { return 2; }
    const std::vector<Vec>& vertices() const { return verts_; }

    double diameter() const {
        double d = 0.0;
        for (const Vec& p : verts_)
            for (const Vec& q : verts_) d = std::max(d, (p - q).norm());
        return d;
    }

    BBox bbox() const {
        BBox b;
        b.lo = verts_.front();
        b.hi = verts_.front();
        for (const Vec& v : verts_) {
            b.lo = b.lo.cwiseMin(v);
            b.hi = b.hi.cwiseMax(v);
        }
        return b;
    }

    /// Closed membership with tolerance band around the boundary.
    bool contains(const Vec& x, double tol = 0.0) const {
        const int m = static_cast<int>(verts_.size());
        for (int i = 0; i < m; ++i)
            if (cross_at(i, x) < -tol * edge_len(i)) return false;
        return true;
    }

    bool contains_open(const Vec& x) const {
        const int m = static_cast<int>(verts_.size());
        for (int i = 0; i < m; ++i)
            if (cross_at(i, x) <= 0.0) return false;
        return true;
    }

    double boundary_distance(const Vec& x) const {
        double best = std::numeric_limits<double>::infinity();
        const int m = static_cast<int>(verts_.size());
        for (int i = 0; i < m; ++i) {
            const Vec& a = verts_[static_cast<size_t>(i)];
            const Vec& b = verts_[static_cast<size_t>((i + 1) % m)];
            const Vec ab = b - a;
            const double t = std::clamp((x - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
            best = std::min(best, (x - (a + t * ab)).norm());
        }
        return best;
    }

    /// Outward unit normal of the face containing p (averaged at vertices).
    Vec support_normal_at(const Vec& p, double tol = 1e-9) const {
        const int m = static_cast<int>(verts_.size());
        Vec acc = Vec::Zero(2);
        int hits = 0;
        for (int i = 0; i < m; ++i) {
            const Vec& a = verts_[static_cast<size_t>(i)];
            const Vec& b = verts_[static_cast<size_t>((i + 1) % m)];
            const Vec ab = b - a;
            const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
            if ((p - (a + t * ab)).norm() <= tol * diameter()) {
                Vec n(2);
                n[0] = ab[1];
                n[1] = -ab[0];
                acc += n / n.norm();
                ++hits;
            }
        }
        if (hits == 0)
            throw std::invalid_argument("support_normal_at: point is not on the boundary");
        return Vec(acc / acc.norm());
    }

    /// Arclength-uniform boundary samples.
    std::vector<Vec> boundary_samples(int count) const {
        const int m = static_cast<int>(verts_.size());
        double per = 0.0;
        for (int i = 0; i < m; ++i) per += edge_len(i);
        std::vector<Vec> out;
        out.reserve(static_cast<size_t>(count));
        for (int k = 0; k < count; ++k) {
            double s = per * k / count;
            for (int i = 0; i < m; ++i) {
                const double l = edge_len(i);
                if (s <= l || i == m - 1) {
                    const Vec& a = verts_[static_cast<size_t>(i)];
                    const Vec& b = verts_[static_cast<size_t>((i + 1) % m)];
                    out.push_back(a + std::min(1.0, s / l) * (b - a));
                    break;
                }
                s -= l;
            }
        }
        return out;
    }

private:
    double edge_len(int i) const {
        const int m = static_cast<int>(verts_.size());
        return (verts_[static_cast<size_t>((i + 1) % m)] - verts_[static_cast<size_t>(i)]).norm();
    }
    double cross_at(int i, const Vec& x) const {
        const int m = static_cast<int>(verts_.size());
        const Vec& a = verts_[static_cast<size_t>(i)];
        const Vec& b = verts_[static_cast<size_t>((i + 1) % m)];
        return (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
    }
    static Vec x_minus(const Vec& a, const Vec& b) { return a - b; }

    std::vector<Vec> verts_;
};

inline double distance_to_boundary(const Polytope& s, const Vec& x) {
    return s.boundary_distance(x);
}

/// The unit square with its four corners replaced by radius-1/4 circular
/// arcs centered at (±3/4, ±3/4): C^{1,1} but not C^2, exact membership.
class RoundedSquare {
public:
    int dim() const { return 2; }
    double radius() const { return 0.25; }
    double diameter() const { return 2.0 * (0.75 * std::numbers::sqrt2 + 0.25); }
    BBox bbox() const { return BBox::cube(2, -1.2, 1.2); }

    bool contains(const Vec& x, double tol = 0.0) const {
        const double u = std::abs(x[0]), v = std::abs(x[1]);
        if (u > 1.0 + tol || v > 1.0 + tol) return false;
        if (u <= 0.75 || v <= 0.75) return true;
        return detail::sqr(u - 0.75) + detail::sqr(v - 0.75) <=
               detail::sqr(0.25 + tol);
    }

    bool contains_open(const Vec& x) const {
        const double u = std::abs(x[0]), v = std::abs(x[1]);
        if (u >= 1.0 || v >= 1.0) return false;
        if (u <= 0.75 || v <= 0.75) return true;
        return detail::sqr(u - 0.75) + detail::sqr(v - 0.75) < detail::sqr(0.25);
    }

    double boundary_distance(const Vec& x) const {
        const double u = std::abs(x[0]), v = std::abs(x[1]);
        double best = std::numeric_limits<double>::infinity();
        // flat faces (present for |coordinate| <= 3/4 of the other axis)
        if (u <= 0.75) best = std::min(best, std::abs(1.0 - v));
        if (v <= 0.75) best = std::min(best, std::abs(1.0 - u));
        // corner arc
        if (u > 0.75 && v > 0.75) {
            const double rc = std::hypot(u - 0.75, v - 0.75);
            best = std::min(best, std::abs(rc - 0.25));
        } else {
            // nearest arc endpoints guard the face/arc transition
            best = std::min(best, std::hypot(u - 0.75, v - 1.0));
            best = std::min(best, std::hypot(u - 1.0, v - 0.75));
        }
        return best;
    }

    bool on_boundary(const Vec& x, double tol = 1e-9) const { return boundary_distance(x) <= tol; }

    bool on_arc(const Vec& x, double tol = 1e-9) const {
        const double u = std::abs(x[0]), v = std::abs(x[1]);
        if (u < 0.75 - tol || v < 0.75 - tol) return false;
        return std::abs(std::hypot(u - 0.75, v - 0.75) - 0.25) <= tol;
    }

    Vec support_normal_at(const Vec& p, double tol = 1e-9) const {
        if (!on_boundary(p, tol * diameter()))
            throw std::invalid_argument("support_normal_at: point is not on the boundary");
        const double u = std::abs(p[0]), v = std::abs(p[1]);
        Vec n = Vec::Zero(2);
        if (u > 0.75 && v > 0.75) {
            n[0] = (u - 0.75) * (p[0] < 0 ? -1.0 : 1.0);
            n[1] = (v - 0.75) * (p[1] < 0 ? -1.0 : 1.0);
        } else if (v >= u) {
            n[1] = p[1] < 0 ? -1.0 : 1.0;
        } else {
            n[0] = p[0] < 0 ? -1.0 : 1.0;
        }
        return Vec(n / n.norm());
    }

    /// Arclength-uniform boundary samples over faces and arcs.
    std::vector<Vec> boundary_samples(int count) const {
        const double face = 1.5, arc = 0.25 * std::numbers::pi / 2.0;
        const double per = 4.0 * (face + arc);
        std::vector<Vec> out;
        out.reserve(static_cast<size_t>(count));
        for (int k = 0; k < count; ++k) {
            double s = per * k / count;
            out.push_back(point_at_arclength(s));
        }
        return out;
    }

private:
    // perimeter parametrized from (1, -3/4) upward: 4 x (face, arc)
    Vec point_at_arclength(double s) const {
        const double face = 1.5, arc = 0.25 * std::numbers::pi / 2.0;
        const int sector = static_cast<int>(s / (face + arc)) % 4;
        double local = s - sector * (face + arc);
        // sector 0: right face then top-right arc; others rotated by 90°.
        Vec p(2);
        if (local <= face) {
            p[0] = 1.0;
            p[1] = -0.75 + local;
        } else {
            const double theta = (local - face) / 0.25;  // 0..pi/2
            p[0] = 0.75 + 0.25 * std::cos(theta);
            p[1] = 0.75 + 0.25 * std::sin(theta);
        }
        for (int r = 0; r < sector; ++r) {
            const double x = p[0];
            p[0] = -p[1];
            p[1] = x;
        }
        return p;
    }
};

inline double distance_to_boundary(const RoundedSquare& s, const Vec& x) {
    return s.boundary_distance(x);
}

// ---------------------------------------------------------------------------
// Shape adapters: uniform closed membership / boundary predicates
// ---------------------------------------------------------------------------

inline bool shape_contains(const DomainSpec& d, const Vec& x, double tol) {
    return d.contains_closed(x, tol);
}
inline bool shape_contains(const Polytope& s, const Vec& x, double tol) {
    return s.contains(x, tol);
}
inline bool shape_contains(const RoundedSquare& s, const Vec& x, double tol) {
    return s.contains(x, tol);
}

inline bool shape_contains_open(const DomainSpec& d, const Vec& x) { return d.contains(x); }
inline bool shape_contains_open(const Polytope& s, const Vec& x) { return s.contains_open(x); }
inline bool shape_contains_open(const RoundedSquare& s, const Vec& x) {
    return s.contains_open(x);
}

inline bool shape_on_boundary(const DomainSpec& d, const Vec& x, double tol) {
    return std::abs(d.rho()(x)) <= std::max(d.boundary_tol() * 10.0, tol * d.scale());
}
inline bool shape_on_boundary(const Polytope& s, const Vec& x, double tol) {
    return s.boundary_distance(x) <= tol * s.diameter();
}
inline bool shape_on_boundary(const RoundedSquare& s, const Vec& x, double tol) {
    return s.boundary_distance(x) <= tol * s.diameter();
}

inline double shape_diameter(const DomainSpec& d) { return d.bbox().diameter(); }
inline double shape_diameter(const Polytope& s) { return s.diameter(); }
inline double shape_diameter(const RoundedSquare& s) { return s.diameter(); }

inline BBox shape_bbox(const DomainSpec& d) { return d.bbox(); }
inline BBox shape_bbox(const Polytope& s) { return s.bbox(); }
inline BBox shape_bbox(const RoundedSquare& s) { return s.bbox(); }

inline int shape_dim(const DomainSpec& d) { return d.dim(); }
inline int shape_dim(const Polytope& s) { return s.dim(); }
inline int shape_dim(const RoundedSquare& s) { return s.dim(); }

// ---------------------------------------------------------------------------
// Extreme points, support functions, Minkowski gauge
// ---------------------------------------------------------------------------

struct ExtremeResult {
    bool extreme = true;
    std::optional<std::pair<Vec, Vec>> witness;  // a, b with P between them
};

/// Chord probe: P is not extreme iff some chord through P stays in the
/// closure. 512 directions, radii 0.25*diam down to 0.25*diam/16.
template <typename Shape>
ExtremeResult is_extreme(const Shape& s, const Vec& P, int probe = 512) {
    if (!shape_on_boundary(s, P, 1e-8))
        throw std::invalid_argument("is_extreme: P is not on the boundary");
    const double diam = shape_diameter(s);
    const double r_max = 0.25 * diam;
    const double member_tol = 1e-12 * diam;
    ExtremeResult res;
    for (const Vec& u : unit_direction_batch(shape_dim(s), probe)) {
        for (int j = 64; j >= 4; --j) {
            const double r = r_max * j / 64.0;
            const Vec a = P - r * u, b = P + r * u;
            if (shape_contains(s, a, member_tol) && shape_contains(s, b, member_tol)) {
                res.extreme = false;
                res.witness = std::make_pair(a, b);
                return res;
            }
        }
    }
    return res;
}

/// Validates a proposed non-extremeness witness pair: a, b in the closure,
/// distinct, with P on the segment between them.
template <typename Shape>
bool verify_extreme_witness(const Shape& s, const Vec& P, const Vec& a, const Vec& b,
                            double tol = 1e-9) {
    const double diam = shape_diameter(s);
    if ((a - b).norm() <= tol * diam) return false;
    if (!shape_contains(s, a, tol * diam) || !shape_contains(s, b, tol * diam)) return false;
    const Vec ab = b - a;
    const double lambda = std::clamp((P - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    return (P - (a + lambda * ab)).norm() <= tol * diam;
}

/// Affine support functional L(x) = nu . (x - P): zero at P, negative on the
/// sampled interior; records where it vanishes on the sampled boundary.
struct SupportFunction {
    Vec normal;
    Vec base;
    std::vector<Vec> boundary_zero_set;
    double operator()(const Vec& x) const { return normal.dot(x - base); }
};

namespace detail {

template <typename Shape>
SupportFunction support_check(const Shape& s, const Vec& P, const Vec& nu,
                              const std::vector<Vec>& interior,
                              const std::vector<Vec>& boundary) {
    SupportFunction L;
    L.normal = nu;
    L.base = P;
    for (const Vec& x : interior) {
        if (L(x) >= 0.0)
            throw MathFailure("support_function: interior sample on the wrong side at (" +
                              std::to_string(x[0]) + ", ...)");
    }
    for (const Vec& q : boundary)
        if (std::abs(L(q)) <= 1e-8) L.boundary_zero_set.push_back(q);
    return L;
}

inline std::vector<Vec> box_rejection_points(const BBox& box,
                                             const std::function<bool(const Vec&)>& inside,
                                             int count, uint64_t seed, uint64_t salt) {
    UnitCubeSequence seq(box.dim(), seed, salt);
    std::vector<Vec> pts;
    const long max_attempts = 1024 + 512L * count;
    const Vec span = box.hi - box.lo;
    for (long i = 0; i < max_attempts && static_cast<int>(pts.size()) < count; ++i) {
        const Vec x = box.lo + seq.next().cwiseProduct(span);
        if (inside(x)) pts.push_back(x);
    }
    if (static_cast<int>(pts.size()) < count)
        throw std::runtime_error("interior sampling starved");
    return pts;
}

}  // namespace detail

inline SupportFunction support_function(const DomainSpec& d, const Vec& P,
                                        int interior_samples = 10000, int boundary_samples = 200,
                                        uint64_t seed = 0) {
    const BoundaryPoint bp = boundary_point_at(d, P, 10.0);
    std::vector<Vec> boundary;
    for (const auto& q : sample_boundary(d, boundary_samples, seed)) boundary.push_back(q.location);
    const auto interior = interior_points(d, interior_samples, seed, 0x50f7ull);
    return detail::support_check(d, P, bp.normal, interior, boundary);
}

inline SupportFunction support_function(const Polytope& s, const Vec& P,
                                        int interior_samples = 10000, int boundary_samples = 200,
                                        uint64_t seed = 0) {
    const Vec nu = s.support_normal_at(P);
    const auto interior = detail::box_rejection_points(
        s.bbox(), [&](const Vec& x) { return s.contains_open(x); }, interior_samples, seed,
        0x50f8ull);
    return detail::support_check(s, P, nu, interior, s.boundary_samples(boundary_samples));
}

inline SupportFunction support_function(const RoundedSquare& s, const Vec& P,
                                        int interior_samples = 10000, int boundary_samples = 200,
                                        uint64_t seed = 0) {
    const Vec nu = s.support_normal_at(P);
    const auto interior = detail::box_rejection_points(
        s.bbox(), [&](const Vec& x) { return s.contains_open(x); }, interior_samples, seed,
        0x50f9ull);
    return detail::support_check(s, P, nu, interior, s.boundary_samples(boundary_samples));
}

/// Convexity pre-check for gauge computations over any shape.
template <typename Shape>
OracleResult shape_convexity_oracle(const Shape& s, int pairs = 500, uint64_t seed = 0) {
    const auto pts = detail::box_rejection_points(
        shape_bbox(s), [&](const Vec& x) { return shape_contains_open(s, x); }, 2 * pairs, seed,
        0x9a0eull);
    return segment_oracle([&](const Vec& x) { return shape_contains_open(s, x); }, pts);
}

/// Minkowski gauge p(x) = inf{r > 0 : x in rK} by bisection on closed
/// membership. The shape must be convex with the origin interior.
template <typename Shape>
double minkowski_gauge(const Shape& s, const Vec& x, bool check_convex = true) {
    const Vec zero = Vec::Zero(shape_dim(s));
    if (!shape_contains_open(s, zero))
        throw std::invalid_argument("minkowski_gauge: origin is not interior to the shape");
    if (check_convex) {
        const OracleResult oracle = shape_convexity_oracle(s);
        if (!oracle.convex) throw NotConvexDomainError("minkowski_gauge: shape is not convex");
    }
    if (x.norm() == 0.0) return 0.0;
    const double tol = 1e-13 * shape_diameter(s);
    double hi = 1.0;
    int grow = 0;
    while (!shape_contains(s, Vec(x / hi), tol) && grow++ < 200) hi *= 2.0;
    if (grow >= 200) throw std::runtime_error("minkowski_gauge: gauge did not bracket");
    double lo = 0.0;
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (shape_contains(s, Vec(x / mid), tol))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace convexlab
