#pragma once

#include "convexlab/domain.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <optional>

namespace convexlab {

enum class VerdictClass { NotConvex, WeaklyConvex, StronglyConvex };

inline const char* to_string(VerdictClass c) {
    switch (c) {
        case VerdictClass::NotConvex: return "NotConvex";
        case VerdictClass::WeaklyConvex: return "WeaklyConvex";
        case VerdictClass::StronglyConvex: return "StronglyConvex";
    }
    return "?";
}

/// Pointwise verdict from the Hessian form restricted to the tangent space.
struct ConvexityVerdict {
    VerdictClass cls = VerdictClass::WeaklyConvex;
    double min_tangential_eigenvalue = 0.0;
    double strict_tol = 0.0;
    std::optional<Vec> witness;  // tangent direction with negative form value
};

/// The quadratic form sum_jk d2rho/dxj dxk (P) w_j w_k for tangent w.
inline double restricted_form(const DomainSpec& d, const BoundaryPoint& P, const Vec& w) {
    const Vec g = d.rho().gradient(P.location);
    if (std::abs(g.dot(w)) > 1e-6 * g.norm() * w.norm())
        throw std::invalid_argument("restricted_form: w is not a tangent vector");
    const Mat H = d.rho().hessian(P.location);
    return w.dot(H * w);
}

/// Eigen-decomposition of the tangentially restricted Hessian. Strong/weak
/// split at strict_tol = 1e-8 * ||H||_F.
inline ConvexityVerdict classify_point(const DomainSpec& d, const BoundaryPoint& P) {
    const int n = d.dim();
    const Mat H = d.rho().hessian(P.location);
    ConvexityVerdict v;
    v.strict_tol = 1e-8 * H.norm();
    if (n == 1) {
        // empty tangent space: vacuously strongly convex
        v.cls = VerdictClass::StronglyConvex;
        v.min_tangential_eigenvalue = std::numeric_limits<double>::infinity();
        return v;
    }
    Mat B(n, n - 1);
    for (int j = 0; j < n - 1; ++j) B.col(j) = P.tangent_basis[static_cast<size_t>(j)];
    const Mat M = B.transpose() * H * B;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose()));
    const int lo = 0;  // eigenvalues ascending
    v.min_tangential_eigenvalue = es.eigenvalues()[lo];
    if (v.min_tangential_eigenvalue > v.strict_tol) {
        v.cls = VerdictClass::StronglyConvex;
    } else if (v.min_tangential_eigenvalue < -v.strict_tol) {
        v.cls = VerdictClass::NotConvex;
        Vec w = B * es.eigenvectors().col(lo);
        v.witness = w / w.norm();
    } else {
        v.cls = VerdictClass::WeaklyConvex;
    }
    return v;
}

struct SegmentWitness {
    Vec a, b;        // segment endpoints (interior points)
    Vec sample;      // segment sample found outside the domain
    double t = 0.0;  // parameter of the violating sample
};

struct OracleResult {
    bool convex = true;
    std::optional<SegmentWitness> witness;
    int pairs_checked = 0;
};

/// Synthetic-geometry convexity check over an arbitrary membership test:
/// consecutive point pairs, 64 equispaced samples per closed segment.
inline OracleResult segment_oracle(const std::function<bool(const Vec&)>& inside,
                                   const std::vector<Vec>& interior_points,
                                   int samples_per_segment = 64) {
    OracleResult r;
    const int pairs = static_cast<int>(interior_points.size()) / 2;
    for (int k = 0; k < pairs; ++k) {
        const Vec& a = interior_points[static_cast<size_t>(2 * k)];
        const Vec& b = interior_points[static_cast<size_t>(2 * k + 1)];
        for (int s = 0; s < samples_per_segment; ++s) {
            const double t = static_cast<double>(s) / (samples_per_segment - 1);
            const Vec x = (1.0 - t) * a + t * b;
            if (!inside(x)) {
                r.convex = false;
                r.witness = SegmentWitness{a, b, x, t};
                r.pairs_checked = k + 1;
                return r;
            }
        }
    }
    r.pairs_checked = pairs;
    return r;
}

/// Quasi-random interior points by rejection from the bounding box.
inline std::vector<Vec> interior_points(const DomainSpec& d, int count, uint64_t seed,
                                        uint64_t salt = 0x1d7e5ull) {
    UnitCubeSequence seq(d.dim(), seed, salt);
    std::vector<Vec> pts;
    pts.reserve(static_cast<size_t>(count));
    const Vec lo = d.bbox().lo, span = d.bbox().hi - d.bbox().lo;
    const long max_attempts = 1024 + 512L * count;
    for (long i = 0; i < max_attempts && static_cast<int>(pts.size()) < count; ++i) {
        const Vec u = seq.next();
        const Vec x = lo + u.cwiseProduct(span);
        if (d.contains(x)) pts.push_back(x);
    }
    if (static_cast<int>(pts.size()) < count)
        throw std::runtime_error("interior_points: rejection sampling starved (domain too thin?)");
    return pts;
}

inline OracleResult geometric_convexity_oracle(const DomainSpec& d, int pairs, uint64_t seed) {
    if (pairs < 1) throw std::invalid_argument("geometric_convexity_oracle: pairs must be >= 1");
    const auto pts = interior_points(d, 2 * pairs, seed);
    return segment_oracle([&d](const Vec& x) { return d.contains(x); }, pts);
}

/// Per-point verdict-class comparison between rho and h*rho.
struct IndependenceReport {
    int samples = 0;
    std::vector<std::pair<VerdictClass, VerdictClass>> verdicts;
    std::vector<int> disagreements;
    bool consistent() const { return disagreements.empty(); }
};

inline IndependenceReport defining_function_independence(const DomainSpec& d, const ScalarField& h,
                                                         int samples, uint64_t seed = 0) {
    const DomainSpec dh = multiply_by_h(d, h);
    IndependenceReport rep;
    rep.samples = samples;
    const auto pts = sample_boundary(d, samples, seed);
    for (int i = 0; i < samples; ++i) {
        const auto& bp = pts[static_cast<size_t>(i)];
        const ConvexityVerdict v1 = classify_point(d, bp);
        const ConvexityVerdict v2 = classify_point(dh, boundary_point_at(dh, bp.location, 1e4));
        rep.verdicts.emplace_back(v1.cls, v2.cls);
        if (v1.cls != v2.cls) rep.disagreements.push_back(i);
    }
    return rep;
}

/// rho_lambda = (exp(lambda*rho) - 1)/lambda, with exact derivative formulas
/// chained through the base field.
inline ScalarField exp_convexified(const ScalarField& rho, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("exp_convexified: lambda must be positive");
    return ScalarField::composite(
               "exp_convexified(" + rho.name() + "," + std::to_string(lambda) + ")", rho.dim(),
               rho.smoothness(),
               [rho, lambda](const Vec& x) { return std::expm1(lambda * rho(x)) / lambda; })
        .with_gradient([rho, lambda](const Vec& x) {
            return Vec(std::exp(lambda * rho(x)) * rho.gradient(x));
        })
        .with_hessian([rho, lambda](const Vec& x) {
            const Vec g = rho.gradient(x);
            return Mat(std::exp(lambda * rho(x)) *
                       (rho.hessian(x) + lambda * g * g.transpose()));
        });
}

struct ConvexificationResult {
    double lambda = 1.0;
    ScalarField rho_tilde;
    double certified_C = 0.0;  // verified uniform Hessian lower bound
    int boundary_samples = 0;
};

/// Strong convexification: picks lambda from the sampled sets
/// X_P = {|w|=1 : w'Hw <= 0} (mu = min |grad.w| over X_P,
/// lambda_P = -min form / mu^2 + 1), then verifies a positive uniform
/// full-space Hessian bound for rho_lambda at boundary samples and at
/// +-0.01 normal offsets, doubling lambda while the certificate fails.
inline ConvexificationResult strong_convexify(const DomainSpec& d, int sphere_samples = 4096,
                                              int boundary_samples = 200, uint64_t seed = 0) {
    const auto pts = sample_boundary(d, boundary_samples, seed);
    for (const auto& bp : pts) {
        const ConvexityVerdict v = classify_point(d, bp);
        if (v.cls != VerdictClass::StronglyConvex)
            throw NotStronglyConvexError(
                "strong_convexify: boundary point is " + std::string(to_string(v.cls)) +
                " (min tangential eigenvalue " + std::to_string(v.min_tangential_eigenvalue) + ")");
    }
    const int n = d.dim();
    std::vector<Vec> dirs = unit_direction_batch(n, sphere_samples);
    double lambda = 1.0;
    for (const auto& bp : pts) {
        const Mat H = d.rho().hessian(bp.location);
        const Vec g = d.rho().gradient(bp.location);
        Eigen::SelfAdjointEigenSolver<Mat> es(H);
        std::vector<Vec> probe = dirs;
        for (int j = 0; j < n; ++j) {
            probe.push_back(es.eigenvectors().col(j));
            probe.push_back(-es.eigenvectors().col(j));
        }
        double min_form = std::numeric_limits<double>::infinity();
        double mu = std::numeric_limits<double>::infinity();
        bool x_nonempty = false;
        for (const Vec& w : probe) {
            const double form = w.dot(H * w);
            if (form <= 0.0) {
                x_nonempty = true;
                min_form = std::min(min_form, form);
                mu = std::min(mu, std::abs(g.dot(w)));
            }
        }
        if (!x_nonempty) continue;
        if (mu <= 1e-8)
            throw NotStronglyConvexError(
                "strong_convexify: X_P contains a near-tangent direction (mu <= 1e-8)");
        lambda = std::max(lambda, -min_form / (mu * mu) + 1.0);
    }
    const std::vector<double> offsets = {0.0, 0.01, -0.01, 0.005, -0.005};
    for (int doubling = 0;; ++doubling) {
        const ScalarField rt = exp_convexified(d.rho(), lambda);
        double cmin = std::numeric_limits<double>::infinity();
        for (const auto& bp : pts) {
            for (double off : offsets) {
                const Vec x = bp.location + off * bp.normal;
                Eigen::SelfAdjointEigenSolver<Mat> es(rt.hessian(x));
                cmin = std::min(cmin, es.eigenvalues()[0]);
            }
        }
        if (cmin >= 1e-10) {
            ConvexificationResult r{lambda, rt, cmin, boundary_samples};
            return r;
        }
        if (doubling >= 60)
            throw NotStronglyConvexError(
                "strong_convexify: certificate failed to verify (min eigenvalue " +
                std::to_string(cmin) + ")");
        lambda *= 2.0;
    }
}

/// Taylor-expansion witness for a negative tangential form value: a normal
/// push eps with rho > 0 at t = 0 and rho < 0 at |t| = 2*sqrt(2 eps / K).
struct TaylorWitness {
    enum class Status { Confirmed, Inconclusive } status = Status::Inconclusive;
    double eps = 0.0;
    double t = 0.0;
    Vec q_out, q_in;
};

inline TaylorWitness nonconvexity_witness(const DomainSpec& d, const BoundaryPoint& P,
                                          const Vec& w) {
    const double form = restricted_form(d, P, w);
    if (!(form < 0.0))
        throw std::invalid_argument("nonconvexity_witness: form value is non-negative");
    const Vec wn = w / w.norm();
    const double K_unit = -0.5 * restricted_form(d, P, wn);
    TaylorWitness out;
    for (double eps = 1e-2; eps >= 1e-12; eps *= 0.5) {
        const Vec q0 = P.location + eps * P.normal;
        if (!(d.rho()(q0) > 0.0)) continue;
        const double t = 2.0 * std::sqrt(2.0 * eps / K_unit);
        for (double sign : {1.0, -1.0}) {
            const Vec qt = P.location + sign * t * wn + eps * P.normal;
            if (!d.bbox().contains(qt)) continue;
            if (d.rho()(qt) < 0.0) {
                out.status = TaylorWitness::Status::Confirmed;
                out.eps = eps;
                out.t = sign * t;
                out.q_out = q0;
                out.q_in = qt;
                return out;
            }
        }
    }
    return out;  // inconclusive
}

/// Inner approximation rho_eps = rho + eps|x|^{2M}/M; requires 0 interior.
inline DomainSpec inner_strongly_convex_approx(const DomainSpec& d, double eps, int M) {
    if (!(eps > 0.0)) throw std::invalid_argument("inner approx: eps must be positive");
    if (M < 1) throw std::invalid_argument("inner approx: M must be >= 1");
    const Vec zero = Vec::Zero(d.dim());
    if (!d.contains(zero))
        throw std::invalid_argument("inner approx: origin is not interior to the domain");
    ScalarField bump = ScalarField::squared_norm(d.dim()).pow(M).scaled(eps / M);
    return DomainSpec(d.name() + "_inner", d.rho() + bump, d.bbox(), d.smoothness());
}

/// Image domain {x : rho(A^{-1}(x - b)) < 0} under an invertible affine map.
inline DomainSpec transform_domain(const DomainSpec& d, const Mat& A, const Vec& b) {
    if (A.rows() != d.dim() || A.cols() != d.dim() || b.size() != d.dim())
        throw std::invalid_argument("transform_domain: shape mismatch");
    const double det = A.determinant();
    if (std::abs(det) <= 1e-12) throw std::invalid_argument("transform_domain: singular matrix");
    const Mat Ainv = A.inverse();
    ScalarField rho = d.rho().compose_affine(Ainv, Vec(-Ainv * b));
    BBox box;
    box.lo = Vec::Constant(d.dim(), std::numeric_limits<double>::infinity());
    box.hi = Vec::Constant(d.dim(), -std::numeric_limits<double>::infinity());
    for (const Vec& c : d.bbox().corners()) {
        const Vec y = A * c + b;
        box.lo = box.lo.cwiseMin(y);
        box.hi = box.hi.cwiseMax(y);
    }
    return DomainSpec(d.name() + "_mapped", std::move(rho), std::move(box), d.smoothness());
}

}  // namespace convexlab
