#pragma once

#include "convexlab/convexity.hpp"
#include "convexlab/distance.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace convexlab {

/// The radial C_c^inf bump c_N * exp(-1/(1-|u|^2)) on |u| < 1, normalized to
/// unit integral, with analytic second derivatives for the distributional
/// convexity test.
class MollifierProfile {
public:
    explicit MollifierProfile(int dim) : dim_(dim) {
        if (dim < 1 || dim > 4) throw std::invalid_argument("MollifierProfile: dim in [1,4]");
        c_ = 1.0 / (sphere_surface(dim) * radial_integral(dim - 1));
    }

    int dim() const { return dim_; }
    double normalization() const { return c_; }

    double value(const Vec& u) const { return radial_value(u.squaredNorm()); }

    double radial_value(double r2) const {
        if (r2 >= 1.0) return 0.0;
        return c_ * std::exp(-1.0 / (1.0 - r2));
    }

    /// Analytic Hessian of the bump at u (zero outside the support).
    Mat hessian(const Vec& u) const {
        const double r2 = u.squaredNorm();
        Mat H = Mat::Zero(dim_, dim_);
        if (r2 >= 1.0) return H;
        const double q = 1.0 - r2;
        const double phi = c_ * std::exp(-1.0 / q);
        const Vec dg = -2.0 / (q * q) * u;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                const double d2g = -2.0 * (i == j ? 1.0 : 0.0) / (q * q) -
                                   8.0 * u[i] * u[j] / (q * q * q);
                H(i, j) = phi * (dg[i] * dg[j] + d2g);
            }
        return H;
    }

    /// integral of |u|^2 phi(u) du (dense radial midpoint rule).
    double second_moment(int steps = 200001) const {
        return sphere_surface(dim_) * c_ * radial_moment(dim_ + 1, steps);
    }

    struct Node {
        Vec u;
        double weight;  // includes the profile value and cell volume
    };

    /// Tensor midpoint quadrature over the support. Throws when the raw grid
    /// misses unit mass by more than 1e-6; weights are then normalized so
    /// the discrete rule integrates constants exactly.
    std::vector<Node> quadrature(int grid) const {
        if (grid < 3) throw std::invalid_argument("MollifierProfile: quadrature grid too small");
        std::vector<Node> nodes;
        const double h = 2.0 / grid;
        const long total = static_cast<long>(std::pow(grid, dim_));
        const double cell = std::pow(h, dim_);
        double raw = 0.0;
        Vec u(dim_);
        for (long k = 0; k < total; ++k) {
            long r = k;
            for (int i = 0; i < dim_; ++i) {
                u[i] = -1.0 + (r % grid + 0.5) * h;
                r /= grid;
            }
            const double v = value(u);
            if (v <= 0.0) continue;
            nodes.push_back(Node{u, v * cell});
            raw += v * cell;
        }
        if (std::abs(raw - 1.0) > 1e-6)
            throw std::invalid_argument("MollifierProfile: quadrature grid too coarse (mass " +
                                        std::to_string(raw) + ")");
        for (auto& n : nodes) n.weight /= raw;
        return nodes;
    }

    double raw_quadrature_mass(int grid) const {
        double raw = 0.0;
        const double h = 2.0 / grid;
        const double cell = std::pow(h, dim_);
        const long total = static_cast<long>(std::pow(grid, dim_));
        Vec u(dim_);
        for (long k = 0; k < total; ++k) {
            long r = k;
            for (int i = 0; i < dim_; ++i) {
                u[i] = -1.0 + (r % grid + 0.5) * h;
                r /= grid;
            }
            raw += value(u) * cell;
        }
        return raw;
    }

private:
    static double sphere_surface(int n) {
        switch (n) {
            case 1: return 2.0;
            case 2: return 2.0 * std::numbers::pi;
            case 3: return 4.0 * std::numbers::pi;
            case 4: return 2.0 * std::numbers::pi * std::numbers::pi;
        }
        return 0.0;
    }

    static double radial_moment(int power, int steps = 200001) {
        double s = 0.0;
        const double h = 1.0 / steps;
        for (int i = 0; i < steps; ++i) {
            const double r = (i + 0.5) * h;
            s += std::pow(r, power) * std::exp(-1.0 / (1.0 - r * r)) * h;
        }
        return s;
    }

    static double radial_integral(int power) { return radial_moment(power); }

    int dim_;
    double c_;
};

/// Convex exhaustion of a convex domain: -log(distance to boundary), or the
/// max-form max(-log delta, |x|^2). Blows up at the boundary; sublevel sets
/// are compactly contained.
class ExhaustionFunction {
public:
    enum class Base { NegLogDistance, MaxForm };

    double operator()(const Vec& x) const {
        if (!d_.contains(x))
            throw std::invalid_argument("ExhaustionFunction: x is not interior");
        const double delta = cloud_->refined_distance(x);
        const double nld = -std::log(std::max(delta, 1e-300));
        return base_ == Base::NegLogDistance ? nld : std::max(nld, x.squaredNorm());
    }

    Base base() const { return base_; }
    const DomainSpec& domain() const { return d_; }
    const BoundaryCloud& cloud() const { return *cloud_; }

    /// Mollified exhaustion plus delta*|x|^2, as a smooth field backed by a
    /// fast nearest-cloud distance. Points outside the domain are assigned a
    /// large finite value so sublevel membership stays well defined.
    ScalarField smoothed(double eps, double delta, int quad_grid = 21,
                         int cloud_points = 512) const {
        if (!(eps > 0.0) || !(delta >= 0.0))
            throw std::invalid_argument("ExhaustionFunction::smoothed: bad parameters");
        auto fast_cloud = std::make_shared<BoundaryCloud>(d_, cloud_points, 0);
        MollifierProfile profile(d_.dim());
        auto nodes = std::make_shared<std::vector<MollifierProfile::Node>>(
            profile.quadrature(quad_grid));
        const DomainSpec dom = d_;
        const Base base = base_;
        auto raw = [fast_cloud, dom, base](const Vec& z) -> double {
            if (!dom.contains(z)) return 50.0 + z.squaredNorm();
            const double dist = std::max(fast_cloud->nearest(z), 1e-300);
            const double nld = -std::log(dist);
            return base == Base::NegLogDistance ? nld : std::max(nld, z.squaredNorm());
        };
        return ScalarField::composite(
                   "smoothed_exhaustion(" + d_.name() + ")", d_.dim(), kSmoothnessInf,
                   [raw, nodes, eps, delta](const Vec& x) {
                       double s = 0.0;
                       for (const auto& n : *nodes) s += n.weight * raw(x - eps * n.u);
                       return s + delta * x.squaredNorm();
                   })
            .with_fd_step(eps / 8.0);
    }

private:
    friend ExhaustionFunction neg_log_distance_field(const DomainSpec&, int, uint64_t);
    friend ExhaustionFunction max_exhaustion(const DomainSpec&, uint64_t);

    ExhaustionFunction(DomainSpec d, Base base, int cloud_points)
        : d_(std::move(d)), base_(base),
          cloud_(std::make_shared<BoundaryCloud>(d_, cloud_points, 0)) {}

    DomainSpec d_;
    Base base_;
    std::shared_ptr<const BoundaryCloud> cloud_;
};

/// -log delta_Omega as an exhaustion. Refuses non-convex domains (oracle),
/// then verifies midpoint convexity on sampled interior pairs.
inline ExhaustionFunction neg_log_distance_field(const DomainSpec& d, int verify_pairs = 10000,
                                                 uint64_t seed = 0) {
    const OracleResult oracle = geometric_convexity_oracle(d, 2000, seed);
    if (!oracle.convex)
        throw NotConvexDomainError("neg_log_distance_field: domain is not convex");
    ExhaustionFunction e(d, ExhaustionFunction::Base::NegLogDistance, 1024);
    if (verify_pairs > 0) {
        const double inset = 0.02 * d.bbox().diameter();
        auto pts = interior_points(d, 4 * verify_pairs, seed, 0xe4a11ull);
        int done = 0;
        for (size_t i = 0; i + 1 < pts.size() && done < verify_pairs; i += 2) {
            const Vec &a = pts[i], &b = pts[i + 1];
            if (e.cloud().nearest(a) < inset || e.cloud().nearest(b) < inset) continue;
            const Vec mid = 0.5 * (a + b);
            if (e(mid) > 0.5 * (e(a) + e(b)) + 1e-9)
                throw MathFailure("neg_log_distance_field: midpoint convexity violated");
            ++done;
        }
    }
    return e;
}

/// max(-log delta, |x|^2), the continuous convex exhaustion of the
/// existence theorem.
inline ExhaustionFunction max_exhaustion(const DomainSpec& d, uint64_t seed = 0) {
    const OracleResult oracle = geometric_convexity_oracle(d, 2000, seed);
    if (!oracle.convex) throw NotConvexDomainError("max_exhaustion: domain is not convex");
    return ExhaustionFunction(d, ExhaustionFunction::Base::MaxForm, 1024);
}

/// Convolution F * phi_eps by tensor midpoint quadrature over the mollifier
/// support. Verifies midpoint convexity of the input (cheap guard) and of
/// the result on sampled triples.
inline ScalarField mollify(const ScalarField& F, double eps, const MollifierProfile& profile,
                           int grid = 33, int verify_triples = 2000,
                           std::optional<BBox> box = std::nullopt) {
    if (!(eps > 0.0)) throw std::invalid_argument("mollify: eps must be positive");
    if (profile.dim() != F.dim()) throw std::invalid_argument("mollify: dimension mismatch");
    const BBox work = box ? *box : BBox::cube(F.dim(), -2.0, 2.0);
    auto nodes =
        std::make_shared<std::vector<MollifierProfile::Node>>(profile.quadrature(grid));
    ScalarField result =
        ScalarField::composite("mollified(" + F.name() + "," + std::to_string(eps) + ")", F.dim(),
                               kSmoothnessInf, [F, nodes, eps](const Vec& x) {
                                   double s = 0.0;
                                   for (const auto& n : *nodes) s += n.weight * F(x - eps * n.u);
                                   return s;
                               });
    if (verify_triples > 0) {
        UnitCubeSequence seq(2 * F.dim(), 0, 0x3a11ull);
        const Vec span = work.hi - work.lo;
        for (int i = 0; i < verify_triples; ++i) {
            const Vec u = seq.next();
            Vec a(F.dim()), b(F.dim());
            for (int j = 0; j < F.dim(); ++j) {
                a[j] = work.lo[j] + u[j] * span[j];
                b[j] = work.lo[j] + u[F.dim() + j] * span[j];
            }
            if (F(0.5 * (a + b)) > 0.5 * (F(a) + F(b)) + 1e-9)
                throw std::invalid_argument("mollify: input field is not convex on the work box");
            if (result(0.5 * (a + b)) > 0.5 * (result(a) + result(b)) + 1e-8)
                throw MathFailure("mollify: result failed the midpoint convexity test");
        }
    }
    return result;
}

/// f_j = F_{2^-j} + 2^-j |x|^2: smooth, strongly convex, decreasing to F.
inline ScalarField strongly_convex_smoothing_sequence(const ScalarField& F, int j, int grid = 33) {
    if (j < 1) throw std::invalid_argument("smoothing sequence: j must be >= 1");
    const double eps_j = std::ldexp(1.0, -j);
    MollifierProfile profile(F.dim());
    ScalarField fj = mollify(F, eps_j, profile, grid, 0) +
                     ScalarField::squared_norm(F.dim()).scaled(eps_j);
    return fj;
}

struct WeakConvexityResult {
    bool pass = true;
    std::vector<double> integrals;
    std::optional<std::pair<Vec, double>> certificate;  // first failing center and value
};

/// Distributional convexity test: integral of F(x) * w'(Hess phi_eps,c)w dx
/// for translated bump test functions, each required to be >= -1e-8. Uses
/// the profile's analytic second derivatives.
inline WeakConvexityResult weak_convexity_test(const ScalarField& F, const Vec& w,
                                               const std::vector<Vec>& centers, double eps,
                                               int grid = 129) {
    if (w.size() != F.dim()) throw std::invalid_argument("weak_convexity_test: dim mismatch");
    MollifierProfile profile(F.dim());
    WeakConvexityResult res;
    const double h = 2.0 / grid;
    const double cell = std::pow(h, F.dim());
    const long total = static_cast<long>(std::pow(grid, F.dim()));
    for (const Vec& c : centers) {
        double integral = 0.0;
        Vec u(F.dim());
        for (long k = 0; k < total; ++k) {
            long r = k;
            for (int i = 0; i < F.dim(); ++i) {
                u[i] = -1.0 + (r % grid + 0.5) * h;
                r /= grid;
            }
            if (u.squaredNorm() >= 1.0) continue;
            const Mat H = profile.hessian(u);
            integral += F(c + eps * u) * w.dot(H * w) * cell;
        }
        integral /= eps * eps;
        res.integrals.push_back(integral);
        if (integral < -1e-8 && !res.certificate) {
            res.pass = false;
            res.certificate = std::make_pair(c, integral);
        }
    }
    return res;
}

struct SubharmonicityResult {
    bool pass = true;
    double min_laplacian = std::numeric_limits<double>::infinity();
    double worst_mean_gap = std::numeric_limits<double>::infinity();  // min(mean - F)
};

/// Numerical Laplacian >= -1e-8 at sampled points plus the sphere sub-mean
/// property at radius 0.01 (symmetric direction set).
inline SubharmonicityResult subharmonicity_check(const ScalarField& F, int samples,
                                                 uint64_t seed = 0,
                                                 std::optional<BBox> box = std::nullopt,
                                                 int mean_checks = 100) {
    const BBox work = box ? *box : BBox::cube(F.dim(), -1.5, 1.5);
    SubharmonicityResult res;
    UnitCubeSequence seq(F.dim(), seed, 0x5a17ull);
    const Vec span = work.hi - work.lo;
    for (int i = 0; i < samples; ++i) {
        const Vec x = work.lo + seq.next().cwiseProduct(span);
        const double lap = F.hessian(x).trace();
        res.min_laplacian = std::min(res.min_laplacian, lap);
        if (lap < -1e-8) res.pass = false;
    }
    std::vector<Vec> dirs;
    for (const Vec& u : unit_direction_batch(F.dim(), F.dim() == 2 ? 32 : 128)) {
        dirs.push_back(u);
        dirs.push_back(-u);
    }
    UnitCubeSequence seq2(F.dim(), seed, 0x5a18ull);
    for (int i = 0; i < mean_checks; ++i) {
        const Vec x = work.lo + seq2.next().cwiseProduct(span);
        double mean = 0.0;
        for (const Vec& u : dirs) mean += F(x + 0.01 * u);
        mean /= static_cast<double>(dirs.size());
        const double gap = mean - F(x);
        res.worst_mean_gap = std::min(res.worst_mean_gap, gap);
        if (gap < -1e-10) res.pass = false;
    }
    return res;
}

/// Sublevel domains {smoothed exhaustion < c} for increasing levels: nested,
/// strongly convex, gradient bounded below on each level set.
inline std::vector<DomainSpec> sublevel_decomposition(const ExhaustionFunction& E,
                                                      const std::vector<double>& levels,
                                                      int samples_per_level = 24,
                                                      int quad_grid = 21, int cloud_points = 512,
                                                      uint64_t seed = 0) {
    if (levels.empty()) throw std::invalid_argument("sublevel_decomposition: no levels");
    for (size_t i = 1; i < levels.size(); ++i)
        if (!(levels[i] > levels[i - 1]))
            throw std::invalid_argument("sublevel_decomposition: levels must be strictly increasing");
    const double eps = std::min(0.05, std::exp(-levels.back()) / 4.0);
    const ScalarField S = E.smoothed(eps, eps, quad_grid, cloud_points);
    std::vector<DomainSpec> out;
    for (double c : levels) {
        ScalarField rho_c = S + ScalarField::constant(S.dim(), -c);
        char label[64];
        std::snprintf(label, sizeof(label), "%s_sublevel_%g", E.domain().name().c_str(), c);
        DomainSpec dc(label, std::move(rho_c), E.domain().bbox(), kSmoothnessInf);
        const auto pts = sample_boundary(dc, samples_per_level, seed);
        for (const auto& bp : pts) {
            if (S.gradient(bp.location).norm() < 1e-6)
                throw MathFailure("sublevel_decomposition: level " + std::to_string(c) +
                                  " is too close to a critical value");
            if (classify_point(dc, bp).cls != VerdictClass::StronglyConvex)
                throw MathFailure("sublevel_decomposition: sublevel boundary point not strongly "
                                  "convex at level " +
                                  std::to_string(c));
        }
        out.push_back(std::move(dc));
    }
    return out;
}

}  // namespace convexlab
