#pragma once

#include "convexlab/convexity.hpp"
#include "convexlab/order.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <optional>

namespace convexlab {

/// Dense univariate polynomial, ascending coefficients.
struct Poly1D {
    std::vector<double> coef;

    double operator()(double x) const {
        double s = 0.0;
        for (size_t i = coef.size(); i-- > 0;) s = s * x + coef[i];
        return s;
    }

    double derivative(double x, int order = 1) const {
        double s = 0.0;
        for (size_t i = coef.size(); i-- > static_cast<size_t>(order);) {
            double f = 1.0;
            for (int j = 0; j < order; ++j) f *= static_cast<double>(i - static_cast<size_t>(j));
            s = s * x + f * coef[i];
        }
        return s;
    }

    int degree() const {
        for (size_t i = coef.size(); i-- > 0;)
            if (coef[i] != 0.0) return static_cast<int>(i);
        return 0;
    }
};

/// Hermite data for the concave bump lemma: values and k derivatives at
/// +-a plus the raised center value gamma0.
struct BumpData {
    double a = 0.0;
    std::vector<double> alpha;  // value + derivatives at -a (size k+1)
    std::vector<double> beta;   // value + derivatives at +a
    double gamma0 = 0.0;
    int k = 1;
};

namespace detail {

struct HermiteCondition {
    double xi;     // scaled abscissa in [-1, 1]
    int order;     // derivative order
    double value;  // required value (scaled)
};

/// Solves for a polynomial of degree conditions.size()-1 in the scaled
/// variable xi = x/a; returns unscaled coefficients.
inline Poly1D hermite_solve(double a, const std::vector<HermiteCondition>& conds) {
    const int n = static_cast<int>(conds.size());
    Mat A(n, n);
    Vec b(n);
    for (int r = 0; r < n; ++r) {
        const auto& c = conds[static_cast<size_t>(r)];
        for (int i = 0; i < n; ++i) {
            if (i < c.order) {
                A(r, i) = 0.0;
                continue;
            }
            double f = 1.0;
            for (int j = 0; j < c.order; ++j) f *= static_cast<double>(i - j);
            A(r, i) = f * detail::ipow(c.xi, i - c.order);
        }
        b[r] = c.value;
    }
    Eigen::FullPivLU<Mat> lu(A);
    if (!lu.isInvertible())
        throw std::invalid_argument("bump polynomial: singular interpolation system");
    const Vec q = lu.solve(b);
    const double resid = (A * q - b).norm();
    if (resid > 1e-9 * (1.0 + b.norm()))
        throw std::runtime_error("bump polynomial: interpolation residual too large");
    Poly1D p;
    p.coef.resize(static_cast<size_t>(n));
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        p.coef[static_cast<size_t>(i)] = q[i] * scale;
        scale /= a;
    }
    return p;
}

}  // namespace detail

/// Minimal-degree concave polynomial through the Hermite data: solved as a
/// square linear system in the scaled variable, then concavity-scanned.
/// Additional vanishing center derivatives support the order-choice bumps.
inline Poly1D bump_polynomial(const BumpData& data, const std::vector<int>& zero_center_derivs = {},
                              int concavity_samples = 256) {
    if (!(data.a > 0.0)) throw std::invalid_argument("bump_polynomial: a must be positive");
    if (data.k < 1) throw std::invalid_argument("bump_polynomial: k must be >= 1");
    if (static_cast<int>(data.alpha.size()) != data.k + 1 ||
        static_cast<int>(data.beta.size()) != data.k + 1)
        throw std::invalid_argument("bump_polynomial: need k+1 values on each side");
    if (data.gamma0 < 0.5 * (data.alpha[0] + data.beta[0]) - 1e-12)
        throw InfeasibleBumpError(
            "bump_polynomial: gamma0 lies below the chord midpoint (concavity impossible)");
    std::vector<detail::HermiteCondition> conds;
    conds.push_back({0.0, 0, data.gamma0});
    for (int i : zero_center_derivs) conds.push_back({0.0, i, 0.0});
    for (int j = 0; j <= data.k; ++j) {
        conds.push_back({-1.0, j, data.alpha[static_cast<size_t>(j)] * detail::ipow(data.a, j)});
        conds.push_back({1.0, j, data.beta[static_cast<size_t>(j)] * detail::ipow(data.a, j)});
    }
    Poly1D p = detail::hermite_solve(data.a, conds);
    for (int s = 0; s <= concavity_samples; ++s) {
        const double x = -data.a + 2.0 * data.a * s / concavity_samples;
        const double dd = p.derivative(x, 2);
        if (dd > 1e-10)
            throw InfeasibleBumpError("bump_polynomial: concavity violated at x = " +
                                      std::to_string(x) + " (p'' = " + std::to_string(dd) + ")");
    }
    return p;
}

/// A boundary patch written as a concave-down graph v = phi(s) in a local
/// orthonormal frame (x = origin + s*tangent + v*normal), over the window
/// |s| <= half_width, patched into an ambient domain.
class GraphDomain2D {
public:
    GraphDomain2D(DomainSpec ambient, Vec origin, Vec tangent_axis, Vec normal_axis,
                  ScalarField phi_1d, double half_width)
        : ambient_(std::move(ambient)), origin_(std::move(origin)),
          t_(tangent_axis / tangent_axis.norm()), n_(normal_axis / normal_axis.norm()),
          phi_(std::move(phi_1d)), a_(half_width) {
        if (ambient_.dim() != 2) throw std::invalid_argument("GraphDomain2D: 2D only");
        if (phi_.dim() != 1) throw std::invalid_argument("GraphDomain2D: phi must be univariate");
        if (!(a_ > 0.0)) throw std::invalid_argument("GraphDomain2D: half_width must be positive");
        if (std::abs(t_.dot(n_)) > 1e-10)
            throw std::invalid_argument("GraphDomain2D: frame is not orthogonal");
        for (int s = 0; s <= 128; ++s) {
            const double x = -a_ + 2.0 * a_ * s / 128.0;
            if (phi_derivative(x, 2) > 1e-10)
                throw std::invalid_argument("GraphDomain2D: phi is not concave on the window");
        }
    }

    const DomainSpec& ambient() const { return ambient_; }
    const ScalarField& phi_field() const { return phi_; }
    double half_width() const { return a_; }

    double phi(double s) const {
        Vec v(1);
        v[0] = s;
        return phi_(v);
    }

    double phi_derivative(double s, int order) const {
        Vec v(1);
        v[0] = s;
        if (order == 0) return phi_(v);
        if (order == 1) return phi_.gradient(v)[0];
        if (order == 2) return phi_.hessian(v)(0, 0);
        // higher orders by central differences of the exact second derivative
        const double h = 1e-4 * std::max(1.0, std::abs(s));
        return (phi_derivative(s + h, order - 1) - phi_derivative(s - h, order - 1)) / (2.0 * h);
    }

    Vec to_world(double s, double v) const { return origin_ + s * t_ + v * n_; }

    std::pair<double, double> to_local(const Vec& x) const {
        const Vec r = x - origin_;
        return {r.dot(t_), r.dot(n_)};
    }

    /// World point the bump is centered on.
    Vec center_point() const { return to_world(0.0, phi(0.0)); }

    /// Membership of the candidate bumped domain Omega union the lens
    /// {|s| < a, phi(s) <= v < p(s)}.
    bool patched_member(const Poly1D& p, const Vec& x) const {
        if (ambient_.contains(x)) return true;
        const auto [s, v] = to_local(x);
        if (std::abs(s) >= a_) return false;
        return v >= phi(s) - 1e-12 && v < p(s);
    }

    GraphDomain2D with_phi(ScalarField new_phi) const {
        return GraphDomain2D(ambient_, origin_, t_, n_, std::move(new_phi), a_);
    }

private:
    DomainSpec ambient_;
    Vec origin_, t_, n_;
    ScalarField phi_;
    double a_;
};

/// Leading vanishing order of the graph against its tangent line at s = 0;
/// nullopt when the graph is flat below the probe floor.
inline std::optional<int> graph_contact_order(const GraphDomain2D& g, int /*cutoff*/ = 12) {
    const double f0 = g.phi(0.0);
    const double d0 = g.phi_derivative(0.0, 1);
    int max_order = 0;
    for (double sign : {1.0, -1.0}) {
        DirectionProbe p = detail::fit_vanishing_order(
            [&](double s) { return g.phi(sign * s) - f0 - d0 * sign * s; });
        if (p.below_floor) return std::nullopt;
        if (p.residual > 0.2)
            throw IndeterminateOrderError("graph_contact_order: slope " + std::to_string(p.slope) +
                                          " not near an integer");
        max_order = std::max(max_order, p.rounded);
    }
    return max_order;
}

struct BumpResult {
    GraphDomain2D bumped;
    Poly1D p;
    double hausdorff = 0.0;  // max over the window of p - phi
    double lift = 0.0;       // p(0) - phi(0)
};

namespace detail {

inline ScalarField piecewise_graph_field(const GraphDomain2D& g, const Poly1D& p) {
    const ScalarField phi = g.phi_field();
    const double a = g.half_width();
    auto inside = [a](double s) { return std::abs(s) < a; };
    return ScalarField::composite("bumped(" + phi.name() + ")", 1, phi.smoothness(),
                                  [phi, p, inside](const Vec& x) {
                                      return inside(x[0]) ? p(x[0]) : phi(x);
                                  })
        .with_gradient([phi, p, inside](const Vec& x) {
            Vec gr(1);
            gr[0] = inside(x[0]) ? p.derivative(x[0], 1) : phi.gradient(x)[0];
            return gr;
        })
        .with_hessian([phi, p, inside](const Vec& x) {
            Mat h(1, 1);
            h(0, 0) = inside(x[0]) ? p.derivative(x[0], 2) : phi.hessian(x)(0, 0);
            return h;
        });
}

struct BumpAttemptLog {
    std::string last_failure;
};

inline std::optional<Poly1D> attempt_bump(const GraphDomain2D& g, double lift, double eps, int k,
                                          const std::vector<int>& zero_center_derivs,
                                          uint64_t seed, BumpAttemptLog& log, double* hausdorff) {
    const double a = g.half_width();
    BumpData data;
    data.a = a;
    data.k = k;
    data.gamma0 = g.phi(0.0) + lift;
    for (int j = 0; j <= k; ++j) {
        data.alpha.push_back(g.phi_derivative(-a, j));
        data.beta.push_back(g.phi_derivative(a, j));
    }
    Poly1D p;
    try {
        p = bump_polynomial(data, zero_center_derivs);
    } catch (const InfeasibleBumpError& e) {
        log.last_failure = e.what();
        return std::nullopt;
    }
    // (a) the bump must not dip below the old boundary, (d) Hausdorff < eps
    double max_gap = 0.0;
    for (int s = 0; s <= 256; ++s) {
        const double x = -a + 2.0 * a * s / 256.0;
        const double gap = p(x) - g.phi(x);
        if (gap < -1e-10) {
            log.last_failure = "bump dips below the boundary at s = " + std::to_string(x);
            return std::nullopt;
        }
        max_gap = std::max(max_gap, gap);
    }
    if (!(max_gap < eps)) {
        log.last_failure = "Hausdorff bound exceeded (" + std::to_string(max_gap) + ")";
        return std::nullopt;
    }
    // (c) candidate domain convexity, synthetic oracle with lens seeds
    std::vector<Vec> pts;
    for (double s : {0.0, a / 2.0, -a / 2.0, a / 4.0, -a / 4.0})
        pts.push_back(g.to_world(s, 0.5 * (g.phi(s) + p(s))));
    const auto ambient_pts = interior_points(g.ambient(), 2 * 1000, seed, 0xb4a2ull);
    std::vector<Vec> paired;
    for (size_t i = 0; i < pts.size(); ++i) {
        paired.push_back(pts[i]);
        paired.push_back(ambient_pts[i]);
    }
    paired.insert(paired.end(), ambient_pts.begin() + static_cast<long>(pts.size()),
                  ambient_pts.end());
    const OracleResult oracle =
        segment_oracle([&](const Vec& x) { return g.patched_member(p, x); }, paired);
    if (!oracle.convex) {
        log.last_failure = "candidate domain failed the convexity oracle";
        return std::nullopt;
    }
    *hausdorff = max_gap;
    return p;
}

}  // namespace detail

/// Outward bump of the graph window: replaces phi by a concave Hermite
/// polynomial matched to order k at +-a, raised at the center, verified for
/// containment, Hausdorff distance < eps, and global convexity.
inline BumpResult bump_domain_2d(const GraphDomain2D& g, double eps, int k, uint64_t seed = 0,
                                 const std::vector<int>& zero_center_derivs = {}) {
    if (!(eps > 0.0)) throw std::invalid_argument("bump_domain_2d: eps must be positive");
    if (k < 1) throw std::invalid_argument("bump_domain_2d: k must be >= 1");
    const double a = g.half_width();
    const double turn =
        std::abs(std::atan(g.phi_derivative(a, 1)) - std::atan(g.phi_derivative(-a, 1)));
    if (!(turn < std::numbers::pi / 6.0))
        throw std::invalid_argument("bump_domain_2d: tangent turning across the window >= pi/6");
    const std::optional<int> order = graph_contact_order(g);
    detail::BumpAttemptLog log;
    const double base_lift = std::min(eps / 2.0, a * a / 16.0);
    for (int i = 0; i < 24; ++i) {
        const double lift = base_lift * std::ldexp(1.0, -i);
        double hausdorff = 0.0;
        auto p = detail::attempt_bump(g, lift, eps, k, zero_center_derivs, seed, log, &hausdorff);
        if (p) {
            BumpResult r{g.with_phi(detail::piecewise_graph_field(g, *p)), *p, hausdorff, lift};
            return r;
        }
    }
    if (!order)
        throw FlatPointError("bump_domain_2d: flat point cannot be bumped (" + log.last_failure +
                             ")");
    throw MathFailure("bump_domain_2d: no admissible bump found (" + log.last_failure + ")");
}

/// Bump whose center has the prescribed finite contact order (<= the order
/// of the original point): vanishing center derivatives force the leading
/// term, then the order is re-verified on the bumped graph.
inline BumpResult bump_order_choice(const GraphDomain2D& g, int target_order, double eps = 1e-2,
                                    int k = 1, uint64_t seed = 0) {
    const std::optional<int> m = graph_contact_order(g);
    if (!m) throw FlatPointError("bump_order_choice: center has infinite order");
    if (target_order < 2 || target_order % 2 != 0)
        throw std::invalid_argument("bump_order_choice: target order must be a positive even integer");
    if (target_order > *m)
        throw std::invalid_argument("bump_order_choice: target order exceeds the center order " +
                                    std::to_string(*m));
    std::vector<int> zeros;
    for (int i = 2; i < target_order; ++i) zeros.push_back(i);
    BumpResult r = bump_domain_2d(g, eps, k, seed, zeros);
    const std::optional<int> got = graph_contact_order(r.bumped);
    if (!got || *got != target_order)
        throw MathFailure("bump_order_choice: bumped center order " +
                          (got ? std::to_string(*got) : std::string("infinite")) +
                          " != target " + std::to_string(target_order));
    return r;
}

}  // namespace convexlab
