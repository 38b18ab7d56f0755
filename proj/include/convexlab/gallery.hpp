#pragma once

#include "convexlab/bump.hpp"
#include "convexlab/hulls.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace convexlab {
namespace gallery {

namespace detail2 {

inline Monomial m2(int e1, int e2, double c) { return Monomial{{e1, e2}, c}; }
inline Monomial m3(int e1, int e2, int e3, double c) { return Monomial{{e1, e2, e3}, c}; }

}  // namespace detail2

/// |x|^2 - 1 in the plane.
inline DomainSpec ball2() {
    using detail2::m2;
    return DomainSpec("ball2",
                      ScalarField::polynomial(2, {m2(2, 0, 1), m2(0, 2, 1), m2(0, 0, -1)}),
                      BBox::cube(2, -1.5, 1.5), kSmoothnessInf);
}

inline DomainSpec ball3() {
    using detail2::m3;
    return DomainSpec(
        "ball3",
        ScalarField::polynomial(3, {m3(2, 0, 0, 1), m3(0, 2, 0, 1), m3(0, 0, 2, 1),
                                    m3(0, 0, 0, -1)}),
        BBox::cube(3, -1.5, 1.5), kSmoothnessInf);
}

/// E_m = {x1^2 + x2^(2m) < 1}: weakly convex of order 2m at (+-1, 0).
inline DomainSpec em(int m) {
    if (m < 1) throw std::invalid_argument("gallery::em: m must be >= 1");
    using detail2::m2;
    return DomainSpec("em:" + std::to_string(m),
                      ScalarField::polynomial(2, {m2(2, 0, 1), m2(0, 2 * m, 1), m2(0, 0, -1)}),
                      BBox::cube(2, -1.5, 1.5), kSmoothnessInf);
}

/// x1^2/4 + x2^2 - 1: the diag(2,1) image of the ball.
inline DomainSpec ellipse() {
    using detail2::m2;
    return DomainSpec("ellipse",
                      ScalarField::polynomial(2, {m2(2, 0, 0.25), m2(0, 2, 1), m2(0, 0, -1)}),
                      BBox::of({-2.5, -1.5}, {2.5, 1.5}), kSmoothnessInf);
}

/// (2 + x1)(|x|^2 - 1): the ball with a non-trivially rescaled defining
/// function; the bbox keeps the spurious far branch of {rho < 0} outside.
inline DomainSpec distorted_ball() {
    using detail2::m2;
    ScalarField h = ScalarField::polynomial(2, {m2(0, 0, 2), m2(1, 0, 1)});
    ScalarField ball = ScalarField::polynomial(2, {m2(2, 0, 1), m2(0, 2, 1), m2(0, 0, -1)});
    return DomainSpec("distorted-ball", h * ball, BBox::cube(2, -1.4, 1.4), kSmoothnessInf);
}

/// B((0,0),2) minus the closed disk B((1,0),1): rho = (|x|^2-4)(|x-e1|^2-1).
inline DomainSpec annulus() {
    using detail2::m2;
    ScalarField outer = ScalarField::polynomial(2, {m2(2, 0, 1), m2(0, 2, 1), m2(0, 0, -4)});
    ScalarField inner = ScalarField::polynomial(2, {m2(2, 0, 1), m2(0, 2, 1), m2(1, 0, -2)});
    return DomainSpec("annulus", outer * inner, BBox::cube(2, -2.2, 2.2), kSmoothnessInf);
}

/// x2^2 - x1^2 + x1^4 - 0.05: two lobes joined by a non-convex waist. The
/// boundary points nearest the origin, (0, +-sqrt(0.05)), are saddles with
/// witness direction (+-1, 0).
inline DomainSpec peanut() {
    using detail2::m2;
    return DomainSpec(
        "peanut",
        ScalarField::polynomial(2, {m2(0, 2, 1), m2(2, 0, -1), m2(4, 0, 1), m2(0, 0, -0.05)}),
        BBox::of({-1.3, -0.8}, {1.3, 0.8}), kSmoothnessInf);
}

/// x1^4 + x2^2 + x3^2 - 1: the boundary circle {x1 = 0} is convex of order 4,
/// every other boundary point (including (1,0,0)) of order 2.
inline DomainSpec e3d() {
    using detail2::m3;
    return DomainSpec(
        "e3d",
        ScalarField::polynomial(3, {m3(4, 0, 0, 1), m3(0, 2, 0, 1), m3(0, 0, 2, 1),
                                    m3(0, 0, 0, -1)}),
        BBox::cube(3, -1.5, 1.5), kSmoothnessInf);
}

/// x2 - x1^2 clipped to the box: the region below an upward parabola, not
/// convex at the origin (witness (+-1, 0)).
inline DomainSpec cap() {
    using detail2::m2;
    return DomainSpec("cap", ScalarField::polynomial(2, {m2(0, 1, 1), m2(2, 0, -1)}),
                      BBox::of({-1.0, -1.0}, {1.0, 1.0}), kSmoothnessInf);
}

namespace detail2 {

/// 1 on |t| <= 1/4, then 1 - exp(-1/(|t|-1/4)): C^inf, flat to infinite
/// order at |t| = 1/4, concave for |t| < 3/4.
inline double flat_profile(double t) {
    const double s = std::abs(t) - 0.25;
    if (s <= 0.0) return 1.0;
    return 1.0 - std::exp(-1.0 / s);
}

inline double flat_profile_d1(double t) {
    const double s = std::abs(t) - 0.25;
    if (s <= 0.0) return 0.0;
    const double sign = t < 0.0 ? -1.0 : 1.0;
    return -sign * std::exp(-1.0 / s) / (s * s);
}

inline double flat_profile_d2(double t) {
    const double s = std::abs(t) - 0.25;
    if (s <= 0.0) return 0.0;
    return -std::exp(-1.0 / s) * (1.0 - 2.0 * s) / (s * s * s * s);
}

}  // namespace detail2

/// Domain under the flat-capped graph x2 = flat_profile(x1): convex, with a
/// genuinely flat boundary segment {|x1| <= 1/4, x2 = 1}.
inline DomainSpec flatcap() {
    ScalarField rho =
        ScalarField::composite("flatcap_rho", 2, kSmoothnessInf,
                               [](const Vec& x) { return x[1] - detail2::flat_profile(x[0]); })
            .with_gradient([](const Vec& x) {
                Vec g(2);
                g[0] = -detail2::flat_profile_d1(x[0]);
                g[1] = 1.0;
                return g;
            })
            .with_hessian([](const Vec& x) {
                Mat h = Mat::Zero(2, 2);
                h(0, 0) = -detail2::flat_profile_d2(x[0]);
                return h;
            });
    return DomainSpec("flatcap", std::move(rho), BBox::of({-0.7, -0.5}, {0.7, 1.2}),
                      kSmoothnessInf);
}

inline Polytope square() { return Polytope::square(1.0); }

inline RoundedSquare rounded_square() { return RoundedSquare{}; }

// --- boundary graphs for the bumping machinery ---

/// Top of the unit circle: phi(s) = sqrt(1 - s^2), order 2 at the center.
inline GraphDomain2D circle_graph(double half_width = 0.2) {
    ScalarField phi =
        ScalarField::composite("circle_top", 1, kSmoothnessInf,
                               [](const Vec& s) { return std::sqrt(1.0 - s[0] * s[0]); })
            .with_gradient([](const Vec& s) {
                Vec g(1);
                g[0] = -s[0] / std::sqrt(1.0 - s[0] * s[0]);
                return g;
            })
            .with_hessian([](const Vec& s) {
                Mat h(1, 1);
                h(0, 0) = -1.0 / std::pow(1.0 - s[0] * s[0], 1.5);
                return h;
            });
    return GraphDomain2D(ball2(), Vec::Zero(2), make_vec({1.0, 0.0}), make_vec({0.0, 1.0}),
                         std::move(phi), half_width);
}

/// Top of E_2: phi(s) = (1 - s^2)^{1/4} near (0, 1), order 2 at the center.
inline GraphDomain2D em2_top_graph(double half_width = 0.3) {
    ScalarField phi =
        ScalarField::composite("em2_top", 1, kSmoothnessInf,
                               [](const Vec& s) { return std::pow(1.0 - s[0] * s[0], 0.25); })
            .with_gradient([](const Vec& s) {
                Vec g(1);
                g[0] = -0.5 * s[0] * std::pow(1.0 - s[0] * s[0], -0.75);
                return g;
            })
            .with_hessian([](const Vec& s) {
                Mat h(1, 1);
                const double q = 1.0 - s[0] * s[0];
                h(0, 0) = -0.5 * std::pow(q, -0.75) - 0.75 * s[0] * s[0] * std::pow(q, -1.75);
                return h;
            });
    return GraphDomain2D(em(2), Vec::Zero(2), make_vec({1.0, 0.0}), make_vec({0.0, 1.0}),
                         std::move(phi), half_width);
}

/// The flat side of E_2 at (1, 0): phi(s) = sqrt(1 - s^4) in the frame with
/// tangent (0,1), normal (1,0); order 4 at the center.
inline GraphDomain2D em2_flat_graph(double half_width = 0.4) {
    ScalarField phi =
        ScalarField::composite("em2_flat", 1, kSmoothnessInf,
                               [](const Vec& s) {
                                   const double s4 = s[0] * s[0] * s[0] * s[0];
                                   return std::sqrt(1.0 - s4);
                               })
            .with_gradient([](const Vec& s) {
                Vec g(1);
                const double s4 = s[0] * s[0] * s[0] * s[0];
                g[0] = -2.0 * s[0] * s[0] * s[0] / std::sqrt(1.0 - s4);
                return g;
            })
            .with_hessian([](const Vec& s) {
                Mat h(1, 1);
                const double s2 = s[0] * s[0];
                const double s4 = s2 * s2;
                h(0, 0) = -6.0 * s2 / std::sqrt(1.0 - s4) -
                          4.0 * s4 * s2 / std::pow(1.0 - s4, 1.5);
                return h;
            });
    return GraphDomain2D(em(2), Vec::Zero(2), make_vec({0.0, 1.0}), make_vec({1.0, 0.0}),
                         std::move(phi), half_width);
}

/// Window inside the flat segment of the flatcap: bumping here must fail.
inline GraphDomain2D flatcap_graph(double half_width = 0.2) {
    ScalarField phi =
        ScalarField::composite("flatcap_top", 1, kSmoothnessInf,
                               [](const Vec& s) { return detail2::flat_profile(s[0]); })
            .with_gradient([](const Vec& s) {
                Vec g(1);
                g[0] = detail2::flat_profile_d1(s[0]);
                return g;
            })
            .with_hessian([](const Vec& s) {
                Mat h(1, 1);
                h(0, 0) = detail2::flat_profile_d2(s[0]);
                return h;
            });
    return GraphDomain2D(flatcap(), Vec::Zero(2), make_vec({1.0, 0.0}), make_vec({0.0, 1.0}),
                         std::move(phi), half_width);
}

/// Smooth-domain gallery entries by name (em:m parses the exponent).
inline DomainSpec domain(const std::string& name) {
    if (name == "ball2") return ball2();
    if (name == "ball3") return ball3();
    if (name == "ellipse") return ellipse();
    if (name == "distorted-ball") return distorted_ball();
    if (name == "annulus") return annulus();
    if (name == "peanut") return peanut();
    if (name == "e3d") return e3d();
    if (name == "cap") return cap();
    if (name == "flatcap") return flatcap();
    if (name.rfind("em:", 0) == 0) return em(std::stoi(name.substr(3)));
    throw std::invalid_argument("unknown gallery domain '" + name + "'");
}

inline std::vector<std::string> names() {
    return {"ball2",   "ball3",  "em:1",    "em:2", "em:3",          "em:4",
            "ellipse", "distorted-ball",    "annulus", "peanut",     "e3d",
            "cap",     "flatcap", "square", "rounded-square"};
}

/// Smooth convex gallery functions for the Hessian-based checks.
inline std::vector<ScalarField> convex_functions(int dim = 2) {
    std::vector<ScalarField> fns;
    fns.push_back(ScalarField::squared_norm(dim));
    fns.push_back(ScalarField::coordinate(dim, 0).pow(2));
    fns.push_back(ScalarField::composite("exp_x1", dim, kSmoothnessInf,
                                         [](const Vec& x) { return std::exp(x[0]); }));
    {
        std::vector<Monomial> aniso;
        for (int i = 0; i < dim; ++i) {
            std::vector<int> e(static_cast<size_t>(dim), 0);
            e[static_cast<size_t>(i)] = 2;
            aniso.push_back(Monomial{std::move(e), 1.0 + 2.0 * i});
        }
        fns.push_back(ScalarField::polynomial(dim, std::move(aniso)));
    }
    fns.push_back(ScalarField::composite("cosh_x1", dim, kSmoothnessInf, [](const Vec& x) {
        return std::cosh(x[0]);
    }));
    return fns;
}

/// |x1|: convex but only C^0, used by the mollification examples.
inline ScalarField abs_x1(int dim = 2) {
    return ScalarField::composite("abs_x1", dim, 0,
                                  [](const Vec& x) { return std::abs(x[0]); });
}

/// max(x1, 0): convex, C^0.
inline ScalarField relu_x1(int dim = 2) {
    return ScalarField::composite("relu_x1", dim, 0,
                                  [](const Vec& x) { return std::max(x[0], 0.0); });
}

}  // namespace gallery
}  // namespace convexlab
