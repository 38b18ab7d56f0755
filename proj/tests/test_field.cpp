#include "convexlab/field.hpp"
#include "convexlab/gallery.hpp"
#include "convexlab/sampling.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace convexlab;

namespace {

ScalarField em2_field() { return gallery::em(2).rho(); }

ScalarField ball_field() {
    return ScalarField::polynomial(
        2, {Monomial{{2, 0}, 1.0}, Monomial{{0, 2}, 1.0}, Monomial{{0, 0}, -1.0}});
}

}  // namespace

TEST_CASE("polynomial evaluation is exact on the stated examples") {
    CHECK(em2_field()(make_vec({1.0, 0.0})) == 0.0);
    CHECK(ball_field()(make_vec({0.0, 0.0})) == -1.0);
    CHECK(gallery::distorted_ball().rho()(make_vec({0.0, 1.0})) == 0.0);
}

TEST_CASE("polynomial gradients and Hessians are exact") {
    CHECK(ball_field().gradient(make_vec({1.0, 0.0}))[0] == 2.0);
    CHECK(ball_field().gradient(make_vec({1.0, 0.0}))[1] == 0.0);
    const Vec g = em2_field().gradient(make_vec({0.0, 1.0}));
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 4.0);

    const Mat h_any = ball_field().hessian(make_vec({0.3, -0.7}));
    CHECK(h_any(0, 0) == 2.0);
    CHECK(h_any(1, 1) == 2.0);
    CHECK(h_any(0, 1) == 0.0);
    const Mat h1 = em2_field().hessian(make_vec({1.0, 0.0}));
    CHECK(h1(0, 0) == 2.0);
    CHECK(h1(1, 1) == 0.0);
    const Mat h2 = em2_field().hessian(make_vec({0.0, 1.0}));
    CHECK(h2(1, 1) == 12.0);
}

TEST_CASE("finite differences recover the closed-form gradient of -log(1-|x|)") {
    ScalarField f = ScalarField::composite("neg_log_radial", 2, kSmoothnessInf, [](const Vec& x) {
        return -std::log(1.0 - x.norm());
    });
    const Vec g = f.gradient(make_vec({0.5, 0.0}));
    // radial derivative of -log(1-r) at r=0.5 is 1/(1-r) = 2
    CHECK(std::abs(g[0] - 2.0) < 1e-6);
    CHECK(std::abs(g[1]) < 1e-6);
}

TEST_CASE("finite-difference fallback matches exact polynomial calculus") {
    const std::vector<ScalarField> polys = {em2_field(), ball_field(),
                                            gallery::distorted_ball().rho(),
                                            gallery::peanut().rho()};
    for (const auto& poly : polys) {
        // identical values through the composite (finite-difference) path
        ScalarField blind = ScalarField::composite("wrapped", poly.dim(), kSmoothnessInf,
                                                   [poly](const Vec& x) { return poly(x); });
        UnitCubeSequence seq(poly.dim(), 7);
        for (int i = 0; i < 100; ++i) {
            const Vec x = 4.0 * seq.next() - Vec::Constant(poly.dim(), 2.0);
            const Vec ge = poly.gradient(x);
            const Vec gf = blind.fd_gradient(x);
            CHECK((ge - gf).norm() <= 1e-6 * std::max(1.0, ge.norm()));
            const Mat he = poly.hessian(x);
            const Mat hf = blind.fd_hessian(x);
            CHECK((he - hf).norm() <= 1e-4 * std::max(1.0, he.norm()));
        }
    }
}

TEST_CASE("Hessian output is symmetric and calls are deterministic") {
    ScalarField f = ScalarField::composite("mixed", 2, kSmoothnessInf, [](const Vec& x) {
        return std::exp(x[0] * x[1]) + std::sin(x[0]);
    });
    UnitCubeSequence seq(2, 3);
    for (int i = 0; i < 20; ++i) {
        const Vec x = seq.next();
        const Mat h = f.hessian(x);
        CHECK(std::abs(h(0, 1) - h(1, 0)) <= 1e-12);
        CHECK(f(x) == f(x));
        CHECK(f.hessian(x)(0, 1) == h(0, 1));
    }
}

TEST_CASE("polynomial JSON round-trip is bit-exact") {
    const ScalarField f = gallery::peanut().rho();
    const nlohmann::json j = f.to_json();
    const ScalarField g = ScalarField::from_json(nlohmann::json::parse(j.dump()));
    REQUIRE(g.monomials().size() == f.monomials().size());
    for (size_t i = 0; i < f.monomials().size(); ++i) {
        CHECK(g.monomials()[i].exponents == f.monomials()[i].exponents);
        CHECK(g.monomials()[i].coefficient == f.monomials()[i].coefficient);
    }
    CHECK(g.to_json().dump() == j.dump());
}

TEST_CASE("dimension mismatch and smoothness class are rejected") {
    CHECK_THROWS_AS(ball_field()(make_vec({1.0, 2.0, 3.0})), std::invalid_argument);
    ScalarField c0 = ScalarField::composite("abs", 1, 0,
                                            [](const Vec& x) { return std::abs(x[0]); });
    CHECK_THROWS_AS(c0.gradient(make_vec({0.5})), std::invalid_argument);
    CHECK_THROWS_AS(c0.hessian(make_vec({0.5})), std::invalid_argument);
}

TEST_CASE("affine composition of polynomials is exact") {
    Mat A(2, 2);
    A << 0.5, 0.0, 0.0, 1.0;  // inverse of diag(2,1)
    const ScalarField f = ball_field().compose_affine(A, Vec::Zero(2));
    // |A x|^2 - 1 = x1^2/4 + x2^2 - 1
    CHECK(f(make_vec({2.0, 0.0})) == 0.0);
    CHECK(f(make_vec({0.0, 1.0})) == 0.0);
    CHECK(f.is_polynomial());
}
