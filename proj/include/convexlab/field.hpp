#pragma once

#include "convexlab/common.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace convexlab {

/// Declared differentiability class for composite fields; polynomials are C^inf.
inline constexpr int kSmoothnessInf = 1000;

struct Monomial {
    std::vector<int> exponents;  // one non-negative exponent per variable
    double coefficient = 0.0;
};

/// A real-valued function on R^N. Polynomial fields carry exact evaluation,
/// gradients, and Hessians; composite fields are named closed forms with an
/// optional analytic gradient/Hessian and central finite differences as the
/// fallback. Immutable and freely copyable.
class ScalarField {
public:
    using EvalFn = std::function<double(const Vec&)>;
    using GradFn = std::function<Vec(const Vec&)>;
    using HessFn = std::function<Mat(const Vec&)>;

    static ScalarField polynomial(int dim, std::vector<Monomial> terms) {
        auto impl = std::make_shared<Impl>();
        impl->dim = dim;
        impl->smoothness = kSmoothnessInf;
        impl->is_poly = true;
        impl->name = "polynomial";
        impl->terms = canonicalize(dim, std::move(terms));
        return ScalarField(std::move(impl));
    }

    static ScalarField constant(int dim, double c) {
        return polynomial(dim, {Monomial{std::vector<int>(static_cast<size_t>(dim), 0), c}});
    }

    static ScalarField coordinate(int dim, int axis) {
        std::vector<int> e(static_cast<size_t>(dim), 0);
        e[static_cast<size_t>(axis)] = 1;
        return polynomial(dim, {Monomial{std::move(e), 1.0}});
    }

    /// |x|^2
    static ScalarField squared_norm(int dim) {
        std::vector<Monomial> terms;
        for (int i = 0; i < dim; ++i) {
            std::vector<int> e(static_cast<size_t>(dim), 0);
            e[static_cast<size_t>(i)] = 2;
            terms.push_back(Monomial{std::move(e), 1.0});
        }
        return polynomial(dim, std::move(terms));
    }

    static ScalarField composite(std::string name, int dim, int smoothness, EvalFn eval) {
        auto impl = std::make_shared<Impl>();
        impl->dim = dim;
        impl->smoothness = smoothness;
        impl->is_poly = false;
        impl->name = std::move(name);
        impl->eval = std::move(eval);
        return ScalarField(std::move(impl));
    }

    ScalarField with_gradient(GradFn g) const {
        auto impl = std::make_shared<Impl>(*impl_);
        impl->grad = std::move(g);
        return ScalarField(std::move(impl));
    }

    ScalarField with_hessian(HessFn h) const {
        auto impl = std::make_shared<Impl>(*impl_);
        impl->hess = std::move(h);
        return ScalarField(std::move(impl));
    }

    /// Absolute finite-difference step override for fields whose natural
    /// noise floor differs from machine epsilon (e.g. sampled distances).
    ScalarField with_fd_step(double h) const {
        auto impl = std::make_shared<Impl>(*impl_);
        impl->fd_step = h;
        return ScalarField(std::move(impl));
    }

    int dim() const { return impl_->dim; }
    int smoothness() const { return impl_->smoothness; }
    bool is_polynomial() const { return impl_->is_poly; }
    const std::string& name() const { return impl_->name; }
    const std::vector<Monomial>& monomials() const { return impl_->terms; }

    double operator()(const Vec& x) const {
        check_dim(x);
        if (impl_->is_poly) {
            double s = 0.0;
            for (const auto& t : impl_->terms) {
                double m = t.coefficient;
                for (int i = 0; i < impl_->dim; ++i)
                    m *= detail::ipow(x[i], t.exponents[static_cast<size_t>(i)]);
                s += m;
            }
            return s;
        }
        return impl_->eval(x);
    }

    Vec gradient(const Vec& x) const {
        check_dim(x);
        if (impl_->smoothness < 1)
            throw std::invalid_argument("gradient: field '" + impl_->name + "' is not C^1");
        if (impl_->is_poly) {
            Vec g = Vec::Zero(impl_->dim);
            for (const auto& t : impl_->terms) {
                for (int i = 0; i < impl_->dim; ++i) {
                    const int e = t.exponents[static_cast<size_t>(i)];
                    if (e == 0) continue;
                    double m = t.coefficient * e * detail::ipow(x[i], e - 1);
                    for (int j = 0; j < impl_->dim; ++j) {
                        if (j == i) continue;
                        m *= detail::ipow(x[j], t.exponents[static_cast<size_t>(j)]);
                    }
                    g[i] += m;
                }
            }
            return g;
        }
        if (impl_->grad) return impl_->grad(x);
        return fd_gradient(x);
    }

    Mat hessian(const Vec& x) const {
        check_dim(x);
        if (impl_->smoothness < 2)
            throw std::invalid_argument("hessian: field '" + impl_->name + "' is not C^2");
        if (impl_->is_poly) {
            Mat h = Mat::Zero(impl_->dim, impl_->dim);
            for (const auto& t : impl_->terms) {
                for (int i = 0; i < impl_->dim; ++i) {
                    const int ei = t.exponents[static_cast<size_t>(i)];
                    if (ei == 0) continue;
                    // diagonal
                    if (ei >= 2) {
                        double m = t.coefficient * ei * (ei - 1) * detail::ipow(x[i], ei - 2);
                        for (int j = 0; j < impl_->dim; ++j)
                            if (j != i) m *= detail::ipow(x[j], t.exponents[static_cast<size_t>(j)]);
                        h(i, i) += m;
                    }
                    for (int j = i + 1; j < impl_->dim; ++j) {
                        const int ej = t.exponents[static_cast<size_t>(j)];
                        if (ej == 0) continue;
                        double m = t.coefficient * ei * ej * detail::ipow(x[i], ei - 1) *
                                   detail::ipow(x[j], ej - 1);
                        for (int l = 0; l < impl_->dim; ++l)
                            if (l != i && l != j)
                                m *= detail::ipow(x[l], t.exponents[static_cast<size_t>(l)]);
                        h(i, j) += m;
                        h(j, i) += m;
                    }
                }
            }
            return h;
        }
        if (impl_->hess) return impl_->hess(x);
        return fd_hessian(x);
    }

    /// Exact partial derivative as a field. Polynomials differentiate
    /// term-by-term; composites wrap the gradient component.
    ScalarField derivative(int axis) const {
        if (impl_->is_poly) {
            std::vector<Monomial> out;
            for (const auto& t : impl_->terms) {
                const int e = t.exponents[static_cast<size_t>(axis)];
                if (e == 0) continue;
                Monomial d = t;
                d.coefficient *= e;
                d.exponents[static_cast<size_t>(axis)] = e - 1;
                out.push_back(std::move(d));
            }
            return polynomial(impl_->dim, std::move(out));
        }
        ScalarField self = *this;
        return composite("d/dx" + std::to_string(axis) + "(" + impl_->name + ")", impl_->dim,
                         std::max(0, impl_->smoothness - 1),
                         [self, axis](const Vec& x) { return self.gradient(x)[axis]; });
    }

    /// f(M x + c), exact for polynomials.
    ScalarField compose_affine(const Mat& M, const Vec& c) const {
        const int n = impl_->dim;
        if (M.rows() != n || M.cols() != n || c.size() != n)
            throw std::invalid_argument("compose_affine: shape mismatch");
        if (impl_->is_poly) {
            std::vector<Monomial> acc;  // running sum
            for (const auto& t : impl_->terms) {
                // expand coef * prod_i (sum_j M_ij y_j + c_i)^{e_i}
                std::vector<Monomial> prod = {
                    Monomial{std::vector<int>(static_cast<size_t>(n), 0), t.coefficient}};
                for (int i = 0; i < n; ++i) {
                    std::vector<Monomial> lin;
                    for (int j = 0; j < n; ++j) {
                        if (M(i, j) == 0.0) continue;
                        std::vector<int> e(static_cast<size_t>(n), 0);
                        e[static_cast<size_t>(j)] = 1;
                        lin.push_back(Monomial{std::move(e), M(i, j)});
                    }
                    if (c[i] != 0.0)
                        lin.push_back(Monomial{std::vector<int>(static_cast<size_t>(n), 0), c[i]});
                    for (int rep = 0; rep < t.exponents[static_cast<size_t>(i)]; ++rep)
                        prod = multiply_terms(n, prod, lin);
                }
                acc.insert(acc.end(), prod.begin(), prod.end());
            }
            return polynomial(n, std::move(acc));
        }
        ScalarField self = *this;
        Mat Mt = M.transpose();
        return composite(impl_->name + "∘affine", n, impl_->smoothness,
                         [self, M, c](const Vec& x) { return self(M * x + c); })
            .with_gradient([self, M, Mt, c](const Vec& x) { return Vec(Mt * self.gradient(M * x + c)); })
            .with_hessian(
                [self, M, Mt, c](const Vec& x) { return Mat(Mt * self.hessian(M * x + c) * M); });
    }

    /// Integer power, exact for polynomials.
    ScalarField pow(int k) const {
        if (!impl_->is_poly) throw std::invalid_argument("pow: polynomial fields only");
        std::vector<Monomial> r = {
            Monomial{std::vector<int>(static_cast<size_t>(impl_->dim), 0), 1.0}};
        for (int i = 0; i < k; ++i) r = multiply_terms(impl_->dim, r, impl_->terms);
        return polynomial(impl_->dim, std::move(r));
    }

    ScalarField scaled(double s) const {
        if (impl_->is_poly) {
            std::vector<Monomial> r = impl_->terms;
            for (auto& t : r) t.coefficient *= s;
            return polynomial(impl_->dim, std::move(r));
        }
        ScalarField self = *this;
        return composite(std::to_string(s) + "*(" + impl_->name + ")", impl_->dim, impl_->smoothness,
                         [self, s](const Vec& x) { return s * self(x); })
            .with_gradient([self, s](const Vec& x) { return Vec(s * self.gradient(x)); })
            .with_hessian([self, s](const Vec& x) { return Mat(s * self.hessian(x)); });
    }

    friend ScalarField operator+(const ScalarField& f, const ScalarField& g) {
        if (f.dim() != g.dim()) throw std::invalid_argument("field sum: dimension mismatch");
        if (f.is_polynomial() && g.is_polynomial()) {
            std::vector<Monomial> r = f.impl_->terms;
            r.insert(r.end(), g.impl_->terms.begin(), g.impl_->terms.end());
            return polynomial(f.dim(), std::move(r));
        }
        return composite("(" + f.name() + "+" + g.name() + ")", f.dim(),
                         std::min(f.smoothness(), g.smoothness()),
                         [f, g](const Vec& x) { return f(x) + g(x); })
            .with_gradient([f, g](const Vec& x) { return Vec(f.gradient(x) + g.gradient(x)); })
            .with_hessian([f, g](const Vec& x) { return Mat(f.hessian(x) + g.hessian(x)); });
    }

    friend ScalarField operator*(const ScalarField& f, const ScalarField& g) {
        if (f.dim() != g.dim()) throw std::invalid_argument("field product: dimension mismatch");
        if (f.is_polynomial() && g.is_polynomial())
            return polynomial(f.dim(), multiply_terms(f.dim(), f.impl_->terms, g.impl_->terms));
        return composite("(" + f.name() + "*" + g.name() + ")", f.dim(),
                         std::min(f.smoothness(), g.smoothness()),
                         [f, g](const Vec& x) { return f(x) * g(x); })
            .with_gradient([f, g](const Vec& x) {
                return Vec(f(x) * g.gradient(x) + g(x) * f.gradient(x));
            })
            .with_hessian([f, g](const Vec& x) {
                const Vec gf = f.gradient(x), gg = g.gradient(x);
                return Mat(f(x) * g.hessian(x) + g(x) * f.hessian(x) + gf * gg.transpose() +
                           gg * gf.transpose());
            });
    }

    nlohmann::json to_json() const {
        if (!impl_->is_poly)
            throw std::invalid_argument("to_json: only polynomial fields serialize");
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : impl_->terms)
            terms.push_back({{"exp", t.exponents}, {"coef", t.coefficient}});
        return {{"dim", impl_->dim}, {"monomials", terms}};
    }

    static ScalarField from_json(const nlohmann::json& j) {
        const int dim = j.at("dim").get<int>();
        std::vector<Monomial> terms;
        for (const auto& t : j.at("monomials")) {
            Monomial m;
            m.exponents = t.at("exp").get<std::vector<int>>();
            m.coefficient = t.at("coef").get<double>();
            terms.push_back(std::move(m));
        }
        return polynomial(dim, std::move(terms));
    }

    /// Finite-difference paths exposed for the exactness cross-checks.
    Vec fd_gradient(const Vec& x) const {
        const double h = impl_->fd_step > 0.0
                             ? impl_->fd_step
                             : std::cbrt(std::numeric_limits<double>::epsilon()) *
                                   std::max(1.0, x.cwiseAbs().maxCoeff());
        Vec g(impl_->dim);
        Vec xp = x, xm = x;
        for (int i = 0; i < impl_->dim; ++i) {
            xp[i] = x[i] + h;
            xm[i] = x[i] - h;
            g[i] = (value_any(xp) - value_any(xm)) / (2.0 * h);
            xp[i] = x[i];
            xm[i] = x[i];
        }
        return g;
    }

    Mat fd_hessian(const Vec& x) const {
        const double h = impl_->fd_step > 0.0
                             ? impl_->fd_step
                             : std::pow(std::numeric_limits<double>::epsilon(), 0.25) *
                                   std::max(1.0, x.cwiseAbs().maxCoeff());
        Mat hess(impl_->dim, impl_->dim);
        const double f0 = value_any(x);
        Vec y = x;
        for (int i = 0; i < impl_->dim; ++i) {
            y[i] = x[i] + h;
            const double fp = value_any(y);
            y[i] = x[i] - h;
            const double fm = value_any(y);
            y[i] = x[i];
            hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
            for (int j = i + 1; j < impl_->dim; ++j) {
                y[i] = x[i] + h;
                y[j] = x[j] + h;
                const double fpp = value_any(y);
                y[j] = x[j] - h;
                const double fpm = value_any(y);
                y[i] = x[i] - h;
                const double fmm = value_any(y);
                y[j] = x[j] + h;
                const double fmp = value_any(y);
                y[i] = x[i];
                y[j] = x[j];
                hess(i, j) = hess(j, i) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            }
        }
        return hess;
    }

private:
    struct Impl {
        int dim = 0;
        int smoothness = 0;
        std::string name;
        bool is_poly = false;
        std::vector<Monomial> terms;
        EvalFn eval;
        GradFn grad;
        HessFn hess;
        double fd_step = 0.0;
    };

    explicit ScalarField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    ScalarField(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

    double value_any(const Vec& x) const { return (*this)(x); }

    void check_dim(const Vec& x) const {
        if (x.size() != impl_->dim)
            throw std::invalid_argument("field '" + impl_->name + "': dimension mismatch (" +
                                        std::to_string(x.size()) + " vs " +
                                        std::to_string(impl_->dim) + ")");
    }

    static std::vector<Monomial> canonicalize(int dim, std::vector<Monomial> terms) {
        for (const auto& t : terms) {
            if (static_cast<int>(t.exponents.size()) != dim)
                throw std::invalid_argument("monomial exponent list has wrong dimension");
            for (int e : t.exponents)
                if (e < 0) throw std::invalid_argument("monomial exponents must be non-negative");
        }
        std::sort(terms.begin(), terms.end(),
                  [](const Monomial& a, const Monomial& b) { return a.exponents < b.exponents; });
        std::vector<Monomial> merged;
        for (auto& t : terms) {
            if (!merged.empty() && merged.back().exponents == t.exponents)
                merged.back().coefficient += t.coefficient;
            else
                merged.push_back(std::move(t));
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const Monomial& m) { return m.coefficient == 0.0; }),
                     merged.end());
        return merged;
    }

    static std::vector<Monomial> multiply_terms(int dim, const std::vector<Monomial>& a,
                                                const std::vector<Monomial>& b) {
        std::vector<Monomial> out;
        out.reserve(a.size() * b.size());
        for (const auto& ta : a)
            for (const auto& tb : b) {
                Monomial m;
                m.coefficient = ta.coefficient * tb.coefficient;
                m.exponents.resize(static_cast<size_t>(dim));
                for (int i = 0; i < dim; ++i)
                    m.exponents[static_cast<size_t>(i)] =
                        ta.exponents[static_cast<size_t>(i)] + tb.exponents[static_cast<size_t>(i)];
                out.push_back(std::move(m));
            }
        return canonicalize(dim, std::move(out));
    }

    std::shared_ptr<const Impl> impl_;
};

}  // namespace convexlab
