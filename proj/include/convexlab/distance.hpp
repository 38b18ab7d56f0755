#pragma once

#include "convexlab/domain.hpp"

#include <cmath>
#include <memory>

namespace convexlab {

/// Dense boundary sample supporting distance-to-boundary queries: nearest
/// cloud point, optionally refined by projected tangential descent on the
/// boundary manifold.
class BoundaryCloud {
public:
    explicit BoundaryCloud(const DomainSpec& d, int count = 512, uint64_t seed = 0)
        : d_(d) {
        for (const auto& bp : sample_boundary(d, count, seed)) pts_.push_back(bp.location);
    }

    const DomainSpec& domain() const { return d_; }
    const std::vector<Vec>& points() const { return pts_; }

    double nearest(const Vec& x) const {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec& p : pts_) best = std::min(best, (x - p).norm());
        return best;
    }

    Vec nearest_point(const Vec& x) const {
        double best = std::numeric_limits<double>::infinity();
        const Vec* arg = nullptr;
        for (const Vec& p : pts_) {
            const double dist = (x - p).norm();
            if (dist < best) {
                best = dist;
                arg = &p;
            }
        }
        return *arg;
    }

    /// Distance from an interior point to the boundary: nearest cloud point
    /// refined by tangential descent with adaptive step, then Newton
    /// re-projection. Converges to the local foot point.
    double refined_distance(const Vec& x) const {
        Vec q = nearest_point(x);
        double dist = (q - x).norm();
        double step = 1.0;
        for (int it = 0; it < 120; ++it) {
            const Vec g = d_.rho().gradient(q);
            const double gn = g.norm();
            if (gn < 1e-14) break;
            const Vec nu = g / gn;
            const Vec r = q - x;
            const Vec tang = r - r.dot(nu) * nu;
            if (tang.norm() <= 1e-13 * std::max(1.0, dist)) break;
            bool moved = false;
            while (step > 1e-14) {
                Vec cand;
                try {
                    cand = project_near(d_, Vec(q - step * tang));
                } catch (const std::runtime_error&) {
                    step *= 0.5;
                    continue;
                }
                const double cd = (cand - x).norm();
                if (cd < dist) {
                    q = cand;
                    dist = cd;
                    step = std::min(1.0, step * 1.5);
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!moved) break;
        }
        return dist;
    }

private:
    DomainSpec d_;
    std::vector<Vec> pts_;
};

/// Euclidean distance of an interior point to the boundary.
inline double distance_to_boundary(const DomainSpec& d, const Vec& x) {
    if (!d.contains(x)) throw std::invalid_argument("distance_to_boundary: x is not interior");
    BoundaryCloud cloud(d, 512, 0);
    return cloud.refined_distance(x);
}

inline double distance_to_boundary(const BoundaryCloud& cloud, const Vec& x) {
    if (!cloud.domain().contains(x))
        throw std::invalid_argument("distance_to_boundary: x is not interior");
    return cloud.refined_distance(x);
}

}  // namespace convexlab
