#pragma once

#include <stdexcept>
#include <vector>

#include "gnevi/linalg.hpp"

namespace gnevi {

// Finitely generated convex cone {sum l_i g_i : l_i >= 0} in the dual space
// (identified with R^n). full_space covers the empty-value branch of the
// normal cone operator. No generators and no full_space flag means {0}.
struct Cone {
    std::vector<Vec> generators;  // unit vectors
    bool full_space = false;
    int dim = 0;

    static Cone full(int dim) {
        Cone c;
        c.full_space = true;
        c.dim = dim;
        return c;
    }

    static Cone zero(int dim) {
        Cone c;
        c.dim = dim;
        return c;
    }

    static Cone from_rays(std::vector<Vec> rays, int dim) {
        Cone c;
        c.dim = dim;
        for (auto& r : rays) {
            double n = norm(r);
            if (n < 1e-14) continue;
            Vec u = scale(r, 1.0 / n);
            bool dup = false;
            for (const auto& g : c.generators)
                if (dist(g, u) < 1e-10) dup = true;
            if (!dup) c.generators.push_back(std::move(u));
        }
        return c;
    }

    bool is_zero() const { return !full_space && generators.empty(); }
};

// Convex hull of finitely many generators, or the unit ball. Values of the
// principal operator live here: generators have norm <= 1.
struct CompactConvexSet {
    std::vector<Vec> generators;
    bool unit_ball = false;
    int dim = 0;

    static CompactConvexSet ball(int dim) {
        CompactConvexSet s;
        s.unit_ball = true;
        s.dim = dim;
        return s;
    }

    static CompactConvexSet hull(std::vector<Vec> gens, int dim) {
        if (gens.empty()) throw std::invalid_argument("CompactConvexSet: no generators");
        CompactConvexSet s;
        s.generators = std::move(gens);
        s.dim = dim;
        return s;
    }

    double max_generator_norm() const {
        if (unit_ball) return 1.0;
        double m = 0;
        for (const auto& g : generators) m = std::max(m, norm(g));
        return m;
    }

    CompactConvexSet scaled(double factor) const {
        CompactConvexSet s = *this;
        if (!s.unit_ball)
            for (auto& g : s.generators) g = scale(g, factor);
        return s;
    }
};

}  // namespace gnevi
