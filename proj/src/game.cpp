#include "gnevi/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gnevi {

ConstraintMap ConstraintMap::constant(ConvexRegion region) {
    ConstraintMap m;
    m.kind = Kind::constant;
    m.constant_value = std::move(region);
    return m;
}

ConstraintMap ConstraintMap::affine_box(std::vector<Vec> lo_coef, Vec lo_const,
                                        std::vector<Vec> hi_coef, Vec hi_const,
                                        Box strategy_box) {
    const std::size_t n = strategy_box.lo.size();
    if (lo_coef.size() != n || hi_coef.size() != n || lo_const.size() != n ||
        hi_const.size() != n)
        throw std::invalid_argument("affine_box: row count must match the strategy dimension");
    ConstraintMap m;
    m.kind = Kind::affine_box;
    m.lo_coef = std::move(lo_coef);
    m.hi_coef = std::move(hi_coef);
    m.lo_const = std::move(lo_const);
    m.hi_const = std::move(hi_const);
    m.strategy_box = std::move(strategy_box);
    return m;
}

ConvexRegion ConstraintMap::value(const Vec& profile) const {
    if (kind == Kind::constant) return constant_value;
    const std::size_t n = strategy_box.lo.size();
    Vec lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = std::max(dot(lo_coef[i], profile) + lo_const[i], strategy_box.lo[i]);
        hi[i] = std::min(dot(hi_coef[i], profile) + hi_const[i], strategy_box.hi[i]);
        if (lo[i] > hi[i]) return ConvexRegion::empty_region(static_cast<int>(n));
    }
    return ConvexRegion::interval_product(Box(lo, hi));
}

int GameInstance::profile_dim() const {
    int d = 0;
    for (const auto& p : players) d += p.own_dim;
    return d;
}

Box GameInstance::profile_box() const {
    Vec lo, hi;
    for (const auto& p : players) {
        lo.insert(lo.end(), p.strategy_box.lo.begin(), p.strategy_box.lo.end());
        hi.insert(hi.end(), p.strategy_box.hi.begin(), p.strategy_box.hi.end());
    }
    return Box(lo, hi);
}

int GameInstance::offset(int player) const {
    int o = 0;
    for (int i = 0; i < player; ++i) o += players[i].own_dim;
    return o;
}

Vec GameInstance::own_part(const Vec& profile, int player) const {
    int o = offset(player);
    return Vec(profile.begin() + o, profile.begin() + o + players[player].own_dim);
}

Vec GameInstance::rival_part(const Vec& profile, int player) const {
    int o = offset(player);
    Vec r(profile.begin(), profile.begin() + o);
    r.insert(r.end(), profile.begin() + o + players[player].own_dim, profile.end());
    return r;
}

Vec GameInstance::assemble(int player, const Vec& own, const Vec& rival) const {
    int o = offset(player);
    Vec profile(rival.begin(), rival.begin() + o);
    profile.insert(profile.end(), own.begin(), own.end());
    profile.insert(profile.end(), rival.begin() + o, rival.end());
    return profile;
}

MaximalityReport is_maximal(const PreferenceMap& P, const ConvexRegion& K, const Vec& x,
                            double tol) {
    if (!region_contains(K, x, tol))
        throw std::domain_error("is_maximal: point is not feasible");
    MaximalityReport rep;
    rep.tol = tol;
    rep.disjoint = regions_disjoint(P.eval(x), K, tol);
    rep.maximal = rep.disjoint.disjoint;
    return rep;
}

EquilibriumReport is_equilibrium(const GameInstance& G, const Vec& x, double tol) {
    if (static_cast<int>(x.size()) != G.profile_dim())
        throw std::invalid_argument("is_equilibrium: profile dimension mismatch");
    EquilibriumReport rep;
    rep.point = x;
    rep.tol = tol;
    rep.verdict = true;
    for (std::size_t nu = 0; nu < G.players.size(); ++nu) {
        const Player& pl = G.players[nu];
        Vec own = G.own_part(x, static_cast<int>(nu));
        Vec rival = G.rival_part(x, static_cast<int>(nu));
        ConvexRegion K = pl.constraint.value(x);
        bool feasible = !K.is_empty() && region_contains(K, own, tol);
        bool disjoint = regions_disjoint(pl.preference.eval(own, rival), K, tol).disjoint;
        rep.feasible_per_player.push_back(feasible);
        rep.disjoint_per_player.push_back(disjoint);
        rep.verdict = rep.verdict && feasible && disjoint;
    }
    return rep;
}

std::vector<Vec> brute_force_equilibria(const GameInstance& G, int grid_per_axis,
                                        par::Mode mode) {
    const int n = G.profile_dim();
    if (n > 3) throw std::invalid_argument("brute_force_equilibria: dimension above 3");
    if (grid_per_axis < 11) throw std::invalid_argument("brute_force_equilibria: grid below 11");
    Box box = G.profile_box();
    double spacing = 0;
    for (int i = 0; i < n; ++i)
        spacing = std::max(spacing, (box.hi[i] - box.lo[i]) / (grid_per_axis - 1));
    const double tol = 1.5 * spacing;

    std::size_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(grid_per_axis);
    std::vector<std::uint8_t> hits(total, 0);
    par::for_index(total, mode, [&](std::size_t flat) {
        Vec p(n);
        std::size_t rest = flat;
        for (int i = n - 1; i >= 0; --i) {
            std::size_t k = rest % grid_per_axis;
            rest /= grid_per_axis;
            p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * double(k) / (grid_per_axis - 1);
        }
        hits[flat] = is_equilibrium(G, p, tol).verdict ? 1 : 0;
    });

    std::vector<Vec> out;
    for (std::size_t flat = 0; flat < total; ++flat) {
        if (!hits[flat]) continue;
        Vec p(n);
        std::size_t rest = flat;
        for (int i = n - 1; i >= 0; --i) {
            std::size_t k = rest % grid_per_axis;
            rest /= grid_per_axis;
            p[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * double(k) / (grid_per_axis - 1);
        }
        out.push_back(p);
    }
    return out;  // flat order is lexicographic by construction
}

std::vector<Vec> cluster_representatives(const std::vector<Vec>& points, double spacing) {
    const double reach = 1.5 * spacing + 1e-12;
    std::vector<int> cluster(points.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (cluster[i] < 0) cluster[i] = next++;
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            double gap = 0;
            for (std::size_t c = 0; c < points[i].size(); ++c)
                gap = std::max(gap, std::fabs(points[i][c] - points[j][c]));
            if (gap <= reach) {
                if (cluster[j] < 0)
                    cluster[j] = cluster[i];
                else if (cluster[j] != cluster[i]) {
                    int from = cluster[j], to = cluster[i];
                    for (auto& c : cluster)
                        if (c == from) c = to;
                }
            }
        }
    }
    std::vector<Vec> reps;
    for (int c = 0; c < next; ++c) {
        const Vec* best = nullptr;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (cluster[i] == c && (!best || lex_less(points[i], *best))) best = &points[i];
        if (best) reps.push_back(*best);
    }
    return reps;  // input order is lexicographic, so representatives are too
}

bool gnep_best_response_check(const GameInstance& G, const Vec& x, int grid_per_axis,
                              double tol) {
    for (const auto& pl : G.players)
        if (!pl.preference.utility_backed())
            throw std::invalid_argument("gnep_best_response_check: non-utility preference");
    for (std::size_t nu = 0; nu < G.players.size(); ++nu) {
        const Player& pl = G.players[nu];
        Vec own = G.own_part(x, static_cast<int>(nu));
        Vec rival = G.rival_part(x, static_cast<int>(nu));
        ConvexRegion K = pl.constraint.value(x);
        if (K.is_empty() || !region_contains(K, own, tol)) return false;
        double here = pl.preference.utility(own, rival);
        Box kb = region_bbox(K);
        const int d = pl.own_dim;
        std::vector<int> idx(d, 0);
        double best = -std::numeric_limits<double>::infinity();
        for (;;) {
            Vec z(d);
            for (int i = 0; i < d; ++i)
                z[i] = kb.lo[i] + (kb.hi[i] - kb.lo[i]) * double(idx[i]) /
                                      std::max(1, grid_per_axis - 1);
            if (region_contains(K, z, 1e-12)) best = std::max(best, pl.preference.utility(z, rival));
            int i = d - 1;
            while (i >= 0 && ++idx[i] == grid_per_axis) idx[i--] = 0;
            if (i < 0) break;
        }
        if (here < best - tol) return false;
    }
    return true;
}

}  // namespace gnevi
