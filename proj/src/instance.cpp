#include "gnevi/instance.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gnevi/expr.hpp"

namespace gnevi {

namespace {

using nlohmann::ordered_json;

void require_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                  const std::set<std::string>& required, const std::string& where) {
    if (!obj.is_object()) throw instance_error(where + ": expected an object");
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            throw instance_error(where + ": unknown field '" + item.key() + "'");
    for (const auto& key : required)
        if (!obj.contains(key)) throw instance_error(where + ": missing field '" + key + "'");
}

double finite_number(const ordered_json& v, const std::string& where) {
    if (!v.is_number()) throw instance_error(where + ": expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw instance_error(where + ": non-finite number");
    return d;
}

Vec vec_field(const ordered_json& v, const std::string& where) {
    if (!v.is_array()) throw instance_error(where + ": expected an array");
    Vec out;
    for (const auto& e : v) out.push_back(finite_number(e, where));
    return out;
}

std::vector<Vec> matrix_field(const ordered_json& v, const std::string& where) {
    if (!v.is_array()) throw instance_error(where + ": expected an array of rows");
    std::vector<Vec> out;
    for (const auto& row : v) out.push_back(vec_field(row, where));
    return out;
}

Box box_field(const ordered_json& v, const std::string& where) {
    require_keys(v, {"lo", "hi"}, {"lo", "hi"}, where);
    return Box(vec_field(v["lo"], where + ".lo"), vec_field(v["hi"], where + ".hi"));
}

ConstraintSpec parse_constraint(const ordered_json& v, const std::string& where) {
    ConstraintSpec c;
    require_keys(v,
                 {"kind", "lo", "hi", "lo_coef", "lo_const", "hi_coef", "hi_const"},
                 {"kind"}, where);
    std::string kind = v["kind"].get<std::string>();
    if (kind == "constant_box") {
        c.kind = ConstraintSpec::Kind::constant_box;
        c.lo = vec_field(v.at("lo"), where + ".lo");
        c.hi = vec_field(v.at("hi"), where + ".hi");
    } else if (kind == "affine_box") {
        c.kind = ConstraintSpec::Kind::affine_box;
        c.lo_coef = matrix_field(v.at("lo_coef"), where + ".lo_coef");
        c.hi_coef = matrix_field(v.at("hi_coef"), where + ".hi_coef");
        c.lo_const = vec_field(v.at("lo_const"), where + ".lo_const");
        c.hi_const = vec_field(v.at("hi_const"), where + ".hi_const");
    } else {
        throw instance_error(where + ": unknown constraint kind '" + kind + "'");
    }
    return c;
}

PreferenceSpec parse_preference(const ordered_json& v, const std::string& where) {
    PreferenceSpec p;
    require_keys(v, {"kind", "name", "cases", "expr"}, {"kind"}, where);
    std::string kind = v["kind"].get<std::string>();
    if (kind == "fixture") {
        p.kind = PreferenceSpec::Kind::fixture;
        if (!v.contains("name")) throw instance_error(where + ": fixture needs 'name'");
        p.fixture_name = v["name"].get<std::string>();
    } else if (kind == "utility") {
        p.kind = PreferenceSpec::Kind::utility;
        if (!v.contains("expr")) throw instance_error(where + ": utility needs 'expr'");
        p.utility = v["expr"].get<std::string>();
        expr::parse(p.utility);  // validate now
    } else if (kind == "piecewise") {
        p.kind = PreferenceSpec::Kind::piecewise;
        if (!v.contains("cases")) throw instance_error(where + ": piecewise needs 'cases'");
        for (const auto& cj : v["cases"]) {
            require_keys(cj,
                         {"when_lo", "when_hi", "when_lo_closed", "when_hi_closed", "empty",
                          "lo", "hi", "lo_strict", "hi_strict"},
                         {"when_lo", "when_hi"}, where + ".case");
            PreferenceSpec::PiecewiseCase c;
            c.when_lo = finite_number(cj["when_lo"], where);
            c.when_hi = finite_number(cj["when_hi"], where);
            if (cj.contains("when_lo_closed")) c.when_lo_closed = cj["when_lo_closed"].get<bool>();
            if (cj.contains("when_hi_closed")) c.when_hi_closed = cj["when_hi_closed"].get<bool>();
            if (cj.contains("empty")) c.empty = cj["empty"].get<bool>();
            if (!c.empty) {
                if (!cj.contains("lo") || !cj.contains("hi"))
                    throw instance_error(where + ": non-empty case needs 'lo' and 'hi'");
                c.lo = cj["lo"].get<std::string>();
                c.hi = cj["hi"].get<std::string>();
                expr::parse(c.lo);
                expr::parse(c.hi);
                if (cj.contains("lo_strict")) c.lo_strict = cj["lo_strict"].get<bool>();
                if (cj.contains("hi_strict")) c.hi_strict = cj["hi_strict"].get<bool>();
            }
            p.cases.push_back(c);
        }
    } else {
        throw instance_error(where + ": unknown preference kind '" + kind + "'");
    }
    return p;
}

}  // namespace

InstanceFile parse_instance(const std::string& json_text) {
    ordered_json root;
    try {
        root = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw instance_error(std::string("json parse failure: ") + e.what());
    }
    require_keys(root, {"version", "players", "solver"}, {"version", "players"}, "instance");
    InstanceFile inst;
    inst.version = root["version"].get<std::string>();
    if (inst.version != "gnevi/1")
        throw instance_error("unsupported version '" + inst.version + "'");
    if (!root["players"].is_array() || root["players"].empty())
        throw instance_error("instance: players must be a non-empty array");
    for (const auto& pj : root["players"]) {
        require_keys(pj, {"dim", "box", "constraint", "preference"},
                     {"dim", "box", "constraint", "preference"}, "player");
        PlayerSpec p;
        p.dim = pj["dim"].get<int>();
        if (p.dim < 1 || p.dim > 8) throw instance_error("player: dim out of range [1, 8]");
        p.box = box_field(pj["box"], "player.box");
        if (p.box.dim() != p.dim) throw instance_error("player: box dimension mismatch");
        p.constraint = parse_constraint(pj["constraint"], "player.constraint");
        p.preference = parse_preference(pj["preference"], "player.preference");
        inst.players.push_back(std::move(p));
    }
    if (root.contains("solver")) {
        const auto& sj = root["solver"];
        require_keys(sj,
                     {"grid", "tol", "seed", "max_iters", "step", "classify_points",
                      "midpoint_t_grid", "midpoint_w_samples", "midpoint_min_radius"},
                     {}, "solver");
        SolverSpec& s = inst.solver;
        if (sj.contains("grid")) s.grid = sj["grid"].get<int>();
        if (sj.contains("tol")) s.tol = finite_number(sj["tol"], "solver.tol");
        if (sj.contains("seed")) s.seed = sj["seed"].get<std::uint64_t>();
        if (sj.contains("max_iters")) s.max_iters = sj["max_iters"].get<int>();
        if (sj.contains("step")) s.step = finite_number(sj["step"], "solver.step");
        if (sj.contains("classify_points")) s.classify_points = sj["classify_points"].get<int>();
        if (sj.contains("midpoint_t_grid")) s.midpoint_t_grid = sj["midpoint_t_grid"].get<int>();
        if (sj.contains("midpoint_w_samples"))
            s.midpoint_w_samples = sj["midpoint_w_samples"].get<int>();
        if (sj.contains("midpoint_min_radius"))
            s.midpoint_min_radius = finite_number(sj["midpoint_min_radius"], "solver");
        if (s.grid < 2 || s.tol <= 0 || s.max_iters < 1 || s.step <= 0)
            throw instance_error("solver: parameter out of range");
    }
    return inst;
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw instance_error("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

std::string serialize_instance(const InstanceFile& inst) {
    ordered_json root;
    root["version"] = inst.version;
    root["players"] = ordered_json::array();
    for (const auto& p : inst.players) {
        ordered_json pj;
        pj["dim"] = p.dim;
        pj["box"] = {{"lo", p.box.lo}, {"hi", p.box.hi}};
        ordered_json cj;
        if (p.constraint.kind == ConstraintSpec::Kind::constant_box) {
            cj["kind"] = "constant_box";
            cj["lo"] = p.constraint.lo;
            cj["hi"] = p.constraint.hi;
        } else {
            cj["kind"] = "affine_box";
            cj["lo_coef"] = p.constraint.lo_coef;
            cj["lo_const"] = p.constraint.lo_const;
            cj["hi_coef"] = p.constraint.hi_coef;
            cj["hi_const"] = p.constraint.hi_const;
        }
        pj["constraint"] = cj;
        ordered_json fj;
        switch (p.preference.kind) {
            case PreferenceSpec::Kind::fixture:
                fj["kind"] = "fixture";
                fj["name"] = p.preference.fixture_name;
                break;
            case PreferenceSpec::Kind::utility:
                fj["kind"] = "utility";
                fj["expr"] = p.preference.utility;
                break;
            case PreferenceSpec::Kind::piecewise: {
                fj["kind"] = "piecewise";
                fj["cases"] = ordered_json::array();
                for (const auto& c : p.preference.cases) {
                    ordered_json cc;
                    cc["when_lo"] = c.when_lo;
                    cc["when_hi"] = c.when_hi;
                    cc["when_lo_closed"] = c.when_lo_closed;
                    cc["when_hi_closed"] = c.when_hi_closed;
                    if (c.empty) {
                        cc["empty"] = true;
                    } else {
                        cc["lo"] = c.lo;
                        cc["hi"] = c.hi;
                        cc["lo_strict"] = c.lo_strict;
                        cc["hi_strict"] = c.hi_strict;
                    }
                    fj["cases"].push_back(cc);
                }
                break;
            }
        }
        pj["preference"] = fj;
        root["players"].push_back(pj);
    }
    ordered_json sj;
    sj["grid"] = inst.solver.grid;
    sj["tol"] = inst.solver.tol;
    sj["seed"] = inst.solver.seed;
    sj["max_iters"] = inst.solver.max_iters;
    sj["step"] = inst.solver.step;
    sj["classify_points"] = inst.solver.classify_points;
    sj["midpoint_t_grid"] = inst.solver.midpoint_t_grid;
    sj["midpoint_w_samples"] = inst.solver.midpoint_w_samples;
    sj["midpoint_min_radius"] = inst.solver.midpoint_min_radius;
    root["solver"] = sj;
    return root.dump(2) + "\n";
}

namespace {

PreferenceMap realize_preference(const InstanceFile& inst, int player, const Box& rival_box) {
    const PlayerSpec& ps = inst.players[player];
    const int own_dim = ps.dim;
    int offset = 0;
    for (int i = 0; i < player; ++i) offset += inst.players[i].dim;
    const int profile_dim = [&] {
        int d = 0;
        for (const auto& p : inst.players) d += p.dim;
        return d;
    }();
    auto assemble = [offset, own_dim](const Vec& own, const Vec& rival) {
        Vec profile(rival.begin(), rival.begin() + offset);
        profile.insert(profile.end(), own.begin(), own.end());
        profile.insert(profile.end(), rival.begin() + offset, rival.end());
        return profile;
    };

    switch (ps.preference.kind) {
        case PreferenceSpec::Kind::fixture: {
            PreferenceMap base = fixtures::by_name(ps.preference.fixture_name);
            if (base.own_dim != own_dim)
                throw instance_error("fixture dimension mismatch for player " +
                                     std::to_string(player));
            base.rival_dim = rival_box.dim();
            base.rival_domain = rival_box;
            return base;
        }
        case PreferenceSpec::Kind::utility: {
            expr::Expression e = expr::parse(ps.preference.utility);
            if (e.max_variable() > profile_dim)
                throw instance_error("utility references x" + std::to_string(e.max_variable()) +
                                     " beyond the profile dimension");
            UtilityFn u = [e, assemble](const Vec& own, const Vec& rival) {
                return e.eval(assemble(own, rival));
            };
            return from_utility(u, ps.box, rival_box);
        }
        case PreferenceSpec::Kind::piecewise: {
            if (own_dim != 1)
                throw instance_error("piecewise preferences require a 1-D own space");
            struct Case {
                PreferenceSpec::PiecewiseCase spec;
                expr::Expression lo, hi;
                bool has_exprs;
            };
            auto cases = std::make_shared<std::vector<Case>>();
            for (const auto& c : ps.preference.cases) {
                if (c.empty)
                    cases->push_back({c, {}, {}, false});
                else
                    cases->push_back({c, expr::parse(c.lo), expr::parse(c.hi), true});
            }
            Box own_box = ps.box;
            PreferenceMap P;
            P.own_dim = 1;
            P.rival_dim = rival_box.dim();
            P.domain = own_box;
            P.rival_domain = rival_box;
            P.name = "piecewise";
            P.eval_fn = [cases, assemble, own_box](const Vec& own, const Vec& rival)
                -> ConvexRegion {
                double x = own[0];
                for (const auto& c : *cases) {
                    bool lo_ok = c.spec.when_lo_closed ? x >= c.spec.when_lo : x > c.spec.when_lo;
                    bool hi_ok = c.spec.when_hi_closed ? x <= c.spec.when_hi : x < c.spec.when_hi;
                    if (!lo_ok || !hi_ok) continue;
                    if (c.spec.empty) return ConvexRegion::empty_region(1);
                    Vec profile = assemble(own, rival);
                    double lo = c.lo.eval(profile), hi = c.hi.eval(profile);
                    bool lo_strict = c.spec.lo_strict, hi_strict = c.spec.hi_strict;
                    if (lo < own_box.lo[0]) {
                        lo = own_box.lo[0];
                        lo_strict = false;
                    }
                    if (hi > own_box.hi[0]) {
                        hi = own_box.hi[0];
                        hi_strict = false;
                    }
                    return ConvexRegion::segment(lo, hi, lo_strict, hi_strict);
                }
                throw instance_error("piecewise preference: no case matches x");
            };
            return P;
        }
    }
    throw instance_error("unreachable preference kind");
}

}  // namespace

GameInstance build_game(const InstanceFile& inst) {
    GameInstance G;
    const int total = [&] {
        int d = 0;
        for (const auto& p : inst.players) d += p.dim;
        return d;
    }();
    for (std::size_t nu = 0; nu < inst.players.size(); ++nu) {
        const PlayerSpec& ps = inst.players[nu];
        Vec rlo, rhi;
        for (std::size_t mu = 0; mu < inst.players.size(); ++mu) {
            if (mu == nu) continue;
            rlo.insert(rlo.end(), inst.players[mu].box.lo.begin(), inst.players[mu].box.lo.end());
            rhi.insert(rhi.end(), inst.players[mu].box.hi.begin(), inst.players[mu].box.hi.end());
        }
        Box rival_box(rlo, rhi);

        Player pl;
        pl.own_dim = ps.dim;
        pl.strategy_box = ps.box;
        if (ps.constraint.kind == ConstraintSpec::Kind::constant_box) {
            if (static_cast<int>(ps.constraint.lo.size()) != ps.dim)
                throw instance_error("constraint bound dimension mismatch");
            pl.constraint = ConstraintMap::constant(
                ConvexRegion::interval_product(Box(ps.constraint.lo, ps.constraint.hi)));
        } else {
            for (const auto& row : ps.constraint.lo_coef)
                if (static_cast<int>(row.size()) != total)
                    throw instance_error("affine constraint row dimension mismatch");
            for (const auto& row : ps.constraint.hi_coef)
                if (static_cast<int>(row.size()) != total)
                    throw instance_error("affine constraint row dimension mismatch");
            pl.constraint =
                ConstraintMap::affine_box(ps.constraint.lo_coef, ps.constraint.lo_const,
                                          ps.constraint.hi_coef, ps.constraint.hi_const, ps.box);
        }
        pl.preference = realize_preference(inst, static_cast<int>(nu), rival_box);
        G.players.push_back(std::move(pl));
    }
    return G;
}

InstanceFile export_fixture_instance(const std::string& fixture_name) {
    InstanceFile inst;
    PlayerSpec p;
    p.dim = 1;
    p.box = Box({0.0}, {1.0});
    p.constraint.kind = ConstraintSpec::Kind::constant_box;
    p.constraint.lo = {0.0};
    p.constraint.hi = {1.0};
    p.preference.kind = PreferenceSpec::Kind::piecewise;
    if (fixture_name == "example-3.1") {
        PreferenceSpec::PiecewiseCase low;
        low.when_lo = 0.0;
        low.when_hi = 0.5;
        low.when_hi_closed = false;
        low.lo = "x1";
        low.lo_strict = true;
        low.hi = "1";
        PreferenceSpec::PiecewiseCase mid;
        mid.when_lo = 0.5;
        mid.when_hi = 0.5;
        mid.empty = true;
        PreferenceSpec::PiecewiseCase high;
        high.when_lo = 0.5;
        high.when_lo_closed = false;
        high.when_hi = 1.0;
        high.lo = "0.5";
        high.hi = "x1";
        high.hi_strict = true;
        p.preference.cases = {low, mid, high};
    } else if (fixture_name == "example-3.2") {
        PreferenceSpec::PiecewiseCase low;
        low.when_lo = 0.0;
        low.when_hi = 0.5;
        low.lo = "x1";
        low.lo_strict = true;
        low.hi = "1";
        PreferenceSpec::PiecewiseCase high;
        high.when_lo = 0.5;
        high.when_lo_closed = false;
        high.when_hi = 1.0;
        high.lo = "0.5";
        high.hi = "0.75";
        p.preference.cases = {low, high};
    } else {
        throw instance_error("unknown fixture: " + fixture_name);
    }
    inst.players.push_back(p);
    inst.solver.grid = 2001;
    return inst;
}

MidpointResolution midpoint_resolution(const SolverSpec& solver) {
    MidpointResolution r;
    r.t_grid = solver.midpoint_t_grid;
    r.w_samples = solver.midpoint_w_samples;
    r.min_radius = solver.midpoint_min_radius;
    return r;
}

}  // namespace gnevi
