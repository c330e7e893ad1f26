#include "gnevi/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gnevi/expr.hpp"
#include "gnevi/instance.hpp"
#include "gnevi/pipeline.hpp"
#include "gnevi/report.hpp"
#include "gnevi/rng.hpp"

namespace gnevi::cli {

namespace {

using report::Node;

struct Ctx {
    Options opts;
    InstanceFile inst;
    std::string instance_hash;
    par::Mode mode = par::default_mode();
    int failures = 0;
    Node results = Node::object();
    std::string human;
};

Vec parse_point(const std::string& text) {
    Vec p;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            p.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw instance_error("bad --point coordinate '" + tok + "'");
        }
    }
    if (p.empty()) throw instance_error("--point requires coordinates");
    return p;
}

Node vec_node(const Vec& v) {
    Node a = Node::array();
    for (double x : v) a.push(Node::num(x));
    return a;
}

Node certificate_node(const vi::SolutionCertificate& cert) {
    Node n = Node::object();
    n.set("point", vec_node(cert.point));
    n.set("multiplier", vec_node(cert.multiplier));
    n.set("residual", Node::num(cert.residual));
    n.set("scale", Node::num(cert.scale));
    n.set("method", Node::str(cert.method == vi::Method::grid ? "grid" : "fixed-point"));
    n.set("verified", Node::boolean(cert.verified));
    if (!cert.note.empty()) n.set("note", Node::str(cert.note));
    return n;
}

std::string fmt_vec(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v[i]);
        s += buf;
        if (i + 1 < v.size()) s += ", ";
    }
    return s + ")";
}

PipelineParams pipeline_params(const Ctx& ctx) {
    PipelineParams p;
    p.grid_per_axis = ctx.opts.grid > 0 ? ctx.opts.grid : ctx.inst.solver.grid;
    p.tol = ctx.opts.tol > 0 ? ctx.opts.tol : ctx.inst.solver.tol;
    p.mode = ctx.mode;
    p.midpoint = midpoint_resolution(ctx.inst.solver);
    p.fixed_point.max_iters =
        ctx.opts.max_iters > 0 ? ctx.opts.max_iters : ctx.inst.solver.max_iters;
    p.fixed_point.step = ctx.inst.solver.step;
    p.fixed_point.record_trace = ctx.opts.trace;
    return p;
}

// ---- classify ----------------------------------------------------------------

void cmd_classify(Ctx& ctx) {
    GameInstance G = build_game(ctx.inst);
    MidpointResolution res = midpoint_resolution(ctx.inst.solver);
    Node players = Node::array();
    std::ostringstream hs;
    for (std::size_t nu = 0; nu < G.players.size(); ++nu) {
        const Player& pl = G.players[nu];
        Node points = Node::array();
        hs << "player " << nu << " classification\n";
        const int count = ctx.inst.solver.classify_points;
        for (int i = 0; i < count; ++i) {
            if (pl.own_dim != 1) break;  // classification sweeps 1-D own spaces
            double x = pl.strategy_box.lo[0] +
                       (pl.strategy_box.hi[0] - pl.strategy_box.lo[0]) * double(i) / (count - 1);
            Vec own{x};
            Vec rival = pl.preference.rival_dim > 0 ? pl.preference.rival_domain.center() : Vec{};
            ClassifyReport rep = classify_sufficient_conditions(pl.preference, own, rival, res);
            bool implications_ok = rep.impl_open_lower && rep.impl_internal_lower &&
                                   rep.impl_lsc_open_upper && rep.impl_lsc_internal_upper;
            if (!implications_ok) ++ctx.failures;
            Node pn = Node::object();
            pn.set("x", Node::num(x));
            pn.set("open_valued", Node::boolean(rep.open_valued));
            pn.set("internal_point", Node::boolean(rep.internal_point_cond));
            pn.set("map_lsc", Node::boolean(rep.map_lsc));
            pn.set("relation_lsc", Node::boolean(rep.relation_lsc));
            pn.set("lower_midpoint", Node::boolean(rep.lower.verified));
            pn.set("upper_midpoint", Node::boolean(rep.upper.verified));
            pn.set("implications_ok", Node::boolean(implications_ok));
            points.push(std::move(pn));
            hs << "  x=" << x << " open=" << rep.open_valued << " lsc=" << rep.map_lsc
               << " rel-lsc=" << rep.relation_lsc << " lower=" << rep.lower.verified
               << " upper=" << rep.upper.verified << "\n";
        }
        Node pnode = Node::object();
        pnode.set("player", Node::integer(static_cast<long long>(nu)));
        pnode.set("points", std::move(points));
        players.push(std::move(pnode));
    }
    ctx.results.set("players", std::move(players));
    ctx.human += hs.str();
}

// ---- solve-vi ------------------------------------------------------------------

void cmd_solve_vi(Ctx& ctx) {
    if (ctx.inst.players.size() != 1 ||
        ctx.inst.players[0].constraint.kind != ConstraintSpec::Kind::constant_box)
        throw instance_error("solve-vi needs a single player with a constant constraint");
    GameInstance G = build_game(ctx.inst);
    const Player& pl = G.players[0];
    ConvexRegion K = pl.constraint.value({});
    PipelineParams params = pipeline_params(ctx);

    bool implication = true;
    Node certs = Node::array();
    std::ostringstream hs;
    try {
        MaximalPipelineResult res = maximal_via_vi(pl.preference, K, params);
        for (std::size_t i = 0; i < res.certificates.size(); ++i) {
            Node c = certificate_node(res.certificates[i]);
            c.set("maximal", Node::boolean(res.maximality[i].maximal));
            certs.push(std::move(c));
            hs << "certificate at " << fmt_vec(res.certificates[i].point)
               << " residual=" << res.certificates[i].residual
               << " maximal=" << (res.maximality[i].maximal ? "yes" : "no") << "\n";
        }
        Node notes = Node::array();
        for (const auto& s : res.hypothesis_notes) notes.push(Node::str(s));
        ctx.results.set("hypothesis_verdicts", std::move(notes));
        if (res.certificates.empty()) hs << "no VI solution at this resolution\n";
    } catch (const pipeline_failure& e) {
        implication = false;
        ++ctx.failures;
        hs << "PIPELINE FAILURE: " << e.what() << "\n";
        ctx.results.set("pipeline_failure", Node::str(e.what()));
    }
    ctx.results.set("certificates", std::move(certs));
    ctx.results.set("implication_holds", Node::boolean(implication));
    ctx.human += hs.str();
}

// ---- solve-qvi -----------------------------------------------------------------

void cmd_solve_qvi(Ctx& ctx) {
    GameInstance G = build_game(ctx.inst);
    PipelineParams params = pipeline_params(ctx);
    bool implication = true;
    Node certs = Node::array();
    std::ostringstream hs;
    try {
        EquilibriumPipelineResult res = equilibrium_via_qvi(G, params);
        for (std::size_t i = 0; i < res.certificates.size(); ++i) {
            Node c = certificate_node(res.certificates[i]);
            c.set("equilibrium", Node::boolean(res.equilibria[i].verdict));
            certs.push(std::move(c));
            hs << "certificate at " << fmt_vec(res.certificates[i].point)
               << " equilibrium=" << (res.equilibria[i].verdict ? "yes" : "no") << "\n";
        }
        Node notes = Node::array();
        for (const auto& s : res.hypothesis_notes) notes.push(Node::str(s));
        ctx.results.set("hypothesis_verdicts", std::move(notes));
        ctx.results.set("used_fixed_point", Node::boolean(res.used_fixed_point));
        if (res.certificates.empty()) hs << "no QVI solution found\n";
    } catch (const pipeline_failure& e) {
        implication = false;
        ++ctx.failures;
        hs << "PIPELINE FAILURE: " << e.what() << "\n";
        ctx.results.set("pipeline_failure", Node::str(e.what()));
    }
    ctx.results.set("certificates", std::move(certs));
    ctx.results.set("implication_holds", Node::boolean(implication));
    ctx.human += hs.str();
}

// ---- verify --------------------------------------------------------------------

void cmd_verify(Ctx& ctx) {
    if (ctx.opts.point.empty()) throw instance_error("verify requires --point");
    Vec x = parse_point(ctx.opts.point);
    GameInstance G = build_game(ctx.inst);
    if (static_cast<int>(x.size()) != G.profile_dim())
        throw instance_error("--point dimension does not match the instance");
    double tol = ctx.opts.tol > 0 ? ctx.opts.tol : ctx.inst.solver.tol;
    std::ostringstream hs;

    vi::SolutionCertificate cert;
    if (G.players.size() == 1 &&
        ctx.inst.players[0].constraint.kind == ConstraintSpec::Kind::constant_box) {
        vi::VIProblem prob;
        prob.feasible = G.players[0].constraint.value({});
        const PreferenceMap& P = G.players[0].preference;
        prob.op = [&P](const Vec& p) { return principal_set(P, p); };
        cert = vi::verify_solution(prob, x, tol);
        if (region_contains(prob.feasible, x, tol)) {
            MaximalityReport rep = is_maximal(P, prob.feasible, x, tol);
            ctx.results.set("maximal", Node::boolean(rep.maximal));
            if (!rep.disjoint.disjoint)
                ctx.results.set("overlap_witness", vec_node(rep.disjoint.witness));
            hs << "maximal=" << (rep.maximal ? "yes" : "no") << "\n";
        }
    } else {
        ProductOperator F(G);
        cert = verify_qvi_point(F, x, tol);
        EquilibriumReport rep = is_equilibrium(G, x, tol);
        ctx.results.set("equilibrium", Node::boolean(rep.verdict));
        hs << "equilibrium=" << (rep.verdict ? "yes" : "no") << "\n";
    }
    ctx.results.set("certificate", certificate_node(cert));
    hs << "verified=" << (cert.verified ? "yes" : "no") << " residual=" << cert.residual << "\n";
    if (!cert.verified) {
        ++ctx.failures;
        if (!cert.multiplier.empty()) hs << "witness multiplier " << fmt_vec(cert.multiplier) << "\n";
    }
    ctx.human += hs.str();
}

// ---- audit ---------------------------------------------------------------------

void cmd_audit(Ctx& ctx) {
    GameInstance G = build_game(ctx.inst);
    std::uint64_t seed = ctx.opts.seed_set ? ctx.opts.seed : ctx.inst.solver.seed;
    AuditReport rep = audit_assumptions(G, 12, seed);
    Node entries = Node::array();
    std::ostringstream hs;
    for (const auto& e : rep.entries) {
        Node n = Node::object();
        n.set("player", Node::integer(e.player));
        n.set("hypothesis", Node::str(e.hypothesis));
        n.set("pass", Node::boolean(e.pass));
        if (!e.witness.empty()) n.set("witness", Node::str(e.witness));
        entries.push(std::move(n));
        hs << "player " << e.player << ": " << e.hypothesis << " -> "
           << (e.pass ? "pass" : "FAIL") << (e.witness.empty() ? "" : " (" + e.witness + ")")
           << "\n";
        if (!e.pass) ++ctx.failures;
    }
    ctx.results.set("entries", std::move(entries));

    // normal-cone property sweep per player at sampled anchors
    Node props = Node::array();
    Box pbox = G.profile_box();
    Rng rng = Rng::labeled(seed, "audit-properties");
    for (std::size_t nu = 0; nu < G.players.size(); ++nu) {
        PropertySamples samples;
        for (int a = 0; a < 4; ++a) {
            Vec profile = a == 0 ? pbox.center() : rng.point_in(pbox);
            samples.anchors.push_back({G.own_part(profile, static_cast<int>(nu)),
                                       G.rival_part(profile, static_cast<int>(nu))});
        }
        samples.sequences_per_anchor = 3;
        struct Named {
            NormalProperty which;
            const char* name;
        };
        for (const Named& p :
             {Named{NormalProperty::nonzero_normal, "nonzero normal"},
              Named{NormalProperty::trivial_lineality, "trivial lineality"},
              Named{NormalProperty::closed_graph, "closed graph"},
              Named{NormalProperty::strict_negativity, "strict negativity"}}) {
            PropertyCheckReport pr = check_property(G.players[nu].preference, p.which, samples);
            Node n = Node::object();
            n.set("player", Node::integer(static_cast<long long>(nu)));
            n.set("property", Node::str(p.name));
            n.set("checked", Node::integer(pr.checked));
            n.set("hypothesis_filtered", Node::integer(pr.hypothesis_filtered));
            n.set("violations", Node::integer(pr.violations));
            n.set("pass", Node::boolean(pr.pass()));
            props.push(std::move(n));
            hs << "player " << nu << ": property '" << p.name << "' -> "
               << (pr.pass() ? "pass" : "FAIL") << " (" << pr.checked << " checked, "
               << pr.hypothesis_filtered << " filtered)\n";
            if (!pr.pass()) ++ctx.failures;
        }
    }
    ctx.results.set("property_checks", std::move(props));
    ctx.results.set("all_pass", Node::boolean(rep.all_pass));
    ctx.human += hs.str();
}

// ---- reproduce-paper -------------------------------------------------------------

struct ExpectedPoint {
    bool lower, upper, open_valued, relation_lsc, map_lsc;
};

ExpectedPoint expected_31(double x) {
    return {true, true, x <= 0.5, x <= 0.5, true};
}

ExpectedPoint expected_32(double x) {
    return {x < 0.75, true, x <= 0.5, x <= 0.5, std::fabs(x - 0.5) > 1e-12};
}

void cmd_reproduce(Ctx& ctx) {
    const int kPoints = 21;
    std::ostringstream hs;
    int mismatches = 0;

    auto run_suite = [&](const std::string& name, ExpectedPoint (*expected)(double)) {
        PreferenceMap P = fixtures::by_name(name);
        Node points = Node::array();
        hs << name << " classification\n";
        for (int i = 0; i < kPoints; ++i) {
            double x = double(i) / (kPoints - 1);
            ClassifyReport rep = classify_sufficient_conditions(P, {x});
            ExpectedPoint want = expected(x);
            bool ok = rep.lower.verified == want.lower && rep.upper.verified == want.upper &&
                      rep.open_valued == want.open_valued &&
                      rep.relation_lsc == want.relation_lsc && rep.map_lsc == want.map_lsc;
            if (!ok) ++mismatches;
            Node pn = Node::object();
            pn.set("x", Node::num(x));
            pn.set("lower_midpoint", Node::boolean(rep.lower.verified));
            pn.set("upper_midpoint", Node::boolean(rep.upper.verified));
            pn.set("open_valued", Node::boolean(rep.open_valued));
            pn.set("relation_lsc", Node::boolean(rep.relation_lsc));
            pn.set("map_lsc", Node::boolean(rep.map_lsc));
            pn.set("matches_expected", Node::boolean(ok));
            points.push(std::move(pn));
            if (!ok) hs << "  MISMATCH at x=" << x << "\n";
        }
        Node suite = Node::object();
        suite.set("fixture", Node::str(name));
        suite.set("points", std::move(points));
        return suite;
    };

    Node suites = Node::array();
    suites.push(run_suite("example-3.1", expected_31));
    suites.push(run_suite("example-3.2", expected_32));

    // induced-map consistency: the utility behind example-3.1 rebuilds the
    // piecewise table
    {
        PreferenceMap table = fixtures::example_3_1();
        PreferenceMap induced = from_utility(table.utility, table.domain);
        bool all_agree = true;
        for (int i = 0; i < kPoints; ++i) {
            double x = double(i) / (kPoints - 1);
            if (!regions_agree(induced.eval({x}), table.eval({x}), table.domain, 101, 1e-9))
                all_agree = false;
        }
        if (!all_agree) ++mismatches;
        ctx.results.set("utility_table_agreement", Node::boolean(all_agree));
        hs << "utility/table agreement: " << (all_agree ? "yes" : "NO") << "\n";
    }

    // 1-D reformulation pipeline on example-3.1 over K = [0, 1]
    {
        PreferenceMap P = fixtures::example_3_1();
        ConvexRegion K = ConvexRegion::segment(0.0, 1.0, false, false);
        PipelineParams params;
        params.grid_per_axis = ctx.opts.grid > 0 ? ctx.opts.grid : 2001;
        params.tol = ctx.opts.tol > 0 ? ctx.opts.tol : 1e-6;
        params.mode = ctx.mode;
        MaximalPipelineResult res = maximal_via_vi(P, K, params);
        double spacing = 1.0 / (params.grid_per_axis - 1);
        bool pipeline_ok = res.certificates.size() == 1 &&
                           std::fabs(res.certificates[0].point[0] - 0.5) <= 0.5 * spacing &&
                           !res.maximality.empty() && res.maximality[0].maximal;
        if (!pipeline_ok) ++mismatches;
        Node pn = Node::object();
        pn.set("grid", Node::integer(params.grid_per_axis));
        pn.set("solutions", Node::integer(static_cast<long long>(res.certificates.size())));
        if (!res.certificates.empty()) {
            pn.set("point", vec_node(res.certificates[0].point));
            pn.set("maximal", Node::boolean(res.maximality[0].maximal));
        }
        pn.set("matches_expected", Node::boolean(pipeline_ok));
        ctx.results.set("pipeline", std::move(pn));
        hs << "pipeline solution count=" << res.certificates.size()
           << (pipeline_ok ? " (as expected)" : " MISMATCH") << "\n";
    }

    ctx.results.set("suites", std::move(suites));
    ctx.results.set("expected_mismatches", Node::integer(mismatches));
    ctx.failures += mismatches;
    hs << "mismatches: " << mismatches << "\n";
    ctx.human += hs.str();
}

}  // namespace

int run(const Options& opts, std::ostream& out, std::ostream& err) {
    Ctx ctx;
    ctx.opts = opts;
    ctx.mode = opts.serial ? par::Mode::serial : par::default_mode();
    try {
        if (opts.grid != 0 && opts.grid < 2)
            throw instance_error("--grid must be at least 2");
        if (opts.tol < 0) throw instance_error("--tol must be positive");
        if (opts.max_iters < 0) throw instance_error("--max-iters must be positive");
        if (opts.command == "reproduce-paper") {
            ctx.inst = export_fixture_instance("example-3.1");
            ctx.instance_hash = report::hash_hex("builtin:reproduce-paper");
        } else {
            if (opts.instance_path.empty())
                throw instance_error(opts.command + " requires an instance file");
            std::ifstream in(opts.instance_path, std::ios::binary);
            if (!in) throw instance_error("cannot open instance file: " + opts.instance_path);
            std::stringstream ss;
            ss << in.rdbuf();
            std::string bytes = ss.str();
            ctx.instance_hash = report::hash_hex(bytes);
            ctx.inst = parse_instance(bytes);
        }

        if (opts.command == "classify")
            cmd_classify(ctx);
        else if (opts.command == "solve-vi")
            cmd_solve_vi(ctx);
        else if (opts.command == "solve-qvi")
            cmd_solve_qvi(ctx);
        else if (opts.command == "verify")
            cmd_verify(ctx);
        else if (opts.command == "audit")
            cmd_audit(ctx);
        else if (opts.command == "reproduce-paper")
            cmd_reproduce(ctx);
        else
            throw instance_error("unknown command '" + opts.command + "'");
    } catch (const instance_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const expr::parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    Node machine = Node::object();
    machine.set("tool", Node::str(report::kToolVersion));
    machine.set("command", Node::str(opts.command));
    machine.set("instance_hash", Node::str(ctx.instance_hash));
    machine.set("seed",
                Node::integer(static_cast<long long>(opts.seed_set ? opts.seed : ctx.inst.solver.seed)));
    Node params = Node::object();
    params.set("grid", Node::integer(opts.grid > 0 ? opts.grid : ctx.inst.solver.grid));
    params.set("tol", Node::num(opts.tol > 0 ? opts.tol : ctx.inst.solver.tol));
    params.set("max_iters",
               Node::integer(opts.max_iters > 0 ? opts.max_iters : ctx.inst.solver.max_iters));
    machine.set("params", std::move(params));
    machine.set("results", std::move(ctx.results));
    machine.set("verdict_failures", Node::integer(ctx.failures));
    std::string machine_text = machine.render();

    std::ostringstream human;
    human << report::kToolVersion << " " << opts.command << "\n"
          << "instance " << ctx.instance_hash << "\n"
          << ctx.human << "verdict failures: " << ctx.failures << "\n";

    if (!opts.out_path.empty()) {
        std::ofstream mj(opts.out_path + ".json", std::ios::binary);
        mj << machine_text;
        std::ofstream ht(opts.out_path + ".txt", std::ios::binary);
        ht << human.str();
    }
    out << (opts.format == "machine" ? machine_text : human.str());
    return ctx.failures == 0 ? 0 : 1;
}

}  // namespace gnevi::cli
