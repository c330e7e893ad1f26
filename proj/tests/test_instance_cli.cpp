#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gnevi/cli.hpp"
#include "gnevi/expr.hpp"
#include "gnevi/instance.hpp"
#include "gnevi/report.hpp"

using namespace gnevi;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/gnevi_test_") + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("expression grammar") {
    expr::Expression e = expr::parse("-(x1 - 0.5)^2");
    CHECK(e.eval({0.7}) == doctest::Approx(-0.04));
    CHECK(e.max_variable() == 1);

    expr::Expression m = expr::parse("min(x1, max(x2, 0.25)) + abs(-2) / 4");
    CHECK(m.eval({0.9, 0.1}) == doctest::Approx(0.25 + 0.5));
    CHECK(m.max_variable() == 2);

    CHECK(expr::parse("2^3^2").eval({}) == doctest::Approx(512.0));  // right assoc
    CHECK(expr::parse("-x1^2").eval({2.0}) == doctest::Approx(-4.0));
    CHECK(expr::parse("1e-3 * x1").eval({2.0}) == doctest::Approx(0.002));

    CHECK_THROWS_AS(expr::parse("x1 +"), expr::parse_error);
    CHECK_THROWS_AS(expr::parse("foo(x1)"), expr::parse_error);
    CHECK_THROWS_AS(expr::parse("x0"), expr::parse_error);
    CHECK_THROWS_AS(expr::parse("x1 x2"), expr::parse_error);
}

TEST_CASE("instance round-trip is canonical") {
    InstanceFile inst = export_fixture_instance("example-3.1");
    std::string once = serialize_instance(inst);
    InstanceFile back = parse_instance(once);
    CHECK(serialize_instance(back) == once);
}

TEST_CASE("strict parsing rejects unknown fields and bad numbers") {
    CHECK_THROWS_AS(parse_instance("{\"version\": \"gnevi/1\", \"players\": [], \"bogus\": 1}"),
                    instance_error);
    CHECK_THROWS_AS(parse_instance("not json"), instance_error);
    std::string base = serialize_instance(export_fixture_instance("example-3.1"));
    CHECK_THROWS_AS(parse_instance("{\"version\": \"gnevi/2\", \"players\": []}"),
                    instance_error);
    // a player with an unknown preference kind
    CHECK_THROWS_AS(
        parse_instance(R"({"version": "gnevi/1", "players": [{"dim": 1,
            "box": {"lo": [0], "hi": [1]},
            "constraint": {"kind": "constant_box", "lo": [0], "hi": [1]},
            "preference": {"kind": "mystery"}}]})"),
        instance_error);
}

TEST_CASE("exported fixtures rebuild verdict-equivalent preference maps") {
    for (const auto& name : fixtures::names()) {
        InstanceFile inst = export_fixture_instance(name);
        GameInstance G = build_game(inst);
        PreferenceMap direct = fixtures::by_name(name);
        for (int i = 0; i <= 40; ++i) {
            double x = double(i) / 40.0;
            CAPTURE(name);
            CAPTURE(x);
            CHECK(regions_agree(G.players[0].preference.eval({x}), direct.eval({x}),
                                direct.domain, 101, 1e-9));
        }
        // verdict equivalence carries through the continuity checks
        for (double x : {0.25, 0.5, 0.8, 1.0}) {
            CAPTURE(name);
            CAPTURE(x);
            CHECK(check_lower_midpoint(G.players[0].preference, {x}).verified ==
                  check_lower_midpoint(direct, {x}).verified);
            CHECK(check_upper_midpoint(G.players[0].preference, {x}).verified ==
                  check_upper_midpoint(direct, {x}).verified);
        }
    }
}

TEST_CASE("utility instances build playable games") {
    std::string text = R"({
      "version": "gnevi/1",
      "players": [
        {"dim": 1, "box": {"lo": [0], "hi": [1]},
         "constraint": {"kind": "constant_box", "lo": [0], "hi": [1]},
         "preference": {"kind": "utility", "expr": "-(x1 - x2)^2"}},
        {"dim": 1, "box": {"lo": [0], "hi": [1]},
         "constraint": {"kind": "constant_box", "lo": [0], "hi": [1]},
         "preference": {"kind": "utility", "expr": "-(x2 - x1)^2"}}
      ],
      "solver": {"grid": 41, "tol": 1e-6}
    })";
    GameInstance G = build_game(parse_instance(text));
    CHECK(G.profile_dim() == 2);
    CHECK(is_equilibrium(G, {0.5, 0.5}, 1e-6).verdict);
    CHECK(!is_equilibrium(G, {0.0, 1.0}, 1e-6).verdict);
}

TEST_CASE("report writer renders deterministically with 12 significant digits") {
    report::Node n = report::Node::object();
    n.set("value", report::Node::num(1.0 / 3.0));
    n.set("list", report::Node::array().push(report::Node::num(2e-7)));
    std::string a = n.render();
    CHECK(a.find("0.333333333333") != std::string::npos);
    CHECK(a.find("2e-07") != std::string::npos);
    report::Node m = report::Node::object();
    m.set("value", report::Node::num(1.0 / 3.0));
    m.set("list", report::Node::array().push(report::Node::num(2e-7)));
    CHECK(m.render() == a);

    CHECK(report::hash_hex("abc") == report::hash_hex("abc"));
    CHECK(report::hash_hex("abc") != report::hash_hex("abd"));
}

TEST_CASE("cli reproduce-paper exits clean and is byte-deterministic") {
    cli::Options opts;
    opts.command = "reproduce-paper";
    opts.grid = 401;  // light grid for the unit suite; acceptance runs 2001
    opts.out_path = "/tmp/gnevi_test_repro_a";
    opts.format = "machine";
    std::ostringstream out_a, err_a;
    int code_a = cli::run(opts, out_a, err_a);
    CHECK(code_a == 0);

    opts.out_path = "/tmp/gnevi_test_repro_b";
    std::ostringstream out_b, err_b;
    int code_b = cli::run(opts, out_b, err_b);
    CHECK(code_b == 0);

    CHECK(out_a.str() == out_b.str());
    CHECK(slurp("/tmp/gnevi_test_repro_a.json") == slurp("/tmp/gnevi_test_repro_b.json"));
    CHECK(!slurp("/tmp/gnevi_test_repro_a.txt").empty());
}

TEST_CASE("cli solve-vi reports the fixture solution and maximality") {
    InstanceFile inst = export_fixture_instance("example-3.1");
    std::string path = write_temp("ex31.json", serialize_instance(inst));
    cli::Options opts;
    opts.command = "solve-vi";
    opts.instance_path = path;
    opts.grid = 201;
    opts.format = "machine";
    std::ostringstream out, err;
    int code = cli::run(opts, out, err);
    CHECK(code == 0);
    CHECK(out.str().find("\"maximal\": true") != std::string::npos);
    CHECK(out.str().find("0.5") != std::string::npos);
}

TEST_CASE("cli verify flags a non-solution with a witness") {
    InstanceFile inst = export_fixture_instance("example-3.1");
    std::string path = write_temp("ex31v.json", serialize_instance(inst));
    cli::Options opts;
    opts.command = "verify";
    opts.instance_path = path;
    opts.point = "0.25";
    opts.format = "machine";
    std::ostringstream out, err;
    int code = cli::run(opts, out, err);
    CHECK(code == 1);
    CHECK(out.str().find("\"verified\": false") != std::string::npos);

    opts.point = "0.5";
    std::ostringstream out2, err2;
    CHECK(cli::run(opts, out2, err2) == 0);
}

TEST_CASE("cli returns 2 on unusable input") {
    cli::Options opts;
    opts.command = "solve-vi";
    opts.instance_path = "/tmp/gnevi_test_missing.json";
    std::ostringstream out, err;
    CHECK(cli::run(opts, out, err) == 2);

    std::string path = write_temp("broken.json", "{\"version\": \"gnevi/1\"");
    opts.instance_path = path;
    std::ostringstream out2, err2;
    CHECK(cli::run(opts, out2, err2) == 2);
}

TEST_CASE("cli audit passes the shipped fixture instance") {
    InstanceFile inst = export_fixture_instance("example-3.1");
    std::string path = write_temp("ex31a.json", serialize_instance(inst));
    cli::Options opts;
    opts.command = "audit";
    opts.instance_path = path;
    std::ostringstream out, err;
    CHECK(cli::run(opts, out, err) == 0);
}

TEST_CASE("shipped instance files load and drive the solvers") {
    const std::string dir = GNEVI_INSTANCE_DIR;

    // the fixture instance reproduces its registry twin
    InstanceFile ex31 = load_instance(dir + "/example-3.1.json");
    GameInstance G31 = build_game(ex31);
    PreferenceMap direct = fixtures::example_3_1();
    for (double x : {0.1, 0.25, 0.5, 0.75, 1.0})
        CHECK(regions_agree(G31.players[0].preference.eval({x}), direct.eval({x}),
                            direct.domain, 101, 1e-9));
    CHECK(ex31.solver.grid == 2001);

    InstanceFile ex32 = load_instance(dir + "/example-3.2.json");
    CHECK(build_game(ex32).players[0].preference.eval({0.8}).dim == 1);

    // the quadratic game instance certifies the diagonal through the cli
    cli::Options opts;
    opts.command = "solve-qvi";
    opts.instance_path = dir + "/quadratic-game.json";
    opts.grid = 21;
    opts.format = "machine";
    std::ostringstream out, err;
    CHECK(cli::run(opts, out, err) == 0);
    CHECK(out.str().find("\"equilibrium\": true") != std::string::npos);

    cli::Options mv;
    mv.command = "solve-qvi";
    mv.instance_path = dir + "/moving-box-game.json";
    mv.grid = 41;
    mv.format = "machine";
    std::ostringstream out2, err2;
    CHECK(cli::run(mv, out2, err2) == 0);
    CHECK(out2.str().find("\"equilibrium\": true") != std::string::npos);

    cli::Options cls;
    cls.command = "classify";
    cls.instance_path = dir + "/example-3.2.json";
    cls.format = "machine";
    std::ostringstream out3, err3;
    CHECK(cli::run(cls, out3, err3) == 0);
    CHECK(out3.str().find("\"map_lsc\": false") != std::string::npos);
}
