#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

const std::string kBin = THURSTONLAB_BIN;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const std::string out = "/tmp/thurstonlab_test_out.txt";
    const std::string err = "/tmp/thurstonlab_test_err.txt";
    const std::string cmd = kBin + " " + args + " >" + out + " 2>" + err;
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WEXITSTATUS(raw);
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string last_line(const std::string& text) {
    std::stringstream ss(text);
    std::string line, last;
    while (std::getline(ss, line))
        if (!line.empty()) last = line;
    return last;
}

} // namespace

TEST_CASE("stretch annulus trajectory reaches the closed-form endpoint") {
    const auto r = run("stretch --annulus l=1,tau=0 --pattern opposite+ --t ln2 --steps 8");
    REQUIRE(r.code == 0);
    double t, ell, twist;
    REQUIRE(std::sscanf(last_line(r.out).c_str(), "%lf,%lf,%lf", &t, &ell, &twist) == 3);
    CHECK(ell == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(twist == doctest::Approx(1.5438736658106095).epsilon(1e-13));
}

TEST_CASE("identical runs are byte-identical") {
    const std::string args =
        "backtime --surface chart:1,0.3 --slope 1/0 --pattern opposite+ --smax 20 --steps 25 "
        "--probes 0/1,1/2 --out /tmp/thurstonlab_bt_a.csv";
    REQUIRE(run(args).code == 0);
    const std::string again =
        "backtime --surface chart:1,0.3 --slope 1/0 --pattern opposite+ --smax 20 --steps 25 "
        "--probes 0/1,1/2 --out /tmp/thurstonlab_bt_b.csv";
    REQUIRE(run(again).code == 0);
    CHECK(slurp("/tmp/thurstonlab_bt_a.csv") == slurp("/tmp/thurstonlab_bt_b.csv"));
    CHECK(!slurp("/tmp/thurstonlab_bt_a.csv").empty());

    const auto seeded1 = run("convex analyze --polytope builtin:cube-centered --maps 5 --seed 42");
    const auto seeded2 = run("convex analyze --polytope builtin:cube-centered --maps 5 --seed 42");
    REQUIRE(seeded1.code == 0);
    CHECK(seeded1.out == seeded2.out);
}

TEST_CASE("distance of a surface to itself is zero") {
    const auto r = run("distance --x markov333 --y markov333 --depth 7");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("value").get<double>() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(doc.at("schema_version").get<std::string>() == "1");
}

TEST_CASE("norm of a stretch vector is one") {
    // dtau of the opposite+ stretch vector at (1, 0): 2 * type-one term.
    const auto r = run("norm --surface chart:1,0 --v 1,2.0813037045128166 --depth 7");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("value").get<double>() == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(doc.at("argmax").get<std::string>() == "1/0");
}

TEST_CASE("malformed input exits 3 with machine-readable stderr") {
    const auto bad_pattern = run("stretch --annulus l=1,tau=0 --pattern sideways --t 1");
    CHECK(bad_pattern.code == 3);
    const auto err = nlohmann::json::parse(bad_pattern.err);
    CHECK(err.contains("error"));

    const auto bad_flag = run("stretch --no-such-flag 7");
    CHECK(bad_flag.code == 3);
    CHECK(nlohmann::json::parse(bad_flag.err).contains("error"));

    const auto bad_surface = run("distance --x fricke:3,3,4 --y markov333");
    CHECK(bad_surface.code == 3);
}

TEST_CASE("flagged results exit 2") {
    // Far past the double-precision horizon the probe traces overflow and the
    // run is flagged rather than silently truncated.
    const auto r = run(
        "backtime --surface chart:1,0 --slope 1/0 --pattern opposite+ --smax 500 --steps 10 "
        "--probes 0/1");
    CHECK(r.code == 2);
    const auto err = nlohmann::json::parse(r.err);
    CHECK(err.at("error").get<std::string>() == "flagged");
    // the summary still reports what was computed
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("truncated").get<bool>());
}

TEST_CASE("convex analyze reports the stadium adherence data") {
    const auto r = run("convex analyze --poset builtin:stadium");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    bool found_x = false;
    for (const auto& f : doc.at("report").at("faces")) {
        if (f.at("id") == "x") {
            found_x = true;
            CHECK(f.at("dim").get<int>() == 0);
            CHECK(f.at("fdim").get<int>() == 1);
            CHECK(f.at("adherence_closure").get<std::string>() == "e");
        }
    }
    CHECK(found_x);
}

TEST_CASE("convex analyze runs seeded linear-invariance checks") {
    const auto r = run("convex analyze --polytope builtin:square-centered --maps 20 --seed 7");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("linear_invariance").at("passed").get<int>() == 20);
}

TEST_CASE("convex analyze accepts a poset file") {
    const std::string path = "/tmp/thurstonlab_poset.json";
    {
        std::ofstream f(path);
        f << R"({"faces":[{"id":"v","dim":0},{"id":"e","dim":1}],
                 "inclusions":[["v","e"]],"joins":[]})";
    }
    const auto r = run("convex analyze --poset " + path);
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("report").at("faces").size() == 2);
}

TEST_CASE("convex dual emits the cross-polytope of the cube") {
    const auto r = run("convex dual --polytope builtin:cube-centered");
    REQUIRE(r.code == 0);
    int rows = 0;
    std::stringstream ss(r.out);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty() && line[0] != '#' && line[0] != 'x') ++rows;
    CHECK(rows == 6);
}

TEST_CASE("dual-sphere and primal-sphere experiments run end to end") {
    const auto dual =
        run("dual-sphere --surface markov333 --depth 3 --hull-csv /tmp/thurstonlab_hull.csv");
    REQUIRE(dual.code == 0);
    const auto ddoc = nlohmann::json::parse(dual.out);
    CHECK(ddoc.at("origin_interior").get<bool>());
    CHECK(ddoc.at("samples").get<int>() == 16);
    const std::string hull = slurp("/tmp/thurstonlab_hull.csv");
    CHECK(hull.find("slope,cell,ctwist") != std::string::npos);
    CHECK(hull.find('/') != std::string::npos); // exact rationals and slope tags

    const auto primal =
        run("primal-sphere --surface markov333 --depth 3 --samples 180 --out /tmp/thurstonlab_ps.csv");
    REQUIRE(primal.code == 0);
    const auto pdoc = nlohmann::json::parse(primal.out);
    bool has_flat = false;
    for (const auto& run_rec : pdoc.at("runs"))
        if (run_rec.at("flat").get<bool>()) has_flat = true;
    CHECK(has_flat);
    CHECK(!slurp("/tmp/thurstonlab_ps.csv").empty());
}

TEST_CASE("extract-length emits the estimate table") {
    const auto r = run(
        "extract-length --surface markov333 --gamma 0/1 --alpha0 1/0 --mmax 6 --depth 5 "
        "--out /tmp/thurstonlab_ext.csv");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("rows").get<int>() == 6);
    CHECK(doc.at("intersection").get<int>() == 1);
    const std::string csv = slurp("/tmp/thurstonlab_ext.csv");
    CHECK(csv.find("m,ell_alpha_m,norm_diff,estimate,estimate_step") != std::string::npos);
}

TEST_CASE("surface stretch flow validates and reports the argmax slope") {
    const auto r = run("stretch --surface chart:1,0.25 --slope 1/0 --pattern parallel --t 0.5 "
                       "--steps 5 --depth 6");
    REQUIRE(r.code == 0);
    const std::string last = last_line(r.out);
    CHECK(last.find("1/0") != std::string::npos); // argmax column
}

TEST_CASE("twist-width decay table") {
    const auto r = run("twist-width --la 3 --left 1,1 --right 1,1 --decay 5:40:8 "
                       "--out /tmp/thurstonlab_tw.csv");
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("value").get<double>() == doctest::Approx(4.5959963422847012).epsilon(1e-12));
    std::stringstream ss(slurp("/tmp/thurstonlab_tw.csv"));
    std::string line;
    double prev = 1e300;
    int rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'e') continue;
        double la, w;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &la, &w) == 2);
        CHECK(w < prev);
        prev = w;
        ++rows;
    }
    CHECK(rows == 8);
}
