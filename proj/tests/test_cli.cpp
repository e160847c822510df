#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pixrec/render.hpp"
#include "pixrec/scene_io.hpp"
#include "pixrec/sweep.hpp"

using namespace pixrec;
namespace fs = std::filesystem;

namespace {

Rational q(long n, long d) { return Rational(n, d); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() / ("pixrec_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// runs the CLI with stdout and stderr captured to files in dir
int run(const std::string& args, const fs::path& dir) {
    const std::string cmd = std::string(PIXRECON_BIN) + " " + args + " >" + (dir / "stdout").string() + " 2>" +
                            (dir / "stderr").string();
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<Rational> halving(Rational start, int times) {
    std::vector<Rational> out{start};
    for (int k = 0; k < times; ++k) out.push_back(out.back() / Rational(2));
    return out;
}

}  // namespace

TEST_CASE("built-in scene library") {
    const auto names = builtin_scene_names();
    for (const char* n : {"sheared-square", "triangle", "annulus", "x-shape", "v-wedge", "angle-1-1/2", "angle-1-2/3",
                          "stacked-squares"})
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
    CHECK_THROWS_AS(builtin_scene("no-such-scene"), PreconditionError);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto s = random_scene(seed);
        CHECK(is_generic(s));
        CHECK(scene_to_json(s) == scene_to_json(random_scene(seed)));
    }
}

TEST_CASE("sweeps") {
    SUBCASE("square scene with eps halving five times") {
        SweepConfig cfg{builtin_scene("sheared-square"), halving(q(1, 16), 5), {}};
        const auto rows = run_sweep(cfg);
        REQUIRE(rows.size() == 6);
        for (const auto& r : rows) {
            CHECK(r.error.empty());
            CHECK(r.chiReeb == 1);
            CHECK(r.chiRaster == 1);
            CHECK(r.topology_matches());
        }
        CHECK(topology_threshold(rows) == std::size_t{0});
        auto rel = [](double a, double b) { return std::abs(a / b - 1); };
        CHECK(rel(rows.back().areaRec, rows.back().areaTruth) < rel(rows.front().areaRec, rows.front().areaTruth));
    }
    SUBCASE("x-shape: reconstruction right from the first success on") {
        SweepConfig cfg{builtin_scene("x-shape"), halving(q(1, 32), 4), {}};
        const auto rows = run_sweep(cfg);
        const auto thr = topology_threshold(rows);
        REQUIRE(thr.has_value());
        for (std::size_t k = *thr; k < rows.size(); ++k) CHECK(rows[k].chiReeb == 1);
    }
    SUBCASE("a failing row is kept") {
        // the two squares' pixelations merge at eps = 1/4, but the sweep runs
        const auto row = sweep_row(builtin_scene("stacked-squares"), scene_truth(builtin_scene("stacked-squares")), q(1, 4),
                                   {}, 4, 64);
        CHECK(row.error.empty());
        CHECK_FALSE(row.topology_matches());
    }
    SUBCASE("configuration checks") {
        SweepConfig bad{builtin_scene("triangle"), {q(1, 8), q(1, 4)}, {}};
        CHECK_THROWS_AS(bad.validate(), PreconditionError);
        bad.epsilons = {};
        CHECK_THROWS_AS(bad.validate(), PreconditionError);
        bad.epsilons = {q(1, 8)};
        bad.spread.r = q(1, 2);
        CHECK_THROWS_AS(bad.validate(), PreconditionError);
        bad.spread.kind = SpreadRule::Kind::EpsilonPower;
        CHECK_NOTHROW(bad.validate());
    }
    SUBCASE("CSV schema") {
        SweepConfig cfg{builtin_scene("triangle"), {q(1, 16)}, {}};
        std::ostringstream os;
        write_sweep_csv(os, run_sweep(cfg));
        std::istringstream in(os.str());
        std::string header;
        std::getline(in, header);
        CHECK(header ==
              "epsilon,m,sigma,noise_intervals,chi_truth,beta0_truth,beta1_truth,chi_pixel,beta0_pixel,beta1_pixel,"
              "chi_reeb,chi_raster,beta0_rec,beta1_rec,area_truth,area_rec,perimeter_truth,perimeter_rec,"
              "curvature_truth,curvature_rec,warnings,error");
        std::string row;
        std::getline(in, row);
        CHECK(row.rfind("1/16,", 0) == 0);
        CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
    }
}

TEST_CASE("renders") {
    const auto s = builtin_scene("x-shape");
    const auto pix = pixelate_scene(s, q(1, 64));
    const auto rec = reconstruct(as_matrix(pix));
    const std::string svg = render_svg({&s, &pix, &rec.shape});
    for (const char* id : {"id=\"scene\"", "id=\"pixelation\"", "id=\"reconstruction\""})
        CHECK(svg.find(id) != std::string::npos);
    CHECK(svg == render_svg({&s, &pix, &rec.shape}));
    CHECK(render_svg({&s, nullptr, nullptr}).find("id=\"pixelation\"") == std::string::npos);

    const auto doc = nlohmann::json::parse(polytrapezoid_json(rec));
    CHECK(doc["trapezoids"].size() == rec.shape.trapezoids.size());
    CHECK(doc["reeb"]["chi"] == 1);
    CHECK(doc["reeb"]["vertices"] == rec.graph.vertices.size());
    CHECK(Rational::parse(doc["trapezoids"][0]["xL"].get<std::string>()) == rec.shape.trapezoids[0].xL);
}

TEST_CASE("command line") {
    TempDir t;
    const auto out = t.path.string();

    SUBCASE("pixelate summary") {
        REQUIRE(run("pixelate --scene sheared-square --epsilon 1/64 --out " + out, t.path) == 0);
        const auto j = nlohmann::json::parse(slurp(t.path / "stdout"));
        CHECK(j["beta0"] == 1);
        CHECK(j["beta1"] == 0);
        CHECK(j["epsilon"] == "1/64");
        CHECK(fs::exists(t.path / "pixelation.pbm"));
        CHECK(fs::exists(t.path / "pixelation.svg"));
    }
    SUBCASE("pixelate a Farey angle") {
        REQUIRE(run("pixelate --angle 2,3,1,1 --out " + out, t.path) == 0);
        CHECK(nlohmann::json::parse(slurp(t.path / "stdout"))["beta1"] == 2);
    }
    SUBCASE("reconstruct from a scene and from its PBM") {
        const fs::path a = t.path / "a", b = t.path / "b";
        REQUIRE(run("pixelate --scene x-shape --epsilon 1/128 --format pbm --out " + a.string(), t.path) == 0);
        REQUIRE(run("reconstruct --scene x-shape --epsilon 1/128 --out " + a.string(), t.path) == 0);
        REQUIRE(run("reconstruct --pbm " + (a / "pixelation.pbm").string() + " --out " + b.string(), t.path) == 0);
        CHECK(slurp(a / "reconstruction.json") == slurp(b / "reconstruction.json"));
        const auto j = nlohmann::json::parse(slurp(a / "reconstruction.json"));
        CHECK(j["noise_intervals"].size() == 1);
        CHECK(j["reeb"]["chi"] == 1);
    }
    SUBCASE("a rectangle-like scene has no noise") {
        REQUIRE(run("reconstruct --scene sheared-square --epsilon 1/100 --out " + out, t.path) == 0);
        const auto j = nlohmann::json::parse(slurp(t.path / "reconstruction.json"));
        CHECK(j["noise_intervals"].empty());
        CHECK(j["reeb"]["edges"] == 1);
    }
    SUBCASE("invariants") {
        REQUIRE(run("invariants --scene annulus --epsilon 1/256 --r 11/20", t.path) == 0);
        const auto j = nlohmann::json::parse(slurp(t.path / "stdout"));
        CHECK(j["scene"]["chi"] == 0);
        CHECK(j["reconstruction"]["chi_reeb"] == 0);
        CHECK(j["reconstruction"]["chi_raster"] == 0);
    }
    SUBCASE("sweep output is reproducible") {
        const fs::path a = t.path / "a", b = t.path / "b";
        REQUIRE(run("sweep --scene random --seed 7 --m 32,64,128 --out " + a.string(), t.path) == 0);
        REQUIRE(run("sweep --scene random --seed 7 --m 32,64,128 --jobs 1 --out " + b.string(), t.path) == 0);
        const auto csv = slurp(a / "sweep.csv");
        CHECK(csv == slurp(b / "sweep.csv"));
        CHECK(csv.rfind("# scene=", 0) == 0);
        CHECK(csv.find("seed=7") != std::string::npos);
        CHECK(fs::exists(a / "sweep_summary.json"));
    }
    SUBCASE("farey tables") {
        REQUIRE(run("farey --b-max 2 --d-max 1", t.path) == 0);
        CHECK(slurp(t.path / "stdout").find("\n1,2,1,1,7,1,1,1,true\n") != std::string::npos);
        REQUIRE(run("farey --b-max 3 --d-max 1", t.path) == 0);
        CHECK(slurp(t.path / "stdout").find("\n2,3,1,1,10,2,2,2,true\n") != std::string::npos);
    }
    SUBCASE("exit codes") {
        CHECK(run("", t.path) == 1);
        CHECK(run("frobnicate", t.path) == 1);
        CHECK(run("pixelate --scene sheared-square --epsilon 1/0", t.path) == 1);
        CHECK(run("pixelate --scene " + (t.path / "missing.json").string(), t.path) == 1);
        CHECK(run("farey --b-max 0", t.path) == 1);
        std::ofstream(t.path / "broken.json") << "{\"polygons\": [[[0, 0], [1, \"x\"]]]}";
        CHECK(run("pixelate --scene " + (t.path / "broken.json").string(), t.path) == 1);
        // an empty raster parses but cannot be reconstructed
        std::ofstream(t.path / "empty.pbm") << "P1\n# epsilon 1/4 offset 0 0\n2 2\n0 0\n0 0\n";
        CHECK(run("reconstruct --pbm " + (t.path / "empty.pbm").string(), t.path) == 2);
    }
}
