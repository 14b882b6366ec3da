#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace test;
namespace cli = herminertia::cli;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    const auto path = (std::filesystem::temp_directory_path() / ("herminertia_test_" + name)).string();
    io::write_file(path, text);
    return path;
}

}  // namespace

TEST(Cli, CheckShiftDominance) {
    auto r = run({"check", "--m", "1", data("a.hmat"), data("b.hmat"), "--method", "both", "--json"});
    EXPECT_EQ(r.code, cli::kHolds);
    EXPECT_NE(r.out.find("\"holds\":true"), std::string::npos) << r.out;

    r = run({"check", "--m", "0", data("a.hmat"), data("b.hmat")});
    EXPECT_EQ(r.code, cli::kViolation);
    EXPECT_NE(r.out.find("# tol=1e-09"), std::string::npos);

    r = run({"check", "--m", "0", data("a.hmat"), data("b.hmat"), "--json", "--method", "spectral"});
    const auto j = Json::parse(r.out);
    EXPECT_FALSE(j["holds"].get<bool>());
    EXPECT_EQ(j["witness"]["index"], 1);
    EXPECT_EQ(j["tol"], 1e-9);
}

TEST(Cli, CheckRoots) {
    EXPECT_EQ(run({"check", "--m", "1", data("pair.roots")}).code, cli::kHolds);
    EXPECT_EQ(run({"check", "--m", "0", data("f.roots"), data("g.roots")}).code, cli::kHolds);
    EXPECT_EQ(run({"check", "--m", "0", data("g.roots"), data("f.roots")}).code, cli::kViolation);
    EXPECT_EQ(run({"check", "--relation", "compatible", data("f.roots"), data("g.roots")}).code, cli::kHolds);
    EXPECT_EQ(run({"check", "--relation", "interlace", data("g.roots"), data("f.roots")}).code, cli::kHolds);
    EXPECT_EQ(run({"check", "--relation", "interlace", data("f.roots"), data("g.roots")}).code, cli::kViolation);
}

TEST(Cli, Spectrum) {
    auto r = run({"spectrum", data("k2.graph"), "--operator", "normalized_laplacian"});
    EXPECT_EQ(r.code, cli::kHolds);
    EXPECT_EQ(r.out, "# tol=1e-09\n2 0\n");
    r = run({"spectrum", data("p3.graph"), "--operator", "normalized_laplacian", "--json"});
    const auto j = Json::parse(r.out);
    EXPECT_NEAR(j["spectrum"][0].get<double>(), 2.0, 1e-12);
    EXPECT_NEAR(j["spectrum"][1].get<double>(), 1.0, 1e-12);
    EXPECT_EQ(j["spectrum"][2].get<double>(), 0.0);
    EXPECT_EQ(j["operator"], "normalized_laplacian");
    EXPECT_EQ(run({"spectrum", data("c2.hmat")}).code, cli::kHolds);
    EXPECT_EQ(run({"spectrum", data("c3.graph"), "--operator", "herm_adjacency_omega"}).code, cli::kHolds);
}

TEST(Cli, Inertia) {
    auto r = run({"inertia", data("a.hmat"), "--shift", "1", "--exact"});
    EXPECT_EQ(r.code, cli::kHolds);
    EXPECT_NE(r.out.find("inertia (1, 1, 0)"), std::string::npos) << r.out;
    r = run({"inertia", data("p3.graph"), "--pencil-degree", "--shift", "1", "--exact", "--json"});
    EXPECT_EQ(Json::parse(r.out)["inertia"], Json::parse(R"({"n_plus":1,"n_minus":1,"n_zero":1})"));
    r = run({"inertia", data("p3.graph"), "--pencil-degree", "--shift", "1"});
    EXPECT_NE(r.out.find("inertia (1, 1, 1)"), std::string::npos) << r.out;
    EXPECT_EQ(run({"inertia", data("c2.hmat"), "--exact"}).code, cli::kUsage);
    EXPECT_EQ(run({"inertia", data("a.hmat"), "--shift", "x"}).code, cli::kUsage);
    EXPECT_EQ(run({"inertia", data("a.hmat"), "--pencil-degree"}).code, cli::kUsage);
}

TEST(Cli, InertiaInsideToleranceBandIsIndeterminate) {
    const auto path = temp_file("band.hmat", "hmat v1\nfield complex\nn 2\n5e-12 0\n0 1\n");
    auto r = run({"inertia", path, "--tol", "1e-12"});
    EXPECT_EQ(r.code, cli::kIndeterminate) << r.out << r.err;
    EXPECT_NE(r.out.find("(indeterminate)"), std::string::npos);
    EXPECT_EQ(run({"inertia", path}).code, cli::kHolds);
    std::filesystem::remove(path);
}

TEST(Cli, Build) {
    auto r = run({"build", data("k2.graph"), "--operator", "laplacian"});
    EXPECT_EQ(r.code, cli::kHolds);
    EXPECT_NE(r.out.find("hmat v1\nfield q(-1)\nn 2\n1 -1\n-1 1\n"), std::string::npos) << r.out;

    const auto out = (std::filesystem::temp_directory_path() / "herminertia_test_built.hmat").string();
    EXPECT_EQ(run({"build", data("c3.graph"), "--operator", "herm_adjacency_i", "-o", out}).code, cli::kHolds);
    const auto built = std::get<ExactMatrix>(io::load_hmat(out));
    expect_spectrum(eigenvalues(built), {std::sqrt(3.0), 0, -std::sqrt(3.0)}, 1e-10);
    std::filesystem::remove(out);

    EXPECT_EQ(run({"build", data("c3.graph"), "--operator", "laplacian"}).code, cli::kUsage);
    EXPECT_EQ(run({"build", data("k2.graph")}).code, cli::kUsage);
}

TEST(Cli, DeleteEdge) {
    auto r = run({"delete-edge", data("k2.graph"), "--record", "0"});
    EXPECT_EQ(r.code, cli::kHolds) << r.err;
    EXPECT_NE(r.out.find("difference w=1 c=-1"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("laplacian after: 0 0"), std::string::npos) << r.out;

    r = run({"delete-edge", data("c3.graph"), "--record", "1", "--operator", "herm_laplacian_omega", "--json"});
    EXPECT_EQ(r.code, cli::kHolds);
    const auto j = Json::parse(r.out);
    EXPECT_TRUE(j["interlace"]["holds"].get<bool>());
    EXPECT_TRUE(j["compatible"]["holds"].get<bool>());
    EXPECT_EQ(j["w"], "1");

    EXPECT_EQ(run({"delete-edge", data("mixed.graph"), "--record", "0", "--reduce", "1/2"}).code, cli::kHolds);
    EXPECT_EQ(run({"delete-edge", data("k2.graph"), "--record", "5"}).code, cli::kUsage);
    EXPECT_EQ(run({"delete-edge", data("k2.graph"), "--record", "0", "--operator", "adjacency"}).code, cli::kUsage);
    EXPECT_EQ(run({"delete-edge", data("k2.graph"), "--record", "0", "--reduce", "2"}).code, cli::kUsage);
}

TEST(Cli, Verify) {
    auto r = run({"verify", "cauchy", "--trials", "20", "--seed", "3"});
    EXPECT_EQ(r.code, cli::kHolds);
    EXPECT_NE(r.out.find("passed 20/20"), std::string::npos) << r.out;

    r = run({"verify", "weyl_indexed", "--trials", "1000", "--negative", "--json"});
    EXPECT_EQ(r.code, cli::kViolation);
    const auto j = Json::parse(r.out);
    EXPECT_EQ(j["failures"].size(), 1u);
    EXPECT_TRUE(j["negative_control"].get<bool>());

    const std::vector<std::string> args{"verify", "lemma_bounds", "--trials", "30", "--seed", "9", "--json"};
    EXPECT_EQ(run(args).out, run(args).out);
    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    EXPECT_EQ(run(args).out, run(threaded).out);

    EXPECT_EQ(run({"verify", "no_such_theorem"}).code, cli::kUsage);
    EXPECT_EQ(run({"verify", "cauchy", "--trials", "0"}).code, cli::kUsage);
}

TEST(Cli, UsageAndInputErrors) {
    auto r = run({"check", "--m", "1", data("bad_token.hmat"), data("b.hmat")});
    EXPECT_EQ(r.code, cli::kUsage);
    EXPECT_NE(r.err.find("bad_token.hmat:4:"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("'2x'"), std::string::npos) << r.err;

    r = run({"spectrum", data("bad_vertex.graph")});
    EXPECT_EQ(r.code, cli::kUsage);
    EXPECT_NE(r.err.find(":2:"), std::string::npos) << r.err;

    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(run({"check", data("a.hmat"), data("b.hmat")}).code, cli::kUsage);
    EXPECT_EQ(run({"check", "--m", "1", "--relation", "interlace", data("a.hmat"), data("b.hmat")}).code, cli::kUsage);
    EXPECT_EQ(run({"check", "--m", "1", data("a.hmat"), data("c2.hmat")}).code, cli::kUsage);
    EXPECT_EQ(run({"check", "--m", "1", data("a.hmat"), data("omega.hmat")}).code, cli::kUsage);
    EXPECT_EQ(run({"check", "--m", "1", data("a.hmat"), data("b.hmat"), "--method", "magic"}).code, cli::kUsage);
    EXPECT_EQ(run({"spectrum", data("a.hmat"), "--tol", "-1"}).code, cli::kUsage);
    EXPECT_EQ(run({"spectrum", data("missing.hmat")}).code, cli::kUsage);
    EXPECT_EQ(run({"spectrum", data("f.roots")}).code, cli::kUsage);
    EXPECT_EQ(run({"spectrum", data("k2.graph"), "--operator", "herm_laplacian_i"}).code, cli::kUsage);
}

TEST(Cli, Help) {
    auto r = run({"--help"});
    EXPECT_EQ(r.code, cli::kHolds);
    EXPECT_NE(r.out.find("delete-edge"), std::string::npos);
}

TEST(Cli, TolIsReportedAndApplied) {
    auto r = run({"spectrum", data("k2.graph"), "--tol", "1e-6"});
    EXPECT_EQ(r.out.rfind("# tol=1e-06\n", 0), 0u) << r.out;
    r = run({"spectrum", data("k2.graph"), "--tol", "1e-6", "--json"});
    EXPECT_EQ(Json::parse(r.out)["tol"], 1e-6);
}
