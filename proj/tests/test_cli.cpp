#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rcatk/cli.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

// Runs from the repository root so echoed paths stay relative.
Result invoke(const std::vector<std::string>& args)
{
    const auto old = fs::current_path();
    fs::current_path(fs::path(RCATK_DATA_DIR).parent_path());
    std::vector<const char*> argv{"rcatk"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Result r;
    r.code = rcatk::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    fs::current_path(old);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

struct GoldenCase {
    std::string name;
    std::vector<std::string> args;
    int code;
};

const std::vector<GoldenCase>& cases()
{
    static const std::vector<GoldenCase> all{
        {"analyze_s3", {"analyze-group", "data/groups/s3_2d.grp"}, 0},
        {"analyze_g312_table", {"--format", "table", "analyze-group", "data/groups/g3_1_2.grp"}, 0},
        {"analyze_s3_natural", {"analyze-group", "data/groups/s3_3d.grp"}, 0},
        {"invariants_z2", {"invariants", "data/groups/z2.grp"}, 0},
        {"invariants_s4_ambient", {"invariants", "data/groups/s4_3d.grp", "--ambient", "4"}, 0},
        {"invariants_s3_natural", {"invariants", "data/groups/s3_3d.grp"}, 0},
        {"orbifold_z2_p1", {"orbifold", "data/orbifolds/z2_p1.orb"}, 0},
        {"orbifold_z2_linear_table", {"--format", "table", "orbifold", "--group", "data/groups/z2.grp", "--linear"}, 0},
        {"orbifold_s3_linear", {"orbifold", "--group", "data/groups/s3_2d.grp", "--linear"}, 1},
        {"dunkl_z2", {"dunkl-check", "--group", "data/groups/z2.grp", "--t", "1", "--c", "all=1/3", "--degree", "5"}, 0},
        {"dunkl_s3_table",
         {"--format", "table", "dunkl-check", "--group", "data/groups/s3_2d.grp", "--c", "1=1", "--degree", "4"},
         0},
        {"hochschild_c2", {"hochschild-check", "--cycle", "1", "--cap", "2"}, 0},
        {"hochschild_c4", {"hochschild-check", "--cycle", "2", "--cap", "2"}, 0},
        {"hochschild_algebra",
         {"hochschild-check", "--algebra", "data/algebras/upper_triangular.sca", "--group", "data/groups/klein4.grp"},
         0},
        {"density_theta", {"index-density", "--n", "1", "--l", "0", "--tangent-roots", "0", "--theta", "th", "--moments", "1"}, 0},
        {"density_tangent", {"index-density", "--n", "2", "--l", "0", "--tangent-roots", "t", "--rank", "2"}, 0},
        {"density_twisted",
         {"index-density", "--n", "3", "--l", "1", "--tangent-roots", "t1,t2", "--theta", "th", "--eigen-weights",
          "1/2,-1"},
         0},
        {"density_point", {"index-density", "--n", "2", "--l", "2", "--theta", "th"}, 0},
    };
    return all;
}

} // namespace

TEST(Cli, GoldenOutputs)
{
    const bool update = std::getenv("RCATK_UPDATE_GOLDEN") != nullptr;
    for (const auto& c : cases()) {
        const auto r = invoke(c.args);
        EXPECT_EQ(r.code, c.code) << c.name << "\n" << r.err;
        const fs::path golden = fs::path(RCATK_GOLDEN_DIR) / (c.name + ".txt");
        if (update) {
            std::ofstream(golden) << r.out;
            continue;
        }
        ASSERT_TRUE(fs::exists(golden)) << golden;
        EXPECT_EQ(r.out, slurp(golden)) << c.name;
    }
}

TEST(Cli, RerunsAreByteIdentical)
{
    for (const auto& c : cases()) {
        EXPECT_EQ(invoke(c.args).out, invoke(c.args).out) << c.name;
    }
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({"analyze-group", "data/groups/missing.grp"}).code, 2);
    EXPECT_EQ(invoke({"--format", "xml", "invariants", "data/groups/z2.grp"}).code, 2);
    EXPECT_EQ(invoke({"index-density", "--n", "2", "--l", "0", "--theta", "3"}).code, 2);
    EXPECT_EQ(invoke({"index-density", "--n", "2", "--l", "0", "--moments", "2"}).code, 2);
    EXPECT_EQ(invoke({"dunkl-check", "--group", "data/groups/s3_2d.grp", "--c", "0=1"}).code, 2);
    EXPECT_EQ(invoke({"orbifold"}).code, 2);

    auto low = invoke({"index-density", "--n", "3", "--l", "0", "--theta", "th", "--hbar-order", "2"});
    EXPECT_EQ(low.code, 1);
    EXPECT_NE(low.err.find("TruncationTooLow"), std::string::npos);
    auto missing = invoke({"index-density", "--n", "2", "--l", "0", "--moments", "1", "--normal-symbol", "z"});
    EXPECT_EQ(missing.code, 1);
    EXPECT_NE(missing.err.find("MissingMoment"), std::string::npos);
    auto cap = invoke({"hochschild-check", "--cycle", "2", "--cap", "1"});
    EXPECT_EQ(cap.code, 1);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, HeaderIsCanonical)
{
    auto a = invoke({"index-density", "--theta", "th", "--l", "0", "--n", "1"});
    auto b = invoke({"index-density", "--n", "1", "--l", "0", "--theta", "th"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("# rcatk ", 0), 0u);
}
