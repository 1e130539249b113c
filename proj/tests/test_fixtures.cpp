#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "thh/fixtures.hpp"

using namespace thh;

TEST_CASE("fixtures: engine output matches the goldens")
{
    auto dir = default_fixture_dir();
    REQUIRE(std::filesystem::exists(dir + "/thh.json"));
    auto r = check_fixtures(dir);
    CHECK_MESSAGE(r.pass, r.detail);
    CHECK(r.checks >= 30);
    /* the ku series golden */
    std::ifstream in(dir + "/homology.json");
    auto doc = nlohmann::json::parse(in);
    CHECK(doc["cases"][0]["series"] == nlohmann::json::array({1, 0, 1, 0, 1, 0, 2, 1, 2}));
    for (auto& c : doc["cases"]) CHECK(c.contains("note"));
}

TEST_CASE("fixtures: a wrong golden is reported")
{
    auto dir = std::filesystem::temp_directory_path() / "thhforge_bad_fixture";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "x.json") << R"({"version":1,"note":"","cases":[{"kind":"steenrod_rank","subalgebra":"A2","rank":63}]})";
    auto r = check_fixtures(dir.string());
    CHECK_FALSE(r.pass);
    CHECK(r.detail.find("rank 64") != std::string::npos);
    CHECK_FALSE(check_fixtures((dir / "missing").string()).pass);
}
