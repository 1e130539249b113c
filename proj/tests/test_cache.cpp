#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "thh/cache.hpp"

using namespace thh;
namespace fs = std::filesystem;

TEST_CASE("cache: basis files are written, reused and rebuilt")
{
    fs::path dir = fs::temp_directory_path() / "thhforge_cache_test";
    fs::remove_all(dir);
    auto A2 = SubalgebraSpec::A_n(2);
    CacheStats st;
    auto fresh = steenrod_basis(A2, 9);
    auto a = cached_steenrod_basis(A2, 9, dir.string(), &st);
    CHECK(st.misses == 1);
    CHECK(a == fresh);
    std::string path = cache_path(dir.string(), 2, A2, 9);
    REQUIRE(fs::exists(path));
    {
        std::ifstream in(path);
        std::string s((std::istreambuf_iterator<char>(in)), {});
        CHECK(s.rfind("{\"degree\":9,\"basis\":[", 0) == 0);
    }
    auto b = cached_steenrod_basis(A2, 9, dir.string(), &st);
    CHECK(st.hits == 1);
    CHECK(b == fresh);

    for (std::string junk : {"{\"degree\": 9, \"basis\": [\"Sq9\", \"Sq9\"]}", "not json", "{\"degree\": 8, \"basis\": []}",
                             "{\"degree\": 9, \"basis\": [\"Sq4\"]}", "[1,2,3]",
                             "{\"degree\": 9, \"basis\": [\"Sq9\"]}", "{\"degree\": 9, \"basis\": [\"Sq9+Sq8Sq1\"]}"}) {
        {
            std::ofstream out(path);
            out << junk;
        }
        int before = st.rebuilt;
        CHECK(cached_steenrod_basis(A2, 9, dir.string(), &st) == fresh);
        CHECK(st.rebuilt == before + 1);
        CHECK(cached_steenrod_basis(A2, 9, dir.string(), &st) == fresh);
    }
    CHECK(total_rank(A2) == 64);
    CHECK(in_subalgebra(A2, parse_steenrod("Sq9+Sq8Sq1")));
    CHECK_FALSE(in_subalgebra(A2, parse_steenrod("Sq9")));
    CHECK(subalgebra_dim(A2, 9) == (long)fresh.size());
    long sum = 0;
    for (int d = 0; d <= A2.top_degree(); ++d) sum += (long)cached_steenrod_basis(A2, d, dir.string()).size();
    CHECK(sum == 64);

    setenv("THHFORGE_CACHE", "/tmp/elsewhere", 1);
    CHECK(cache_dir("x") == "/tmp/elsewhere");
    unsetenv("THHFORGE_CACHE");
    CHECK(cache_dir("x") == "x");
    fs::remove_all(dir);
}
