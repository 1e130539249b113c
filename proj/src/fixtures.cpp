#include "thh/fixtures.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>

#include "json.hpp"
#include "thh/adams.hpp"
#include "thh/bokstedt.hpp"
#include "thh/hochschild.hpp"
#include "thh/steenrod.hpp"

namespace thh {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string check_case(const json& c)
{
    std::string kind = c.at("kind");
    if (kind == "steenrod_rank") {
        long r = total_rank(SubalgebraSpec::parse(c.at("subalgebra")));
        return r == c.at("rank").get<long>() ? "" : "rank " + std::to_string(r);
    }
    if (kind == "module_rank") {
        std::vector<SteenrodElement> ideal;
        for (auto& s : c.at("ideal")) ideal.push_back(parse_steenrod(s));
        long t = quotient_module(SubalgebraSpec::parse(c.at("subalgebra")), ideal).total();
        return t == c.at("total").get<long>() ? "" : "total " + std::to_string(t);
    }
    if (kind == "sq4_kernel") {
        auto A2 = SubalgebraSpec::A_n(2);
        auto src = quotient_module(A2, {parse_steenrod("Sq1"), parse_steenrod("Sq2Sq3")});
        auto tgt = quotient_module(A2, {parse_steenrod("Sq1"), parse_steenrod("Sq2")});
        auto K = module_map_kernel(parse_steenrod("Sq4"), src, 4, tgt);
        bool ok = K.kernel.total() == c.at("kernel").get<long>() && K.cokernel_rank == c.at("cokernel").get<long>();
        return ok ? "" : "kernel " + std::to_string(K.kernel.total());
    }
    if (kind == "homology_series") {
        int N = c.at("N");
        auto s = catalog_entry(c.at("spectrum"), c.at("p"), N).H.poincare(N);
        return s == c.at("series").get<std::vector<long>>() ? "" : "series differs";
    }
    if (kind == "thh_series") {
        auto R = thh_homology(c.at("spectrum"), c.at("p"), c.at("N"));
        return R.series == c.at("series").get<std::vector<long>>() ? "" : "series differs";
    }
    if (kind == "adams_einf") {
        int N = c.at("N");
        auto R = adams_pipeline(c.at("target"), N);
        std::map<std::pair<int, int>, long> want;
        for (auto& e : c.at("dims")) want[{e[0].get<int>(), e[1].get<int>()}] = e[2].get<long>();
        return R.einf.dims == want ? "" : "E_infinity differs";
    }
    if (kind == "hh_free" || kind == "hh_idempotent") {
        AlgebraPresentation A;
        int N = 0, qmax = c.at("qmax");
        if (kind == "hh_idempotent")
            A = AlgebraPresentation(2, {{"u", 0, Kind::Truncated, 2, 0, true}}, 0);
        else {
            N = c.at("N");
            Kind k = c.at("generator") == "polynomial" ? Kind::Polynomial : Kind::Exterior;
            A = AlgebraPresentation(c.at("p"), {{"x", c.at("degree").get<int>(), k}}, N);
        }
        auto hh = hh_homology(A, N, qmax);
        std::map<std::pair<int, int>, long> got, want;
        for (auto& [k, v] : hh.dims)
            if (v) got[k] = v;
        for (auto& e : c.at("dims")) want[{e[0].get<int>(), e[1].get<int>()}] = e[2].get<long>();
        return got == want ? "" : "HH differs";
    }
    return "unknown kind " + kind;
}

}  // namespace

std::string default_fixture_dir() { return std::string(THH_SOURCE_DIR) + "/fixtures/v1"; }

CriterionResult check_fixtures(const std::string& dir)
{
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    r.title = "golden fixtures";
    std::vector<std::string> fails;
    try {
        std::set<fs::path> files;
        for (auto& e : fs::directory_iterator(dir))
            if (e.path().extension() == ".json") files.insert(e.path());
        if (files.empty()) fails.push_back("no fixture files in " + dir);
        for (auto& f : files) {
            std::ifstream in(f);
            json doc = json::parse(in);
            if (doc.at("version") != 1) fails.push_back(f.filename().string() + ": unsupported version");
            for (auto& c : doc.at("cases")) {
                ++r.checks;
                std::string why;
                try {
                    why = check_case(c);
                }
                catch (const std::exception& e) {
                    why = e.what();
                }
                if (!why.empty()) fails.push_back(f.filename().string() + " " + c.value("kind", "?") + ": " + why);
            }
        }
    }
    catch (const std::exception& e) {
        fails.push_back(e.what());
    }
    r.pass = fails.empty();
    r.detail = r.pass ? std::to_string(r.checks) + " cases" : fails[0];
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace thh
