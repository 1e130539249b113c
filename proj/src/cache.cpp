#include "thh/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace thh {

std::string cache_dir(const std::string& fallback)
{
    const char* e = std::getenv("THHFORGE_CACHE");
    if (e && *e) return e;
    return fallback;
}

std::string cache_path(const std::string& dir, int p, const SubalgebraSpec& s, int d)
{
    std::string name;
    for (char c : s.name())
        if (std::isalnum((unsigned char)c)) name += c;
    return (fs::path(dir) / ("basis_p" + std::to_string(p) + "_" + name + "_" + std::to_string(d) + ".json")).string();
}

namespace {

bool load(const std::string& path, const SubalgebraSpec& s, int d, std::vector<SteenrodElement>& out)
{
    std::ifstream in(path);
    if (!in) return false;
    try {
        json j = json::parse(in);
        if (!j.is_object() || j.at("degree").get<int>() != d || !j.at("basis").is_array()) return false;
        std::vector<SparseVec> rows;
        for (auto& l : j.at("basis")) {
            SteenrodElement a = parse_steenrod(l.get<std::string>());
            if (a.zero() || a.degree() != d || !in_subalgebra(s, a)) return false;
            out.push_back(a);
            rows.push_back(to_vector(a, d));
        }
        Echelon e(2, std::max<int>(1, (int)admissible_basis(d).size()));
        for (auto& r : rows)
            if (!e.add(r)) return false;
        return (long)out.size() == subalgebra_dim(s, d);
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

std::vector<SteenrodElement> cached_steenrod_basis(const SubalgebraSpec& s, int d, const std::string& dir,
                                                   CacheStats* st)
{
    if (dir.empty()) return steenrod_basis(s, d);
    std::string path = cache_path(dir, 2, s, d);
    bool existed = fs::exists(path);
    std::vector<SteenrodElement> b;
    if (existed && load(path, s, d, b)) {
        if (st) st->hits++;
        return b;
    }
    b = steenrod_basis(s, d);
    if (st) (existed ? st->rebuilt : st->misses)++;
    nlohmann::ordered_json j;
    j["degree"] = d;
    j["basis"] = nlohmann::ordered_json::array();
    for (auto& a : b) j["basis"].push_back(to_string(a));
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump() << "\n";
    }
    fs::rename(tmp, path, ec);
    return b;
}

}  // namespace thh
