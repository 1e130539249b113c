#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "thh/acceptance.hpp"
#include "thh/cache.hpp"

int main(int argc, char** argv)
{
    thh::AcceptanceOptions opt;
    opt.jobs = (int)std::max(1u, std::thread::hardware_concurrency());
    opt.cache = thh::cache_dir("");
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string a = argv[i];
        if (a == "--maxdeg") opt.N = std::atoi(argv[i + 1]);
        else if (a == "--jobs") opt.jobs = std::atoi(argv[i + 1]);
    }
    auto rs = thh::run_acceptance(opt);
    int bad = 0;
    for (auto& r : rs) {
        std::printf("%s %d %s (%s, %.2fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(), r.detail.c_str(),
                    r.elapsed);
        bad += !r.pass;
    }
    std::printf("%d of %zu criteria passed\n", (int)rs.size() - bad, rs.size());
    return bad ? 1 : 0;
}
