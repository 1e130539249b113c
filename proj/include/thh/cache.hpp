#pragma once
#include <string>
#include <vector>

#include "thh/steenrod.hpp"

namespace thh {

/* $THHFORGE_CACHE, else the given fallback */
std::string cache_dir(const std::string& fallback = "");

struct CacheStats {
    int hits = 0, misses = 0, rebuilt = 0;
};

/* steenrod_basis through a JSON file {"degree": d, "basis": [label...]} keyed by (p, subalgebra, degree).
 * Unreadable or inconsistent files are recomputed and rewritten.  An empty dir disables the cache. */
std::vector<SteenrodElement> cached_steenrod_basis(const SubalgebraSpec& s, int d, const std::string& dir,
                                                   CacheStats* st = nullptr);
std::string cache_path(const std::string& dir, int p, const SubalgebraSpec& s, int d);

}  // namespace thh
