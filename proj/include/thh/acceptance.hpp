#pragma once
#include <string>
#include <vector>

namespace thh {

struct AcceptanceOptions {
    int N = 60;   /* upper range for the degree-60 criteria; the degree-40 ones use min(40, N) */
    int jobs = 1;
    std::string cache; /* steenrod basis cache dir, empty: none */
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    long checks = 0;
    std::string detail;
    double elapsed = 0; /* seconds */
};

constexpr int kMinAcceptanceN = 20;

std::vector<int> criterion_ids();
std::string criterion_title(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
/* in id order; throws std::invalid_argument if N < kMinAcceptanceN or an id is unknown */
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, const std::vector<int>& only = {});

}  // namespace thh
