#pragma once
#include <map>
#include <string>
#include <vector>

#include "thh/fplin.hpp"
#include "thh/gca.hpp"

namespace thh {

/* Comodule over E(xi_2) at p = 2, given by nu(x) = 1 (x) x + xi_2 (x) q(x).
 * q lowers degree by 3.  When alg is set the basis is alg's monomials and q is a derivation. */
struct ExteriorComodule {
    int qdeg = 3;
    int top = 0;
    std::vector<int> degree;
    std::vector<std::string> label;
    std::vector<SparseVec> q;
    bool multiplicative = false;
    AlgebraPresentation alg;
    std::vector<Mono> mono;
    std::map<Mono, int> index_of;

    int size() const { return (int)degree.size(); }
    std::vector<int> in_degree(int d) const;
    bool q_squared_zero() const;
    bool q_is_derivation() const;
    SparseVec apply_q(const SparseVec& v) const;
    std::string vec_label(const SparseVec& v) const;
};

/* basis of an algebra through degree top, q extended as a derivation from its values on generators */
ExteriorComodule multiplicative_comodule(const AlgebraPresentation& A, const std::vector<Lin<Mono>>& qgen, int top);

struct ExtClass {
    int s = 0, t = 0;
    SparseVec rep; /* over M; the class is v1^s rep */
    std::string label;
};

struct ExtPage {
    ExteriorComodule M;
    int smax = 0, tmax = 0;
    std::vector<ExtClass> classes;
    std::map<int, std::vector<SparseVec>> image; /* internal degree -> basis of im q */

    std::map<std::pair<int, int>, long> dims() const;         /* (s, t) */
    std::map<std::pair<int, int>, long> dims_by_stem() const; /* (s, t - s) */
};

ExtPage ext_over_exterior(const ExteriorComodule& m, int smax, int tmax);

/* "thh-ku-M" (alias "thh-ku-mod2") and "thh-ko-Y" */
std::string canonical_target(const std::string& target);
ExteriorComodule build_comodule(const std::string& target, int tmax);

struct Differential {
    int n = 0, r = 0, s = 0;
    Mono lambda; /* E2 monomial of lambda_n */
    int mu_power = 0;
};

struct DifferentialSchedule {
    std::string target;
    int first = 1; /* first n carrying a differential on E2 */
    std::vector<Differential> d; /* index n - 1 */
    const Differential& at(int n) const { return d.at(n - 1); }
    int r(int n) const { return at(n).r; }
    int s(int n) const { return at(n).s; }
};

DifferentialSchedule schedule(const std::string& target, int nmax);

struct AdamsPage {
    int r = 2; /* the page E_r */
    std::map<std::pair<int, int>, long> dims; /* (s, stem) */
};

struct PModuleGenerator {
    std::string label;
    int degree = 0;
    int torsion = -1;     /* -1: free */
    bool observed = true; /* false when the tower leaves the computed range */
    Mono mono;
};

struct PModulePresentation {
    int N = 0;
    std::vector<PModuleGenerator> gens;
};

struct SSRun {
    std::string target;
    int N = 0;
    std::vector<AdamsPage> pages; /* E2 (or the imagined E1) first */
    AdamsPage einf;
    std::vector<std::string> log;
    bool d_squared_ok = true, leibniz_ok = true, well_defined = true;
    std::vector<long> nontorsion_odd; /* per page */
    long free_towers = 0;
    PModulePresentation module;
    bool matches_closed_form = false;
    /* E_infinity v1-multiplication rank (s, stem) -> (s+1, stem+2) */
    std::map<std::pair<int, int>, long> v1_rank;
};

struct RunOptions {
    int leibniz_upto = 40;
    bool check_leibniz = true;
    int last_n = 0; /* stop after this n; 0 runs every differential in range */
};

/* pages through stem N; differentials for n >= sched.first */
SSRun run_ss(const ExtPage& e2, const DifferentialSchedule& sched, int N, RunOptions opt = {});
/* the imagined E1 = P(v1) (x) (the comodule with q = 0) with the schedule from n = first */
SSRun run_free(const ExteriorComodule& m, const DifferentialSchedule& sched, int N, RunOptions opt = {});

std::map<std::pair<int, int>, long> closed_form_einf(const DifferentialSchedule& sched, int N);
PModulePresentation closed_form_module(const DifferentialSchedule& sched, int N);

struct TableEntry {
    std::string label; /* "v1^2 x_{1,0}" */
    int torsion = -1;
};
/* degree -> entries */
std::map<int, std::vector<TableEntry>> homotopy_table(const std::string& target, int N);
std::map<int, std::vector<TableEntry>> homotopy_table(const SSRun& run);

SSRun adams_pipeline(const std::string& target, int N, RunOptions opt = {});

std::string chart_text(const std::map<std::pair<int, int>, long>& dims, int N);
std::string chart_svg(const SSRun& run);

}  // namespace thh
