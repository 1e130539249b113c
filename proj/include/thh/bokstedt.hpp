#pragma once
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "thh/gca.hpp"
#include "thh/steenrod.hpp"

namespace thh {

/* ---- Dyer-Lashof data ---- */

struct DLValue {
    int k = 0;
    std::string result; /* empty: zero */
};

/* Only the operations that matter for sigma-classes are stored: Q^{|x|+1}(x) at p = 2 and
 * Q^{(|x|+1)/2}(x) for odd x at odd p. */
struct DLTable {
    int p = 2;
    std::map<std::string, DLValue> top;
    std::map<std::string, std::string> bockstein;
    /* squares in the dual Steenrod algebra, where Q^odd vanishes by the Cartan formula */
    std::set<std::string> squares;
};

struct DLLookup {
    bool zero = true;
    std::string name;
};

/* Q^k(x) by name; instability is applied first.  Throws if no rule covers (x, k). */
DLLookup dl_lookup(const DLTable& t, const std::string& x, int degree, int k);

/* ---- catalog ---- */

struct SpectrumEntry {
    std::string name;
    int p = 2;
    int N = 0;
    std::string structure; /* "E_infinity", "E_3 assumed", ... */
    bool flat = true;
    AlgebraPresentation H;
    CoactionTable nu; /* coefficients in dual_steenrod(p, N), conjugate alphabet */
    DLTable dl;
    /* closed-form abutment beyond H */
    std::vector<GeneratorSpec> abutment;
    /* divided power families Gamma(sx) whose p-th powers vanish in the abutment */
    std::set<std::string> gamma_exterior;
    /* non-flat case: H = Hflat (x) (F_p + V) with V square-zero */
    AlgebraPresentation Hflat;
    std::vector<int> square_zero_degrees;
};

std::vector<std::string> catalog_names();
/* "HF", "HZ", "ku", "ko", "tmf", "ell", "BP<n>" (n = 0..3), "BP", "ju", "j" */
SpectrumEntry catalog_entry(const std::string& name, int p, int N);
bool catalog_has(const std::string& name, int p);

/* ---- pages ---- */

struct SSPage {
    AlgebraPresentation alg;
    int r = 2;
    std::vector<Lin<Mono>> d; /* on generators; empty means zero */
    bool flat = true;
    bool recognized = true;
    std::map<std::pair<int, int>, long> dims; /* (s, total); only for non-flat or unrecognised pages */
    std::vector<std::string> notes;

    bool trivial() const;
    std::map<std::pair<int, int>, long> bigraded() const;
};

Lin<Mono> page_d(const SSPage& E, const Mono& m);
Lin<Mono> page_d(const SSPage& E, const Lin<Mono>& x);
bool check_d_squared(const SSPage& E, int upto);
bool check_leibniz(const SSPage& E, int upto);

struct E2Check {
    int reached = -1; /* internal degree through which the raw complex was computed */
    bool match = false;
};

SSPage build_e2(const SpectrumEntry& s);
E2Check e2_crosscheck(const SpectrumEntry& s, int tmax = 20, long budget = 400000);

SSPage apply_d_pminus1(const SSPage& E, const SpectrumEntry& s);
SSPage page_homology(const SSPage& E);
/* homology of a page by linear algebra, no recognition */
std::map<std::pair<int, int>, long> raw_page_homology(const SSPage& E);
bool collapse_check(const SSPage& E);

/* coaction on a page: base generators from H, sigma-classes by nu o sigma = (1 (x) sigma) nu */
CoactionTable page_coaction(const SSPage& E, const SpectrumEntry& s);

struct Candidate {
    std::string source;
    int source_filtration = 0, source_degree = 0;
    int target_filtration = 0;
    int r = 0;
    long dim = 0;
};

/* (s, degree) -> dim of simultaneous coalgebra and comodule primitives of positive filtration */
std::map<std::pair<int, int>, long> simultaneous_primitives(const SSPage& E, const CoactionTable& c, int degree,
                                                           int smax);
std::vector<Candidate> obstruction_scan(const SSPage& E, const CoactionTable& c);

/* ---- abutment ---- */

struct Abutment {
    AlgebraPresentation alg;
    CoactionTable nu;
    std::map<std::string, Lin<Mono>> sigma; /* H generator -> sigma-class */
    std::vector<std::string> merged;        /* "sy = sx^p" */
};

Abutment resolve_extensions(const SSPage& einf, const SpectrumEntry& s);
std::string coaction_label(const Abutment& a, int p, int N, const std::string& gen);
/* nu of the abutment generator, as "left (x) right" terms */
std::vector<std::pair<std::string, std::string>> coaction_terms(const Abutment& a, int p, int N,
                                                                const std::string& gen);

AlgebraPresentation closed_form_thh(const SpectrumEntry& s);

struct StageError : std::runtime_error {
    std::string stage;
    StageError(const std::string& st, const std::string& what) : std::runtime_error(st + ": " + what), stage(st) {}
};

struct THHResult {
    std::string name;
    int p = 2, N = 0;
    SSPage e2;
    std::vector<SSPage> pages; /* after e2, in order */
    bool collapse_at_e2 = false;
    std::vector<Candidate> obstructions;
    bool certified = false;
    Abutment abutment;
    std::vector<long> series;
    bool matches_closed_form = false;
};

THHResult thh_homology(const std::string& name, int p, int N);

/* ---- Nishida instance checks ---- */

/* Sq^r_* Q^s(x) = sum of Q^j Sq^i_*(x) terms */
struct NishidaTerm {
    int j, i;
};
struct NishidaInstance {
    std::string x;
    int s;
    std::map<int, std::vector<NishidaTerm>> relations; /* r -> terms */
};

/* relations for r = 1, 2 from the two displayed families, valid for any x */
std::map<int, std::vector<NishidaTerm>> nishida_low(int s);
/* true iff the relations force Q^s(x) = 0: predicted values vanish and the Sq^r_* are jointly injective */
bool nishida_forces_zero(const SpectrumEntry& s, const NishidaInstance& inst);

}  // namespace thh
