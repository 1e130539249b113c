#pragma once
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "thh/fplin.hpp"
#include "thh/gca.hpp"
#include "thh/lin.hpp"

namespace thh {

/* ---- mod 2 Steenrod algebra, admissible form ---- */

using Word = std::vector<int>; /* Sq^{w0} Sq^{w1} ... ; empty word is the unit */

struct SteenrodElement {
    std::set<Word> terms;
    SteenrodElement() = default;
    explicit SteenrodElement(const Word& w) { terms.insert(w); }
    bool zero() const { return terms.empty(); }
    SteenrodElement& operator+=(const SteenrodElement& o);
    friend SteenrodElement operator+(SteenrodElement a, const SteenrodElement& b) { return a += b; }
    friend bool operator==(const SteenrodElement& a, const SteenrodElement& b) { return a.terms == b.terms; }
    int degree() const; /* -1 if zero or inhomogeneous */
};

int word_degree(const Word& w);
bool admissible(const Word& w);
SteenrodElement adem_reduce(const Word& w);
SteenrodElement operator*(const SteenrodElement& a, const SteenrodElement& b);
SteenrodElement sq(int i);
/* Q_0 = Sq^1, Q_k = [Sq^{2^k}, Q_{k-1}] */
SteenrodElement milnor_Q(int k);
std::string to_string(const SteenrodElement& a);
std::string word_label(const Word& w);
/* "Sq4Sq6+Sq6Sq4", "Sq^2 Sq^3", "1", "0" */
SteenrodElement parse_steenrod(const std::string& s);
const std::vector<Word>& admissible_basis(int d);
int admissible_index(const Word& w);
SparseVec to_vector(const SteenrodElement& a, int d);
SteenrodElement from_vector(const SparseVec& v, int d);

struct SubalgebraSpec {
    enum class Type { Full, A, E };
    Type type = Type::Full;
    int n = 0;          /* A_n */
    std::set<int> qs;   /* E(Q_i, i in qs) */
    static SubalgebraSpec full() { return {}; }
    static SubalgebraSpec A_n(int n);
    static SubalgebraSpec E_n(int n); /* E(Q_0..Q_n) */
    static SubalgebraSpec E_set(std::set<int> s);
    static SubalgebraSpec parse(const std::string& s);
    std::string name() const;
    bool finite() const { return type != Type::Full; }
    int top_degree(int p = 2) const;
    /* profile at p = 2: xi_j^{b_j} = 0 in the dual quotient; b_j = 0 means unbounded */
    int xi_bound(int j) const;
};

std::vector<SteenrodElement> steenrod_basis(const SubalgebraSpec& s, int d);
long total_rank(const SubalgebraSpec& s);
/* dimension in degree d from the profile, without building a basis */
long subalgebra_dim(const SubalgebraSpec& s, int d);
bool in_subalgebra(const SubalgebraSpec& s, const SteenrodElement& a);

/* ---- dual Steenrod algebra, all primes ---- */

struct MilnorMonomial {
    std::vector<int> xi; /* xi[k-1] = exponent of xi_k */
    std::set<int> tau;
    bool conjugated = false;
};

class DualSteenrod {
public:
    int p, maxdeg;
    /* generators: tau_0..tau_K (odd p only), then xi_1..xi_K */
    AlgebraPresentation alg;
    DualSteenrod(int p, int maxdeg);
    int xi(int k) const;
    int tau(int k) const;
    int xi_degree(int k) const;
    int tau_degree(int k) const;
    int kmax_xi() const { return (int)xi_idx_.size(); }
    int kmax_tau() const { return (int)tau_idx_.size() - 1; }
    /* graded-lex, largest exponent vector first */
    std::vector<Mono> basis(int d) const;
    Mono from_milnor(const MilnorMonomial& m) const;
    MilnorMonomial to_milnor(const Mono& m, bool conj) const;
    Lin<Mono2> coproduct(const Mono& m, bool conj) const;
    Lin<Mono2> coproduct(const Lin<Mono>& x, bool conj) const;
    /* expansion of the other alphabet; the same substitution works both ways */
    Lin<Mono> conjugate(const Mono& m) const;
    Lin<Mono> conjugate(const Lin<Mono>& x) const;
    const Lin<Mono>& conj_gen(int g) const { return conj_gen_[g]; }
    std::string label(const Mono& m, bool conj) const;
    std::string label(const Lin<Mono>& x, bool conj) const;
    /* "xib1^4 xib2^2", "taub0 xi1" ... ; "b" suffix selects the conjugate alphabet */
    Lin<Mono> parse(const std::string& s, bool conj) const;

private:
    std::vector<int> xi_idx_, tau_idx_;
    std::vector<Lin<Mono>> conj_gen_;
    std::vector<Lin<Mono2>> cop_gen_[2];
    mutable std::map<Mono, Lin<Mono2>> cop_cache_[2];
    mutable std::map<Mono, Lin<Mono>> conj_cache_;
    mutable std::mutex cache_mu_;
};

const DualSteenrod& dual_steenrod(int p, int maxdeg);

/* <a, m> with m in the xi alphabet, p = 2 */
int pairing(const DualSteenrod& A, const SteenrodElement& a, const Mono& m);
/* <a, x> with x in the conjugate alphabet */
int pairing_conj(const DualSteenrod& A, const SteenrodElement& a, const Lin<Mono>& x);

/* (A//B)_* in the conjugate alphabet */
std::vector<Mono> dual_quotient_basis(const DualSteenrod& A, const SubalgebraSpec& b, int d);
/* exponent step per xi-bar_k and allowed tau-bar_k for (A//B)_* */
struct DualQuotientShape {
    std::vector<int> xi_step; /* index k-1 */
    std::vector<bool> tau_ok; /* index k */
};
DualQuotientShape dual_quotient_shape(int p, const SubalgebraSpec& b, int kmax);

/* Sq^r_*(x) = sum <Sq^r, a_i> x_i where nu(x) = sum a_i (x) x_i */
Lin<Mono> dual_action(const DualSteenrod& A, const AlgebraPresentation& M, const CoactionTable& c, int r,
                      const Lin<Mono>& x);

/* ---- modules over finite subalgebras (p = 2) ---- */

/* Subquotient S/R of A with left action; an element of A-degree d sits in module degree d + shift. */
class GradedModule {
public:
    SubalgebraSpec alg;
    int shift = 0;
    struct Deg {
        std::vector<SparseVec> rel;  /* R_d, over admissible_basis(d) */
        std::vector<SparseVec> reps; /* representatives of a basis of S_d / R_d */
    };
    std::map<int, Deg> degs; /* keyed by A-degree */

    int dim_at(int adeg) const;
    long total() const;
    /* module degree -> dim */
    std::map<int, long> series() const;
    /* coordinates of v (over admissibles, A-degree d) in the reps; throws if v is not in S */
    SparseVec coordinates(int d, const SparseVec& v) const;
    bool contains(int d, const SparseVec& v) const;
    SteenrodElement rep(int d, int i) const { return from_vector(degs.at(d).reps[i], d); }
    /* matrix of left multiplication by a from A-degree d */
    SparseMat action(const SteenrodElement& a, int d) const;
};

GradedModule quotient_module(const SubalgebraSpec& s, const std::vector<SteenrodElement>& ideal);

struct KernelResult {
    GradedModule kernel;
    long cokernel_rank = 0;
    std::map<int, long> cokernel_series;
};
/* right multiplication by f from Sigma^shift source to target; shift must equal |f| */
KernelResult module_map_kernel(const SteenrodElement& f, const GradedModule& source, int shift,
                               const GradedModule& target);

bool cyclic_and_annihilator_check(const GradedModule& m, const SteenrodElement& generator,
                                  const std::vector<SteenrodElement>& candidates);

}  // namespace thh
