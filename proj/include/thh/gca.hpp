#pragma once
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "thh/fplin.hpp"
#include "thh/lin.hpp"

namespace thh {

enum class Kind { Polynomial, Exterior, Truncated, DividedPower };

std::string kind_name(Kind k);
Kind parse_kind(const std::string& s);

struct GeneratorSpec {
    std::string name;
    int degree = 0; /* total degree */
    Kind kind = Kind::Polynomial;
    int height = 0; /* truncated: x^height = 0 */
    int filtration = 0;
    bool idempotent = false; /* degree 0, u^2 = u */
    bool base = false;       /* lies in the base ring of a page */
    int dp_family = -1;      /* gamma_{p^dp_index} of a divided power family */
    int dp_index = 0;
};

class AlgebraPresentation {
public:
    int p = 2;
    int N = 0;
    bool square_zero = false; /* all products of positive-degree monomials vanish */
    std::vector<GeneratorSpec> gens;
    std::vector<std::string> dp_names; /* base names of divided power families */
    std::vector<int> dp_degree;
    std::vector<int> dp_filtration;

    AlgebraPresentation() = default;
    /* divided power generators are expanded to truncated(p) generators gamma_{p^i} */
    AlgebraPresentation(int p, const std::vector<GeneratorSpec>& raw, int N, bool square_zero = false);
    AlgebraPresentation(const AlgebraPresentation& o);
    AlgebraPresentation& operator=(const AlgebraPresentation& o);

    int ngens() const { return (int)gens.size(); }
    /* max exponent, -1 for unbounded */
    int limit(int i) const;
    bool odd(int i) const { return p != 2 && (gens[i].degree & 1); }
    int degree(const Mono& m) const;
    int filtration(const Mono& m) const;
    Mono unit() const { return Mono(gens.size(), 0); }
    Mono gen(int i) const;
    int index(const std::string& name) const;
    bool has(const std::string& name) const { return index_or(name) >= 0; }
    int index_or(const std::string& name) const;
    bool valid(const Mono& m) const;
    /* a*b = coef * out; coef 0 means the product vanishes */
    int mul(const Mono& a, const Mono& b, Mono& out) const;
    Lin<Mono> mul(const Lin<Mono>& a, const Lin<Mono>& b) const;
    const std::vector<Mono>& basis(int d) const;
    std::vector<long> poincare(int upto) const;
    /* (filtration s, total degree) -> dim */
    std::map<std::pair<int, int>, long> bigraded(int upto) const;
    std::string label(const Mono& m) const;
    std::string label(const Lin<Mono>& x) const;
    /* gamma_j of a divided power family as coef * monomial */
    std::pair<int, Mono> gamma(int family, long j) const;
    bool connected() const;

private:
    mutable std::mutex mu_;
    mutable std::map<int, std::vector<Mono>> cache_;
    void enumerate(int d, std::vector<Mono>& out) const;
    void check() const;
};

/* Tensor-product sign: (a x b)(c x d) = (-1)^{|b||c|} ac x bd */
int koszul(int p, int db, int dc);

/* product in L (x) R with the Koszul sign */
Lin<Mono2> tensor_mul(const AlgebraPresentation& L, const AlgebraPresentation& R, const Lin<Mono2>& x,
                      const Lin<Mono2>& y, int p);

/* Coalgebra data over the base ring: base generators are scalars, gamma families
 * carry the divided power coproduct, everything else is primitive. */
struct HopfData {
    const AlgebraPresentation* A = nullptr;
    explicit HopfData(const AlgebraPresentation& a) : A(&a) {}
    /* left factor carries the base part */
    Lin<Mono2> coproduct(const Mono& m) const;
    Lin<Mono2> reduced(const Mono& m) const;
    Mono base_part(const Mono& m) const;
    Mono fiber_part(const Mono& m) const;
};

/* basis (as vectors over A.basis(d)) of coalgebra primitives of positive filtration */
std::vector<SparseVec> coalgebra_primitives(const HopfData& h, int d);

/* nu(g) = sum a (x) m with a a monomial of the coefficient algebra (the dual
 * Steenrod algebra, conjugate alphabet) and m a monomial of A. */
struct CoactionTable {
    const AlgebraPresentation* coeff = nullptr;
    std::vector<Lin<Mono2>> gen;
    std::vector<bool> known;
    CoactionTable() = default;
    CoactionTable(const AlgebraPresentation& coeff_, int ngens)
        : coeff(&coeff_), gen(ngens), known(ngens, false) {}
    void set(int g, Lin<Mono2> v) { gen[g] = std::move(v); known[g] = true; }
};

Lin<Mono2> coaction(const AlgebraPresentation& A, const CoactionTable& c, const Mono& m);
Lin<Mono2> coaction(const AlgebraPresentation& A, const CoactionTable& c, const Lin<Mono>& x);
std::vector<SparseVec> comodule_primitives(const AlgebraPresentation& A, const CoactionTable& c, int d);

/* convolution of series, used for tensor products */
std::vector<long> convolve(const std::vector<long>& a, const std::vector<long>& b, int upto);

}  // namespace thh
