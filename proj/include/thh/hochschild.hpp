#pragma once
#include <map>
#include <stdexcept>
#include <vector>

#include "thh/gca.hpp"

namespace thh {

using HTensor = std::vector<Mono>; /* lambda_0 (x) lambda_1 (x) ... (x) lambda_q */
using HChain = Lin<HTensor>;
using HPair = std::pair<HTensor, HTensor>;

struct BoundOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int tensor_degree(const AlgebraPresentation& A, const HTensor& t);
HChain boundary(const AlgebraPresentation& A, const HTensor& t);
HChain boundary(const AlgebraPresentation& A, const HChain& c);

struct HHOptions {
    bool reps = false;
    long max_cells = 4000000; /* total basis tensors over all cells */
    bool partial = false;     /* on overflow stop and report N = last complete degree */
};

struct HHResult {
    int N = 0, qmax = 0;
    std::map<std::pair<int, int>, long> dims;             /* (q, t) */
    std::map<std::pair<int, int>, std::vector<HChain>> reps; /* (q, t) */
    long dim(int q, int t) const;
};

HHResult hh_homology(const AlgebraPresentation& A, int N, int qmax, HHOptions opt = {});

/* chain in the span of boundaries of the normalized complex */
bool is_boundary(const AlgebraPresentation& A, const HChain& c);

HChain shuffle_product(const AlgebraPresentation& A, const HChain& x, const HChain& y);

/* psi(l0 (x) ... (x) lq) = sum_i (l0 (x) ... (x) li) (x)_Lambda (1 (x) l_{i+1} (x) ... (x) lq) */
Lin<HPair> chain_coproduct(const AlgebraPresentation& A, const HChain& x);

/* Coproduct on classes: groups the chain coproduct by right factor and checks
 * that both sides are cycles; throws if the representatives do not split. */
Lin<HPair> class_coproduct(const AlgebraPresentation& A, const HChain& x);

/* pi o sh o psi = id on normalized two-sided bar chains, q <= qmax, degree <= tmax */
bool bar_roundtrip_check(const AlgebraPresentation& A, int qmax, int tmax);

/* HH of a free graded-commutative algebra: P(x) -> P(x) (x) E(sx), E(x) -> E(x) (x) Gamma(sx).
 * Base generators are flagged base; sx has filtration 1. */
AlgebraPresentation closed_form_hh(const AlgebraPresentation& A);
std::string sigma_name(const std::string& x);

/* HH_q(k + V) = [V^q]^{C_q} + [V^{q+1}]_{C_{q+1}}, V given by basis degrees */
std::map<std::pair<int, int>, long> hh_squarezero(int p, const std::vector<int>& vdeg, int qmax, int tmax);
AlgebraPresentation square_zero_algebra(int p, const std::vector<int>& vdeg, int N);

}  // namespace thh
