#pragma once
#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

namespace thh {

struct PrimeField {
    int p = 2;
    std::vector<int> inv_;
    explicit PrimeField(int p_ = 2);
    int add(int a, int b) const { return (a + b) % p; }
    int sub(int a, int b) const { return (a - b + p) % p; }
    int mul(int a, int b) const { return (a * b) % p; }
    int neg(int a) const { return (p - a) % p; }
    int inv(int a) const { return inv_[a]; }
    int norm(long a) const { long r = a % p; return int(r < 0 ? r + p : r); }
};

bool is_prime(int n);

/* index -> nonzero scalar */
using SparseVec = std::map<int, int>;

struct SparseMat {
    int p = 2, rows = 0, cols = 0;
    std::vector<std::tuple<int, int, int>> entries;
    SparseMat() = default;
    SparseMat(int p_, int r, int c) : p(p_), rows(r), cols(c) {}
    /* accumulates into (r,c); zero results are dropped by normalize() */
    void add(int r, int c, int v) { entries.emplace_back(r, c, v); }
    void normalize();
    std::vector<SparseVec> columns() const;
    std::vector<SparseVec> row_vectors() const;
    SparseVec apply(const SparseVec& v) const;
};

/* Dense row: bit-packed at p = 2, one byte per entry otherwise. */
struct Row {
    std::vector<uint64_t> bits;
    std::vector<uint8_t> vals;
};

/* Incremental echelon form over F_p.  Rows are reduced in insertion order so
 * the normal form of a vector is supported off the pivot columns. */
class Echelon {
public:
    Echelon(int p, int len, int main_len = -1);
    int p() const { return F.p; }
    int len() const { return len_; }
    int rank() const { return (int)rows_.size(); }
    Row make(const SparseVec& v) const;
    Row zero() const;
    int get(const Row& r, int i) const;
    void set(Row& r, int i, int v) const;
    bool is_zero_main(const Row& r) const;
    void reduce(Row& r) const;
    /* reduce then insert; returns true if r was independent */
    bool add(Row r);
    bool add(const SparseVec& v) { return add(make(v)); }
    bool in_span(const SparseVec& v) const;
    SparseVec normal_form(const SparseVec& v) const;
    SparseVec to_sparse(const Row& r, int from = 0, int to = -1) const;
    const std::vector<int>& pivots() const { return pivots_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::vector<int> free_columns() const;

private:
    PrimeField F;
    int len_, main_;
    std::vector<Row> rows_;
    std::vector<int> pivots_;
    std::vector<int> pivot_of_col_;
    int first_nonzero(const Row& r) const;
    void axpy(Row& r, int c, const Row& x) const;
    void scale(Row& r, int c) const;
};

int rank(const SparseMat& m);
/* basis of {v : m v = 0}; size cols - rank */
std::vector<SparseVec> kernel_basis(const SparseMat& m);
/* standard-basis representatives of F_p^n / span(subspace) */
std::vector<SparseVec> quotient_basis(int p, int n, const std::vector<SparseVec>& subspace);
/* fully reduced row echelon basis of span(vs), sorted by pivot */
std::vector<SparseVec> rref_basis(int p, int len, const std::vector<SparseVec>& vs);


}  // namespace thh
