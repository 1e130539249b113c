#include "thh/fplin.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace thh {

bool is_prime(int n)
{
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(int p_) : p(p_)
{
    if (!is_prime(p)) throw std::invalid_argument("not a prime");
    inv_.assign(p, 0);
    for (int a = 1; a < p; ++a)
        for (int b = 1; b < p; ++b)
            if (a * b % p == 1) inv_[a] = b;
}

void SparseMat::normalize()
{
    std::map<std::pair<int, int>, long> acc;
    for (auto& [r, c, v] : entries) acc[{r, c}] += v;
    entries.clear();
    for (auto& [rc, v] : acc) {
        long w = ((v % p) + p) % p;
        if (w) entries.emplace_back(rc.first, rc.second, (int)w);
    }
}

std::vector<SparseVec> SparseMat::columns() const
{
    std::vector<SparseVec> out(cols);
    for (auto& [r, c, v] : entries) {
        int& x = out[c][r];
        x = (x + v) % p;
        if (x == 0) out[c].erase(r);
    }
    return out;
}

std::vector<SparseVec> SparseMat::row_vectors() const
{
    std::vector<SparseVec> out(rows);
    for (auto& [r, c, v] : entries) {
        int& x = out[r][c];
        x = (x + v) % p;
        if (x == 0) out[r].erase(c);
    }
    return out;
}

SparseVec SparseMat::apply(const SparseVec& v) const
{
    std::map<int, long> acc;
    for (auto& [r, c, x] : entries) {
        auto it = v.find(c);
        if (it != v.end()) acc[r] += (long)x * it->second;
    }
    SparseVec out;
    for (auto& [r, x] : acc)
        if (x % p) out[r] = int(x % p);
    return out;
}

Echelon::Echelon(int p, int len, int main_len) : F(p), len_(len), main_(main_len < 0 ? len : main_len)
{
    pivot_of_col_.assign(main_, -1);
}

Row Echelon::zero() const
{
    Row r;
    if (F.p == 2) r.bits.assign((len_ + 63) / 64, 0);
    else r.vals.assign(len_, 0);
    return r;
}

Row Echelon::make(const SparseVec& v) const
{
    Row r = zero();
    for (auto& [i, x] : v) set(r, i, F.norm(x));
    return r;
}

int Echelon::get(const Row& r, int i) const
{
    if (F.p == 2) return int((r.bits[i >> 6] >> (i & 63)) & 1);
    return r.vals[i];
}

void Echelon::set(Row& r, int i, int v) const
{
    if (i < 0 || i >= len_) throw std::out_of_range("row index");
    if (F.p == 2) {
        if (v & 1) r.bits[i >> 6] |= (uint64_t(1) << (i & 63));
        else r.bits[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }
    else
        r.vals[i] = (uint8_t)v;
}

int Echelon::first_nonzero(const Row& r) const
{
    if (F.p == 2) {
        int words = (main_ + 63) / 64;
        for (int w = 0; w < words; ++w) {
            uint64_t x = r.bits[w];
            if (w == words - 1 && (main_ & 63)) x &= (uint64_t(1) << (main_ & 63)) - 1;
            if (x) return w * 64 + std::countr_zero(x);
        }
        return -1;
    }
    for (int i = 0; i < main_; ++i)
        if (r.vals[i]) return i;
    return -1;
}

bool Echelon::is_zero_main(const Row& r) const { return first_nonzero(r) < 0; }

void Echelon::axpy(Row& r, int c, const Row& x) const
{
    if (F.p == 2) {
        if (c & 1)
            for (size_t w = 0; w < r.bits.size(); ++w) r.bits[w] ^= x.bits[w];
        return;
    }
    if (c == 0) return;
    const int p = F.p;
    for (int i = 0; i < len_; ++i)
        if (x.vals[i]) r.vals[i] = uint8_t((r.vals[i] + c * x.vals[i]) % p);
}

void Echelon::scale(Row& r, int c) const
{
    if (F.p == 2) return;
    for (auto& v : r.vals) v = uint8_t(v * c % F.p);
}

void Echelon::reduce(Row& r) const
{
    for (size_t k = 0; k < rows_.size(); ++k) {
        int c = get(r, pivots_[k]);
        if (c) axpy(r, F.neg(c), rows_[k]);
    }
}

bool Echelon::add(Row r)
{
    reduce(r);
    int piv = first_nonzero(r);
    if (piv < 0) return false;
    scale(r, F.inv(get(r, piv)));
    pivot_of_col_[piv] = (int)rows_.size();
    pivots_.push_back(piv);
    rows_.push_back(std::move(r));
    return true;
}

bool Echelon::in_span(const SparseVec& v) const
{
    Row r = make(v);
    reduce(r);
    return is_zero_main(r);
}

SparseVec Echelon::normal_form(const SparseVec& v) const
{
    Row r = make(v);
    reduce(r);
    return to_sparse(r);
}

SparseVec Echelon::to_sparse(const Row& r, int from, int to) const
{
    if (to < 0) to = len_;
    SparseVec out;
    if (F.p == 2) {
        for (int w = from >> 6; w < (int)r.bits.size(); ++w) {
            uint64_t x = r.bits[w];
            while (x) {
                int i = w * 64 + std::countr_zero(x);
                x &= x - 1;
                if (i >= from && i < to) out[i - from] = 1;
            }
        }
        return out;
    }
    for (int i = from; i < to; ++i)
        if (r.vals[i]) out[i - from] = r.vals[i];
    return out;
}

std::vector<int> Echelon::free_columns() const
{
    std::vector<int> out;
    for (int i = 0; i < main_; ++i)
        if (pivot_of_col_[i] < 0) out.push_back(i);
    return out;
}

int rank(const SparseMat& m)
{
    /* eliminate along the shorter side */
    if (m.rows <= m.cols) {
        Echelon E(m.p, m.cols);
        for (auto& r : m.row_vectors()) E.add(r);
        return E.rank();
    }
    Echelon E(m.p, m.rows);
    for (auto& c : m.columns()) E.add(c);
    return E.rank();
}

std::vector<SparseVec> kernel_basis(const SparseMat& m)
{
    /* rows [image of e_j | e_j]; rows whose image part vanishes give kernel vectors */
    Echelon E(m.p, m.rows + m.cols, m.rows);
    auto cols = m.columns();
    std::vector<SparseVec> ker;
    for (int j = 0; j < m.cols; ++j) {
        Row r = E.make(cols[j]);
        E.set(r, m.rows + j, 1);
        E.reduce(r);
        if (E.is_zero_main(r)) ker.push_back(E.to_sparse(r, m.rows));
        else E.add(std::move(r));
    }
    return ker;
}

std::vector<SparseVec> quotient_basis(int p, int n, const std::vector<SparseVec>& subspace)
{
    Echelon E(p, n);
    for (auto& v : subspace) E.add(v);
    std::vector<SparseVec> out;
    for (int i : E.free_columns()) out.push_back(SparseVec{{i, 1}});
    return out;
}

}  // namespace thh

namespace thh {

std::vector<SparseVec> rref_basis(int p, int len, const std::vector<SparseVec>& vs)
{
    Echelon E(p, len);
    for (auto& v : vs) E.add(v);
    std::vector<Row> rows = E.rows();
    const auto& piv = E.pivots();
    PrimeField F(p);
    int r = (int)rows.size();
    for (int k = r - 1; k >= 0; --k)
        for (int j = k + 1; j < r; ++j) {
            int c = E.get(rows[k], piv[j]);
            if (!c) continue;
            for (int i = 0; i < len; ++i) {
                int x = E.get(rows[j], i);
                if (x) E.set(rows[k], i, F.sub(E.get(rows[k], i), F.mul(c, x)));
            }
        }
    std::vector<int> order(r);
    for (int i = 0; i < r; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return piv[a] < piv[b]; });
    std::vector<SparseVec> out;
    for (int k : order) out.push_back(E.to_sparse(rows[k]));
    return out;
}

}  // namespace thh
