#include "thh/hochschild.hpp"

#include <algorithm>
#include <numeric>

namespace thh {

int tensor_degree(const AlgebraPresentation& A, const HTensor& t)
{
    int d = 0;
    for (auto& m : t) d += A.degree(m);
    return d;
}

HChain boundary(const AlgebraPresentation& A, const HTensor& t)
{
    HChain out;
    int q = (int)t.size() - 1;
    if (q <= 0) return out;
    int p = A.p;
    Mono prod;
    for (int i = 0; i < q; ++i) {
        int c = A.mul(t[i], t[i + 1], prod);
        if (!c) continue;
        if (i > 0 && prod == A.unit()) continue;
        HTensor s;
        s.reserve(q);
        for (int j = 0; j < i; ++j) s.push_back(t[j]);
        s.push_back(prod);
        for (int j = i + 2; j <= q; ++j) s.push_back(t[j]);
        addto(out, s, (i & 1) ? -c : c, p);
    }
    int c = A.mul(t[q], t[0], prod);
    if (c) {
        long dq = A.degree(t[q]), rest = 0;
        for (int j = 0; j < q; ++j) rest += A.degree(t[j]);
        int sign = ((q + dq * rest) & 1) ? -1 : 1;
        HTensor s;
        s.push_back(prod);
        for (int j = 1; j < q; ++j) s.push_back(t[j]);
        addto(out, s, (long)sign * c, p);
    }
    return out;
}

HChain boundary(const AlgebraPresentation& A, const HChain& c)
{
    HChain out;
    for (auto& [t, k] : c) addto(out, boundary(A, t), k, A.p);
    return out;
}

long HHResult::dim(int q, int t) const
{
    auto it = dims.find({q, t});
    return it == dims.end() ? 0 : it->second;
}

namespace {

/* exponent vector of a tensor, ignoring idempotent generators */
Mono multidegree(const AlgebraPresentation& A, const HTensor& t)
{
    Mono e(A.ngens(), 0);
    for (auto& m : t)
        for (int i = 0; i < A.ngens(); ++i)
            if (!A.gens[i].idempotent) e[i] += m[i];
    return e;
}

struct CellEnum {
    const AlgebraPresentation& A;
    std::vector<int> idem;
    explicit CellEnum(const AlgebraPresentation& a) : A(a)
    {
        for (int i = 0; i < A.ngens(); ++i)
            if (A.gens[i].idempotent) idem.push_back(i);
    }

    /* all valid monomials m <= rem (non-idempotent part) */
    void subs(const Mono& rem, std::vector<Mono>& out) const
    {
        Mono cur(A.ngens(), 0);
        int n = A.ngens();
        auto rec = [&](auto& self, int i) -> void {
            if (i == n) {
                if (A.valid(cur)) out.push_back(cur);
                return;
            }
            if (A.gens[i].idempotent) {
                for (int e = 0; e <= 1; ++e) {
                    cur[i] = e;
                    self(self, i + 1);
                }
                cur[i] = 0;
                return;
            }
            int l = A.limit(i);
            int emax = rem[i];
            if (l >= 0) emax = std::min(emax, l);
            for (int e = 0; e <= emax; ++e) {
                cur[i] = e;
                self(self, i + 1);
            }
            cur[i] = 0;
        };
        rec(rec, 0);
    }

    void tensors(const Mono& e, int q, std::vector<HTensor>& out, long budget) const
    {
        HTensor cur;
        Mono unit = A.unit();
        auto rec = [&](auto& self, const Mono& rem, int slot) -> void {
            if (slot == q + 1) {
                if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; })) {
                    out.push_back(cur);
                    if ((long)out.size() > budget) throw BoundOverflow("Hochschild complex exceeds the cell budget");
                }
                return;
            }
            std::vector<Mono> cand;
            subs(rem, cand);
            for (auto& m : cand) {
                if (slot > 0 && m == unit) continue;
                Mono r = rem;
                for (int i = 0; i < A.ngens(); ++i)
                    if (!A.gens[i].idempotent) r[i] -= m[i];
                cur.push_back(m);
                self(self, r, slot + 1);
                cur.pop_back();
            }
        };
        rec(rec, e, 0);
    }
};

void multidegrees(const AlgebraPresentation& A, int t, std::vector<Mono>& out)
{
    Mono cur(A.ngens(), 0);
    int n = A.ngens();
    auto rec = [&](auto& self, int i, int rem) -> void {
        if (i == n) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        if (A.gens[i].idempotent || A.gens[i].degree == 0) {
            self(self, i + 1, rem);
            return;
        }
        for (int e = 0; e * A.gens[i].degree <= rem; ++e) {
            cur[i] = e;
            self(self, i + 1, rem - e * A.gens[i].degree);
        }
        cur[i] = 0;
    };
    rec(rec, 0, t);
}

struct Cell {
    std::vector<HTensor> basis;
    std::map<HTensor, int> index;
};

}  // namespace

HHResult hh_homology(const AlgebraPresentation& A, int N, int qmax, HHOptions opt)
{
    if (N > A.N) throw BoundOverflow("internal degree bound exceeds the presentation bound");
    HHResult res;
    res.N = N;
    res.qmax = qmax;
    CellEnum en(A);
    long used = 0;
    int p = A.p;
    auto run = [&](int t) {
        std::vector<Mono> es;
        multidegrees(A, t, es);
        for (auto& e : es) {
            std::vector<Cell> cells(qmax + 2);
            for (int q = 0; q <= qmax + 1; ++q) {
                en.tensors(e, q, cells[q].basis, opt.max_cells - used);
                used += (long)cells[q].basis.size();
                for (int i = 0; i < (int)cells[q].basis.size(); ++i) cells[q].index[cells[q].basis[i]] = i;
            }
            /* d_q : C_q -> C_{q-1} */
            std::vector<SparseMat> d(qmax + 2);
            std::vector<int> rk(qmax + 3, 0);
            for (int q = 1; q <= qmax + 1; ++q) {
                SparseMat M(p, (int)cells[q - 1].basis.size(), (int)cells[q].basis.size());
                for (int j = 0; j < (int)cells[q].basis.size(); ++j)
                    for (auto& [s, c] : boundary(A, cells[q].basis[j])) M.add(cells[q - 1].index.at(s), j, c);
                d[q] = M;
                rk[q] = rank(M);
            }
            for (int q = 0; q <= qmax; ++q) {
                long h = (long)cells[q].basis.size() - rk[q] - rk[q + 1];
                if (h) res.dims[{q, t}] += h;
                if (!opt.reps || !h) continue;
                int n = (int)cells[q].basis.size();
                std::vector<SparseVec> ker;
                if (q == 0) {
                    for (int j = 0; j < n; ++j) ker.push_back({{j, 1}});
                }
                else
                    ker = kernel_basis(d[q]);
                Echelon E(p, n);
                for (auto& col : d[q + 1].columns()) E.add(col);
                for (auto& v : rref_basis(p, n, ker)) {
                    if (!E.add(v)) continue;
                    HChain c;
                    for (auto& [j, x] : v) addto(c, cells[q].basis[j], x, p);
                    res.reps[{q, t}].push_back(c);
                }
            }
        }
    };
    for (int t = 0; t <= N; ++t) {
        if (!opt.partial) {
            run(t);
            continue;
        }
        try {
            run(t);
        }
        catch (const BoundOverflow&) {
            for (int q = 0; q <= qmax; ++q) {
                res.dims.erase({q, t});
                res.reps.erase({q, t});
            }
            res.N = t - 1;
            break;
        }
    }
    return res;
}

bool is_boundary(const AlgebraPresentation& A, const HChain& c)
{
    if (c.empty()) return true;
    CellEnum en(A);
    std::map<std::pair<int, Mono>, HChain> parts;
    for (auto& [t, k] : c) addto(parts[{(int)t.size() - 1, multidegree(A, t)}], t, k, A.p);
    for (auto& [key, part] : parts) {
        auto& [q, e] = key;
        std::vector<HTensor> src, dst;
        en.tensors(e, q + 1, src, 4000000);
        en.tensors(e, q, dst, 4000000);
        std::map<HTensor, int> idx;
        for (int i = 0; i < (int)dst.size(); ++i) idx[dst[i]] = i;
        Echelon E(A.p, (int)dst.size());
        for (auto& s : src) {
            SparseVec v;
            for (auto& [t, k] : boundary(A, s)) v[idx.at(t)] = k;
            E.add(v);
        }
        SparseVec v;
        for (auto& [t, k] : part) v[idx.at(t)] = k;
        if (!E.in_span(v)) return false;
    }
    return true;
}

namespace {
int perm_sign_shuffle(const std::vector<int>& which, const std::vector<int>& dA, const std::vector<int>& dB, int p)
{
    /* which[k] = 0 for an a-entry, 1 for a b-entry; each b passing an a costs (-1)^{1 + |a||b|} */
    if (p == 2) return 1;
    int sign = 1, ia = 0, jb = 0, nb = 0, nb_odd = 0;
    for (int w : which) {
        if (w == 1) {
            ++nb;
            if (dB[jb] & 1) ++nb_odd;
            ++jb;
        }
        else {
            int flips = nb + ((dA[ia] & 1) ? nb_odd : 0);
            if (flips & 1) sign = -sign;
            ++ia;
        }
    }
    return sign;
}
}  // namespace

HChain shuffle_product(const AlgebraPresentation& A, const HChain& x, const HChain& y)
{
    HChain out;
    int p = A.p;
    Mono prod;
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y) {
            int qa = (int)a.size() - 1, qb = (int)b.size() - 1;
            int c0 = A.mul(a[0], b[0], prod);
            if (!c0) continue;
            long abar = 0;
            for (int i = 1; i <= qa; ++i) abar += A.degree(a[i]);
            int s0 = (p != 2 && (A.degree(b[0]) & 1) && (abar & 1)) ? -1 : 1;
            std::vector<int> dA, dB;
            for (int i = 1; i <= qa; ++i) dA.push_back(A.degree(a[i]));
            for (int i = 1; i <= qb; ++i) dB.push_back(A.degree(b[i]));
            std::vector<int> which(qa + qb, 0);
            std::fill(which.begin() + qa, which.end(), 1);
            do {
                HTensor t{prod};
                int ia = 1, ib = 1;
                for (int w : which) t.push_back(w ? b[ib++] : a[ia++]);
                int s = perm_sign_shuffle(which, dA, dB, p);
                addto(out, t, (long)ca * cb * c0 * s0 * s, p);
            } while (std::next_permutation(which.begin(), which.end()));
        }
    return out;
}

Lin<HPair> chain_coproduct(const AlgebraPresentation& A, const HChain& x)
{
    Lin<HPair> out;
    for (auto& [t, c] : x) {
        int q = (int)t.size() - 1;
        for (int i = 0; i <= q; ++i) {
            HTensor l(t.begin(), t.begin() + i + 1);
            HTensor r{A.unit()};
            r.insert(r.end(), t.begin() + i + 1, t.end());
            addto(out, HPair{l, r}, c, A.p);
        }
    }
    return out;
}

Lin<HPair> class_coproduct(const AlgebraPresentation& A, const HChain& x)
{
    auto psi = chain_coproduct(A, x);
    std::map<HTensor, HChain> byright;
    for (auto& [pr, c] : psi) addto(byright[pr.second], pr.first, c, A.p);
    for (auto& [r, l] : byright) {
        if (!boundary(A, l).empty() || !boundary(A, HChain{{r, 1}}).empty())
            throw std::runtime_error("coproduct representatives do not split over the base");
    }
    return psi;
}

bool bar_roundtrip_check(const AlgebraPresentation& A, int qmax, int tmax)
{
    int p = A.p;
    Mono unit = A.unit();
    std::vector<Mono> mons, pos;
    for (int d = 0; d <= tmax; ++d)
        for (auto& m : A.basis(d)) {
            mons.push_back(m);
            if (m != unit) pos.push_back(m);
        }
    /* bar chain: entries 0..q+1, bar slots 1..q */
    auto eps = [&](const HTensor& t, int& coef) {
        Mono acc = unit, tmp;
        coef = 1;
        for (auto& m : t) {
            int c = A.mul(acc, m, tmp);
            if (!c) {
                coef = 0;
                return unit;
            }
            coef *= c;
            acc = tmp;
        }
        return acc;
    };
    for (int q = 0; q <= qmax; ++q) {
        std::vector<HTensor> chains;
        HTensor cur;
        auto rec = [&](auto& self, int slot, int deg) -> void {
            if (slot == q + 2) {
                chains.push_back(cur);
                return;
            }
            bool bar = slot >= 1 && slot <= q;
            for (auto& m : bar ? pos : mons) {
                int dm = A.degree(m);
                if (deg + dm > tmax) continue;
                cur.push_back(m);
                self(self, slot + 1, deg + dm);
                cur.pop_back();
            }
        };
        rec(rec, 0, 0);
        for (auto& x : chains) {
            HChain result;
            for (int i = 0; i <= q; ++i) {
                /* u = l0[l1..li]1, v = 1[l_{i+1}..lq]l_{q+1} */
                HTensor u(x.begin(), x.begin() + i + 1);
                u.push_back(unit);
                HTensor v{unit};
                v.insert(v.end(), x.begin() + i + 1, x.end());
                std::vector<int> which(q, 0);
                std::fill(which.begin() + i, which.end(), 1);
                std::vector<int> dA, dB;
                for (int k = 1; k <= i; ++k) dA.push_back(A.degree(x[k]));
                for (int k = i + 1; k <= q; ++k) dB.push_back(A.degree(x[k]));
                do {
                    HTensor us{u[0]}, vs{v[0]};
                    int ia = 1, ib = 1;
                    for (int w : which) {
                        if (w == 0) {
                            us.push_back(u[ia++]);
                            vs.push_back(unit);
                        }
                        else {
                            us.push_back(unit);
                            vs.push_back(v[ib++]);
                        }
                    }
                    us.push_back(u.back());
                    vs.push_back(v.back());
                    int s = perm_sign_shuffle(which, dA, dB, p);
                    bool degenerate = false;
                    for (int k = 1; k <= q; ++k)
                        if (us[k] == unit) degenerate = true;
                    if (degenerate) continue;
                    int ce;
                    Mono e = eps(vs, ce);
                    if (!ce) continue;
                    Mono last;
                    int cl = A.mul(us.back(), e, last);
                    if (!cl) continue;
                    us.back() = last;
                    addto(result, us, (long)s * ce * cl, p);
                } while (std::next_permutation(which.begin(), which.end()));
            }
            HChain expect;
            addto(expect, x, 1, p);
            if (result != expect) return false;
        }
    }
    return true;
}

std::string sigma_name(const std::string& x) { return "s" + x; }

AlgebraPresentation closed_form_hh(const AlgebraPresentation& A)
{
    std::vector<GeneratorSpec> raw;
    std::vector<GeneratorSpec> extra;
    for (auto& g : A.gens) {
        if (g.idempotent) throw std::invalid_argument("closed form needs polynomial or exterior generators: " + g.name);
        GeneratorSpec b = g;
        b.base = true;
        b.filtration = 0;
        raw.push_back(b);
        GeneratorSpec s;
        s.name = sigma_name(g.name);
        s.degree = g.degree + 1;
        s.filtration = 1;
        bool ext = g.kind == Kind::Exterior || (g.kind == Kind::Truncated && g.height == 2 && A.p == 2);
        if (g.kind == Kind::Polynomial)
            s.kind = Kind::Exterior;
        else if (ext)
            s.kind = Kind::DividedPower;
        else
            throw std::invalid_argument("closed form needs polynomial or exterior generators: " + g.name);
        if (s.degree <= A.N) extra.push_back(s);
    }
    raw.insert(raw.end(), extra.begin(), extra.end());
    return AlgebraPresentation(A.p, raw, A.N);
}

AlgebraPresentation square_zero_algebra(int p, const std::vector<int>& vdeg, int N)
{
    std::vector<GeneratorSpec> g;
    for (size_t i = 0; i < vdeg.size(); ++i) g.push_back({"v" + std::to_string(i), vdeg[i], Kind::Exterior});
    return AlgebraPresentation(p, g, N, true);
}

std::map<std::pair<int, int>, long> hh_squarezero(int p, const std::vector<int>& vdeg, int qmax, int tmax)
{
    std::map<std::pair<int, int>, long> out;
    int n = (int)vdeg.size();
    /* per tensor length: basis tensors grouped by degree, and the signed rotation */
    auto part = [&](int len, int sgnexp) {
        std::map<int, std::vector<std::vector<int>>> bydeg;
        std::vector<int> cur;
        auto rec = [&](auto& self, int k, int deg) -> void {
            if (k == len) {
                bydeg[deg].push_back(cur);
                return;
            }
            for (int i = 0; i < n; ++i) {
                if (deg + vdeg[i] > tmax) continue;
                cur.push_back(i);
                self(self, k + 1, deg + vdeg[i]);
                cur.pop_back();
            }
        };
        rec(rec, 0, 0);
        std::map<int, long> dims;
        for (auto& [deg, ts] : bydeg) {
            std::map<std::vector<int>, int> idx;
            for (int i = 0; i < (int)ts.size(); ++i) idx[ts[i]] = i;
            SparseMat M(p, (int)ts.size(), (int)ts.size());
            for (int j = 0; j < (int)ts.size(); ++j) {
                auto& t = ts[j];
                int s = (sgnexp & 1) ? -1 : 1;
                /* t_len moves the last factor to the front */
                long dl = vdeg[t.back()], rest = 0;
                for (int k = 0; k + 1 < len; ++k) rest += vdeg[t[k]];
                if (p != 2 && ((dl * rest) & 1)) s = -s;
                std::vector<int> r{t.back()};
                r.insert(r.end(), t.begin(), t.end() - 1);
                M.add(idx[r], j, s);
                M.add(j, j, -1);
            }
            long rk = rank(M);
            dims[deg] = (long)ts.size() - rk;
        }
        return dims;
    };
    out[{0, 0}] = 1;
    for (int q = 0; q <= qmax; ++q) {
        if (q > 0)
            for (auto& [t, d] : part(q, q + 1))
            if (d) out[{q, t}] += d;
        for (auto& [t, d] : part(q + 1, q + 2))
            if (d) out[{q, t}] += d;
    }
    return out;
}

}  // namespace thh
