#include "thh/adams.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "thh/steenrod.hpp"

namespace thh {

using Key = std::pair<int, int>;

namespace {

void add2(SparseVec& v, int i)
{
    auto it = v.find(i);
    if (it == v.end())
        v[i] = 1;
    else
        v.erase(it);
}

void add2(SparseVec& v, const SparseVec& w)
{
    for (auto& [i, c] : w)
        if (c & 1) add2(v, i);
}

std::string join_terms(const std::vector<std::string>& t)
{
    std::string out;
    for (auto& s : t) out += (out.empty() ? "" : " + ") + s;
    return out.empty() ? "0" : out;
}

}  // namespace

std::vector<int> ExteriorComodule::in_degree(int d) const
{
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (degree[i] == d) out.push_back(i);
    return out;
}

SparseVec ExteriorComodule::apply_q(const SparseVec& v) const
{
    SparseVec out;
    for (auto& [i, c] : v)
        if (c & 1) add2(out, q[i]);
    return out;
}

bool ExteriorComodule::q_squared_zero() const
{
    for (int i = 0; i < size(); ++i)
        if (!apply_q(apply_q({{i, 1}})).empty()) return false;
    return true;
}

bool ExteriorComodule::q_is_derivation() const
{
    if (!multiplicative) return true;
    auto prod = [&](const SparseVec& a, const SparseVec& b, bool& in_range) {
        SparseVec out;
        for (auto& [i, ci] : a)
            for (auto& [j, cj] : b) {
                Mono m;
                if (!alg.mul(mono[i], mono[j], m)) continue;
                auto it = index_of.find(m);
                if (it == index_of.end()) {
                    in_range = false;
                    continue;
                }
                add2(out, it->second);
            }
        return out;
    };
    for (int i = 0; i < size(); ++i)
        for (int j = i; j < size(); ++j) {
            if (degree[i] + degree[j] > top) continue;
            bool ok = true;
            SparseVec ab = prod({{i, 1}}, {{j, 1}}, ok);
            SparseVec rhs = prod(q[i], {{j, 1}}, ok);
            add2(rhs, prod({{i, 1}}, q[j], ok));
            if (ok && apply_q(ab) != rhs) return false;
        }
    return true;
}

std::string ExteriorComodule::vec_label(const SparseVec& v) const
{
    std::vector<std::string> t;
    for (auto& [i, c] : v)
        if (c & 1) t.push_back(label[i]);
    return join_terms(t);
}

ExteriorComodule multiplicative_comodule(const AlgebraPresentation& A, const std::vector<Lin<Mono>>& qgen, int top)
{
    if (A.p != 2) throw std::invalid_argument("exterior comodules are implemented at p = 2");
    ExteriorComodule M;
    M.top = top;
    M.multiplicative = true;
    M.alg = A;
    for (int d = 0; d <= top; ++d)
        for (auto& m : A.basis(d)) {
            M.index_of[m] = M.size();
            M.mono.push_back(m);
            M.degree.push_back(d);
            M.label.push_back(A.label(m));
        }
    for (int g = 0; g < A.ngens(); ++g)
        for (auto& [m, c] : qgen[g])
            if (A.degree(m) != A.gens[g].degree - M.qdeg) throw std::invalid_argument("q must lower degree by 3");
    M.q.resize(M.size());
    for (int i = 0; i < M.size(); ++i) {
        const Mono& m = M.mono[i];
        for (int g = 0; g < A.ngens(); ++g) {
            if (!m[g] || !(m[g] & 1) || qgen[g].empty()) continue;
            Mono rest = m;
            rest[g] -= 1;
            for (auto& [x, c] : qgen[g]) {
                if (!(c & 1)) continue;
                Mono out;
                if (!A.mul(rest, x, out)) continue;
                add2(M.q[i], M.index_of.at(out));
            }
        }
    }
    return M;
}

std::map<Key, long> ExtPage::dims() const
{
    std::map<Key, long> out;
    for (auto& c : classes) out[{c.s, c.t}]++;
    return out;
}

std::map<Key, long> ExtPage::dims_by_stem() const
{
    std::map<Key, long> out;
    for (auto& c : classes) out[{c.s, c.t - c.s}]++;
    return out;
}

ExtPage ext_over_exterior(const ExteriorComodule& m, int smax, int tmax)
{
    if (!m.q_squared_zero()) throw std::invalid_argument("q^2 != 0");
    if (m.multiplicative && tmax > m.top) throw std::invalid_argument("comodule truncated below tmax");
    ExtPage E;
    E.M = m;
    E.smax = smax;
    E.tmax = tmax;
    int dtop = 0;
    for (int d : m.degree) dtop = std::max(dtop, d);
    if (m.multiplicative) dtop = m.top;

    auto local = [&](int d) {
        std::vector<int> idx = m.in_degree(d);
        std::map<int, int> pos;
        for (int k = 0; k < (int)idx.size(); ++k) pos[idx[k]] = k;
        return std::pair{idx, pos};
    };
    auto to_global = [](const std::vector<int>& idx, const SparseVec& v) {
        SparseVec g;
        for (auto& [k, c] : v) g[idx[k]] = c;
        return g;
    };

    std::map<int, std::vector<SparseVec>> ker;
    for (int d = 0; d <= dtop; ++d) {
        auto [src, spos] = local(d);
        auto [tgt, tpos] = local(d - m.qdeg);
        SparseMat Q(2, (int)tgt.size(), (int)src.size());
        for (int k = 0; k < (int)src.size(); ++k)
            for (auto& [i, c] : m.q[src[k]]) Q.add(tpos.at(i), k, c);
        std::vector<SparseVec> kb;
        for (auto& v : rref_basis(2, (int)src.size(), kernel_basis(Q))) kb.push_back(to_global(src, v));
        ker[d] = kb;
        if (d - m.qdeg >= 0) {
            std::vector<SparseVec> im;
            for (int k = 0; k < (int)src.size(); ++k) im.push_back(m.q[src[k]]);
            auto [tg, tp] = local(d - m.qdeg);
            std::vector<SparseVec> loc;
            for (auto& v : im) {
                SparseVec w;
                for (auto& [i, c] : v) w[tp.at(i)] = c;
                loc.push_back(w);
            }
            std::vector<SparseVec> ib;
            for (auto& v : rref_basis(2, (int)tg.size(), loc)) ib.push_back(to_global(tg, v));
            E.image[d - m.qdeg] = ib;
        }
    }
    if (!m.multiplicative)
        for (int d = std::max(0, dtop - m.qdeg + 1); d <= dtop; ++d) E.image.try_emplace(d);

    for (int s = 0; s <= smax; ++s)
        for (int d = 0; d <= dtop && d + m.qdeg * s <= tmax; ++d) {
            int t = d + m.qdeg * s;
            auto [idx, pos] = local(d);
            if (idx.empty()) continue;
            std::vector<SparseVec> reps;
            if (s == 0) {
                reps = ker[d];
            } else {
                if (!E.image.count(d)) throw std::invalid_argument("comodule truncated: image of q unknown");
                Echelon ech(2, (int)idx.size());
                auto loc = [&](const SparseVec& v) {
                    SparseVec w;
                    for (auto& [i, c] : v) w[pos.at(i)] = c;
                    return w;
                };
                for (auto& v : E.image[d]) ech.add(loc(v));
                for (auto& v : ker[d])
                    if (ech.add(loc(v))) reps.push_back(v);
            }
            for (auto& v : reps) {
                std::string l = m.vec_label(v);
                if (v.size() > 1) l = "(" + l + ")";
                if (s == 1) l = "v1 " + l;
                if (s > 1) l = "v1^" + std::to_string(s) + " " + l;
                E.classes.push_back({s, t, v, l});
            }
        }
    return E;
}

/* ---- the two targets ---- */

std::string canonical_target(const std::string& target)
{
    if (target == "thh-ku-M" || target == "thh-ku-mod2" || target == "thh-ku-m") return "thh-ku-M";
    if (target == "thh-ko-Y" || target == "thh-ko-y") return "thh-ko-Y";
    throw std::invalid_argument("unknown Adams target: " + target);
}

namespace {

struct CoactionTerm {
    std::vector<std::string> coef; /* sum of monomials, conjugate alphabet */
    std::string k1;                /* left factor of H_*(k(1)) */
    std::string right;             /* monomial in lambda1, lambda2, mu */
};

int lambda1_degree(const std::string& t) { return t == "thh-ku-M" ? 3 : 5; }

/* reduced coactions of the lambda/mu generators */
std::map<std::string, std::vector<CoactionTerm>> coaction_data(const std::string& t)
{
    if (t == "thh-ku-M")
        return {{"lambda1", {}}, {"lambda2", {}}, {"mu", {}}};
    return {{"lambda1", {}},
            {"lambda2", {}},
            {"mu", {{{"xib1^2"}, "xib1", "lambda1"}, {{"xib2", "xib1^3"}, "1", "lambda1"}}}};
}

Mono parse_mono(const AlgebraPresentation& A, const std::string& s)
{
    Mono m = A.unit();
    std::stringstream ss(s);
    std::string tok;
    while (ss >> tok) {
        if (tok == "1") continue;
        int e = 1;
        auto c = tok.find('^');
        if (c != std::string::npos) {
            e = std::stoi(tok.substr(c + 1));
            tok = tok.substr(0, c);
        }
        m[A.index(tok)] += e;
    }
    return m;
}

AlgebraPresentation lambda_mu_algebra(const std::string& t, int top)
{
    std::vector<GeneratorSpec> g(3);
    g[0].name = "lambda1";
    g[0].degree = lambda1_degree(t);
    g[0].kind = Kind::Exterior;
    g[1].name = "lambda2";
    g[1].degree = 7;
    g[1].kind = Kind::Exterior;
    g[2].name = "mu";
    g[2].degree = 8;
    g[2].kind = Kind::Polynomial;
    return AlgebraPresentation(2, g, top);
}

}  // namespace

ExteriorComodule build_comodule(const std::string& target, int tmax)
{
    std::string t = canonical_target(target);
    AlgebraPresentation A = lambda_mu_algebra(t, tmax);
    const DualSteenrod& D = dual_steenrod(2, 16);
    Mono xi2 = D.parse("xi2", false).begin()->first;
    std::vector<Lin<Mono>> qgen(A.ngens());
    for (auto& [g, terms] : coaction_data(t)) {
        int gi = A.index(g);
        for (auto& term : terms) {
            Lin<Mono> k1 = D.parse(term.k1, true);
            if (k1.size() != 1 || D.alg.degree(k1.begin()->first) != 0) continue;
            Lin<Mono> c;
            for (auto& mono : term.coef) addto(c, D.parse(mono, false), 1, 2);
            auto it = c.find(xi2);
            if (it != c.end() && (it->second & 1)) addto(qgen[gi], parse_mono(A, term.right), 1, 2);
        }
    }
    return multiplicative_comodule(A, qgen, tmax);
}

DifferentialSchedule schedule(const std::string& target, int nmax)
{
    std::string t = canonical_target(target);
    DifferentialSchedule S;
    S.target = t;
    bool ku = t == "thh-ku-M";
    S.first = ku ? 1 : 2;
    int l1 = lambda1_degree(t);
    for (int n = 1; n <= nmax; ++n) {
        Differential d;
        d.n = n;
        d.mu_power = 1 << (n - 1);
        if (n == 1) {
            d.r = ku ? 2 : 1;
            d.s = ku ? 3 : 5;
            d.lambda = {1, 0, 0};
        } else if (n == 2) {
            d.r = 4;
            d.s = 7;
            d.lambda = {0, 1, 0};
        } else {
            const Differential& e = S.at(n - 2);
            d.r = (1 << n) + e.r;
            d.s = (1 << n) + e.s;
            d.lambda = e.lambda;
            d.lambda[2] += 1 << (n - 3);
        }
        if (2 * d.r + d.s != (1 << (n + 2)) - 1)
            throw std::logic_error("schedule: 2r(n) + s(n) != 2^(n+2) - 1 at n = " + std::to_string(n));
        int deg = d.lambda[0] * l1 + d.lambda[1] * 7 + d.lambda[2] * 8;
        if (deg != d.s) throw std::logic_error("schedule: |lambda_n| != s(n) at n = " + std::to_string(n));
        S.d.push_back(d);
    }
    return S;
}

/* ---- pages ---- */

namespace {

struct Ambient {
    const ExteriorComodule* M = nullptr;
    int N = 0;
    int mu = 2;
    std::map<Key, std::vector<std::pair<int, int>>> elems; /* (a, i): v1^a times basis i */
    std::map<std::pair<int, int>, int> pos;

    Ambient(const ExteriorComodule& m, int N_) : M(&m), N(N_)
    {
        mu = m.alg.index("mu");
        for (int i = 0; i < m.size(); ++i)
            for (int a = 0; 2 * a + m.degree[i] <= N + 1; ++a) {
                Key k{a, 2 * a + m.degree[i]};
                pos[{a, i}] = (int)elems[k].size();
                elems[k].push_back({a, i});
            }
    }
    int len(const Key& k) const
    {
        auto it = elems.find(k);
        return it == elems.end() ? 0 : (int)it->second.size();
    }
    Key key(int a, int i) const { return {a, 2 * a + M->degree[i]}; }
    /* global M-vector times v1^s as a local vector */
    SparseVec lift(int s, const SparseVec& v) const
    {
        SparseVec out;
        for (auto& [i, c] : v) out[pos.at({s, i})] = c;
        return out;
    }
    std::optional<std::pair<int, int>> d_elem(int a, int i, const Differential& D) const
    {
        const Mono& m = M->mono[i];
        if (!((m[mu] >> (D.n - 1)) & 1)) return std::nullopt;
        Mono rest = m;
        rest[mu] -= D.mu_power;
        Mono out;
        if (!M->alg.mul(rest, D.lambda, out)) return std::nullopt;
        return std::pair{a + D.r, M->index_of.at(out)};
    }
    SparseVec d_vec(const Key& k, const SparseVec& v, const Differential& D) const
    {
        SparseVec out;
        const auto& el = elems.at(k);
        for (auto& [j, c] : v) {
            if (!(c & 1)) continue;
            auto r = d_elem(el[j].first, el[j].second, D);
            if (r) add2(out, pos.at(*r));
        }
        return out;
    }
    std::optional<std::pair<int, int>> mul(std::pair<int, int> x, std::pair<int, int> y) const
    {
        Mono out;
        if (!M->alg.mul(M->mono[x.second], M->mono[y.second], out)) return std::nullopt;
        auto it = M->index_of.find(out);
        if (it == M->index_of.end()) return std::nullopt;
        std::pair<int, int> e{x.first + y.first, it->second};
        if (!pos.count(e)) return std::nullopt;
        return e;
    }
};

struct PageState {
    std::map<Key, std::vector<SparseVec>> Z, B;

    Echelon ech(const Ambient& A, const std::map<Key, std::vector<SparseVec>>& S, const Key& k) const
    {
        Echelon e(2, std::max(1, A.len(k)));
        auto it = S.find(k);
        if (it != S.end())
            for (auto& v : it->second) e.add(v);
        return e;
    }
    std::map<Key, long> dims(const Ambient& A) const
    {
        std::map<Key, long> out;
        for (auto& [k, z] : Z) {
            if (k.second > A.N) continue;
            long b = B.count(k) ? (long)B.at(k).size() : 0;
            if ((long)z.size() - b) out[k] = (long)z.size() - b;
        }
        return out;
    }
};

bool in_span(const Echelon& e, const SparseVec& v) { return v.empty() || e.in_span(v); }

/* rank of v1^K on the page from (s, stem) */
long v1_power_rank(const Ambient& A, const PageState& P, const Key& k, int K)
{
    Key t{k.first + K, k.second + 2 * K};
    if (t.second > A.N + 1 || !P.Z.count(k)) return 0;
    Echelon e = P.ech(A, P.B, t);
    int base = e.rank();
    const auto& el = A.elems.at(k);
    for (auto& z : P.Z.at(k)) {
        SparseVec w;
        for (auto& [j, c] : z) w[A.pos.at({el[j].first + K, el[j].second})] = c;
        e.add(w);
    }
    return e.rank() - base;
}

}  // namespace

namespace {

SSRun run_pages(const Ambient& A, PageState P, const DifferentialSchedule& sched, int N, int r0, RunOptions opt,
                int last_n)
{
    SSRun R;
    R.target = sched.target;
    R.N = N;

    std::vector<const Differential*> todo;
    for (int n = sched.first; n <= (int)sched.d.size(); ++n) {
        if (last_n && n > last_n) break;
        const Differential& D = sched.at(n);
        if (8 * D.mu_power > N + 1) break;
        todo.push_back(&D);
    }
    int Kfinal = 1;
    for (auto* D : todo) Kfinal = std::max(Kfinal, D->r);
    int W = N + 1 - 2 * Kfinal;

    int K = 1;
    auto nontorsion = [&]() {
        long c = 0;
        for (auto& [k, z] : P.Z)
            if ((k.second & 1) && k.second <= W) c += v1_power_rank(A, P, k, K);
        return c;
    };

    R.pages.push_back({r0, P.dims(A)});
    R.nontorsion_odd.push_back(nontorsion());

    for (auto* Dp : todo) {
        const Differential& D = *Dp;
        Key src{0, 8 * D.mu_power};
        Key tgt{D.r, src.second - 1};
        {
            Echelon ez = P.ech(A, P.Z, src), eb = P.ech(A, P.B, src);
            int i = A.M->index_of.at(Mono{0, 0, D.mu_power});
            SparseVec x{{A.pos.at({0, i}), 1}};
            if (!in_span(ez, x) || in_span(eb, x))
                throw std::runtime_error("adams: source mu^" + std::to_string(D.mu_power) + " is not alive on E_" +
                                         std::to_string(D.r));
            auto y = A.d_elem(0, i, D);
            if (!y) throw std::runtime_error("adams: differential formula vanishes on its source");
            SparseVec yv{{A.pos.at(*y), 1}};
            if (!in_span(P.ech(A, P.Z, tgt), yv) || in_span(P.ech(A, P.B, tgt), yv))
                throw std::runtime_error("adams: target v1^" + std::to_string(D.r) + " lambda_" +
                                         std::to_string(D.n) + " is already dead on E_" + std::to_string(D.r));
            R.log.push_back("d^" + std::to_string(D.r) + "(" + A.M->label[i] + ") = v1^" + std::to_string(D.r) +
                            " " + A.M->label[y->second]);
        }

        PageState Q;
        Q.B = P.B;
        std::map<Key, Echelon> bcache, zcache;
        auto getB = [&](const Key& k) -> Echelon& {
            auto it = bcache.find(k);
            if (it == bcache.end()) it = bcache.emplace(k, P.ech(A, P.B, k)).first;
            return it->second;
        };
        auto getZ = [&](const Key& k) -> Echelon& {
            auto it = zcache.find(k);
            if (it == zcache.end()) it = zcache.emplace(k, P.ech(A, P.Z, k)).first;
            return it->second;
        };
        for (auto& [k, z] : P.Z) {
            Key t{k.first + D.r, k.second - 1};
            if (t.second < 0 || !A.len(t)) {
                Q.Z[k] = z;
                continue;
            }
            Key t2{k.first + 2 * D.r, k.second - 2};
            std::vector<SparseVec> dz;
            for (auto& v : z) {
                SparseVec w = A.d_vec(k, v, D);
                if (!in_span(getZ(t), w)) R.well_defined = false;
                if (t2.second >= 0 && A.len(t2) && !in_span(getB(t2), A.d_vec(t, w, D))) R.d_squared_ok = false;
                dz.push_back(w);
            }
            if (P.B.count(k))
                for (auto& b : P.B.at(k))
                    if (!in_span(getB(t), A.d_vec(k, b, D))) R.well_defined = false;
            SparseMat mat(2, A.len(t), (int)z.size());
            for (int j = 0; j < (int)z.size(); ++j)
                for (auto& [i, c] : getB(t).normal_form(dz[j])) mat.add(i, j, c);
            std::vector<SparseVec> nz;
            for (auto& c : kernel_basis(mat)) {
                SparseVec v;
                for (auto& [j, cj] : c)
                    if (cj & 1) add2(v, z[j]);
                nz.push_back(v);
            }
            Q.Z[k] = rref_basis(2, A.len(k), nz);
            auto& bt = Q.B[t];
            for (auto& w : dz)
                if (!w.empty()) bt.push_back(w);
        }
        for (auto& [k, b] : Q.B) b = rref_basis(2, std::max(1, A.len(k)), b);

        if (opt.check_leibniz) {
            std::vector<std::pair<int, int>> mons;
            for (auto& [k, z] : P.Z) {
                if (k.second > opt.leibniz_upto) continue;
                Echelon& e = getZ(k);
                for (auto& el : A.elems.at(k))
                    if (in_span(e, {{A.pos.at(el), 1}})) mons.push_back(el);
            }
            auto dmon = [&](std::pair<int, int> x) { return A.d_elem(x.first, x.second, D); };
            for (size_t i = 0; i < mons.size(); ++i)
                for (size_t j = i; j < mons.size(); ++j) {
                    Key kx = A.key(mons[i].first, mons[i].second), ky = A.key(mons[j].first, mons[j].second);
                    if (kx.second + ky.second > std::min(opt.leibniz_upto, N + 1)) continue;
                    Key kt{kx.first + ky.first + D.r, kx.second + ky.second - 1};
                    if (kt.second < 0 || !A.len(kt)) continue;
                    SparseVec lhs;
                    auto xy = A.mul(mons[i], mons[j]);
                    if (xy) {
                        if (!in_span(getZ(A.key(xy->first, xy->second)), {{A.pos.at(*xy), 1}})) R.leibniz_ok = false;
                        if (auto d = dmon(*xy)) add2(lhs, A.pos.at(*d));
                    }
                    if (auto dx = dmon(mons[i]))
                        if (auto p = A.mul(*dx, mons[j])) add2(lhs, A.pos.at(*p));
                    if (auto dy = dmon(mons[j]))
                        if (auto p = A.mul(mons[i], *dy)) add2(lhs, A.pos.at(*p));
                    if (!in_span(getB(kt), lhs)) R.leibniz_ok = false;
                }
        }

        P = std::move(Q);
        K = std::max(K, D.r);
        R.pages.push_back({D.r + 1, P.dims(A)});
        R.nontorsion_odd.push_back(nontorsion());
    }
    R.einf = R.pages.back();

    for (auto& [k, z] : P.Z)
        if (k.second + 2 <= N) {
            long r = v1_power_rank(A, P, k, 1);
            if (r) R.v1_rank[k] = r;
        }
    for (auto& [k, z] : P.Z)
        if (k.first == 0 && 3 * k.second <= N) R.free_towers += v1_power_rank(A, P, k, (N - k.second) / 2);

    /* generators: the s = 0 line */
    std::map<Mono, std::string> names{{Mono{0, 0, 0}, "1"}};
    for (int n = 1; n < (int)sched.d.size(); ++n) {
        const Differential& D = sched.at(n);
        const Differential& E = sched.at(n + 1);
        for (int m = 0; D.s + (8 << n) * m <= N; ++m) {
            std::string nm = std::to_string(n) + "," + std::to_string(m) + "}";
            Mono x = D.lambda;
            x[2] += (1 << n) * m;
            names[x] = "x_{" + nm;
            Mono y;
            if (A.M->alg.mul(x, E.lambda, y)) names[y] = "x'_{" + nm;
        }
    }
    for (auto& [k, z] : P.Z) {
        if (k.first != 0 || k.second > N) continue;
        const auto& el = A.elems.at(k);
        for (auto& v : z) {
            PModuleGenerator g;
            g.degree = k.second;
            SparseVec gl;
            for (auto& [j, c] : v) gl[el[j].second] = c;
            if (gl.size() == 1) {
                g.mono = A.M->mono[gl.begin()->first];
                auto it = names.find(g.mono);
                g.label = it != names.end() ? it->second : A.M->label[gl.begin()->first];
            } else {
                g.label = A.M->vec_label(gl);
            }
            g.observed = false;
            for (int j = 1; k.second + 2 * j <= N; ++j) {
                Key t{j, k.second + 2 * j};
                SparseVec w = A.lift(j, gl);
                if (in_span(P.ech(A, P.B, t), w)) {
                    g.torsion = j;
                    g.observed = true;
                    break;
                }
            }
            R.module.gens.push_back(g);
        }
    }
    R.module.N = N;
    R.matches_closed_form = R.einf.dims == closed_form_einf(sched, N);
    return R;
}

}  // namespace

SSRun run_ss(const ExtPage& e2, const DifferentialSchedule& sched, int N, RunOptions opt)
{
    if (!e2.M.multiplicative) throw std::invalid_argument("run_ss needs a multiplicative comodule");
    if (e2.M.top < N + 1) throw std::invalid_argument("comodule truncated below the stem range");
    Ambient A(e2.M, N);
    PageState P;
    for (auto& [k, el] : A.elems) {
        int s = k.first;
        if (s > e2.smax || k.second + s > e2.tmax) throw std::invalid_argument("E2 computed over too small a range");
        P.Z[k];
        if (s >= 1) {
            int d = k.second - 2 * s;
            for (auto& v : e2.image.at(d)) P.B[k].push_back(A.lift(s, v));
        }
    }
    for (auto& c : e2.classes) {
        Key k{c.s, c.t - c.s};
        if (k.second > N + 1) continue;
        P.Z[k].push_back(A.lift(c.s, c.rep));
    }
    for (auto& [k, z] : P.Z) {
        if (P.B.count(k)) z.insert(z.end(), P.B[k].begin(), P.B[k].end());
        z = rref_basis(2, A.len(k), z);
    }
    for (auto& [k, b] : P.B) b = rref_basis(2, A.len(k), b);
    return run_pages(A, P, sched, N, 2, opt, opt.last_n);
}

SSRun run_free(const ExteriorComodule& m, const DifferentialSchedule& sched, int N, RunOptions opt)
{
    Ambient A(m, N);
    PageState P;
    for (auto& [k, el] : A.elems) {
        std::vector<SparseVec> z;
        for (int j = 0; j < (int)el.size(); ++j) z.push_back({{j, 1}});
        P.Z[k] = z;
    }
    int r0 = sched.at(sched.first).r;
    return run_pages(A, P, sched, N, r0, opt, opt.last_n);
}

std::map<Key, long> closed_form_einf(const DifferentialSchedule& sched, int N)
{
    std::map<Key, long> out;
    for (int j = 0; 2 * j <= N; ++j) out[{j, 2 * j}]++;
    for (int n = 1; n < (int)sched.d.size(); ++n) {
        const Differential& D = sched.at(n);
        int s1 = sched.at(n + 1).s;
        for (int j = 0; j < D.r; ++j)
            for (int e = 0; e < 2; ++e)
                for (int m = 0;; ++m) {
                    int st = 2 * j + D.s + e * s1 + (8 << n) * m;
                    if (st > N) break;
                    out[{j, st}]++;
                }
    }
    return out;
}

PModulePresentation closed_form_module(const DifferentialSchedule& sched, int N)
{
    PModulePresentation P;
    P.N = N;
    P.gens.push_back({"1", 0, -1, true, Mono{0, 0, 0}});
    for (int n = 1; n < (int)sched.d.size(); ++n) {
        const Differential& D = sched.at(n);
        const Differential& E = sched.at(n + 1);
        for (int m = 0;; ++m) {
            int deg = D.s + (8 << n) * m;
            if (deg > N) break;
            std::string nm = std::to_string(n) + "," + std::to_string(m) + "}";
            Mono x = D.lambda;
            x[2] += (1 << n) * m;
            P.gens.push_back({"x_{" + nm, deg, D.r, true, x});
            if (deg + E.s <= N) {
                Mono y = x;
                for (int i = 0; i < 3; ++i) y[i] += E.lambda[i];
                P.gens.push_back({"x'_{" + nm, deg + E.s, D.r, true, y});
            }
        }
    }
    std::sort(P.gens.begin(), P.gens.end(),
              [](auto& a, auto& b) { return std::tie(a.degree, a.label) < std::tie(b.degree, b.label); });
    return P;
}

SSRun adams_pipeline(const std::string& target, int N, RunOptions opt)
{
    int smax = (N + 1) / 2;
    int tmax = N + 1 + smax;
    ExteriorComodule M = build_comodule(target, tmax + 3);
    ExtPage e2 = ext_over_exterior(M, smax, tmax);
    return run_ss(e2, schedule(target, 12), N, opt);
}

std::map<int, std::vector<TableEntry>> homotopy_table(const SSRun& run)
{
    std::map<int, std::vector<TableEntry>> out;
    for (int d = 0; d <= run.N; ++d) out[d];
    for (auto& g : run.module.gens)
        for (int j = 0; g.degree + 2 * j <= run.N && (g.torsion < 0 || j < g.torsion); ++j) {
            std::string v = j == 1 ? "v1" : "v1^" + std::to_string(j);
            std::string l = j == 0 ? g.label : g.label == "1" ? v : v + " " + g.label;
            out[g.degree + 2 * j].push_back({l, g.torsion});
        }
    return out;
}

std::map<int, std::vector<TableEntry>> homotopy_table(const std::string& target, int N)
{
    return homotopy_table(adams_pipeline(target, N, {40, false}));
}

std::string chart_text(const std::map<Key, long>& dims, int N)
{
    int smax = 0;
    for (auto& [k, v] : dims)
        if (k.second <= N) smax = std::max(smax, k.first);
    std::ostringstream os;
    for (int s = smax; s >= 0; --s) {
        os << (s < 10 ? " " : "") << s << " |";
        for (int t = 0; t <= N; ++t) {
            auto it = dims.find({s, t});
            long v = it == dims.end() ? 0 : it->second;
            std::string c = v ? std::to_string(v) : ".";
            os << std::string(3 - std::min<size_t>(3, c.size()), ' ') << c;
        }
        os << "\n";
    }
    os << "   +" << std::string(3 * (N + 1), '-') << "\n    ";
    for (int t = 0; t <= N; ++t) {
        std::string c = t % 5 == 0 ? std::to_string(t) : "";
        os << std::string(3 - c.size(), ' ') << c;
    }
    os << "\n";
    return os.str();
}

std::string chart_svg(const SSRun& run)
{
    int N = run.N, smax = 0;
    for (auto& [k, v] : run.einf.dims) smax = std::max(smax, k.first);
    const int u = 16, m = 24;
    int W = 2 * m + u * N, H = 2 * m + u * smax;
    auto X = [&](int t, int i) { return m + u * t + 4 * i; };
    auto Y = [&](int s) { return H - m - u * s; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<line x1=\"" << m << "\" y1=\"" << Y(0) << "\" x2=\"" << W - m << "\" y2=\"" << Y(0)
       << "\" stroke=\"#999\"/>\n";
    for (int t = 0; t <= N; t += 4)
        os << "<text x=\"" << X(t, 0) - 3 << "\" y=\"" << H - 6 << "\" font-size=\"9\">" << t << "</text>\n";
    for (auto& [k, r] : run.v1_rank)
        for (int i = 0; i < r; ++i)
            os << "<line x1=\"" << X(k.second, i) << "\" y1=\"" << Y(k.first) << "\" x2=\"" << X(k.second + 2, i)
               << "\" y2=\"" << Y(k.first + 1) << "\" stroke=\"black\"/>\n";
    for (auto& [k, v] : run.einf.dims)
        for (int i = 0; i < v; ++i)
            os << "<circle cx=\"" << X(k.second, i) << "\" cy=\"" << Y(k.first) << "\" r=\"2.5\"/>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace thh
