#include "thh/bokstedt.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "thh/hochschild.hpp"

namespace thh {

namespace {

long ipow(long b, int e)
{
    long r = 1;
    while (e--) r *= b;
    return r;
}

std::string xib(int k, int e = 1)
{
    return "xib" + std::to_string(k) + (e > 1 ? "^" + std::to_string(e) : "");
}
std::string taub(int k) { return "taub" + std::to_string(k); }

GeneratorSpec G(const std::string& name, int deg, Kind k)
{
    GeneratorSpec g;
    g.name = name;
    g.degree = deg;
    g.kind = k;
    return g;
}

GeneratorSpec S(const std::string& x, int deg, Kind k)
{
    GeneratorSpec g = G(sigma_name(x), deg, k);
    g.filtration = 1;
    return g;
}

int xi_deg(int p, int k) { return p == 2 ? int(ipow(2, k) - 1) : int(2 * (ipow(p, k) - 1)); }
int tau_deg(int p, int k) { return int(2 * ipow(p, k) - 1); }

/* pres with the divided power bookkeeping of like, from already expanded generators */
AlgebraPresentation rebuild(const AlgebraPresentation& like, const std::vector<GeneratorSpec>& gens, int N = -1)
{
    AlgebraPresentation A(like.p, gens, N < 0 ? like.N : N);
    A.dp_names = like.dp_names;
    A.dp_degree = like.dp_degree;
    A.dp_filtration = like.dp_filtration;
    return A;
}

/* quotient of the dual Steenrod algebra given by exponent steps on xi-bar_k and a set of allowed tau-bar_k */
struct Shape {
    std::function<int(int)> step; /* k >= 1 */
    int tau_from = 0;             /* odd p: tau-bar_k for k >= tau_from */
};

void fill_dual_type(SpectrumEntry& e, const Shape& sh, const std::vector<GeneratorSpec>& extra = {})
{
    int p = e.p, N = e.N;
    const DualSteenrod& D = dual_steenrod(p, std::max(N, 1));
    std::vector<GeneratorSpec> gens;
    std::vector<Mono> dmono;
    std::map<int, std::pair<int, int>> of; /* D generator -> (H generator, step) */
    for (int k = 1; xi_deg(p, k) <= N; ++k) {
        int st = sh.step(k);
        if ((long)st * xi_deg(p, k) > N) continue;
        of[D.xi(k)] = {(int)gens.size(), st};
        gens.push_back(G(xib(k, st), st * xi_deg(p, k), Kind::Polynomial));
        Mono m = D.alg.unit();
        m[D.xi(k)] = st;
        dmono.push_back(m);
    }
    if (p != 2)
        for (int k = sh.tau_from; k < 32 && tau_deg(p, k) <= N; ++k) {
            of[D.tau(k)] = {(int)gens.size(), 1};
            gens.push_back(G(taub(k), tau_deg(p, k), Kind::Exterior));
            Mono m = D.alg.unit();
            m[D.tau(k)] = 1;
            dmono.push_back(m);
        }
    int nd = (int)gens.size();
    for (auto& g : extra) gens.push_back(g);
    e.H = AlgebraPresentation(p, gens, N);
    e.nu = CoactionTable(D.alg, e.H.ngens());
    for (int g = 0; g < nd; ++g) {
        Lin<Mono2> v;
        for (auto& [lr, c] : D.coproduct(dmono[g], true)) {
            Mono h = e.H.unit();
            for (int i = 0; i < (int)lr.second.size(); ++i) {
                if (!lr.second[i]) continue;
                auto it = of.find(i);
                if (it == of.end() || lr.second[i] % it->second.second)
                    throw std::logic_error("coaction leaves the sub-comodule at " + gens[g].name);
                h[it->second.first] = lr.second[i] / it->second.second;
            }
            addto(v, Mono2{lr.first, h}, c, p);
        }
        e.nu.set(g, v);
    }
    /* Dyer-Lashof rules on the generators */
    int K = 1;
    while (xi_deg(p, K) <= N) ++K;
    for (int k = 1; k <= K + 1; ++k) {
        int st = sh.step(k);
        if (p == 2) {
            if (st == 1) e.dl.top[xib(k)] = {int(ipow(2, k)), xib(k + 1)};
            else e.dl.squares.insert(xib(k, st));
        }
    }
    if (p != 2)
        for (int k = 0; k <= K + 1; ++k) {
            e.dl.top[taub(k)] = {int(ipow(p, k)), taub(k + 1)};
            e.dl.bockstein[taub(k + 1)] = xib(k + 1);
        }
    e.dl.p = p;
}

void primitive_gens(SpectrumEntry& e, const std::vector<std::string>& names)
{
    const DualSteenrod& D = dual_steenrod(e.p, std::max(e.N, 1));
    for (auto& n : names) {
        int g = e.H.index_or(n);
        if (g < 0) continue;
        e.nu.set(g, Lin<Mono2>{{Mono2{D.alg.unit(), e.H.gen(g)}, 1}});
    }
}

void add_abut(SpectrumEntry& e, const std::string& x, int xdeg, Kind k)
{
    if (xdeg + 1 <= e.N) e.abutment.push_back(S(x, xdeg + 1, k));
}

constexpr int INF_M = 1000;

void bp_type(SpectrumEntry& e, int m)
{
    int p = e.p;
    Shape sh;
    if (p == 2) sh.step = [m](int k) { return k <= m ? 2 : 1; };
    else sh.step = [](int) { return 1; };
    sh.tau_from = m;
    fill_dual_type(e, sh);
    if (p == 2) {
        for (int k = 1; k <= m && xi_deg(2, k) * 2 <= e.N; ++k) add_abut(e, xib(k, 2), 2 * xi_deg(2, k), Kind::Exterior);
        if (m < INF_M) add_abut(e, xib(m + 1), xi_deg(2, m + 1), Kind::Polynomial);
    }
    else {
        for (int k = 1; k <= m && xi_deg(p, k) <= e.N; ++k) add_abut(e, xib(k), xi_deg(p, k), Kind::Exterior);
        if (m < INF_M) add_abut(e, taub(m), tau_deg(p, m), Kind::Polynomial);
    }
}

void ko_type(SpectrumEntry& e, int n)
{
    /* (A//A_n)_* at p = 2 */
    Shape sh;
    sh.step = [n](int k) { return k <= n + 1 ? int(ipow(2, n + 2 - k)) : 1; };
    fill_dual_type(e, sh);
    for (int k = 1; k <= n + 1; ++k) {
        int st = int(ipow(2, n + 2 - k));
        add_abut(e, xib(k, st), st * xi_deg(2, k), Kind::Exterior);
    }
    add_abut(e, xib(n + 2), xi_deg(2, n + 2), Kind::Polynomial);
}

void ju_odd(SpectrumEntry& e)
{
    int p = e.p, N = e.N, q = 2 * (p - 1);
    const DualSteenrod& D = dual_steenrod(p, std::max(N, 1));
    std::string x1 = "xit1^" + std::to_string(p);
    auto xit = [](int k) { return "xit" + std::to_string(k); };
    auto taut = [](int k) { return "taut" + std::to_string(k); };
    std::vector<GeneratorSpec> gens;
    auto add = [&](const std::string& n, int d, Kind k) {
        if (d <= N) gens.push_back(G(n, d, k));
    };
    add("b", p * q - 1, Kind::Exterior);
    add(x1, p * q, Kind::Polynomial);
    for (int k = 2; xi_deg(p, k) <= N; ++k) add(xit(k), xi_deg(p, k), Kind::Polynomial);
    for (int k = 2; tau_deg(p, k) <= N; ++k) add(taut(k), tau_deg(p, k), Kind::Exterior);
    e.H = AlgebraPresentation(p, gens, N);
    e.nu = CoactionTable(D.alg, e.H.ngens());
    auto L = [&](const std::string& s) { return D.parse(s, true); };
    auto set = [&](const std::string& g, const std::vector<std::tuple<int, std::string, std::string>>& terms) {
        int gi = e.H.index_or(g);
        if (gi < 0) return;
        Lin<Mono2> v;
        for (auto& [c, l, r] : terms) {
            Mono rm = e.H.unit();
            if (r != "1") {
                int ri = e.H.index_or(r);
                if (ri < 0) continue;
                rm[ri] = 1;
            }
            for (auto& [lm, lc] : L(l)) addto(v, Mono2{lm, rm}, (long)c * lc, p);
        }
        e.nu.set(gi, v);
    };
    set("b", {{1, "1", "b"}});
    set(x1, {{1, "1", x1}, {-1, "tau0", "b"}, {1, "xib1^" + std::to_string(p), "1"}});
    set(xit(2), {{1, "1", xit(2)}, {1, "xib1", x1}, {1, "tau1", "b"}, {1, "xib2", "1"}});
    set(taut(2), {{1, "1", taut(2)}, {1, "taub0", xit(2)}, {1, "taub1", x1}, {-1, "tau0 tau1", "b"}, {1, "taub2", "1"}});
    e.dl.p = p;
    e.dl.top["b"] = {p * q / 2, ""};
    for (int k = 2; k <= 8; ++k) {
        e.dl.top[taut(k)] = {int(ipow(p, k)), taut(k + 1)};
        e.dl.bockstein[taut(k + 1)] = xit(k + 1);
    }
    add_abut(e, x1, p * q, Kind::Exterior);
    add_abut(e, xit(2), xi_deg(p, 2), Kind::Exterior);
    add_abut(e, taut(2), tau_deg(p, 2), Kind::Polynomial);
    add_abut(e, "b", p * q - 1, Kind::DividedPower);
    e.gamma_exterior.insert("b");
}

std::vector<int> sigma7_k_degrees()
{
    auto A2 = SubalgebraSpec::A_n(2);
    auto M1 = quotient_module(A2, {parse_steenrod("Sq1"), parse_steenrod("Sq2Sq3")});
    auto M2 = quotient_module(A2, {parse_steenrod("Sq1"), parse_steenrod("Sq2")});
    auto K = module_map_kernel(parse_steenrod("Sq4"), M1, 4, M2);
    std::vector<int> out;
    for (auto& [d, deg] : K.kernel.degs)
        for (size_t i = 0; i < deg.reps.size(); ++i) out.push_back(d + 3); /* Sigma^4 K sits in A-degree d */
    return out;
}

}  // namespace

/* ---- DL lookup ---- */

DLLookup dl_lookup(const DLTable& t, const std::string& x, int degree, int k)
{
    if (t.p == 2) {
        if (k < degree) return {};
        if (k == degree) return {false, "(" + x + ")^2"};
    }
    else {
        if (2 * k < degree) return {};
        if (2 * k == degree) return {false, "(" + x + ")^" + std::to_string(t.p)};
    }
    auto it = t.top.find(x);
    if (it != t.top.end() && it->second.k == k) {
        if (it->second.result.empty()) return {};
        return {false, it->second.result};
    }
    if (t.p == 2 && (k & 1) && t.squares.count(x)) return {};
    throw std::runtime_error("no Dyer-Lashof rule for Q^" + std::to_string(k) + "(" + x + ")");
}

/* ---- catalog ---- */

std::vector<std::string> catalog_names()
{
    return {"HF", "HZ", "ku", "ko", "tmf", "ell", "BP<0>", "BP<1>", "BP<2>", "BP<3>", "BP", "ju", "j"};
}

bool catalog_has(const std::string& name, int p)
{
    if (!is_prime(p)) return false;
    if (name == "ku" || name == "ko" || name == "tmf" || name == "j") return p == 2;
    if (name == "ell" || name == "l") return p != 2;
    auto names = catalog_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

SpectrumEntry catalog_entry(const std::string& name0, int p, int N)
{
    std::string name = name0 == "l" ? "ell" : name0;
    if (!catalog_has(name, p)) throw std::invalid_argument("no catalog entry " + name0 + " at p = " + std::to_string(p));
    if (N < 1) throw std::invalid_argument("degree bound must be positive");
    SpectrumEntry e;
    e.name = name;
    e.p = p;
    e.N = N;
    e.structure = "E_infinity";
    e.dl.p = p;
    if (name == "HF") bp_type(e, 0);
    else if (name == "HZ") bp_type(e, 1);
    else if (name == "ku" || name == "ell") bp_type(e, 2);
    else if (name == "BP") {
        bp_type(e, INF_M);
        e.structure = "E_4";
    }
    else if (name.rfind("BP<", 0) == 0) {
        int n = std::stoi(name.substr(3));
        if (n < 0 || n > 3) throw std::invalid_argument("BP<n> is catalogued for n <= 3");
        bp_type(e, n + 1);
        if (n >= 2) e.structure = "E_3 assumed";
    }
    else if (name == "ko") ko_type(e, 1);
    else if (name == "tmf") ko_type(e, 2);
    else if (name == "ju" && p == 2) {
        Shape sh;
        sh.step = [](int k) { return k == 1 ? 4 : k == 2 ? 2 : 1; };
        std::vector<GeneratorSpec> extra;
        if (3 <= N) extra.push_back(G("b", 3, Kind::Exterior));
        fill_dual_type(e, sh, extra);
        primitive_gens(e, {"b"});
        /* H_*(ju) does not embed in A_*, so these are not Cartan consequences */
        e.dl.squares.clear();
        e.dl.top["b"] = {4, ""};
        e.dl.top[xib(1, 4)] = {5, ""};
        e.dl.top[xib(2, 2)] = {7, ""};
        add_abut(e, xib(1, 4), 4, Kind::Exterior);
        add_abut(e, xib(2, 2), 6, Kind::Exterior);
        add_abut(e, xib(3), 7, Kind::Polynomial);
        add_abut(e, "b", 3, Kind::DividedPower);
        e.gamma_exterior.insert("b");
    }
    else if (name == "ju") ju_odd(e);
    else if (name == "j") {
        e.flat = false;
        SpectrumEntry a2 = catalog_entry("tmf", 2, N);
        e.Hflat = a2.H;
        e.H = a2.H;
        e.nu = a2.nu;
        e.dl = a2.dl;
        e.square_zero_degrees = sigma7_k_degrees();
    }
    return e;
}

/* ---- pages ---- */

bool SSPage::trivial() const
{
    for (auto& x : d)
        if (!x.empty()) return false;
    return true;
}

std::map<std::pair<int, int>, long> SSPage::bigraded() const
{
    if (flat && recognized) return alg.bigraded(alg.N);
    return dims;
}

Lin<Mono> page_d(const SSPage& E, const Mono& m)
{
    const auto& A = E.alg;
    int p = A.p;
    Lin<Mono> out;
    Mono prefix = A.unit();
    int prefdeg = 0;
    for (int i = 0; i < A.ngens(); ++i) {
        if (!m[i]) continue;
        if (!E.d[i].empty()) {
            Mono rest = m;
            for (int j = 0; j <= i; ++j) rest[j] = 0;
            Mono head = prefix;
            head[i] = m[i] - 1;
            long coef = m[i];
            if (p != 2 && (prefdeg & 1)) coef = -coef;
            Mono a, b;
            for (auto& [t, c] : E.d[i]) {
                int s1 = A.mul(head, t, a);
                if (!s1) continue;
                int s2 = A.mul(a, rest, b);
                if (!s2) continue;
                addto(out, b, coef * c * s1 * s2, p);
            }
        }
        prefix[i] = m[i];
        prefdeg += m[i] * A.gens[i].degree;
    }
    return out;
}

Lin<Mono> page_d(const SSPage& E, const Lin<Mono>& x)
{
    Lin<Mono> out;
    for (auto& [m, c] : x) addto(out, page_d(E, m), c, E.alg.p);
    return out;
}

bool check_d_squared(const SSPage& E, int upto)
{
    for (int t = 0; t <= std::min(upto, E.alg.N); ++t)
        for (auto& m : E.alg.basis(t)) {
            auto dm = page_d(E, m);
            for (auto& [x, c] : dm)
                if (E.alg.filtration(x) != E.alg.filtration(m) - E.r || E.alg.degree(x) != t - 1) return false;
            if (!page_d(E, dm).empty()) return false;
        }
    return true;
}

bool check_leibniz(const SSPage& E, int upto)
{
    const auto& A = E.alg;
    int p = A.p;
    upto = std::min(upto, A.N);
    for (int s = 0; s <= upto; ++s)
        for (int t = 0; s + t <= upto; ++t)
            for (auto& a : A.basis(s))
                for (auto& b : A.basis(t)) {
                    Lin<Mono> la{{a, 1}}, lb{{b, 1}};
                    auto ab = A.mul(la, lb);
                    auto lhs = page_d(E, ab);
                    auto rhs = A.mul(page_d(E, a), lb);
                    addto(rhs, A.mul(la, page_d(E, b)), (p != 2 && (s & 1)) ? -1 : 1, p);
                    if (lhs != rhs) return false;
                }
    return true;
}

/* ---- E2 ---- */

namespace {

using Bi = std::map<std::pair<int, int>, long>;

Bi kunneth(const Bi& a, const Bi& b, int N)
{
    Bi out;
    for (auto& [ka, va] : a)
        for (auto& [kb, vb] : b) {
            int t = ka.second + kb.second;
            if (t > N || !va || !vb) continue;
            out[{ka.first + kb.first, t}] += va * vb;
        }
    return out;
}

}  // namespace

SSPage build_e2(const SpectrumEntry& s)
{
    SSPage E;
    E.r = 2;
    if (!s.flat) {
        E.flat = false;
        E.recognized = false;
        E.alg = closed_form_hh(s.Hflat);
        E.d.assign(E.alg.ngens(), {});
        Bi sq;
        for (auto& [k, v] : hh_squarezero(s.p, s.square_zero_degrees, s.N, s.N))
            if (k.first + k.second <= s.N) sq[{k.first, k.first + k.second}] += v;
        E.dims = kunneth(E.alg.bigraded(s.N), sq, s.N);
        E.notes.push_back("non-flat: E2 is not free over H_*(R); dims via Kunneth with the square-zero factor");
        return E;
    }
    E.alg = closed_form_hh(s.H);
    E.d.assign(E.alg.ngens(), {});
    return E;
}

E2Check e2_crosscheck(const SpectrumEntry& s, int tmax, long budget)
{
    E2Check r;
    int t = std::min(s.N, tmax);
    HHOptions o;
    o.partial = true;
    o.max_cells = budget;
    Bi expect, got;
    if (!s.flat) {
        auto V = square_zero_algebra(s.p, s.square_zero_degrees, t);
        auto hh = hh_homology(V, t, t, o);
        r.reached = hh.N;
        for (auto& [k, v] : hh_squarezero(s.p, s.square_zero_degrees, t, hh.N))
            if (v) expect[k] = v;
        for (auto& [k, v] : hh.dims)
            if (v) got[k] = v;
        r.match = expect == got;
        return r;
    }
    std::vector<GeneratorSpec> small;
    for (auto& g : s.H.gens)
        if (g.degree <= t) small.push_back(g);
    AlgebraPresentation H(s.p, small, t);
    auto hh = hh_homology(H, t, t, o);
    r.reached = hh.N;
    AlgebraPresentation wide(s.p, small, 2 * t + 2);
    for (auto& [k, v] : closed_form_hh(wide).bigraded(2 * t + 2)) {
        int q = k.first, tt = k.second - k.first;
        if (v && q <= t && tt <= hh.N) expect[{q, tt}] += v;
    }
    for (auto& [k, v] : hh.dims)
        if (v) got[k] = v;
    r.match = expect == got;
    return r;
}

/* ---- differentials ---- */

SSPage apply_d_pminus1(const SSPage& E0, const SpectrumEntry& s)
{
    int p = s.p;
    if (p == 2 || !E0.flat) return E0;
    SSPage E = E0;
    E.r = p - 1;
    const auto& A = E.alg;
    for (int f = 0; f < (int)A.dp_names.size(); ++f) {
        std::string sx = A.dp_names[f];
        std::string x = sx.substr(1);
        int xd = A.dp_degree[f] - 1;
        int tg = -1;
        bool zero = false;
        bool needed = false;
        for (auto& g : A.gens)
            if (g.dp_family == f && g.dp_index >= 1) needed = true;
        if (!needed) continue;
        auto q = dl_lookup(s.dl, x, xd, (xd + 1) / 2);
        if (q.zero) zero = true;
        else {
            auto b = s.dl.bockstein.find(q.name);
            if (b == s.dl.bockstein.end()) throw std::runtime_error("no Bockstein rule for " + q.name);
            tg = A.index_or(sigma_name(b->second));
            if (tg < 0) throw std::runtime_error("target " + sigma_name(b->second) + " missing from the page");
        }
        for (int i = 0; i < A.ngens(); ++i) {
            auto& g = A.gens[i];
            if (g.dp_family != f || g.dp_index < 1 || zero) continue;
            long j = ipow(p, g.dp_index) - p;
            auto [c, mono] = A.gamma(f, j);
            if (!c) continue;
            mono[tg] += 1;
            E.d[i] = Lin<Mono>{};
            addto(E.d[i], mono, c, p);
        }
    }
    return E;
}

namespace {

Bi homology_bigraded(const SSPage& E)
{
    const auto& A = E.alg;
    int p = A.p;
    Bi out;
    std::map<std::pair<int, int>, std::vector<int>> cells; /* (s, t) -> basis positions in A.basis(t) */
    for (int t = 0; t <= A.N; ++t) {
        const auto& B = A.basis(t);
        for (int j = 0; j < (int)B.size(); ++j) cells[{A.filtration(B[j]), t}].push_back(j);
    }
    std::map<std::pair<int, int>, int> rk; /* rank of d out of (s, t) */
    for (auto& [st, pos] : cells) {
        auto [s, t] = st;
        if (t == 0) continue;
        auto tgt = cells.find({s - E.r, t - 1});
        if (tgt == cells.end()) continue;
        const auto& B = A.basis(t);
        const auto& Bt = A.basis(t - 1);
        std::map<Mono, int> idx;
        for (int k = 0; k < (int)tgt->second.size(); ++k) idx[Bt[tgt->second[k]]] = k;
        SparseMat M(p, (int)tgt->second.size(), (int)pos.size());
        for (int j = 0; j < (int)pos.size(); ++j)
            for (auto& [x, c] : page_d(E, B[pos[j]])) M.add(idx.at(x), j, c);
        rk[st] = rank(M);
    }
    for (auto& [st, pos] : cells) {
        auto [s, t] = st;
        long h = (long)pos.size();
        if (rk.count(st)) h -= rk[st];
        auto in = rk.find({s + E.r, t + 1});
        if (in != rk.end()) h -= in->second;
        if (h) out[st] = h;
    }
    return out;
}

}  // namespace

std::map<std::pair<int, int>, long> raw_page_homology(const SSPage& E) { return homology_bigraded(E); }

SSPage page_homology(const SSPage& E)
{
    if (!E.flat) throw std::runtime_error("page homology needs a flat page");
    SSPage out = E;
    out.r = E.r + 1;
    if (E.trivial()) return out;
    const auto& A = E.alg;
    int n = A.ngens();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<bool> active(n, false);
    for (int i = 0; i < n; ++i)
        for (auto& [m, c] : E.d[i]) {
            active[i] = true;
            for (int j = 0; j < n; ++j)
                if (m[j]) {
                    active[j] = true;
                    parent[find(j)] = find(i);
                }
        }
    /* whole divided power families join their component */
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (active[i] && A.gens[i].dp_family >= 0 && A.gens[j].dp_family == A.gens[i].dp_family) {
                active[j] = true;
                parent[find(j)] = find(i);
            }
    std::map<int, std::vector<int>> comps;
    for (int i = 0; i < n; ++i)
        if (active[i]) comps[find(i)].push_back(i);

    std::vector<bool> keep(n, true);
    std::map<int, GeneratorSpec> replaced;
    Bi rest_fallback;
    std::vector<Bi> comp_homology;
    bool all_ok = true;
    for (auto& [root, members] : comps) {
        std::vector<GeneratorSpec> sub;
        std::map<int, int> loc;
        for (int i : members) {
            loc[i] = (int)sub.size();
            sub.push_back(A.gens[i]);
        }
        SSPage C;
        C.alg = rebuild(A, sub);
        C.r = E.r;
        C.d.assign(sub.size(), {});
        for (int i : members)
            for (auto& [m, c] : E.d[i]) {
                Mono lm = C.alg.unit();
                for (int j = 0; j < n; ++j)
                    if (m[j]) lm[loc.at(j)] = m[j];
                addto(C.d[loc[i]], lm, c, A.p);
            }
        Bi h = homology_bigraded(C);
        comp_homology.push_back(h);

        /* candidate: drop sources and targets, the bottom of each truncated family becomes P_p */
        std::set<int> targets;
        for (int i : members)
            for (auto& [m, c] : E.d[i])
                for (int j = 0; j < n; ++j)
                    if (m[j] && A.gens[j].dp_family < 0) targets.insert(j);
        std::vector<GeneratorSpec> cand;
        std::map<int, GeneratorSpec> rep;
        for (int i : members) {
            auto g = A.gens[i];
            if (!E.d[i].empty() || targets.count(i)) continue;
            if (g.dp_family >= 0 && g.dp_index > 0) continue;
            if (g.dp_family >= 0) {
                g.dp_family = -1;
                g.kind = Kind::Truncated;
                g.height = A.p;
            }
            rep[i] = g;
            cand.push_back(g);
        }
        AlgebraPresentation CA(A.p, cand, A.N);
        Bi want;
        for (auto& [k, v] : CA.bigraded(A.N))
            if (v) want[k] = v;
        if (want == h) {
            for (int i : members) keep[i] = false;
            for (auto& [i, g] : rep) {
                keep[i] = true;
                replaced[i] = g;
            }
        }
        else all_ok = false;
    }
    std::vector<GeneratorSpec> gens;
    std::vector<GeneratorSpec> restg;
    for (int i = 0; i < n; ++i) {
        if (!active[i]) restg.push_back(A.gens[i]);
        if (!keep[i]) continue;
        gens.push_back(replaced.count(i) ? replaced[i] : A.gens[i]);
    }
    if (all_ok) {
        out.alg = rebuild(A, gens);
        out.d.assign(out.alg.ngens(), {});
        out.recognized = true;
        out.dims.clear();
        return out;
    }
    out.recognized = false;
    out.d.assign(out.alg.ngens(), {});
    Bi acc = rebuild(A, restg).bigraded(A.N);
    for (auto& h : comp_homology) acc = kunneth(acc, h, A.N);
    out.dims.clear();
    for (auto& [k, v] : acc)
        if (v) out.dims[k] = v;
    out.notes.push_back("page homology not recognised; raw dims only");
    return out;
}

bool collapse_check(const SSPage& E)
{
    for (auto& g : E.alg.gens)
        if (g.filtration > 1) return false;
    return true;
}

/* ---- coactions ---- */

namespace {

/* sigma as a derivation killing p-th powers, from H into T.  base[i] is the T-generator of H-generator i,
 * sig[i] the sigma-class of H-generator i (empty when it vanishes). */
Lin<Mono> apply_sigma(const AlgebraPresentation& H, const AlgebraPresentation& T, const std::vector<int>& base,
                      const std::vector<Lin<Mono>>& sig, const Mono& r)
{
    int p = H.p;
    Lin<Mono> out;
    int prefdeg = 0;
    for (int i = 0; i < H.ngens(); ++i) {
        if (!r[i]) continue;
        long e = r[i] % p;
        if (e && !sig[i].empty()) {
            Mono left = T.unit(), right = T.unit();
            for (int j = 0; j < H.ngens(); ++j) {
                int ex = j == i ? r[j] - 1 : r[j];
                if (!ex) continue;
                if (base[j] < 0) throw std::runtime_error("H generator missing from the page: " + H.gens[j].name);
                (j <= i ? left : right)[base[j]] += ex;
            }
            long coef = e;
            if (p != 2 && (prefdeg & 1)) coef = -coef;
            Mono a, b;
            for (auto& [sm, sc] : sig[i]) {
                int s1 = T.mul(left, sm, a);
                if (!s1) continue;
                int s2 = T.mul(a, right, b);
                if (!s2) continue;
                addto(out, b, coef * sc * s1 * s2, p);
            }
        }
        prefdeg += r[i] * H.gens[i].degree;
    }
    return out;
}

struct SigmaMaps {
    std::vector<int> base;
    std::vector<Lin<Mono>> sig;
};

SigmaMaps sigma_maps(const SpectrumEntry& s, const AlgebraPresentation& T,
                     const std::map<std::string, Lin<Mono>>* over = nullptr)
{
    SigmaMaps m;
    for (auto& g : s.H.gens) {
        m.base.push_back(T.index_or(g.name));
        Lin<Mono> v;
        if (over) {
            auto it = over->find(g.name);
            if (it != over->end()) v = it->second;
        }
        else {
            int k = T.index_or(sigma_name(g.name));
            if (k >= 0) v[T.gen(k)] = 1;
        }
        m.sig.push_back(v);
    }
    return m;
}

Lin<Mono2> map_right(const SpectrumEntry& s, const AlgebraPresentation& T, const std::vector<int>& base,
                     const Lin<Mono2>& v)
{
    Lin<Mono2> out;
    for (auto& [lr, c] : v) {
        Mono r = T.unit();
        for (int j = 0; j < s.H.ngens(); ++j)
            if (lr.second[j]) {
                if (base[j] < 0) throw std::runtime_error("H generator missing: " + s.H.gens[j].name);
                r[base[j]] = lr.second[j];
            }
        addto(out, Mono2{lr.first, r}, c, s.p);
    }
    return out;
}

CoactionTable coaction_on(const SpectrumEntry& s, const AlgebraPresentation& T, const SigmaMaps& sm)
{
    CoactionTable c(*s.nu.coeff, T.ngens());
    const auto& coeff = *s.nu.coeff;
    for (int g = 0; g < T.ngens(); ++g) {
        auto& gs = T.gens[g];
        int h = s.H.index_or(gs.name);
        if (gs.base && h >= 0) {
            if (s.nu.known[h]) c.set(g, map_right(s, T, sm.base, s.nu.gen[h]));
            continue;
        }
        if (gs.dp_family >= 0 && gs.dp_index > 0) continue;
        if (gs.name.size() < 2 || gs.name[0] != 's') continue;
        int x = s.H.index_or(gs.name.substr(1));
        if (x < 0 || !s.nu.known[x]) continue;
        Lin<Mono2> v;
        for (auto& [lr, k] : s.nu.gen[x])
            for (auto& [m, kk] : apply_sigma(s.H, T, sm.base, sm.sig, lr.second))
                addto(v, Mono2{lr.first, m}, (long)k * kk, s.p);
        c.set(g, v);
    }
    /* higher divided powers of a comodule primitive are primitive */
    for (int g = 0; g < T.ngens(); ++g) {
        auto& gs = T.gens[g];
        if (gs.dp_family < 0 || gs.dp_index == 0) continue;
        for (int b = 0; b < T.ngens(); ++b) {
            if (T.gens[b].dp_family != gs.dp_family || T.gens[b].dp_index != 0 || !c.known[b]) continue;
            Lin<Mono2> prim{{Mono2{coeff.unit(), T.gen(b)}, 1}};
            if (c.gen[b] == prim) c.set(g, Lin<Mono2>{{Mono2{coeff.unit(), T.gen(g)}, 1}});
        }
    }
    return c;
}

}  // namespace

CoactionTable page_coaction(const SSPage& E, const SpectrumEntry& s)
{
    return coaction_on(s, E.alg, sigma_maps(s, E.alg));
}

std::map<std::pair<int, int>, long> simultaneous_primitives(const SSPage& E, const CoactionTable& c, int degree,
                                                           int smax)
{
    const auto& A = E.alg;
    int p = A.p;
    std::map<std::pair<int, int>, long> out;
    if (degree < 0 || degree > A.N) return out;
    HopfData h(A);
    const auto& B = A.basis(degree);
    for (int s = 1; s <= smax; ++s) {
        std::vector<int> cols;
        for (int j = 0; j < (int)B.size(); ++j)
            if (A.filtration(B[j]) == s) cols.push_back(j);
        if (cols.empty()) continue;
        std::map<Mono2, int> idx;
        std::vector<Lin<Mono2>> red;
        for (int j : cols) red.push_back(h.reduced(B[j]));
        for (auto& r : red)
            for (auto& [k, v] : r) idx.try_emplace(k, (int)idx.size());
        SparseMat M(p, (int)idx.size(), (int)cols.size());
        for (int j = 0; j < (int)cols.size(); ++j)
            for (auto& [k, v] : red[j]) M.add(idx[k], j, v);
        auto prims = kernel_basis(M);
        if (prims.empty()) continue;
        std::vector<Lin<Mono2>> img;
        std::map<Mono2, int> idx2;
        for (auto& v : prims) {
            Lin<Mono2> nu;
            for (auto& [j, k] : v) {
                auto x = coaction(A, c, B[cols[j]]);
                addto(x, Mono2{c.coeff->unit(), B[cols[j]]}, -1, p);
                addto(nu, x, k, p);
            }
            img.push_back(nu);
            for (auto& [k, vv] : nu) idx2.try_emplace(k, (int)idx2.size());
        }
        SparseMat M2(p, (int)idx2.size(), (int)prims.size());
        for (int j = 0; j < (int)prims.size(); ++j)
            for (auto& [k, v] : img[j]) M2.add(idx2[k], j, v);
        long dim = (long)prims.size() - rank(M2);
        if (dim) out[{s, degree}] = dim;
    }
    return out;
}

std::vector<Candidate> obstruction_scan(const SSPage& E, const CoactionTable& c)
{
    if (!E.flat) throw std::runtime_error("obstruction scan needs a page flat over the base");
    std::vector<Candidate> out;
    for (auto& g : E.alg.gens) {
        if (g.base || g.filtration < E.r + 1) continue;
        for (auto& [k, dim] : simultaneous_primitives(E, c, g.degree - 1, g.filtration - E.r))
            out.push_back({g.name, g.filtration, g.degree, k.first, g.filtration - k.first, dim});
    }
    return out;
}

/* ---- extensions ---- */

Abutment resolve_extensions(const SSPage& E, const SpectrumEntry& s)
{
    if (!E.flat || !E.recognized) throw std::runtime_error("extensions need a free E-infinity page");
    if (!E.trivial()) throw std::runtime_error("page still carries a differential");
    const auto& A = E.alg;
    int p = A.p;
    std::map<int, int> family_top;
    for (auto& g : A.gens)
        if (g.dp_family >= 0) family_top[g.dp_family] = std::max(family_top[g.dp_family], g.dp_index);

    struct Sig {
        int gi;
        std::string x;
        std::string next; /* empty: no extension */
    };
    std::map<std::string, Sig> sig; /* by H name */
    std::vector<GeneratorSpec> gens;
    std::map<int, int> newidx;
    for (int i = 0; i < A.ngens(); ++i) {
        auto& g = A.gens[i];
        if (g.base) continue;
        std::string x = g.name.size() > 1 ? g.name.substr(1) : "";
        if (g.dp_family >= 0 && family_top[g.dp_family] > 0) {
            std::string fx = A.dp_names[g.dp_family].substr(1);
            if (!s.gamma_exterior.count(fx))
                throw std::runtime_error("no extension rule for divided powers on " + A.dp_names[g.dp_family]);
            continue;
        }
        int xi = s.H.index_or(x);
        if (xi < 0) throw std::runtime_error("unexpected generator " + g.name);
        int xd = s.H.gens[xi].degree;
        Sig e{i, x, ""};
        bool even = p == 2 || !((xd + 1) & 1);
        if (even) {
            int k = p == 2 ? xd + 1 : (xd + 1) / 2;
            auto q = dl_lookup(s.dl, x, xd, k);
            if (!q.zero) e.next = q.name;
        }
        sig[x] = e;
    }
    std::set<std::string> is_next;
    for (auto& [x, e] : sig)
        if (!e.next.empty() && sig.count(e.next)) is_next.insert(e.next);

    Abutment ab;
    std::map<std::string, std::pair<std::string, long>> power; /* x -> (head x, exponent) */
    for (auto& [x, e] : sig) {
        if (is_next.count(x)) continue;
        long ex = 1;
        power[x] = {x, 1};
        std::string y = e.next;
        int hd = A.gens[e.gi].degree;
        while (!y.empty() && sig.count(y)) {
            ex *= p;
            if (A.gens[sig[y].gi].degree != ex * hd) throw std::runtime_error("degree mismatch in extension " + y);
            power[y] = {x, ex};
            ab.merged.push_back(sigma_name(y) + " = " + sigma_name(x) + "^" + std::to_string(ex));
            y = sig[y].next;
        }
    }
    for (int i = 0; i < A.ngens(); ++i) {
        auto g = A.gens[i];
        if (!g.base && !(g.dp_family >= 0 && family_top[g.dp_family] > 0)) {
            std::string x = g.name.substr(1);
            if (power[x].first != x) continue;
            if (!sig[x].next.empty()) {
                g.kind = Kind::Polynomial;
                g.height = 0;
            }
            else if (g.dp_family >= 0) {
                g.kind = Kind::Truncated;
                g.height = p;
            }
            g.dp_family = -1;
            g.dp_index = 0;
        }
        newidx[i] = (int)gens.size();
        gens.push_back(g);
    }
    ab.alg = rebuild(A, gens);
    for (auto& g : s.H.gens) {
        Lin<Mono> v;
        auto it = power.find(g.name);
        if (it != power.end()) {
            Mono m = ab.alg.unit();
            m[ab.alg.index(sigma_name(it->second.first))] = (int)it->second.second;
            v[m] = 1;
        }
        else {
            int k = ab.alg.index_or(sigma_name(g.name));
            if (k >= 0) v[ab.alg.gen(k)] = 1;
        }
        ab.sigma[g.name] = v;
    }
    ab.nu = coaction_on(s, ab.alg, sigma_maps(s, ab.alg, &ab.sigma));
    return ab;
}

std::vector<std::pair<std::string, std::string>> coaction_terms(const Abutment& a, int p, int N,
                                                                const std::string& gen)
{
    const DualSteenrod& D = dual_steenrod(p, std::max(N, 1));
    int g = a.alg.index(gen);
    if (!a.nu.known[g]) throw std::runtime_error("coaction unknown for " + gen);
    std::vector<std::pair<std::string, std::string>> out;
    for (auto& [lr, c] : a.nu.gen[g]) {
        std::string l = D.label(lr.first, true);
        if (c == p - 1 && p != 2) l = "-" + l;
        else if (c != 1) l = std::to_string(c) + "*" + l;
        out.push_back({l, a.alg.label(lr.second)});
    }
    return out;
}

std::string coaction_label(const Abutment& a, int p, int N, const std::string& gen)
{
    std::string out;
    for (auto& [l, r] : coaction_terms(a, p, N, gen)) {
        if (!out.empty()) out += " + ";
        out += l + " (x) " + r;
    }
    return out;
}

AlgebraPresentation closed_form_thh(const SpectrumEntry& s)
{
    std::vector<GeneratorSpec> g;
    for (auto x : s.H.gens) {
        x.base = true;
        g.push_back(x);
    }
    for (auto& x : s.abutment) g.push_back(x);
    return AlgebraPresentation(s.p, g, s.N);
}

/* ---- pipeline ---- */

THHResult thh_homology(const std::string& name, int p, int N)
{
    THHResult R;
    R.name = name;
    R.p = p;
    R.N = N;
    SpectrumEntry s;
    try {
        s = catalog_entry(name, p, N);
    }
    catch (const std::exception& e) {
        throw StageError("catalog", e.what());
    }
    try {
        R.e2 = build_e2(s);
    }
    catch (const std::exception& e) {
        throw StageError("build_e2", e.what());
    }
    if (!R.e2.flat) throw StageError("build_e2", "E2 is not flat over H_*(" + name + "); no abutment");
    SSPage cur = R.e2;
    R.collapse_at_e2 = collapse_check(cur);
    try {
        if (p != 2) {
            cur = apply_d_pminus1(cur, s);
            R.pages.push_back(cur);
            cur = page_homology(cur);
            R.pages.push_back(cur);
        }
    }
    catch (const std::exception& e) {
        throw StageError("differentials", e.what());
    }
    if (!cur.recognized) throw StageError("page_homology", "page not recognised");
    if (collapse_check(cur)) R.certified = true;
    else {
        try {
            auto c = page_coaction(cur, s);
            R.obstructions = obstruction_scan(cur, c);
        }
        catch (const std::exception& e) {
            throw StageError("obstruction_scan", e.what());
        }
        R.certified = R.obstructions.empty();
        if (!R.certified) throw StageError("obstruction_scan", "possible differentials remain");
    }
    try {
        R.abutment = resolve_extensions(cur, s);
    }
    catch (const std::exception& e) {
        throw StageError("resolve_extensions", e.what());
    }
    R.series = R.abutment.alg.poincare(N);
    if (R.series != cur.alg.poincare(N)) throw StageError("resolve_extensions", "abutment differs additively from E-infinity");
    auto cf = closed_form_thh(s);
    std::multiset<int> a, b;
    for (auto& g : R.abutment.alg.gens)
        if (!g.base) a.insert(g.degree);
    for (auto& g : cf.gens)
        if (!g.base) b.insert(g.degree);
    R.matches_closed_form = cf.poincare(N) == R.series && a == b;
    return R;
}

/* ---- Nishida ---- */

std::map<int, std::vector<NishidaTerm>> nishida_low(int s)
{
    std::map<int, std::vector<NishidaTerm>> r;
    r[1] = {};
    if (s % 2 == 0) r[1].push_back({s - 1, 0});
    r[2] = {};
    if (s % 4 == 0 || s % 4 == 1) r[2].push_back({s - 2, 0});
    r[2].push_back({s - 1, 1});
    return r;
}

bool nishida_forces_zero(const SpectrumEntry& s, const NishidaInstance& inst)
{
    if (s.p != 2) throw std::invalid_argument("Nishida checks are implemented at p = 2");
    const auto& H = s.H;
    const DualSteenrod& D = dual_steenrod(2, std::max(s.N, 1));
    int x = H.index(inst.x);
    int xd = H.gens[x].degree;
    int td = xd + inst.s;
    if (td > H.N) throw std::invalid_argument("degree bound too small for the Nishida check");
    Lin<Mono> lx{{H.gen(x), 1}};
    for (auto& [r, terms] : inst.relations) {
        Lin<Mono> pred;
        for (auto& t : terms) {
            Lin<Mono> y = t.i == 0 ? lx : dual_action(D, H, s.nu, t.i, lx);
            if (y.empty()) continue;
            int yd = H.degree(y.begin()->first);
            if (t.j < yd) continue;
            if (t.j == yd) {
                addto(pred, H.mul(y, y), 1, 2);
                continue;
            }
            return false; /* not evaluable from instability */
        }
        if (!pred.empty()) return false;
    }
    /* joint injectivity of the Sq^r_* on the target degree */
    const auto& B = H.basis(td);
    std::map<std::pair<int, Mono>, int> idx;
    std::vector<Lin<std::pair<int, Mono>>> cols;
    for (auto& m : B) {
        Lin<std::pair<int, Mono>> col;
        for (auto& [r, terms] : inst.relations)
            for (auto& [y, c] : dual_action(D, H, s.nu, r, Lin<Mono>{{m, 1}})) addto(col, std::make_pair(r, y), c, 2);
        for (auto& [k, v] : col) idx.try_emplace(k, (int)idx.size());
        cols.push_back(col);
    }
    SparseMat M(2, (int)idx.size(), (int)B.size());
    for (int j = 0; j < (int)B.size(); ++j)
        for (auto& [k, v] : cols[j]) M.add(idx[k], j, v);
    return rank(M) == (int)B.size();
}

}  // namespace thh
