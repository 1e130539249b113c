#include "thh/gca.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace thh {

std::string kind_name(Kind k)
{
    switch (k) {
    case Kind::Polynomial: return "polynomial";
    case Kind::Exterior: return "exterior";
    case Kind::Truncated: return "truncated";
    case Kind::DividedPower: return "dividedPower";
    }
    return "?";
}

Kind parse_kind(const std::string& s)
{
    if (s == "polynomial") return Kind::Polynomial;
    if (s == "exterior") return Kind::Exterior;
    if (s == "truncated") return Kind::Truncated;
    if (s == "dividedPower" || s == "divided_power") return Kind::DividedPower;
    throw std::invalid_argument("unknown generator kind: " + s);
}

int koszul(int p, int db, int dc)
{
    if (p == 2) return 1;
    return ((db & 1) && (dc & 1)) ? -1 : 1;
}

AlgebraPresentation::AlgebraPresentation(int p_, const std::vector<GeneratorSpec>& raw, int N_, bool sq0)
    : p(p_), N(N_), square_zero(sq0)
{
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    for (auto& g : raw) {
        if (g.kind != Kind::DividedPower) {
            gens.push_back(g);
            continue;
        }
        if (g.degree <= 0) throw std::invalid_argument("divided power generator needs positive degree: " + g.name);
        if (p != 2 && (g.degree & 1)) throw std::invalid_argument("divided power on odd class at odd p: " + g.name);
        int f = (int)dp_names.size();
        dp_names.push_back(g.name);
        dp_degree.push_back(g.degree);
        dp_filtration.push_back(g.filtration);
        long pk = 1;
        for (int i = 0; pk * g.degree <= N; ++i, pk *= p) {
            GeneratorSpec e = g;
            e.name = "gamma_" + std::to_string(pk) + "(" + g.name + ")";
            if (pk == 1) e.name = g.name;
            e.degree = int(pk * g.degree);
            e.filtration = int(pk * g.filtration);
            e.kind = Kind::Truncated;
            e.height = p;
            e.dp_family = f;
            e.dp_index = i;
            gens.push_back(e);
        }
    }
    check();
}

AlgebraPresentation::AlgebraPresentation(const AlgebraPresentation& o)
    : p(o.p), N(o.N), square_zero(o.square_zero), gens(o.gens), dp_names(o.dp_names),
      dp_degree(o.dp_degree), dp_filtration(o.dp_filtration)
{
}

AlgebraPresentation& AlgebraPresentation::operator=(const AlgebraPresentation& o)
{
    if (this == &o) return *this;
    p = o.p;
    N = o.N;
    square_zero = o.square_zero;
    gens = o.gens;
    dp_names = o.dp_names;
    dp_degree = o.dp_degree;
    dp_filtration = o.dp_filtration;
    std::lock_guard lk(mu_);
    cache_.clear();
    return *this;
}

void AlgebraPresentation::check() const
{
    for (auto& g : gens) {
        if (g.degree < 0) throw std::invalid_argument("negative degree: " + g.name);
        if (g.degree == 0 && !g.idempotent) throw std::invalid_argument("degree 0 generator must be idempotent: " + g.name);
        if (g.idempotent && g.degree != 0) throw std::invalid_argument("idempotent generator must have degree 0: " + g.name);
        if (g.kind == Kind::Truncated && g.height < 2 && !g.idempotent)
            throw std::invalid_argument("truncated generator needs height >= 2: " + g.name);
        if (p != 2 && (g.degree & 1) && (g.kind == Kind::Polynomial || (g.kind == Kind::Truncated && g.height > 2)))
            throw std::invalid_argument("odd generator must be exterior at odd p: " + g.name);
    }
}

int AlgebraPresentation::limit(int i) const
{
    auto& g = gens[i];
    if (g.idempotent) return 1;
    if (square_zero) return 1;
    switch (g.kind) {
    case Kind::Polynomial: return -1;
    case Kind::Exterior: return 1;
    case Kind::Truncated: return g.height - 1;
    default: return -1;
    }
}

int AlgebraPresentation::degree(const Mono& m) const
{
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * gens[i].degree;
    return d;
}

int AlgebraPresentation::filtration(const Mono& m) const
{
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * gens[i].filtration;
    return d;
}

Mono AlgebraPresentation::gen(int i) const
{
    Mono m = unit();
    m[i] = 1;
    return m;
}

int AlgebraPresentation::index_or(const std::string& name) const
{
    for (int i = 0; i < ngens(); ++i)
        if (gens[i].name == name) return i;
    return -1;
}

int AlgebraPresentation::index(const std::string& name) const
{
    int i = index_or(name);
    if (i < 0) throw std::out_of_range("no generator " + name);
    return i;
}

bool AlgebraPresentation::valid(const Mono& m) const
{
    int tot = 0;
    for (int i = 0; i < ngens(); ++i) {
        if (m[i] < 0) return false;
        int l = limit(i);
        if (l >= 0 && m[i] > l) return false;
        if (!gens[i].idempotent) tot += m[i];
    }
    return !(square_zero && tot > 1);
}

int AlgebraPresentation::mul(const Mono& a, const Mono& b, Mono& out) const
{
    out.assign(gens.size(), 0);
    if (square_zero) {
        int ta = 0, tb = 0;
        for (int i = 0; i < ngens(); ++i)
            if (!gens[i].idempotent) ta += a[i], tb += b[i];
        if (ta && tb) return 0;
    }
    int sign = 1;
    int odd_b_before = 0; /* odd exponents of b on generators with smaller index */
    for (int i = 0; i < ngens(); ++i) {
        if (gens[i].idempotent) {
            out[i] = (a[i] || b[i]) ? 1 : 0;
            continue;
        }
        int e = a[i] + b[i];
        int l = limit(i);
        if (l >= 0 && e > l) return 0;
        out[i] = e;
        if (odd(i)) {
            if ((a[i] & 1) && (odd_b_before & 1)) sign = -sign;
            odd_b_before += b[i];
        }
    }
    return sign;
}

Lin<Mono> AlgebraPresentation::mul(const Lin<Mono>& a, const Lin<Mono>& b) const
{
    Lin<Mono> out;
    Mono m;
    for (auto& [x, cx] : a)
        for (auto& [y, cy] : b) {
            int c = mul(x, y, m);
            if (c) addto(out, m, (long)c * cx * cy, p);
        }
    return out;
}

void AlgebraPresentation::enumerate(int d, std::vector<Mono>& out) const
{
    Mono cur(gens.size(), 0);
    int n = ngens();
    /* recursion over generators, remaining degree and positive-exponent count */
    auto rec = [&](auto& self, int i, int rem, int used) -> void {
        if (i == n) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        int deg = gens[i].degree;
        int l = limit(i);
        int emax = deg == 0 ? 1 : rem / deg;
        if (l >= 0) emax = std::min(emax, l);
        if (square_zero && !gens[i].idempotent && used) emax = 0;
        for (int e = 0; e <= emax; ++e) {
            cur[i] = e;
            self(self, i + 1, rem - e * deg, used + (gens[i].idempotent ? 0 : e));
        }
        cur[i] = 0;
    };
    rec(rec, 0, d, 0);
    std::sort(out.begin(), out.end());
}

const std::vector<Mono>& AlgebraPresentation::basis(int d) const
{
    std::lock_guard lk(mu_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    if (d > N) throw std::out_of_range("degree beyond truncation bound");
    std::vector<Mono> out;
    if (d >= 0) enumerate(d, out);
    return cache_.emplace(d, std::move(out)).first->second;
}

std::vector<long> convolve(const std::vector<long>& a, const std::vector<long>& b, int upto)
{
    std::vector<long> c(upto + 1, 0);
    for (int i = 0; i <= upto && i < (int)a.size(); ++i)
        if (a[i])
            for (int j = 0; i + j <= upto && j < (int)b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::vector<long> AlgebraPresentation::poincare(int upto) const
{
    std::vector<long> s(upto + 1, 0);
    if (square_zero) {
        long idem = 1;
        for (auto& g : gens)
            if (g.idempotent) idem *= 2;
        s[0] = 1;
        for (auto& g : gens)
            if (!g.idempotent && g.degree <= upto) s[g.degree] += 1;
        for (auto& v : s) v *= idem;
        return s;
    }
    s[0] = 1;
    for (int i = 0; i < ngens(); ++i) {
        std::vector<long> f(upto + 1, 0);
        int deg = gens[i].degree, l = limit(i);
        if (deg == 0) {
            f[0] = 2;
        }
        else {
            for (int e = 0; e * deg <= upto && (l < 0 || e <= l); ++e) f[e * deg] = 1;
        }
        s = convolve(s, f, upto);
    }
    return s;
}

std::map<std::pair<int, int>, long> AlgebraPresentation::bigraded(int upto) const
{
    std::map<std::pair<int, int>, long> out;
    for (int d = 0; d <= upto; ++d)
        for (auto& m : basis(d)) out[{filtration(m), d}] += 1;
    return out;
}

std::string AlgebraPresentation::label(const Mono& m) const
{
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < ngens(); ++i) {
        if (!m[i]) continue;
        if (!first) os << " ";
        first = false;
        os << gens[i].name;
        if (m[i] > 1) os << "^" << m[i];
    }
    if (first) os << "1";
    return os.str();
}

std::string AlgebraPresentation::label(const Lin<Mono>& x) const
{
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : x) {
        if (!first) os << " + ";
        first = false;
        if (c != 1) os << c << "*";
        os << label(m);
    }
    return os.str();
}

std::pair<int, Mono> AlgebraPresentation::gamma(int family, long j) const
{
    Mono m = unit();
    long coef = 1;
    for (int l = 0; j; ++l, j /= p) {
        int digit = int(j % p);
        if (!digit) continue;
        int g = -1;
        for (int i = 0; i < ngens(); ++i)
            if (gens[i].dp_family == family && gens[i].dp_index == l) g = i;
        if (g < 0) return {0, m};
        m[g] = digit;
        long f = 1;
        for (int k = 2; k <= digit; ++k) f = f * k % p;
        coef = coef * inv_mod(f, p) % p;
    }
    return {int(coef), m};
}

bool AlgebraPresentation::connected() const
{
    for (auto& g : gens)
        if (g.degree == 0) return false;
    return true;
}

/* ---- coalgebra ---- */

Mono HopfData::base_part(const Mono& m) const
{
    Mono b = A->unit();
    for (int i = 0; i < A->ngens(); ++i)
        if (A->gens[i].base) b[i] = m[i];
    return b;
}

Mono HopfData::fiber_part(const Mono& m) const
{
    Mono f = m;
    for (int i = 0; i < A->ngens(); ++i)
        if (A->gens[i].base) f[i] = 0;
    return f;
}

Lin<Mono2> tensor_mul(const AlgebraPresentation& L, const AlgebraPresentation& R, const Lin<Mono2>& x,
                      const Lin<Mono2>& y, int p)
{
    Lin<Mono2> out;
    Mono a, b;
    for (auto& [xx, cx] : x)
        for (auto& [yy, cy] : y) {
            int s1 = L.mul(xx.first, yy.first, a);
            if (!s1) continue;
            int s2 = R.mul(xx.second, yy.second, b);
            if (!s2) continue;
            int s = s1 * s2 * koszul(p, R.degree(xx.second), L.degree(yy.first));
            addto(out, Mono2{a, b}, (long)s * cx * cy, p);
        }
    return out;
}

Lin<Mono2> HopfData::coproduct(const Mono& m) const
{
    const auto& P = *A;
    int p = P.p;
    Mono b = base_part(m), f = fiber_part(m), tmp;
    int sgn = P.mul(b, f, tmp);
    Lin<Mono2> acc;
    acc[{P.unit(), P.unit()}] = 1;
    for (int i = 0; i < P.ngens(); ++i) {
        if (!f[i]) continue;
        Lin<Mono2> g;
        auto& gs = P.gens[i];
        if (gs.dp_family >= 0) {
            long n = 1;
            for (int k = 0; k < gs.dp_index; ++k) n *= p;
            for (long a = 0; a <= n; ++a) {
                auto [ca, ma] = P.gamma(gs.dp_family, a);
                auto [cb, mb] = P.gamma(gs.dp_family, n - a);
                if (ca && cb) addto(g, Mono2{ma, mb}, (long)ca * cb, p);
            }
        }
        else {
            addto(g, Mono2{P.gen(i), P.unit()}, 1, p);
            addto(g, Mono2{P.unit(), P.gen(i)}, 1, p);
        }
        for (int e = 0; e < f[i]; ++e) acc = tensor_mul(P, P, acc, g, p);
    }
    Lin<Mono2> out;
    for (auto& [t, c] : acc) {
        int s = P.mul(b, t.first, tmp);
        if (s) addto(out, Mono2{tmp, t.second}, (long)s * c * sgn, p);
    }
    return out;
}

Lin<Mono2> HopfData::reduced(const Mono& m) const
{
    Lin<Mono2> out = coproduct(m);
    Mono u = A->unit();
    for (auto it = out.begin(); it != out.end();) {
        if (it->first.second == u || fiber_part(it->first.first) == u) it = out.erase(it);
        else ++it;
    }
    return out;
}

template <class K>
static std::vector<SparseVec> kernel_of_images(int p, const std::vector<Lin<K>>& images, const std::vector<int>& cols)
{
    /* images[j] is the image of basis vector cols[j]; result indexed by cols */
    std::map<K, int> idx;
    for (auto& im : images)
        for (auto& [k, c] : im) idx.try_emplace(k, (int)idx.size());
    SparseMat M(p, (int)idx.size(), (int)images.size());
    for (int j = 0; j < (int)images.size(); ++j)
        for (auto& [k, c] : images[j]) M.add(idx[k], j, c);
    std::vector<SparseVec> out;
    for (auto& v : kernel_basis(M)) {
        SparseVec w;
        for (auto& [j, c] : v) w[cols[j]] = c;
        out.push_back(w);
    }
    return out;
}

std::vector<SparseVec> coalgebra_primitives(const HopfData& h, int d)
{
    const auto& B = h.A->basis(d);
    std::vector<Lin<Mono2>> images;
    std::vector<int> cols;
    Mono u = h.A->unit();
    for (int j = 0; j < (int)B.size(); ++j) {
        if (h.fiber_part(B[j]) == u) continue;
        images.push_back(h.reduced(B[j]));
        cols.push_back(j);
    }
    return kernel_of_images(h.A->p, images, cols);
}

Lin<Mono2> coaction(const AlgebraPresentation& A, const CoactionTable& c, const Mono& m)
{
    int p = A.p;
    Lin<Mono2> acc;
    acc[{c.coeff->unit(), A.unit()}] = 1;
    for (int i = 0; i < A.ngens(); ++i) {
        if (!m[i]) continue;
        if (!c.known[i]) throw std::runtime_error("coaction not available for " + A.gens[i].name);
        for (int e = 0; e < m[i]; ++e) acc = tensor_mul(*c.coeff, A, acc, c.gen[i], p);
    }
    return acc;
}

Lin<Mono2> coaction(const AlgebraPresentation& A, const CoactionTable& c, const Lin<Mono>& x)
{
    Lin<Mono2> out;
    for (auto& [m, k] : x) addto(out, coaction(A, c, m), k, A.p);
    return out;
}

std::vector<SparseVec> comodule_primitives(const AlgebraPresentation& A, const CoactionTable& c, int d)
{
    const auto& B = A.basis(d);
    std::vector<Lin<Mono2>> images;
    std::vector<int> cols;
    for (int j = 0; j < (int)B.size(); ++j) {
        auto nu = coaction(A, c, B[j]);
        addto(nu, Mono2{c.coeff->unit(), B[j]}, -1, A.p);
        images.push_back(std::move(nu));
        cols.push_back(j);
    }
    return kernel_of_images(A.p, images, cols);
}

}  // namespace thh
