#include "thh/steenrod.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace thh {

/* ---------------- admissible side ---------------- */

SteenrodElement& SteenrodElement::operator+=(const SteenrodElement& o)
{
    for (auto& w : o.terms) {
        auto it = terms.find(w);
        if (it == terms.end()) terms.insert(w);
        else terms.erase(it);
    }
    return *this;
}

int word_degree(const Word& w)
{
    int d = 0;
    for (int x : w) d += x;
    return d;
}

int SteenrodElement::degree() const
{
    if (terms.empty()) return -1;
    int d = word_degree(*terms.begin());
    for (auto& w : terms)
        if (word_degree(w) != d) return -1;
    return d;
}

bool admissible(const Word& w)
{
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] < 2 * w[i + 1]) return false;
    for (int x : w)
        if (x <= 0) return false;
    return true;
}

namespace {

std::recursive_mutex adem_mu;
std::map<Word, std::set<Word>> adem_cache;
std::map<std::pair<int, int>, std::vector<Word>> pair_cache; /* Sq^a Sq^b, a < 2b */

bool binom2(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return false;
    return (n & k) == k;
}

const std::vector<Word>& adem_pair(int a, int b)
{
    auto key = std::make_pair(a, b);
    auto it = pair_cache.find(key);
    if (it != pair_cache.end()) return it->second;
    std::vector<Word> out;
    for (int j = 0; 2 * j <= a; ++j)
        if (binom2(b - 1 - j, a - 2 * j)) {
            if (j == 0) out.push_back({a + b});
            else out.push_back({a + b - j, j});
        }
    if (a + b <= 64) return pair_cache.emplace(key, std::move(out)).first->second;
    static thread_local std::vector<Word> scratch;
    scratch = std::move(out);
    return scratch;
}

const std::set<Word>& reduce_word(const Word& w)
{
    auto it = adem_cache.find(w);
    if (it != adem_cache.end()) return it->second;
    std::set<Word> out;
    size_t i = 0;
    while (i + 1 < w.size() && w[i] >= 2 * w[i + 1]) ++i;
    if (i + 1 >= w.size()) {
        out.insert(w);
    }
    else {
        std::vector<Word> repl = adem_pair(w[i], w[i + 1]);
        for (auto& r : repl) {
            Word nw(w.begin(), w.begin() + i);
            nw.insert(nw.end(), r.begin(), r.end());
            nw.insert(nw.end(), w.begin() + i + 2, w.end());
            for (auto& t : reduce_word(nw)) {
                auto jt = out.find(t);
                if (jt == out.end()) out.insert(t);
                else out.erase(jt);
            }
        }
    }
    return adem_cache.emplace(w, std::move(out)).first->second;
}

}  // namespace

SteenrodElement adem_reduce(const Word& w)
{
    for (int x : w)
        if (x <= 0) throw std::invalid_argument("Steenrod word exponents must be positive");
    std::lock_guard lk(adem_mu);
    SteenrodElement e;
    e.terms = reduce_word(w);
    return e;
}

SteenrodElement operator*(const SteenrodElement& a, const SteenrodElement& b)
{
    SteenrodElement out;
    for (auto& x : a.terms)
        for (auto& y : b.terms) {
            Word w = x;
            w.insert(w.end(), y.begin(), y.end());
            out += adem_reduce(w);
        }
    return out;
}

SteenrodElement sq(int i)
{
    if (i < 0) throw std::invalid_argument("negative Sq");
    return i == 0 ? SteenrodElement(Word{}) : SteenrodElement(Word{i});
}

SteenrodElement milnor_Q(int k)
{
    if (k == 0) return sq(1);
    SteenrodElement q = milnor_Q(k - 1), s = sq(1 << k);
    return s * q + q * s;
}

std::string word_label(const Word& w)
{
    if (w.empty()) return "1";
    std::string s;
    for (int x : w) s += "Sq" + std::to_string(x);
    return s;
}

std::string to_string(const SteenrodElement& a)
{
    if (a.zero()) return "0";
    /* higher first exponents first */
    std::vector<Word> ws(a.terms.begin(), a.terms.end());
    std::sort(ws.begin(), ws.end(), std::greater<Word>());
    std::string s;
    for (auto& w : ws) {
        if (!s.empty()) s += "+";
        s += word_label(w);
    }
    return s;
}

SteenrodElement parse_steenrod(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c) && c != '^') s += c;
    if (s.empty()) throw std::invalid_argument("empty Steenrod expression");
    SteenrodElement out;
    std::stringstream ss(s);
    std::string term;
    while (std::getline(ss, term, '+')) {
        if (term == "0") continue;
        if (term == "1") {
            out += sq(0);
            continue;
        }
        Word w;
        size_t i = 0;
        while (i < term.size()) {
            if (term.compare(i, 2, "Sq") != 0) throw std::invalid_argument("bad Steenrod term: " + term);
            i += 2;
            size_t j = i;
            while (j < term.size() && std::isdigit((unsigned char)term[j])) ++j;
            if (j == i) throw std::invalid_argument("bad Steenrod term: " + term);
            int e = std::stoi(term.substr(i, j - i));
            if (e > 0) w.push_back(e);
            i = j;
        }
        out += w.empty() ? sq(0) : adem_reduce(w);
    }
    return out;
}

namespace {
std::mutex basis_mu;
std::map<int, std::vector<Word>> adm_cache;
std::map<int, std::map<Word, int>> adm_index;

void gen_adm(int rem, int maxnext, Word& cur, std::vector<Word>& out)
{
    if (rem == 0) {
        out.push_back(cur);
        return;
    }
    for (int x = std::min(rem, maxnext); x >= 1; --x) {
        if (rem - x > x) continue; /* tail sums to at most x */
        cur.push_back(x);
        gen_adm(rem - x, x / 2, cur, out);
        cur.pop_back();
    }
}
}  // namespace

const std::vector<Word>& admissible_basis(int d)
{
    std::lock_guard lk(basis_mu);
    auto it = adm_cache.find(d);
    if (it != adm_cache.end()) return it->second;
    std::vector<Word> out;
    Word cur;
    if (d >= 0) gen_adm(d, d, cur, out);
    std::sort(out.begin(), out.end(), std::greater<Word>());
    auto& idx = adm_index[d];
    for (int i = 0; i < (int)out.size(); ++i) idx[out[i]] = i;
    return adm_cache.emplace(d, std::move(out)).first->second;
}

int admissible_index(const Word& w)
{
    int d = word_degree(w);
    admissible_basis(d);
    std::lock_guard lk(basis_mu);
    auto& idx = adm_index[d];
    auto it = idx.find(w);
    if (it == idx.end()) throw std::invalid_argument("not admissible: " + word_label(w));
    return it->second;
}

SparseVec to_vector(const SteenrodElement& a, int d)
{
    SparseVec v;
    for (auto& w : a.terms) {
        if (word_degree(w) != d) throw std::invalid_argument("element not homogeneous of degree " + std::to_string(d));
        v[admissible_index(w)] = 1;
    }
    return v;
}

SteenrodElement from_vector(const SparseVec& v, int d)
{
    const auto& B = admissible_basis(d);
    SteenrodElement e;
    for (auto& [i, c] : v)
        if (c & 1) e += SteenrodElement(B[i]);
    return e;
}

/* ---------------- subalgebra specs ---------------- */

SubalgebraSpec SubalgebraSpec::A_n(int n)
{
    SubalgebraSpec s;
    s.type = Type::A;
    s.n = n;
    return s;
}

SubalgebraSpec SubalgebraSpec::E_n(int n)
{
    std::set<int> q;
    for (int i = 0; i <= n; ++i) q.insert(i);
    return E_set(q);
}

SubalgebraSpec SubalgebraSpec::E_set(std::set<int> q)
{
    SubalgebraSpec s;
    s.type = Type::E;
    s.qs = std::move(q);
    return s;
}

SubalgebraSpec SubalgebraSpec::parse(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace((unsigned char)c) && c != '_') s += c;
    if (s == "A" || s == "full") return full();
    auto num = [&](const std::string& t) {
        if (t.empty() || !std::all_of(t.begin(), t.end(), ::isdigit)) throw std::invalid_argument("bad subalgebra: " + text);
        return std::stoi(t);
    };
    if (s[0] == 'A') return A_n(num(s.substr(1)));
    if (s.rfind("E(", 0) == 0 && s.back() == ')') {
        std::set<int> q;
        std::stringstream ss(s.substr(2, s.size() - 3));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty() || tok[0] != 'Q') throw std::invalid_argument("bad subalgebra: " + text);
            q.insert(num(tok.substr(1)));
        }
        return E_set(q);
    }
    if (s[0] == 'E') return E_n(num(s.substr(1)));
    throw std::invalid_argument("bad subalgebra: " + text);
}

std::string SubalgebraSpec::name() const
{
    switch (type) {
    case Type::Full: return "A";
    case Type::A: return "A" + std::to_string(n);
    case Type::E: {
        std::string s = "E(";
        bool first = true;
        for (int q : qs) {
            if (!first) s += ",";
            first = false;
            s += "Q" + std::to_string(q);
        }
        return s + ")";
    }
    }
    return "?";
}

int SubalgebraSpec::xi_bound(int j) const
{
    switch (type) {
    case Type::Full: return 0;
    case Type::A: return j <= n + 1 ? (1 << (n + 2 - j)) : 1;
    case Type::E: return qs.count(j - 1) ? 2 : 1;
    }
    return 0;
}

int SubalgebraSpec::top_degree(int p) const
{
    if (type == Type::Full) throw std::invalid_argument("the full Steenrod algebra is infinite");
    if (p != 2) throw std::invalid_argument("subalgebra ranks are implemented at p = 2");
    int top = 0;
    for (int j = 1; j <= 40; ++j) {
        int b = xi_bound(j);
        if (b > 1) top += (b - 1) * ((1 << j) - 1);
    }
    return top;
}

namespace {
bool in_profile_ideal(const DualSteenrod& A, const SubalgebraSpec& s, const Mono& m)
{
    for (int k = 1; k <= A.kmax_xi(); ++k) {
        int b = s.xi_bound(k);
        if (b > 0 && m[A.xi(k)] >= b) return true;
    }
    return false;
}
}  // namespace

std::vector<SteenrodElement> steenrod_basis(const SubalgebraSpec& s, int d)
{
    std::vector<SteenrodElement> out;
    if (d < 0) return out;
    const auto& adm = admissible_basis(d);
    if (s.type == SubalgebraSpec::Type::Full) {
        for (auto& w : adm) out.emplace_back(w);
        return out;
    }
    if (d > s.top_degree()) return out;
    /* profile criterion: a lies in B iff a pairs to zero with the monomial ideal defining B_* */
    const auto& A = dual_steenrod(2, std::max(d, 64));
    std::vector<Mono> ideal;
    for (auto& m : A.basis(d))
        if (in_profile_ideal(A, s, m)) ideal.push_back(m);
    SparseMat M(2, (int)ideal.size(), (int)adm.size());
    for (int i = 0; i < (int)ideal.size(); ++i)
        for (int j = 0; j < (int)adm.size(); ++j)
            if (pairing(A, SteenrodElement(adm[j]), ideal[i])) M.add(i, j, 1);
    for (auto& v : rref_basis(2, (int)adm.size(), kernel_basis(M))) out.push_back(from_vector(v, d));
    return out;
}

long subalgebra_dim(const SubalgebraSpec& s, int d)
{
    if (d < 0) return 0;
    if (s.type == SubalgebraSpec::Type::Full) return (long)admissible_basis(d).size();
    if (d > s.top_degree()) return 0;
    const auto& A = dual_steenrod(2, std::max(d, 64));
    long n = 0;
    for (auto& m : A.basis(d)) n += !in_profile_ideal(A, s, m);
    return n;
}

bool in_subalgebra(const SubalgebraSpec& s, const SteenrodElement& a)
{
    if (a.zero() || s.type == SubalgebraSpec::Type::Full) return true;
    int d = a.degree();
    if (d < 0) return false;
    if (d > s.top_degree()) return false;
    const auto& A = dual_steenrod(2, std::max(d, 64));
    for (auto& m : A.basis(d))
        if (in_profile_ideal(A, s, m) && pairing(A, a, m)) return false;
    return true;
}

long total_rank(const SubalgebraSpec& s)
{
    long r = 0;
    int top = s.top_degree();
    for (int d = 0; d <= top; ++d) r += (long)steenrod_basis(s, d).size();
    return r;
}

/* ---------------- dual Steenrod algebra ---------------- */

DualSteenrod::DualSteenrod(int p_, int maxdeg_) : p(p_), maxdeg(maxdeg_)
{
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    std::vector<GeneratorSpec> g;
    if (p != 2)
        for (int k = 0;; ++k) {
            long d = 2;
            for (int i = 0; i < k; ++i) d *= p;
            if (d - 1 > maxdeg) break;
            tau_idx_.push_back((int)g.size());
            g.push_back({"tau" + std::to_string(k), int(d - 1), Kind::Exterior});
        }
    for (int k = 1;; ++k) {
        long pk = 1;
        for (int i = 0; i < k; ++i) pk *= p;
        long d = p == 2 ? pk - 1 : 2 * (pk - 1);
        if (d > maxdeg) break;
        xi_idx_.push_back((int)g.size());
        g.push_back({"xi" + std::to_string(k), int(d), Kind::Polynomial});
    }
    alg = AlgebraPresentation(p, g, maxdeg);
    int n = alg.ngens();
    conj_gen_.assign(n, {});

    auto power = [&](const Lin<Mono>& x, long e) {
        /* Frobenius: e is a power of p and x has even degree */
        Lin<Mono> out;
        for (auto& [m, c] : x) {
            Mono mm = m;
            bool dead = false;
            for (int i = 0; i < n; ++i) {
                mm[i] *= (int)e;
                int l = alg.limit(i);
                if (l >= 0 && mm[i] > l) dead = true;
            }
            if (!dead) addto(out, mm, c, p);
        }
        return out;
    };
    auto gen_lin = [&](int gi) { return Lin<Mono>{{alg.gen(gi), 1}}; };
    auto xi_conj = [&](int k) { return k == 0 ? Lin<Mono>{{alg.unit(), 1}} : conj_gen_[xi_idx_[k - 1]]; };
    /* chi(xi_k) = -sum_{i=1..k} xi_i chi(xi_{k-i})^{p^i} */
    for (int k = 1; k <= kmax_xi(); ++k) {
        Lin<Mono> acc;
        long pi = 1;
        for (int i = 1; i <= k; ++i) {
            pi *= p;
            addto(acc, alg.mul(gen_lin(xi(i)), power(xi_conj(k - i), pi)), -1, p);
        }
        conj_gen_[xi(k)] = acc;
    }
    /* chi(tau_k) = -sum_{i=0..k} chi(xi_{k-i})^{p^i} tau_i */
    for (int k = 0; k <= kmax_tau(); ++k) {
        Lin<Mono> acc;
        long pi = 1;
        for (int i = 0; i <= k; ++i, pi *= p) {
            if (k - i > kmax_xi()) continue;
            addto(acc, alg.mul(power(xi_conj(k - i), pi), gen_lin(tau(i))), -1, p);
        }
        conj_gen_[tau(k)] = acc;
    }

    auto xi_pow = [&](int j, long e) {
        Mono m = alg.unit();
        if (j > 0) m[xi(j)] = (int)e;
        return m;
    };
    for (int c = 0; c < 2; ++c) cop_gen_[c].assign(n, {});
    Mono u = alg.unit();
    for (int k = 1; k <= kmax_xi(); ++k) {
        Lin<Mono2> a, b;
        long pi = 1;
        for (int i = 0; i <= k; ++i, pi *= p) {
            Mono xi_i = i ? alg.gen(xi(i)) : u;
            /* psi(xi_k) = sum xi_{k-i}^{p^i} (x) xi_i */
            addto(a, Mono2{xi_pow(k - i, pi), xi_i}, 1, p);
            /* psi(xibar_k) = sum xibar_i (x) xibar_{k-i}^{p^i} */
            addto(b, Mono2{xi_i, xi_pow(k - i, pi)}, 1, p);
        }
        cop_gen_[0][xi(k)] = a;
        cop_gen_[1][xi(k)] = b;
    }
    for (int k = 0; k <= kmax_tau(); ++k) {
        Lin<Mono2> a, b;
        addto(a, Mono2{alg.gen(tau(k)), u}, 1, p);
        addto(b, Mono2{u, alg.gen(tau(k))}, 1, p);
        long pi = 1;
        for (int i = 0; i <= k; ++i, pi *= p) {
            if (k - i > kmax_xi()) continue;
            addto(a, Mono2{xi_pow(k - i, pi), alg.gen(tau(i))}, 1, p);
            addto(b, Mono2{alg.gen(tau(i)), xi_pow(k - i, pi)}, 1, p);
        }
        cop_gen_[0][tau(k)] = a;
        cop_gen_[1][tau(k)] = b;
    }
}

int DualSteenrod::xi(int k) const
{
    if (k < 1 || k > (int)xi_idx_.size()) throw std::out_of_range("xi_" + std::to_string(k) + " beyond degree bound");
    return xi_idx_[k - 1];
}

int DualSteenrod::tau(int k) const
{
    if (k < 0 || k >= (int)tau_idx_.size()) throw std::out_of_range("tau_" + std::to_string(k) + " unavailable");
    return tau_idx_[k];
}

int DualSteenrod::xi_degree(int k) const
{
    long pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    return int(p == 2 ? pk - 1 : 2 * (pk - 1));
}

int DualSteenrod::tau_degree(int k) const
{
    long pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    return int(2 * pk - 1);
}

std::vector<Mono> DualSteenrod::basis(int d) const
{
    std::vector<Mono> b = alg.basis(d);
    std::reverse(b.begin(), b.end());
    return b;
}

Mono DualSteenrod::from_milnor(const MilnorMonomial& m) const
{
    Mono out = alg.unit();
    for (size_t k = 0; k < m.xi.size(); ++k)
        if (m.xi[k]) out[xi((int)k + 1)] = m.xi[k];
    for (int t : m.tau) out[tau(t)] = 1;
    return out;
}

MilnorMonomial DualSteenrod::to_milnor(const Mono& m, bool conj) const
{
    MilnorMonomial r;
    r.conjugated = conj;
    for (int k = 1; k <= kmax_xi(); ++k) r.xi.push_back(m[xi(k)]);
    while (!r.xi.empty() && r.xi.back() == 0) r.xi.pop_back();
    for (int k = 0; k <= kmax_tau(); ++k)
        if (m[tau(k)]) r.tau.insert(k);
    return r;
}

Lin<Mono2> DualSteenrod::coproduct(const Mono& m, bool conj) const
{
    auto& cache = cop_cache_[conj ? 1 : 0];
    {
        std::lock_guard lk(cache_mu_);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    Lin<Mono2> out;
    int g = -1;
    for (int i = 0; i < alg.ngens(); ++i)
        if (m[i]) {
            g = i;
            break;
        }
    if (g < 0) {
        out[{m, m}] = 1;
    }
    else {
        Mono rest = m;
        rest[g] -= 1;
        out = tensor_mul(alg, alg, cop_gen_[conj ? 1 : 0][g], coproduct(rest, conj), p);
    }
    std::lock_guard lk(cache_mu_);
    cache.emplace(m, out);
    return out;
}

Lin<Mono2> DualSteenrod::coproduct(const Lin<Mono>& x, bool conj) const
{
    Lin<Mono2> out;
    for (auto& [m, c] : x) addto(out, coproduct(m, conj), c, p);
    return out;
}

Lin<Mono> DualSteenrod::conjugate(const Mono& m) const
{
    {
        std::lock_guard lk(cache_mu_);
        auto it = conj_cache_.find(m);
        if (it != conj_cache_.end()) return it->second;
    }
    Lin<Mono> acc{{alg.unit(), 1}};
    for (int i = 0; i < alg.ngens(); ++i)
        for (int e = 0; e < m[i]; ++e) acc = alg.mul(acc, conj_gen_[i]);
    std::lock_guard lk(cache_mu_);
    conj_cache_.emplace(m, acc);
    return acc;
}

Lin<Mono> DualSteenrod::conjugate(const Lin<Mono>& x) const
{
    Lin<Mono> out;
    for (auto& [m, c] : x) addto(out, conjugate(m), c, p);
    return out;
}

std::string DualSteenrod::label(const Mono& m, bool conj) const
{
    std::string s;
    for (int i = 0; i < alg.ngens(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += " ";
        std::string nm = alg.gens[i].name;
        if (conj) {
            size_t pos = nm.find_first_of("0123456789");
            nm = nm.substr(0, pos) + "b" + nm.substr(pos);
        }
        s += nm;
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string DualSteenrod::label(const Lin<Mono>& x, bool conj) const
{
    if (x.empty()) return "0";
    std::string s;
    for (auto& [m, c] : x) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + "*";
        s += label(m, conj);
    }
    return s;
}

Lin<Mono> DualSteenrod::parse(const std::string& text, bool conj) const
{
    /* one monomial per call: tokens separated by spaces, name[^e]; names xiK, xibK, tauK, taubK */
    Mono m = alg.unit();
    std::stringstream ss(text);
    std::string tok;
    bool saw_conj = false, saw_plain = false;
    while (ss >> tok) {
        if (tok == "1") continue;
        int e = 1;
        auto c = tok.find('^');
        if (c != std::string::npos) {
            e = std::stoi(tok.substr(c + 1));
            tok = tok.substr(0, c);
        }
        bool isxi = tok.rfind("xi", 0) == 0;
        bool istau = tok.rfind("tau", 0) == 0;
        if (!isxi && !istau) throw std::invalid_argument("bad dual Steenrod token: " + tok);
        std::string rest = tok.substr(isxi ? 2 : 3);
        bool b = !rest.empty() && rest[0] == 'b';
        if (b) rest = rest.substr(1);
        (b ? saw_conj : saw_plain) = true;
        int k = std::stoi(rest);
        m[isxi ? xi(k) : tau(k)] += e;
    }
    if (!alg.valid(m)) return {};
    Lin<Mono> x{{m, 1}};
    if (saw_conj && saw_plain) throw std::invalid_argument("mixed alphabets in one monomial: " + text);
    bool written_conj = saw_conj;
    if (!saw_conj && !saw_plain) return x;
    return written_conj == conj ? x : conjugate(x);
}

const DualSteenrod& dual_steenrod(int p, int maxdeg)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<DualSteenrod>> cache;
    std::lock_guard lk(mu);
    auto& slot = cache[{p, maxdeg}];
    if (!slot) slot = std::make_unique<DualSteenrod>(p, maxdeg);
    return *slot;
}

namespace {
std::mutex pair_mu;
std::map<std::pair<Word, Mono>, int> pair_memo;

int pair_word(const DualSteenrod& A, const Word& w, size_t from, const Mono& m)
{
    int dw = 0;
    for (size_t i = from; i < w.size(); ++i) dw += w[i];
    if (dw != A.alg.degree(m)) return 0;
    if (from == w.size()) return 1; /* m is the unit */
    Word key(w.begin() + from, w.end());
    auto it = pair_memo.find({key, m});
    if (it != pair_memo.end()) return it->second;
    Mono x1 = A.alg.unit();
    x1[A.xi(1)] = w[from];
    int acc = 0;
    for (auto& [t, c] : A.coproduct(m, false))
        if (t.first == x1) acc ^= (c & pair_word(A, w, from + 1, t.second));
    pair_memo[{key, m}] = acc;
    return acc;
}
}  // namespace

int pairing(const DualSteenrod& A, const SteenrodElement& a, const Mono& m)
{
    if (A.p != 2) throw std::invalid_argument("pairing is implemented at p = 2");
    int da = a.degree();
    if (!a.zero() && da != A.alg.degree(m)) throw std::invalid_argument("pairing degree mismatch");
    std::lock_guard lk(pair_mu);
    int acc = 0;
    for (auto& w : a.terms) acc ^= pair_word(A, w, 0, m);
    return acc;
}

int pairing_conj(const DualSteenrod& A, const SteenrodElement& a, const Lin<Mono>& x)
{
    int acc = 0;
    for (auto& [m, c] : A.conjugate(x)) acc ^= (c & pairing(A, a, m));
    return acc;
}

DualQuotientShape dual_quotient_shape(int p, const SubalgebraSpec& b, int kmax)
{
    DualQuotientShape s;
    s.xi_step.assign(kmax, 1);
    s.tau_ok.assign(kmax + 1, p != 2);
    using T = SubalgebraSpec::Type;
    if (b.type == T::Full) throw std::invalid_argument("(A//A)_* is trivial; use degree 0");
    if (p == 2) {
        for (int k = 1; k <= kmax; ++k) {
            int bd = b.xi_bound(k);
            s.xi_step[k - 1] = bd > 0 ? bd : 1;
        }
        return s;
    }
    if (b.type == T::E) {
        for (int k = 0; k <= kmax; ++k) s.tau_ok[k] = !b.qs.count(k);
        return s;
    }
    /* odd p, A_n generated by beta, P^1, ..., P^{p^{n-1}} */
    for (int k = 1; k <= kmax; ++k) {
        long st = 1;
        for (int i = k; i <= b.n; ++i) st *= p;
        s.xi_step[k - 1] = (int)st;
    }
    for (int k = 0; k <= kmax; ++k) s.tau_ok[k] = k > b.n;
    return s;
}

std::vector<Mono> dual_quotient_basis(const DualSteenrod& A, const SubalgebraSpec& b, int d)
{
    if (b.type == SubalgebraSpec::Type::Full) {
        if (d == 0) return {A.alg.unit()};
        return {};
    }
    auto sh = dual_quotient_shape(A.p, b, std::max(A.kmax_xi(), A.kmax_tau()));
    std::vector<Mono> out;
    for (auto& m : A.basis(d)) {
        bool ok = true;
        for (int k = 1; k <= A.kmax_xi() && ok; ++k)
            if (m[A.xi(k)] % sh.xi_step[k - 1]) ok = false;
        for (int k = 0; k <= A.kmax_tau() && ok; ++k)
            if (m[A.tau(k)] && !sh.tau_ok[k]) ok = false;
        if (ok) out.push_back(m);
    }
    return out;
}

Lin<Mono> dual_action(const DualSteenrod& A, const AlgebraPresentation& M, const CoactionTable& c, int r,
                      const Lin<Mono>& x)
{
    if (A.p != 2) throw std::invalid_argument("dual action is implemented at p = 2");
    Lin<Mono> out;
    Mono x1 = A.alg.unit();
    if (r > 0) x1[A.xi(1)] = r;
    for (auto& [t, k] : coaction(M, c, x)) {
        if (A.alg.degree(t.first) != r) continue;
        auto a = A.conjugate(t.first);
        auto it = a.find(x1);
        if (it != a.end()) addto(out, t.second, (long)k * it->second, M.p);
    }
    return out;
}

/* ---------------- modules ---------------- */

namespace {
Echelon coord_echelon(const GradedModule::Deg& g, int len)
{
    int nr = (int)g.reps.size();
    Echelon E(2, len + nr, len);
    for (auto& r : g.rel) E.add(r);
    for (int i = 0; i < nr; ++i) {
        Row row = E.make(g.reps[i]);
        E.set(row, len + i, 1);
        E.add(std::move(row));
    }
    return E;
}
}  // namespace

int GradedModule::dim_at(int adeg) const
{
    auto it = degs.find(adeg);
    return it == degs.end() ? 0 : (int)it->second.reps.size();
}

long GradedModule::total() const
{
    long t = 0;
    for (auto& [d, g] : degs) t += (long)g.reps.size();
    return t;
}

std::map<int, long> GradedModule::series() const
{
    std::map<int, long> s;
    for (auto& [d, g] : degs)
        if (!g.reps.empty()) s[d + shift] = (long)g.reps.size();
    return s;
}

SparseVec GradedModule::coordinates(int d, const SparseVec& v) const
{
    auto it = degs.find(d);
    if (it == degs.end()) {
        if (v.empty()) return {};
        throw std::invalid_argument("element outside the module");
    }
    int len = (int)admissible_basis(d).size();
    Echelon E = coord_echelon(it->second, len);
    Row r = E.make(v);
    E.reduce(r);
    if (!E.is_zero_main(r)) throw std::invalid_argument("element outside the module");
    return E.to_sparse(r, len);
}

bool GradedModule::contains(int d, const SparseVec& v) const
{
    try {
        coordinates(d, v);
        return true;
    }
    catch (const std::invalid_argument&) {
        return false;
    }
}

SparseMat GradedModule::action(const SteenrodElement& a, int d) const
{
    int da = a.degree();
    if (a.zero()) return SparseMat(2, 0, dim_at(d));
    SparseMat M(2, dim_at(d + da), dim_at(d));
    for (int i = 0; i < dim_at(d); ++i) {
        auto prod = a * rep(d, i);
        for (auto& [k, c] : coordinates(d + da, to_vector(prod, d + da))) M.add(k, i, c);
    }
    return M;
}

GradedModule quotient_module(const SubalgebraSpec& s, const std::vector<SteenrodElement>& ideal)
{
    GradedModule M;
    M.alg = s;
    int top = s.top_degree();
    for (auto& g : ideal) {
        int dg = g.degree();
        if (g.zero()) continue;
        if (dg < 0) throw std::invalid_argument("ideal generator not homogeneous");
        Echelon E(2, (int)admissible_basis(dg).size());
        for (auto& b : steenrod_basis(s, dg)) E.add(to_vector(b, dg));
        if (!E.in_span(to_vector(g, dg))) throw std::invalid_argument(to_string(g) + " is not in " + s.name());
    }
    for (int d = 0; d <= top; ++d) {
        int len = (int)admissible_basis(d).size();
        std::vector<SparseVec> rel;
        for (auto& g : ideal) {
            if (g.zero()) continue;
            int dg = g.degree();
            for (auto& b : steenrod_basis(s, d - dg)) {
                auto prod = b * g;
                if (!prod.zero()) rel.push_back(to_vector(prod, d));
            }
        }
        GradedModule::Deg D;
        D.rel = rref_basis(2, len, rel);
        Echelon E(2, len);
        for (auto& r : D.rel) E.add(r);
        for (auto& b : steenrod_basis(s, d)) {
            auto v = to_vector(b, d);
            if (E.add(v)) D.reps.push_back(v);
        }
        M.degs[d] = std::move(D);
    }
    return M;
}

KernelResult module_map_kernel(const SteenrodElement& f, const GradedModule& source, int shift,
                               const GradedModule& target)
{
    int df = f.zero() ? shift : f.degree();
    if (df != shift) throw std::invalid_argument("shift does not match the degree of the map");
    KernelResult res;
    GradedModule& K = res.kernel;
    K.alg = source.alg;
    K.shift = source.shift + shift;
    std::map<int, int> image_rank;
    for (auto& [d, g] : source.degs) {
        int e = d + df;
        int n = (int)g.reps.size();
        int tdim = target.dim_at(e);
        for (auto& r : g.rel) {
            auto prod = from_vector(r, d) * f;
            if (!prod.zero() && !target.coordinates(e, to_vector(prod, e)).empty())
                throw std::runtime_error("right multiplication is not well defined on the quotient");
        }
        SparseMat M(2, tdim, n);
        for (int i = 0; i < n; ++i) {
            auto prod = from_vector(g.reps[i], d) * f;
            if (prod.zero()) continue;
            for (auto& [k, c] : target.coordinates(e, to_vector(prod, e))) M.add(k, i, c);
        }
        image_rank[e] = rank(M);
        GradedModule::Deg D;
        D.rel = g.rel;
        int len = (int)admissible_basis(d).size();
        for (auto& v : rref_basis(2, n, kernel_basis(M))) {
            SparseVec w;
            for (auto& [i, c] : v)
                for (auto& [k, x] : g.reps[i]) w[k] ^= (c & x);
            for (auto it = w.begin(); it != w.end();) it = it->second ? std::next(it) : w.erase(it);
            D.reps.push_back(w);
        }
        (void)len;
        K.degs[d] = std::move(D);
    }
    for (auto& [e, g] : target.degs) {
        long c = (long)g.reps.size() - (image_rank.count(e) ? image_rank[e] : 0);
        if (c) res.cokernel_series[e + target.shift] = c;
        res.cokernel_rank += c;
    }
    return res;
}

bool cyclic_and_annihilator_check(const GradedModule& m, const SteenrodElement& generator,
                                  const std::vector<SteenrodElement>& candidates)
{
    int d0 = generator.degree();
    if (d0 < 0 || !m.contains(d0, to_vector(generator, d0))) return false;
    if (m.coordinates(d0, to_vector(generator, d0)).empty()) return false;
    for (auto& [d, g] : m.degs) {
        int n = (int)g.reps.size();
        if (!n) continue;
        if (d < d0) return false;
        Echelon E(2, n);
        for (auto& b : steenrod_basis(m.alg, d - d0)) {
            auto prod = b * generator;
            if (prod.zero()) continue;
            auto v = to_vector(prod, d);
            if (!m.contains(d, v)) return false;
            E.add(m.coordinates(d, v));
        }
        if (E.rank() != n) return false;
    }
    for (auto& c : candidates) {
        auto prod = c * generator;
        if (prod.zero()) continue;
        int d = prod.degree();
        auto v = to_vector(prod, d);
        if (!m.contains(d, v) || !m.coordinates(d, v).empty()) return false;
    }
    GradedModule Q = quotient_module(m.alg, candidates);
    std::map<int, long> qs, ms;
    for (auto& [d, g] : Q.degs)
        if (!g.reps.empty()) qs[d + d0] = (long)g.reps.size();
    for (auto& [d, g] : m.degs)
        if (!g.reps.empty()) ms[d] = (long)g.reps.size();
    return qs == ms;
}

}  // namespace thh
