#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace thh {

using Mono = std::vector<int>;
using Mono2 = std::pair<Mono, Mono>;

/* formal F_p-linear combination, coefficients kept in [1, p) */
template <class K>
using Lin = std::map<K, int>;

template <class K>
inline void addto(Lin<K>& a, const K& k, long c, int p)
{
    long w = ((c % p) + p) % p;
    if (!w) return;
    auto [it, fresh] = a.try_emplace(k, 0);
    it->second = int((it->second + w) % p);
    if (it->second == 0) a.erase(it);
}

template <class K>
inline void addto(Lin<K>& a, const Lin<K>& b, long c, int p)
{
    for (auto& [k, v] : b) addto(a, k, v * c, p);
}

template <class K>
inline Lin<K> scaled(const Lin<K>& a, long c, int p)
{
    Lin<K> out;
    addto(out, a, c, p);
    return out;
}

inline Mono mono_add(const Mono& a, const Mono& b)
{
    Mono c(a);
    for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

inline long binom_mod(long n, long k, int p)
{
    /* Lucas */
    if (k < 0 || n < 0 || k > n) return 0;
    long r = 1;
    while (n || k) {
        long a = n % p, b = k % p;
        if (b > a) return 0;
        long c = 1;
        for (long i = 0; i < b; ++i) c = c * (a - i) % p;
        long d = 1;
        for (long i = 1; i <= b; ++i) d = d * i % p;
        long dinv = 1;
        for (long e = p - 2, base = d; e; e >>= 1, base = base * base % p)
            if (e & 1) dinv = dinv * base % p;
        r = r * c % p * dinv % p;
        n /= p;
        k /= p;
    }
    return r;
}

inline int inv_mod(long a, int p)
{
    a = ((a % p) + p) % p;
    long r = 1;
    for (long e = p - 2, b = a; e; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return int(r);
}

}  // namespace thh
