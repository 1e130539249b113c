#!/usr/bin/env python3
"""Regenerate fixtures/v1 from presentation data.

Nothing here calls the C++ engine: every golden is built from generator
degrees and heights, the profile functions of the subalgebras, and the
differential recurrences.
"""
import json
import os
import sys

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures", "v1")


def mult(a, b):
    n = len(a) - 1
    c = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(n + 1 - i):
                c[i + j] += x * b[j]
    return c


def trunc(d, h, n):
    s = [0] * (n + 1)
    k = 0
    while k * d <= n and (h == 0 or k < h):
        s[k * d] = 1
        k += 1
    return s


def series(p, facs, n):
    """facs: (degree, height); height 0 polynomial, 2 exterior, -1 divided power"""
    s = [1] + [0] * n
    for d, h in facs:
        if h == -1:
            e = d
            while e <= n:
                s = mult(s, trunc(e, p, n))
                e *= p
        else:
            s = mult(s, trunc(d, h, n))
    return s


def xi(p, k):
    return 2 ** k - 1 if p == 2 else 2 * (p ** k - 1)


def tau(p, k):
    return 2 * p ** k - 1


def quotient(p, steps, tau_from, n):
    f = []
    k = 1
    while xi(p, k) <= n:
        f.append(((steps[k - 1] if k <= len(steps) else 1) * xi(p, k), 0))
        k += 1
    if p != 2:
        k = tau_from
        while tau(p, k) <= n:
            f.append((tau(p, k), 2))
            k += 1
    return f


def ju3(n):
    f = [(11, 2), (12, 0)]
    k = 2
    while xi(3, k) <= n:
        f.append((xi(3, k), 0))
        k += 1
    k = 2
    while tau(3, k) <= n:
        f.append((tau(3, k), 2))
        k += 1
    return f


def steenrod():
    cases = []
    # profile h(j) = n + 2 - j for A_n: rank 2^{sum h(j)}
    for n in range(3):
        cases.append({"kind": "steenrod_rank", "subalgebra": "A%d" % n,
                      "rank": 2 ** sum(n + 2 - j for j in range(1, n + 2)),
                      "note": "product of 2^h(j) over the profile of A_%d" % n})
    for n in range(3):
        name = "E(" + ",".join("Q%d" % i for i in range(n + 1)) + ")"
        cases.append({"kind": "steenrod_rank", "subalgebra": name, "rank": 2 ** (n + 1),
                      "note": "exterior on %d primitives" % (n + 1)})
    cases.append({"kind": "module_rank", "subalgebra": "A2", "ideal": ["Sq1", "Sq2Sq3"], "total": 24,
                  "note": "A2 is free over A1 of rank 8, and A1/A1{Sq1, Sq2Sq3} has rank 3 (1, Sq2, Sq3)"})
    cases.append({"kind": "module_rank", "subalgebra": "A2", "ideal": ["Sq1", "Sq2"], "total": 8,
                  "note": "A2 // A1 has rank 64 / 8"})
    cases.append({"kind": "sq4_kernel", "kernel": 17, "cokernel": 1,
                  "note": "image has rank 8 - 1 since only the unit is missed, so the kernel has rank 24 - 7"})
    return cases


def homology():
    n = 8
    return [
        {"kind": "homology_series", "spectrum": "ku", "p": 2, "N": n,
         "series": series(2, quotient(2, [2, 2], 0, n), n),
         "note": "P(xib1^2, xib2^2, xib3, ...)"},
        {"kind": "homology_series", "spectrum": "ko", "p": 2, "N": 24,
         "series": series(2, quotient(2, [4, 2], 0, 24), 24),
         "note": "P(xib1^4, xib2^2, xib3, ...)"},
        {"kind": "homology_series", "spectrum": "tmf", "p": 2, "N": 24,
         "series": series(2, quotient(2, [8, 4, 2], 0, 24), 24),
         "note": "P(xib1^8, xib2^4, xib3^2, xib4, ...)"},
        {"kind": "homology_series", "spectrum": "ju", "p": 3, "N": 60,
         "series": series(3, ju3(60), 60),
         "note": "E(b) P(xit1^3) P(xit_k) E(taut_k), k >= 2, |b| = 11"},
    ]


def thh():
    a, b = 40, 60
    spec = [
        ("HF", 2, a, quotient(2, [], 0, a) + [(2, 0)], "A_* P(s xib1)"),
        ("HZ", 2, a, quotient(2, [2], 0, a) + [(3, 2), (4, 0)], "E(s xib1^2) P(s xib2)"),
        ("ku", 2, a, quotient(2, [2, 2], 0, a) + [(3, 2), (7, 2), (8, 0)], "E(s xib1^2, s xib2^2) P(s xib3)"),
        ("ko", 2, a, quotient(2, [4, 2], 0, a) + [(5, 2), (7, 2), (8, 0)], "E(s xib1^4, s xib2^2) P(s xib3)"),
        ("tmf", 2, a, quotient(2, [8, 4, 2], 0, a) + [(9, 2), (13, 2), (15, 2), (16, 0)],
         "E(s xib1^8, s xib2^4, s xib3^2) P(s xib4)"),
        ("HF", 3, b, quotient(3, [], 0, b) + [(2, 0)], "A_* P(s taub0)"),
        ("HZ", 3, b, quotient(3, [], 1, b) + [(5, 2), (6, 0)], "E(s xib1) P(s taub1)"),
        ("ell", 3, b, quotient(3, [], 2, b) + [(5, 2), (17, 2), (18, 0)], "E(s xib1, s xib2) P(s taub2)"),
        ("ju", 3, b, ju3(b) + [(13, 2), (17, 2), (18, 0), (12, -1)],
         "E(s xit1^3, s xit2) P(s taut2) Gamma(s b)"),
        ("ju", 2, b, quotient(2, [4, 2], 0, b) + [(3, 2), (5, 2), (7, 2), (8, 0), (4, -1)],
         "E(b) E(s xib1^4, s xib2^2) P(s xib3) Gamma(s b)"),
    ]
    return [{"kind": "thh_series", "spectrum": s, "p": p, "N": n, "series": series(p, f, n), "note": note}
            for s, p, n, f, note in spec]


def unfold(r1, s1, n):
    r, s = [0, r1, 4], [0, s1, 7]
    for k in range(3, n + 1):
        r.append(2 ** k + r[k - 2])
        s.append(2 ** k + s[k - 2])
    return r, s


def einf(r1, s1, n):
    r, s = unfold(r1, s1, 14)
    d = {}
    for j in range(n // 2 + 1):
        d[(j, 2 * j)] = d.get((j, 2 * j), 0) + 1
    k = 1
    while k <= 12 and s[k] <= n:
        for j in range(r[k]):
            for e in range(2):
                m = 0
                while 2 * j + s[k] + e * s[k + 1] + (8 << k) * m <= n:
                    key = (j, 2 * j + s[k] + e * s[k + 1] + (8 << k) * m)
                    d[key] = d.get(key, 0) + 1
                    m += 1
        k += 1
    return [[a, b, v] for (a, b), v in sorted(d.items())]


def adams():
    return [
        {"kind": "adams_einf", "target": "thh-ku-M", "N": 60, "dims": einf(2, 3, 60),
         "note": "P(v1){1} + sum_n P_r(n)(v1){lambda_n} E(lambda_{n+1}) P(mu^{2^n}), r(1) = 2, s(1) = 3"},
        {"kind": "adams_einf", "target": "thh-ko-Y", "N": 60, "dims": einf(1, 5, 60),
         "note": "same shape with r(1) = 1, s(1) = 5"},
    ]


def hh():
    out = []
    for p in (2, 3):
        for d, kind in ((2, "polynomial"), (4, "polynomial"), (1, "exterior"), (3, "exterior")):
            n = 24
            dims = {}
            if kind == "polynomial":
                for a in range(n // d + 1):
                    dims[(0, a * d)] = 1
                    if (a + 1) * d <= n:
                        dims[(1, (a + 1) * d)] = 1
            else:
                for e in range(2):
                    for k in range(n + 1):
                        if (e + k) * d <= n:
                            dims[(k, (e + k) * d)] = dims.get((k, (e + k) * d), 0) + 1
            note = ("P(x) (x) E(sx)" if kind == "polynomial" else "E(x) (x) Gamma(sx)") + ", |x| = %d" % d
            out.append({"kind": "hh_free", "p": p, "degree": d, "generator": kind, "N": n, "qmax": n,
                        "dims": [[q, t, v] for (q, t), v in sorted(dims.items())], "note": note})
    out.append({"kind": "hh_idempotent", "qmax": 6, "dims": [[0, 0, 2]],
                "note": "F2[u]/(u^2 = u) is separable: HH is the algebra in degree 0"})
    return out


def main():
    os.makedirs(OUT, exist_ok=True)
    files = {"steenrod.json": steenrod(), "homology.json": homology(), "thh.json": thh(),
             "adams.json": adams(), "hh.json": hh()}
    for name, cases in files.items():
        doc = {"version": 1, "note": "generated by tools/gen_fixtures.py", "cases": cases}
        with open(os.path.join(OUT, name), "w") as f:
            json.dump(doc, f, indent=1)
            f.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
