#!/usr/bin/env python3
# Regenerates data/fixtures/*.json with PARI/GP (via cypari2).
#   pip install --only-binary=:all: cypari2
#   python3 tools/gen_fixtures.py [--pmax 120000] [--out data/fixtures]
#
# Curves were picked by a small search: semistable, every bad prime split with
# only one of P, P^c bad, good reduction above the ramified prime, j not in Q.
import argparse
import json
import os

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)

CURVES = [
    # label, min poly of w (leading first), field disc, a-invariants in Z[w]
    ("Qi-65a", [1, 0, 1], -4, "[0,-1,0,-2*t-2,-2*t]"),
    ("Qi-257a", [1, 0, 1], -4, "[1,t,t,0,0]"),
    ("Qs3-73a", [1, -1, 1], -3, "[t+1,1,1,0,0]"),
    ("Qs3-241a", [1, -1, 1], -3, "[1,t,t,0,0]"),
    ("Qs5-31a", [1, -1, -1], 5, "[t,-1,t+1,-2*t-1,0]"),
    ("Qs5-41a", [1, -1, -1], 5, "[0,t,t+1,0,0]"),
]


def polstr(c):
    return "t^2+(%d)*t+(%d)" % (c[1], c[2])


def elt(x):
    # nf element as [a, b] meaning a + b*w
    v = pari.Vec(pari.lift(x))
    v = [pari(c) for c in v]
    if len(v) == 0:
        return ["0", "0"]
    if len(v) == 1:
        return [str(v[0]), "0"]
    return [str(v[1]), str(v[0])]


def cstr(z, digits=60):
    return [str(pari.real(z)), str(pari.imag(z))]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pmax", type=int, default=120000)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data", "fixtures"))
    ap.add_argument("--digits", type=int, default=60)
    ap.add_argument("--only", default=None)
    args = ap.parse_args()
    pari.default("realprecision", args.digits)
    os.makedirs(args.out, exist_ok=True)

    for label, mp, disc, ainv in CURVES:
        if args.only and label != args.only:
            continue
        pol = polstr(mp)
        bnf = pari.bnfinit(pari(pol), 1)
        nf = bnf
        E0 = pari.ellinit(pari(ainv), nf)
        E = pari.ellminimalmodel(E0)
        N = pari.ellglobalred(E)[0]
        nmN = int(pari.idealnorm(nf, N))
        fa = pari.idealfactor(nf, N)
        badP = [fa[0][i] for i in range(len(fa[0]))]
        ainvs = [elt(E[i]) for i in range(5)]
        jinv = elt(E[12])

        primes = []
        bad = []
        for p in pari.primes(pari.primepi(args.pmax)):
            p = int(p)
            dec = pari.idealprimedec(nf, p)
            rows = []
            for P in dec:
                f = int(P[3])
                e = int(P[2])
                r = 0
                if f == 1:
                    m = pari.nfmodprinit(nf, P)
                    r = int(str(pari.nfmodpr(nf, pari("t"), m)))
                a = int(pari.ellap(E, P))
                isbad = any(pari.idealval(nf, N, P) > 0 for _ in [0])
                rows.append((r, f, e, a, isbad))
            rows.sort()
            for idx, (r, f, e, a, isbad) in enumerate(rows):
                primes.append([p, f, idx, a])
                if isbad:
                    bad.append({"p": p, "f": f, "index": idx, "a_P": a, "residue_of_w": r})

        # oracle periods per embedding, computed from the embedded model
        roots = pari("polroots(%s)" % pol)
        if disc < 0:
            embs = [r for r in roots if pari.imag(r) > 0]
        else:
            embs = sorted(roots, key=lambda r: -float(pari.real(r)))
        periods = []
        for w in embs:
            om = pari("(a,w)->ellinit(vector(5,i,subst(lift(a[i]),'t,w))).omega")(E[:5], w)
            periods.append({"embedding_w": cstr(w), "omega": [cstr(om[0]), cstr(om[1])]})

        L1 = pari("(e)->lfun(lfuncreate(e),1)")(E)
        rootno = int(pari.ellrootno(E))

        fx = {
            "label": label,
            "field": {"min_poly": mp, "disc": disc},
            "ainvs": ainvs,
            "j": jinv,
            "conductor_norm": nmN,
            "bad_primes": bad,
            "p_max": args.pmax,
            "primes": primes,
            "oracle": {
                "source": "PARI/GP %s" % str(pari.version()),
                "periods": periods,
                "L_E_F_1": str(L1),
                "root_number": rootno,
            },
        }
        path = os.path.join(args.out, label + ".json")
        with open(path, "w") as fh:
            json.dump(fx, fh, separators=(",", ":"))
        print(label, "norm", nmN, "primes", len(primes), "L(1)", str(L1)[:20])


if __name__ == "__main__":
    main()
