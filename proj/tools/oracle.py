#!/usr/bin/env python3
"""Brute-force expected values for the bundled corpus.

Everything here is computed from the data files by dense rank computations on graded pieces
(sympy DomainMatrix over QQ or GF(2)); nothing is shared with the C++ code.  Module summands are
read off from dimensions and U-power ranks.
"""
import argparse
import itertools
import json
from fractions import Fraction
from pathlib import Path

from sympy import QQ, GF
from sympy.polys.matrices import DomainMatrix


def dom(field):
    return GF(2) if field == "F2" else QQ


def conv(field, c):
    if field == "F2":
        return int(Fraction(c)) % 2
    return QQ(Fraction(c).numerator, Fraction(c).denominator)


class Cx:
    """Free complex over k[U_1..U_r]: gens (name, h, alex tuple), d[(src, tgt)] = {exp: coef}."""

    def __init__(self, field, arity, gens, d):
        self.field, self.arity, self.gens, self.d = field, arity, gens, d
        self.idx = {g[0]: k for k, g in enumerate(gens)}

    @staticmethod
    def load(obj):
        gens = [(g["name"], g["h"], tuple(g["alex"])) for g in obj["generators"]]
        c = Cx(obj["field"], obj["arity"], gens, {})
        for s, t, ent in obj["differential"]:
            for e, v in ent:
                c.add(c.idx[s], c.idx[t], tuple(e), Fraction(v))
        return c

    def add(self, s, t, e, v):
        m = self.d.setdefault((s, t), {})
        m[e] = m.get(e, 0) + v
        if m[e] == 0 or (self.field == "F2" and m[e] % 2 == 0):
            del m[e]

    def tot(self, k):
        return sum(self.gens[k][2])

    def basis(self, h, a):
        out = []
        for k, (n, hh, al) in enumerate(self.gens):
            if hh != h or sum(al) < a:
                continue
            for e in itertools.product(range(sum(al) - a + 1), repeat=self.arity):
                if sum(e) == sum(al) - a:
                    out.append((k, e))
        if self.arity == 0:
            out = [(k, ()) for k, g in enumerate(self.gens) if g[1] == h and sum(g[2]) == a]
        return out

    def dmat(self, h, a):
        src, tgt = self.basis(h, a), self.basis(h - 1, a)
        pos = {b: i for i, b in enumerate(tgt)}
        rows = [[0] * len(src) for _ in tgt]
        for j, (k, e) in enumerate(src):
            for (s, t), ent in self.d.items():
                if s != k:
                    continue
                for pe, v in ent.items():
                    ne = tuple(x + y for x, y in zip(e, pe))
                    rows[pos[(t, ne)]][j] += v
        return rows, len(tgt), len(src)

    def umat(self, var, j, h, a):
        src, tgt = self.basis(h, a), self.basis(h, a - j)
        pos = {b: i for i, b in enumerate(tgt)}
        rows = [[0] * len(src) for _ in tgt]
        for c, (k, e) in enumerate(src):
            ne = list(e)
            ne[var] += j
            rows[pos[(k, tuple(ne))]][c] = 1
        return rows, len(tgt), len(src)


def rank(field, rows, nr, nc):
    if nr == 0 or nc == 0:
        return 0
    K = dom(field)
    return DomainMatrix([[K.convert(conv(field, x)) for x in r] for r in rows], (nr, nc), K).rank()


def mat(field, rows, nr, nc):
    K = dom(field)
    return DomainMatrix([[K.convert(conv(field, x)) for x in r] for r in rows], (nr, nc), K)


def kernel_basis(field, rows, nr, nc):
    if nc == 0:
        return None
    if nr == 0:
        return DomainMatrix.eye(nc, dom(field))
    m = mat(field, rows, nr, nc)
    ns = m.nullspace()
    if ns.shape[0] == 0:
        return None
    return ns.transpose()


def hom_dim(c, h, a):
    r1 = rank(c.field, *c.dmat(h, a))
    r2 = rank(c.field, *c.dmat(h + 1, a))
    return len(c.basis(h, a)) - r1 - r2


def induced_rank(c, var, j, h, a):
    """rank of U_var^j : H_{h,a} -> H_{h,a-j}"""
    z = kernel_basis(c.field, *c.dmat(h, a))
    if z is None:
        return 0
    u = mat(c.field, *c.umat(var, j, h, a))
    img = u * z
    brows, bnr, bnc = c.dmat(h + 1, a - j)
    K = dom(c.field)
    if bnc == 0 or bnr == 0:
        return img.rank()
    b = mat(c.field, brows, bnr, bnc)
    return b.hstack(img).rank() - b.rank()


def tables(c, hs, alo, ahi, var=0):
    dims, ranks = {}, {}
    for h in hs:
        for a in range(alo, ahi + 1):
            d = hom_dim(c, h, a)
            if d:
                dims[(h, a)] = d
    for (h, a), d in dims.items():
        for j in range(1, a - alo + 1):
            r = induced_rank(c, var, j, h, a)
            if r == 0:
                break
            ranks[(h, a, j)] = r
    return dims, ranks


def bars(dims, ranks, alo, ahi):
    def R(h, a, j):
        if a > ahi or a - j < alo or j < 0:
            return 0
        if j == 0:
            return dims.get((h, a), 0)
        return ranks.get((h, a, j), 0)

    out = []
    for h in sorted({k[0] for k in dims}):
        for a in range(ahi, alo - 1, -1):
            for b in range(a, alo - 1, -1):
                j = a - b
                cnt = R(h, a, j) - R(h, a + 1, j + 1)
                if b > alo:
                    cnt -= R(h, a, j + 1) - R(h, a + 1, j + 2)
                assert cnt >= 0
                for _ in range(cnt):
                    out.append(("free", h, a, 0) if b == alo else ("torsion", h, a, j + 1))
    out.sort(key=lambda s: (s[2], s[1], s[0] == "free", s[3]))
    return [{"kind": k, "h": h, "alex": a, "order": o} for k, h, a, o in out]


def tau(n):
    return 1 if n % 2 == 0 else 0


def sigma(n):
    return -(n - 1 + tau(n)) // 2


def cki(model, n):
    """Cone(phi- - U phi+ : C_n[U] -> C_{n+1}[U]) with the source one step up and A - 1."""
    def space(m):
        out = []
        for g in model["spaces"][str(m)]:
            a = g["alex"] + (sigma(m) if model["gradings"] == "raw" else 0)
            out.append((g["name"], g.get("h", 0), a))
        return out

    src, tgt = space(n), space(n + 1)
    gens = [("s." + x, h + 1, (a - 1,)) for x, h, a in src] + [("t." + x, h, (a,)) for x, h, a in tgt]
    c = Cx(model["field"], 1, gens, {})
    for f, t, v in model["phi_minus"][str(n)]:
        c.add(c.idx["s." + f], c.idx["t." + t], (0,), Fraction(v))
    for f, t, v in model["phi_plus"][str(n)]:
        c.add(c.idx["s." + f], c.idx["t." + t], (1,), -Fraction(v))
    return c


def derived(c1, c2):
    """Cone(U1 - U2) on c1 (x) c2 over k[U1, U2], source one step up and A - 1; total Alexander."""
    gens, pairs = [], []
    for x in c1.gens:
        for y in c2.gens:
            pairs.append((x, y))
    n = len(pairs)
    for side in ("s", "t"):
        for x, y in pairs:
            up = 1 if side == "s" else 0
            gens.append((f"{side}.{x[0]}|{y[0]}", x[1] + y[1] + up, (sum(x[2]) + sum(y[2]) - up,)))
    c = Cx(c1.field, 2, gens, {})
    n2 = len(c2.gens)

    def tensor_d(off, sign):
        for (s, t), ent in c1.d.items():
            for j in range(n2):
                for e, v in ent.items():
                    c.add(off + s * n2 + j, off + t * n2 + j, (e[0], 0), sign * v)
        for (s, t), ent in c2.d.items():
            for i in range(len(c1.gens)):
                koszul = -1 if c1.gens[i][1] % 2 else 1
                for e, v in ent.items():
                    c.add(off + i * n2 + s, off + i * n2 + t, (0, e[0]), sign * koszul * v)

    # source is shift(T, 1): differential negated; the cone with h-shift -1 keeps the target's sign
    tensor_d(0, -1)
    tensor_d(n, 1)
    for k in range(n):
        c.add(k, n + k, (1, 0), Fraction(1))
        c.add(k, n + k, (0, 1), Fraction(-1) if c1.field != "F2" else Fraction(1))
    return c


def to_json_tables(dims, ranks):
    return {
        "dims": [[h, a, d] for (h, a), d in sorted(dims.items())],
        "ranks": [[h, a, j, r] for (h, a, j), r in sorted(ranks.items())],
    }


def knot_oracle(model):
    lo, hi = model["window"]
    out = {"name": model["name"], "cki": {}}
    for n in range(lo, hi):
        c = cki(model, n)
        alo = min(sum(g[2]) for g in c.gens) - 1
        ahi = max(sum(g[2]) for g in c.gens)
        hs = sorted({g[1] for g in c.gens})
        dims, ranks = tables(c, hs, alo, ahi)
        out["cki"][str(n)] = {"window": [alo, ahi], "summands": bars(dims, ranks, alo, ahi), **to_json_tables(dims, ranks)}
    return out


def link_box_hopf(obj, alo, ahi):
    c = Cx.load(obj)
    hs = sorted({g[1] for g in c.gens})
    out = {}
    for h in hs:
        for a in range(alo, ahi + 1):
            d = hom_dim(c, h, a)
            if d:
                out[(h, a)] = d
    return out


def cli_square(model, n1, n2):
    """2-cube over k[U1, U2]: vertex eps holds C_{n+eps} at A - (1 - eps) and h + 2 - |eps|; edges
    phi-_i - U_i phi+_i, direction 2 signed (-1)^{eps1}."""
    gens, where = [], {}
    for e1 in (0, 1):
        for e2 in (0, 1):
            for g in model["spaces"][f"{n1 + e1},{n2 + e2}"]:
                where[(e1, e2, g["name"])] = len(gens)
                a1, a2 = g["alex"]
                gens.append((f"{e1}{e2}.{g['name']}", g.get("h", 0) + 2 - e1 - e2, (a1 - 1 + e1, a2 - 1 + e2)))
    c = Cx(model["field"], 2, gens, {})
    for d in (0, 1):
        for e1 in (0, 1):
            for e2 in (0, 1):
                if (e1, e2)[d] == 1:
                    continue
                t1, t2 = (e1 + 1, e2) if d == 0 else (e1, e2 + 1)
                sign = -1 if d == 1 and e1 == 1 else 1
                key = f"{n1 + e1},{n2 + e2}"
                u = (1, 0) if d == 0 else (0, 1)
                for f, t, v in model["phi_minus"][d][key]:
                    c.add(where[(e1, e2, f)], where[(t1, t2, t)], (0, 0), sign * Fraction(v))
                for f, t, v in model["phi_plus"][d][key]:
                    c.add(where[(e1, e2, f)], where[(t1, t2, t)], u, -sign * Fraction(v))
    return c


def cone_u1_u2(c):
    """Cone(U1 - U2) on a complex over k[U1, U2]: source at h + 1 and A - 1 with d negated."""
    n = len(c.gens)
    gens = [("s." + x, h + 1, (al[0] - 1,) + tuple(al[1:])) for x, h, al in c.gens]
    gens += [("t." + x, h, al) for x, h, al in c.gens]
    out = Cx(c.field, c.arity, gens, {})
    for (s, t), ent in c.d.items():
        for e, v in ent.items():
            out.add(s, t, e, -v)
            out.add(n + s, n + t, e, v)
    for k in range(n):
        out.add(k, n + k, (1, 0), Fraction(1))
        out.add(k, n + k, (0, 1), Fraction(-1))
    return out


def dim_table(c, alo, ahi):
    out = {}
    for h in sorted({g[1] for g in c.gens}):
        for a in range(alo, ahi + 1):
            d = hom_dim(c, h, a)
            if d:
                out[(h, a)] = d
    return out


def link_oracle(model):
    (l1, h1), (l2, h2) = model["window"]
    out = {"name": model["name"], "cli": {}}
    for n1 in range(l1, h1):
        for n2 in range(l2, h2):
            c = cli_square(model, n1, n2)
            alo = min(sum(g[2]) for g in c.gens) - 2
            ahi = max(sum(g[2]) for g in c.gens)
            hat = Cx(c.field, 0, c.gens, {k: {(): v[(0, 0)]} for k, v in c.d.items() if (0, 0) in v})
            sk = cone_u1_u2(c)
            out["cli"][f"{n1},{n2}"] = {
                "window": [alo, ahi],
                "dims": [[h, a, d] for (h, a), d in sorted(dim_table(c, alo, ahi).items())],
                "hat": [[h, a, d] for (h, a), d in sorted(dim_table(hat, alo - 2, ahi).items())],
                "skein": [[h, a, d] for (h, a), d in sorted(dim_table(sk, alo, ahi).items())],
            }
    return out


def main():
    ap = argparse.ArgumentParser()
    root = Path(__file__).resolve().parent.parent / "data"
    ap.add_argument("--data", default=str(root))
    ap.add_argument("--out", default=str(root / "oracles"))
    args = ap.parse_args()
    data, out = Path(args.data), Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    def dump(name, obj):
        (out / name).write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")

    # trefoil complex: hat table and module
    tre = Cx.load(json.loads((data / "complexes/trefoil.cx").read_text()))
    hat = Cx(tre.field, 0, tre.gens, {k: {(): v[(0,)]} for k, v in tre.d.items() if (0,) in v})
    hat_dims = {}
    for h in (-1, 0, 1, 2):
        for a in range(-2, 3):
            d = hom_dim(hat, h, a)
            if d:
                hat_dims[(h, a)] = d
    dims, ranks = tables(tre, [0, 1], -4, 1)
    dump(
        "trefoil.json",
        {"hat": [[h, a, d] for (h, a), d in sorted(hat_dims.items())], "summands": bars(dims, ranks, -4, 1)},
    )

    knots = {}
    for name in ("unknot", "rh_trefoil", "lh_trefoil", "figure8"):
        model = json.loads((data / f"knots/{name}.json").read_text())
        knots[name] = model
        dump(f"knot_{name}.json", knot_oracle(model))

    hopf = json.loads((data / "complexes/hopf.cx").read_text())
    t = link_box_hopf(hopf, -4, 2)
    dump("hopf.json", {"window": [-4, 2], "dims": [[h, a, d] for (h, a), d in sorted(t.items())]})

    # connected sums at n = 0: brute-force derived tensor of the free models
    cs = {}
    for k1, k2 in (("unknot", "rh_trefoil"), ("rh_trefoil", "rh_trefoil"), ("rh_trefoil", "lh_trefoil"), ("figure8", "rh_trefoil")):
        c = derived(cki(knots[k1], 0), cki(knots[k2], 0))
        alo = min(sum(g[2]) for g in c.gens) - 1
        ahi = max(sum(g[2]) for g in c.gens)
        hs = sorted({g[1] for g in c.gens})
        dims, ranks = tables(c, hs, alo, ahi)
        cs[f"{k1}#{k2}"] = {"window": [alo, ahi], "summands": bars(dims, ranks, alo, ahi), **to_json_tables(dims, ranks)}
    dump("consum.json", cs)

    for name in ("hopf", "unlink2"):
        model = json.loads((data / f"links/{name}.json").read_text())
        dump(f"link_{name}.json", link_oracle(model))


if __name__ == "__main__":
    main()
