#!/usr/bin/env python3
"""Write the bundled data corpus under data/.

Knot models are built from the minus-module of each knot: a free tower with top grading a
contributes U^i x (i < n) to C_n, a torsion summand k[U]/U^k with top a contributes U^i y (i < k)
and a tail z^(j) at a - n - j (j < k).  phi+ keeps x and y and slides the tail, phi- is U.
Gradings are stored raw, i.e. with sigma(n) subtracted.
"""
import argparse
import json
from pathlib import Path


def tau(n):
    return 1 if n % 2 == 0 else 0


def sigma(n):
    return -(n - 1 + tau(n)) // 2


def knot_model(name, free, torsion, window, genus):
    lo, hi = window
    spaces, plus, minus = {}, {}, {}

    def classes(n):
        out = []
        for t, a in enumerate(free):
            for i in range(n):
                out.append((f"x{t}_{i}", a - i))
        for t, (a, k) in enumerate(torsion):
            for i in range(k):
                out.append((f"y{t}_{i}", a - i))
            for j in range(k):
                out.append((f"z{t}_{j}", a - n - j))
        return out

    for n in range(lo, hi + 1):
        spaces[str(n)] = [{"name": g, "alex": a - sigma(n)} for g, a in classes(n)]
    for n in range(lo, hi):
        p, m = [], []
        for t, a in enumerate(free):
            for i in range(n):
                p.append([f"x{t}_{i}", f"x{t}_{i}", "1"])
                m.append([f"x{t}_{i}", f"x{t}_{i + 1}", "1"])
        for t, (a, k) in enumerate(torsion):
            for i in range(k):
                p.append([f"y{t}_{i}", f"y{t}_{i}", "1"])
                if i + 1 < k:
                    m.append([f"y{t}_{i}", f"y{t}_{i + 1}", "1"])
            for j in range(k):
                if j > 0:
                    p.append([f"z{t}_{j}", f"z{t}_{j - 1}", "1"])
                m.append([f"z{t}_{j}", f"z{t}_{j}", "1"])
        plus[str(n)] = p
        minus[str(n)] = m
    return {
        "kind": "knot",
        "name": name,
        "field": "Q",
        "genus": genus,
        "window": [lo, hi],
        "gradings": "raw",
        "spaces": spaces,
        "phi_plus": plus,
        "phi_minus": minus,
    }


# Graded vector space H of a two-component link as a list of (name, h, (a1, a2)) monomials
# together with U_1, U_2 actions, truncated to a box.
def hopf_module(depth):
    gens = {}
    acts = {}
    # x free: U1^i U2^j x at (1-i, 1-j)
    for i in range(depth):
        for j in range(depth):
            gens[f"x_{i}_{j}"] = (0, (1 - i, 1 - j))
    # quotient of k[U1,U2]{y,z} by U1 y + U2 z, basis U2^j y and U1^i U2^j z
    for j in range(depth):
        gens[f"y_{j}"] = (0, (1, -j))
    for i in range(depth):
        for j in range(depth):
            gens[f"z_{i}_{j}"] = (0, (-i, 1 - j))

    def u(var, g):
        kind = g.split("_")[0]
        idx = [int(v) for v in g.split("_")[1:]]
        if kind == "x":
            i, j = idx
            return [(f"x_{i + 1}_{j}", "1")] if var == 0 else [(f"x_{i}_{j + 1}", "1")]
        if kind == "y":
            (j,) = idx
            return [(f"z_0_{j + 1}", "-1")] if var == 0 else [(f"y_{j + 1}", "1")]
        i, j = idx
        return [(f"z_{i + 1}_{j}", "1")] if var == 0 else [(f"z_{i}_{j + 1}", "1")]

    for g in gens:
        acts[g] = [u(0, g), u(1, g)]
    return gens, acts, (1, 1)


def unlink_module(depth):
    gens, acts = {}, {}
    for v in (0, 1):
        for i in range(depth):
            for j in range(depth):
                gens[f"v{v}_{i}_{j}"] = (v, (-i, -j))
    for g in gens:
        v, i, j = g.split("_")
        i, j = int(i), int(j)
        acts[g] = [[(f"{v}_{i + 1}_{j}", "1")], [(f"{v}_{i}_{j + 1}", "1")]]
    return gens, acts, (0, 0)


def link_model(name, module, window, depth):
    gens, acts, top = module(depth)
    (l1, h1), (l2, h2) = window
    if max(h1, h2) + 1 > depth:
        raise SystemExit("depth too small for window")

    def box(n1, n2):
        return [g for g, (h, a) in gens.items() if a[0] > top[0] - n1 and a[1] > top[1] - n2]

    spaces, plus, minus = {}, [{}, {}], [{}, {}]
    for n1 in range(l1, h1 + 1):
        for n2 in range(l2, h2 + 1):
            key = f"{n1},{n2}"
            spaces[key] = [{"name": g, "h": gens[g][0], "alex": list(gens[g][1])} for g in sorted(box(n1, n2))]
            for d, (m1, m2) in enumerate([(n1 + 1, n2), (n1, n2 + 1)]):
                if m1 > h1 or m2 > h2:
                    continue
                tgt = set(box(m1, m2))
                plus[d][key] = [[g, g, "1"] for g in sorted(box(n1, n2))]
                ent = []
                for g in sorted(box(n1, n2)):
                    for t, c in acts[g][d]:
                        if t in tgt:
                            ent.append([g, t, c])
                        elif t in gens:
                            raise SystemExit(f"U action leaves the box at {key}")
                minus[d][key] = ent
    return {
        "kind": "link",
        "name": name,
        "field": "Q",
        "components": 2,
        "window": [[l1, h1], [l2, h2]],
        "gradings": "shifted",
        "spaces": spaces,
        "phi_plus": plus,
        "phi_minus": minus,
    }


def cx(field, arity, gens, diff, grading="Z"):
    return {"field": field, "arity": arity, "grading": grading, "generators": gens, "differential": diff}


def g(name, h, alex):
    return {"name": name, "h": h, "alex": alex if isinstance(alex, list) else [alex]}


def complexes():
    out = {}
    out["unknot"] = cx("Q", 1, [g("x", 0, 0)], [])
    # gCFK^- of the right-handed trefoil: d b = U a, c free
    out["trefoil"] = cx("Q", 1, [g("a", 0, 1), g("b", 1, 0), g("c", 0, -1)], [["b", "a", [[[1], "1"]]]])
    out["trefoil_f2"] = dict(out["trefoil"], field="F2")
    out["cone_u"] = cx("Q", 1, [g("s", 1, -1), g("t", 0, 0)], [["s", "t", [[[1], "1"]]]])
    out["hopf"] = cx(
        "Q",
        2,
        [g("x", 0, [1, 1]), g("y", 0, [1, 0]), g("z", 0, [0, 1]), g("w", 1, [0, 0])],
        [["w", "y", [[[1, 0], "1"]]], ["w", "z", [[[0, 1], "1"]]]],
    )
    # seeded defects
    out["bad_d2"] = cx(
        "Q", 0, [g("a", 2, 0), g("b", 1, 0), g("c", 0, 0)], [["a", "b", [[[], "1"]]], ["b", "c", [[[], "1"]]]]
    )
    out["bad_grading"] = cx("Q", 1, [g("a", 1, 0), g("b", 0, 0)], [["a", "b", [[[1], "1"]]]])
    out["bad_hgrading"] = cx("Q", 0, [g("a", 0, 0), g("b", 0, 0)], [["a", "b", [[[], "1"]]]])
    return out


def cubes():
    # 2-cube with 1-dim vertices, identity edges, diag(2,3)-type operator on a doubled copy
    gens = {}
    maps = []
    # vertex-local h: edges keep it, so every vertex sits in h = 0
    for e in ["00", "10", "01", "11"]:
        gens[e] = [g("p", 0, 0), g("q", 0, 0)]
    for a, b in [("00", "10"), ("00", "01"), ("10", "11"), ("01", "11")]:
        sign = "-1" if (a == "10" and b == "11") else "1"
        maps.append([a, b, [["p", "p", [[[], sign]]], ["q", "q", [[[], sign]]]]])
    cube = {"field": "Q", "arity": 0, "grading": "Z", "dimension": 2, "vertices": gens, "maps": maps}
    op = {
        "grading": 0,
        "maps": [[e, e, [["p", "p", [[[], "2"]]], ["q", "q", [[[], "3"]]]]] for e in ["00", "10", "01", "11"]],
    }
    return {"square": cube, "square_op": op}


def systems():
    # G_i = Q^2 in grading 0, every phi_{i->j} = 2 * id, so composites are off by 2
    spaces = {str(i): [g("e1", 0, 0), g("e2", 0, 0)] for i in range(5)}
    maps = {f"{i},{j}": [["e1", "e1", "2"], ["e2", "e2", "2"]] for i in range(5) for j in range(i + 1, 5)}
    scaled = {"field": "Q", "window": [0, 4], "spaces": spaces, "maps": maps, "projective": True}
    maps2 = {f"{i},{i + 1}": [["e1", "e1", "1"], ["e2", "e2", "1"]] for i in range(4)}
    const = {"field": "Q", "window": [0, 4], "spaces": spaces, "maps": maps2, "projective": False}
    return {"scaled": scaled, "constant": const}


def bordered():
    mods = {}
    mods["M0"] = {"kind": "D", "field": "F2", "generators": [{"name": "a", "idem": 1}], "delta": []}
    mods["M1"] = {
        "kind": "D",
        "field": "F2",
        "generators": [{"name": "a", "idem": 1}, {"name": "b", "idem": 2}],
        "delta": [["b", "rho2", "a", 0, "1"]],
    }
    mods["K"] = {"kind": "D", "field": "F2", "generators": [{"name": "x", "idem": 2}], "delta": [["x", "rho23", "x", 1, "1"]]}
    mods["trivial1"] = {"kind": "A", "field": "F2", "generators": [{"name": "n", "idem": 1}], "actions": []}
    mods["trivial2"] = {"kind": "A", "field": "F2", "generators": [{"name": "n", "idem": 2}], "actions": []}
    return mods


def write(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    win = [0, 5]
    write(out / "knots/unknot.json", knot_model("unknot", [0], [], win, 0))
    write(out / "knots/rh_trefoil.json", knot_model("rh_trefoil", [-1], [(1, 1)], win, 1))
    write(out / "knots/lh_trefoil.json", knot_model("lh_trefoil", [1], [(0, 1)], win, 1))
    write(out / "knots/figure8.json", knot_model("figure8", [0], [(1, 1), (0, 1)], win, 1))
    write(out / "links/hopf.json", link_model("hopf", hopf_module, [[2, 4], [2, 4]], 6))
    write(out / "links/unlink2.json", link_model("unlink2", unlink_module, [[1, 3], [1, 3]], 5))
    for k, v in complexes().items():
        write(out / f"complexes/{k}.cx", v)
    for k, v in cubes().items():
        write(out / f"cubes/{k}.json", v)
    for k, v in systems().items():
        write(out / f"systems/{k}.json", v)
    for k, v in bordered().items():
        write(out / f"bordered/{k}.json", v)
    (out / "complexes/bad_syntax.cx").write_text('{"field": "Q", "arity": 1, "grading": "Z", "generators": [{"name": "a", "h": "zero"}], "differential": []}\n')


if __name__ == "__main__":
    main()
