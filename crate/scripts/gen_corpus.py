#!/usr/bin/env python3
"""Regenerates the bundled corpus files under crates/cli/corpus.

Irreducibility filtering and the `expect` annotations come from sympy, which
serves as an independent oracle for discriminants, trace indices and prime
splittings.

    python3 scripts/gen_corpus.py
"""
from functools import reduce
from pathlib import Path

from sympy import Matrix, Poly, ZZ, factorint, gcd, symbols
from sympy.polys.numberfields.basis import round_two
from sympy.polys.numberfields.primes import prime_decomp

x = symbols("x")
OUT = Path(__file__).resolve().parent.parent / "crates" / "cli" / "corpus"


def poly(coeffs):
    return Poly(list(reversed(coeffs)), x, domain=ZZ)


def irreducible(coeffs):
    return poly(coeffs).is_irreducible


def squarefree(m):
    return all(e == 1 for e in factorint(abs(m)).values())


def quadratic(m):
    return [-(m - 1) // 4, -1, 1] if m % 4 == 1 else [-m, 0, 1]


def fmt(coeffs):
    return "[" + ",".join(str(c) for c in coeffs) + "]"


def oracle(coeffs):
    """disc(L), t_L and sorted (e, f) lists at every prime dividing disc(L)."""
    T = poly(coeffs)
    n = T.degree()
    zk, dk = round_two(T)
    companion = Matrix.zeros(n, n)
    for i in range(1, n):
        companion[i, i - 1] = 1
    for i in range(n):
        companion[i, n - 1] = -coeffs[i]
    powers = [Matrix.eye(n)]
    for _ in range(n):
        powers.append(powers[-1] * companion)
    power_traces = [p.trace() for p in powers]
    m = zk.matrix.to_Matrix()
    traces = [sum(m[k, j] * power_traces[k] for k in range(n)) / zk.denom for j in range(m.cols)]
    t = reduce(gcd, traces)
    splits = {p: sorted((q.e, q.f) for q in prime_decomp(p, T, dK=dk)) for p in factorint(abs(dk))}
    return dk, t, splits


def expect(coeffs):
    dk, t, splits = oracle(coeffs)
    parts = [f"t={t}", f"disc={dk}"]
    for p, ef in sorted(splits.items()):
        parts.append(f"split{p}=" + ",".join(f"({e},{f})" for e, f in ef))
    return " expect " + " ".join(parts)


def label_m(prefix, m):
    return f"{prefix}_{'m' if m < 0 else 'p'}{abs(m):03d}"


def quadratics(bound):
    return [m for m in range(-bound, bound + 1) if abs(m) >= 2 and squarefree(m)]


EISENSTEIN = {
    "e4_x4m2": [-2, 0, 0, 0, 1],
    "e4_x4m3": [-3, 0, 0, 0, 1],
    "e4_x4p2": [2, 0, 0, 0, 1],
    "e4_x4m6": [-6, 0, 0, 0, 1],
    "e4_x4p2xp2": [2, 2, 0, 0, 1],
    "e4_x4p3xp3": [3, 3, 0, 0, 1],
    "e4_x4p4x2p2": [2, 0, 4, 0, 1],
    "e4_x4m5": [-5, 0, 0, 0, 1],
    "e4_x4p5xp5": [5, 5, 0, 0, 1],
    "e6_x6m2": [-2, 0, 0, 0, 0, 0, 1],
    "e6_x6m3": [-3, 0, 0, 0, 0, 0, 1],
    "e6_x6m3x2p3": [3, 0, -3, 0, 0, 0, 1],
    "e6_x6p2xp2": [2, 2, 0, 0, 0, 0, 1],
    "e6_x6p3x3p3": [3, 0, 0, 3, 0, 0, 1],
    "e6_x6m6": [-6, 0, 0, 0, 0, 0, 1],
    "e6_x6p2x3p2": [2, 0, 0, 2, 0, 0, 1],
    "e6_x6p5xp5": [5, 5, 0, 0, 0, 0, 1],
}

MISC = {
    "d3_dedekind": [-8, -2, -1, 1],
    "d4_x4pxp1": [1, 1, 0, 0, 1],
    "d4_x4mxm1": [-1, -1, 0, 0, 1],
    "d4_zeta5": [1, 1, 1, 1, 1],
    "d5_x5mxm1": [-1, -1, 0, 0, 0, 1],
    "d5_x5m2": [-2, 0, 0, 0, 0, 1],
    "d5_x5m5": [-5, 0, 0, 0, 0, 1],
    "d5_x5m10": [-10, 0, 0, 0, 0, 1],
    "d5_x5m5xp12": [12, -5, 0, 0, 0, 1],
    "d5_x5pxp3": [3, 1, 0, 0, 0, 1],
    "d6_x6pxp1": [1, 1, 0, 0, 0, 0, 1],
    "d6_x6mxm1": [-1, -1, 0, 0, 0, 0, 1],
    "d6_zeta7": [1, 1, 1, 1, 1, 1, 1],
    "d6_sextic": [1, 0, 5, 0, 1, 0, 1],
    "d7_x7mxm1": [-1, -1, 0, 0, 0, 0, 0, 1],
    "d7_x7m2": [-2, 0, 0, 0, 0, 0, 0, 1],
    "d7_x7m7xp3": [3, -7, 0, 0, 0, 0, 0, 1],
    "d7_x7pxp1": [1, 1, 0, 0, 0, 0, 0, 1],
}

NORMAL = {"d4_zeta5", "d6_zeta7"}
ORACLE = {"d6_sextic", "d3_dedekind", "e4_x4m2", "e6_x6m3x2p3", "d5_x5m5xp12"}


def write_fields():
    lines = ["# label: [c0,...,cd] [normal] [expect t=.. disc=.. splitP=(e,f),...]",
             "# expect annotations were computed with sympy (round_two, prime_decomp)."]
    for m in quadratics(40):
        lines.append(f"{label_m('q', m)}: {fmt(quadratic(m))} normal")
    for a in range(-6, 7):
        for b in range(-6, 7):
            c = [b, a, 0, 1]
            if irreducible(c):
                lines.append(f"c_a{a:+d}_b{b:+d}: {fmt(c)}")
    for name, c in {**EISENSTEIN, **MISC}.items():
        assert irreducible(c), name
        line = f"{name}: {fmt(c)}"
        if name in NORMAL:
            line += " normal"
        if name in ORACLE:
            line += expect(c)
        lines.append(line)
    (OUT / "fields.txt").write_text("\n".join(lines) + "\n")
    return len(lines) - 2


def write_quadratics():
    lines = ["# all squarefree m with 2 <= |m| <= 200"]
    lines += [f"{label_m('q', m)}: {fmt(quadratic(m))} normal" for m in quadratics(200)]
    (OUT / "quadratics.txt").write_text("\n".join(lines) + "\n")


def write_compositions():
    one_mod_4 = [5, 13, 17, 21, 29, 33, 37, -3, -7, -11]
    lines = ["# coprime degrees: trace-one witness; two quadratics: tame compositum with t = 1"]
    lines.append(f"compose: {fmt(quadratic(5))}, [-1,-1,0,1]")
    lines.append(f"compose: {fmt(quadratic(13))}, [-1,-1,0,1]")
    lines.append(f"compose: {fmt(quadratic(-3))}, [-1,-1,0,1]")
    lines.append(f"compose: [-1,-1,0,1], [-1,-1,0,0,0,1]")
    lines.append(f"compose: {fmt(quadratic(5))}, [-1,-1,0,0,0,1]")
    lines.append(f"compose: {fmt(quadratic(5))}, [-1,-1,0,1], [-1,-1,0,0,0,1]")
    pairs = [(a, b) for i, a in enumerate(one_mod_4) for b in one_mod_4[i + 1:]][:14]
    for a, b in pairs:
        lines.append(f"compose: {fmt(quadratic(a))}, {fmt(quadratic(b))} normal")
    (OUT / "compositions.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    n = write_fields()
    write_quadratics()
    write_compositions()
    print(f"fields.txt: {n} fields")
