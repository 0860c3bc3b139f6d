"""Regenerates tests/data/oracles.json with sympy.

Associated forms come from Groebner normal forms of the Jacobian ideal,
factorizations from sympy.factor_list, fiber dimensions from a direct
linear solve. None of this shares code with the C++ library.
"""
import json
import random
import sys
from itertools import combinations_with_replacement
from math import factorial
from pathlib import Path

import sympy as sp


def xs(n, letter="x"):
    return sp.symbols(f"{letter}1:{n + 1}")


def to_text(expr, gens, letter):
    p = sp.Poly(sp.expand(expr), *gens)
    if p.is_zero:
        return "0"
    out = []
    for mon, c in p.terms():
        c = sp.Rational(c)
        factors = []
        for i, e in enumerate(mon):
            if e == 1:
                factors.append(f"{letter}{i + 1}")
            elif e > 1:
                factors.append(f"{letter}{i + 1}^{e}")
        body = "*".join(factors)
        if not body:
            term = str(abs(c))
        elif abs(c) == 1:
            term = body
        else:
            term = f"{abs(c)}*{body}"
        out.append(("-" if c < 0 else "+", term))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, term in out[1:]:
        s += f" {sign} {term}"
    return s


def monomials(n, deg):
    for combo in combinations_with_replacement(range(n), deg):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def associated_form_groebner(f, x, z):
    n = len(x)
    d = sp.Poly(f, *x).total_degree() - 1
    top = n * (d - 1)
    G = sp.groebner([sp.diff(f, v) for v in x], *x, order="grevlex")
    coeffs = {}
    for e in monomials(n, top):
        m = sp.Mul(*[v**k for v, k in zip(x, e)])
        _, r = G.reduce(m)
        coeffs[e] = sp.Poly(r, *x) if r != 0 else None
    # the socle: the one standard monomial of degree top
    socle = None
    for e, r in coeffs.items():
        if r is not None and len(r.terms()) == 1:
            mon, c = r.terms()[0]
            socle = mon
            break
    A = 0
    for e, r in coeffs.items():
        if r is None:
            continue
        c = r.as_dict().get(socle, 0)
        hat = sp.Mul(*[w**k for w, k in zip(z, e)]) / sp.Mul(*[factorial(k) for k in e])
        A += sp.Rational(c) * hat
    return sp.expand(A)


def gradient_fiber_dim(f, x):
    n = len(x)
    k = sp.Poly(f, *x).total_degree()
    mons = list(monomials(n, k))
    cs = sp.symbols(f"c0:{len(mons)}")
    g = sum(c * sp.Mul(*[v**e for v, e in zip(x, m)]) for c, m in zip(cs, mons))
    lam = sp.symbols(f"l0:{n * n}")
    eqs = []
    for i in range(n):
        rhs = sum(lam[i * n + j] * sp.diff(f, x[j]) for j in range(n))
        eqs.extend(sp.Poly(sp.diff(g, x[i]) - rhs, *x).coeffs())
    sol = sp.linsolve(eqs, list(cs) + list(lam))
    (vec,) = sol
    gvec = sp.Matrix(vec[: len(mons)])
    free = set()
    for e in gvec:
        free |= e.free_symbols
    return len(free)


def random_form(rng, x, deg, density=0.7, lo=-3, hi=3):
    f = 0
    for e in monomials(len(x), deg):
        if rng.random() < density:
            f += rng.randint(lo, hi) * sp.Mul(*[v**k for v, k in zip(x, e)])
    return sp.expand(f)


def assoc_cases():
    x2, x3, x4 = xs(2), xs(3), xs(4)
    cases = [
        (x3[0] ** 3 + x3[1] ** 3 + x3[2] ** 3, x3),
        (x2[0] ** 4 + x2[1] ** 4, x2),
        (x3[0] ** 4 + x3[1] ** 4 + x3[2] ** 4, x3),
    ]
    for t in (1, 3, 6, -6):
        cases.append((x2[0] ** 4 + x2[1] ** 4 + t * x2[0] ** 2 * x2[1] ** 2, x2))
    a, b, c = x3
    intro = (a + b + c) ** 3 + b**3 + b**2 * c + b * c**2 + c**3
    cases.append((sp.expand(intro), x3))
    cases.append((a**3 + b**3 + c**3 + a * b * c, x3))
    cases.append((x2[0] ** 5 + x2[1] ** 5 + x2[0] ** 2 * x2[1] ** 3, x2))
    p, q, r, s = x4
    cases.append((p**3 + q**3 + r**3 + s**3 + p * q * r, x4))
    return cases


def main(out):
    rng = random.Random(20261018)
    data = {"generator": "tools/oracles/make_fixtures.py"}

    assoc = []
    for f, x in assoc_cases():
        n = len(x)
        z = xs(n, "z")
        A = associated_form_groebner(f, x, z)
        assoc.append({"f": to_text(f, x, "x"), "n": n, "A": to_text(A, z, "z")})
    data["associated_forms"] = assoc

    fibers = []
    for f, x in assoc_cases():
        fibers.append({"f": to_text(f, x, "x"), "n": len(x), "dim": gradient_fiber_dim(f, x)})
    data["gradient_fibers"] = fibers

    products = []
    while len(products) < 50:
        n = rng.randint(2, 4)
        x = xs(n)
        k = rng.randint(1, 4)
        factors = []
        for _ in range(k):
            deg = rng.randint(1, 4 if n <= 3 else 3)
            g = random_form(rng, x, deg)
            if g == 0:
                continue
            _, fl = sp.factor_list(g, *x)
            if len(fl) != 1 or fl[0][1] != 1:
                continue
            factors.append(g)
        if not factors:
            continue
        # repeated factors allowed: sometimes square one
        if rng.random() < 0.25 and len(factors) < 4:
            factors.append(factors[0])
        prod = sp.expand(sp.Mul(*factors))
        _, fl = sp.factor_list(prod, *x)
        products.append({
            "n": n,
            "f": to_text(prod, x, "x"),
            "factors": [{"poly": to_text(p.as_expr(), x, "x"), "multiplicity": int(m)} for p, m in fl],
        })
    data["factorizations"] = products

    # A(f_t) for the binary quartic family: a split over Q needs A to be a
    # product of powers of two distinct rational linear forms
    family = []
    x, z = xs(2), xs(2, "z")
    for t in (1, 3, 6, -6):
        f = x[0] ** 4 + x[1] ** 4 + t * x[0] ** 2 * x[1] ** 2
        A = associated_form_groebner(f, x, z)
        _, fl = sp.factor_list(A, *z)
        linear = [p for p, _ in fl if sp.Poly(p, *z).total_degree() == 1]
        ds = len(fl) == 2 and len(linear) == 2
        family.append({
            "t": t,
            "A": to_text(A, z, "z"),
            "factors": [{"poly": to_text(p, z, "z"), "multiplicity": int(m)} for p, m in fl],
            "verdict": "direct_sum" if ds else "not_direct_sum",
        })
    data["quartic_family"] = family

    Path(out).write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/oracles.json")
