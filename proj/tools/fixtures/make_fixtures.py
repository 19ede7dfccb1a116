#!/usr/bin/env python3
"""Regenerates the bundled exotic weight-one newform records with PARI/GP.

Requires cypari2. Usage: make_fixtures.py <output-dir> [terms]

For each (level, character order) pair the odd character orbit with a nonzero
new space is located, the requested eigenform is taken from mfeigenbasis, and
its coefficients are rewritten in Q(zeta_m) using the same generator
convention for (Z/N)^* as the C++ library (smallest primitive root per odd
prime power, 2-part generators first).
"""
import math
import sys
from fractions import Fraction

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9, silent=True)

FIXTURES = [
    # name, level, character order, expected projective image
    ("level124_a4", 124, 6, "A4"),
    ("level148_s4", 148, 4, "S4"),
    ("level633_a5", 633, 10, "A5"),
]


def factor(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_primitive_root(g, pk, phi, primes_of_phi):
    if math.gcd(g, pk) != 1:
        return False
    return all(pow(g, phi // q, pk) != 1 for q in primes_of_phi)


def crt_lift(r, m, n):
    """x = r mod m, x = 1 mod n/m, in [0, n)."""
    rest = n // m
    for t in range(rest):
        x = r + m * t
        if x % rest == 1 % rest:
            return x % n
    raise ValueError


def standard_generators(n):
    gens = []
    for p, e in factor(n):
        pk = p**e
        if p == 2:
            if e == 2:
                gens.append(crt_lift(3, 4, n))
            elif e >= 3:
                gens.append(crt_lift(pk - 1, pk, n))
                gens.append(crt_lift(5, pk, n))
        else:
            phi = pk - pk // p
            qs = [q for q, _ in factor(phi)]
            g = next(g for g in range(2, pk) if is_primitive_root(g, pk, phi, qs))
            gens.append(crt_lift(g, pk, n))
    return gens


def to_text(coeffs):
    terms = []
    for i in reversed(range(len(coeffs))):
        c = Fraction(coeffs[i])
        if c == 0:
            continue
        neg = c < 0
        mag = abs(c)
        if not terms:
            s = "-" if neg else ""
        else:
            s = " - " if neg else " + "
        if i == 0:
            s += str(mag)
        else:
            if mag != 1:
                s += str(mag) + "*"
            s += "z" + (f"^{i}" if i > 1 else "")
        terms.append(s)
    return "".join(terms) if terms else "0"


def find_form(level, order, image):
    G = pari.znstar(level, 1)
    for chi in pari.chargalois(G):
        if pari.charorder(G, chi) != order or not pari.zncharisodd(G, chi):
            continue
        mf = pari.mfinit([level, 1, [G, chi]], 0)
        if pari.mfdim(mf) == 0:
            continue
        for f in pari.mfeigenbasis(mf):
            coefs = pari.mfcoefs(f, 60)
            # exotic forms: a_p != 0 for most small primes
            nz = sum(1 for p in pari.primes(15) if int(level) % int(p) and coefs[int(p)] != 0)
            if nz >= 8:
                return G, chi, f
    raise RuntimeError(f"no {image} form found at level {level}")


def main():
    outdir = sys.argv[1]
    terms = int(sys.argv[2]) if len(sys.argv) > 2 else 1000
    for name, level, order, image in FIXTURES:
        G, chi, f = find_form(level, order, image)
        coefs = pari.mfcoefs(f, terms)
        # t is the generator of Q(chi) used by PARI, y generates the relative coefficient field
        field = pari.mffields(pari.mfinit([level, 1, [G, chi]], 0))
        gens = standard_generators(level)
        char_exps = []
        for g in gens:
            r = Fraction(str(pari.chareval(G, chi, g)))
            char_exps.append(int(r * order) % order)
        m = None
        for mult in range(1, 7):
            cand = order * mult
            # cyclotomic polynomials of cand and its images
            z = pari("'z")
            cyc = pari.polcyclo(cand, z)
            tz = pari(f"Mod(z^{cand // order}, polcyclo({cand}, z))")
            rel = None
            for fld in field:
                if pari.poldegree(fld, "y") >= 1:
                    rel = fld
            ok = True
            yroot = None
            subst_rel = pari.subst(pari.liftall(rel), "t", pari.lift(tz))
            if pari.poldegree(subst_rel, "y") > 1:
                roots = pari.nfroots(cyc, pari.subst(subst_rel, "y", pari("'x")))
                if len(roots) == 0:
                    ok = False
                else:
                    yroot = pari.Mod(pari.lift(roots[0]), cyc)
            if ok:
                m = cand
                break
        assert m is not None
        cyc = pari.polcyclo(m, pari("'z"))
        tz = pari(f"Mod(z^{m // order}, polcyclo({m}, z))")
        lines = []
        vals = []
        for n in range(1, terms + 1):
            a = pari.liftall(coefs[n])
            a = pari.subst(a, "t", pari.lift(tz))
            if yroot is not None:
                a = pari.subst(a, "y", pari.lift(yroot))
            a = pari.Mod(a, cyc)
            poly = pari.lift(a)
            deg = int(pari.poldegree(cyc))
            cs = [Fraction(str(pari.polcoef(poly, i, "z"))) for i in range(deg)]
            vals.append(a)
            lines.append(f"a {n} {to_text(cs)}")
        # Hecke check a_{p^2} = a_p^2 - chi(p) with chi(p) = zeta_order^k
        zeta_ord = pari(f"Mod(z^{m // order}, polcyclo({m}, z))")
        dlog = {}
        for p in pari.primes(30):
            p = int(p)
            if level % p == 0 or p * p > terms:
                continue
            r = Fraction(str(pari.chareval(G, chi, p)))
            cp = zeta_ord ** (int(r * order) % order)
            assert vals[p * p - 1] == vals[p - 1] ** 2 - cp, (name, p)
        with open(f"{outdir}/{name}.wt1", "w") as out:
            out.write(f"level {level}\n")
            out.write(f"cycorder {m}\n")
            out.write(f"chi {level} {order}\n")
            for g, k in zip(gens, char_exps):
                out.write(f"gen {g} {k}\n")
            out.write(f"source PARI/GP {'.'.join(str(x) for x in pari.version()[:3])} mfeigenbasis, "
                      f"expected projective image {image}\n")
            out.write(f"coeffs {terms}\n")
            out.write("\n".join(lines) + "\n")
        print(name, "m =", m, "gens", list(zip(gens, char_exps)))


if __name__ == "__main__":
    main()
