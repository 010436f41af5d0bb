#!/usr/bin/env python3
"""Reference values for the one-variable q-de Rham cohomology, via sympy.

H^1 of (Z[x][[q-1]]/(q-1)^N --d--> Z[x][[q-1]]/(q-1)^N dx) in weight w+1 is
the cokernel of multiplication by [w+1]_q on Z[s]/s^N, s = q-1.  This script
computes its invariant factors by Smith normal form, independently of the
library, for freezing into tests.
"""
import sympy as sp
from sympy.matrices.normalforms import smith_normal_form


def qint_s_coeffs(m, N):
    """[m]_q = ((1+s)^m - 1)/s as coefficients of s^0..s^{N-1}."""
    return [sp.binomial(m, j + 1) for j in range(N)]


def mult_matrix(coeffs, N):
    rows = []
    for i in range(N):
        rows.append([coeffs[i - j] if 0 <= i - j < N else 0 for j in range(N)])
    return sp.Matrix(rows)


def invariant_factors(M):
    D = smith_normal_form(M)
    n = min(D.shape)
    diag = [abs(D[i, i]) for i in range(n)]
    facs = [d for d in diag if d not in (0, 1)]
    free = sum(1 for d in diag if d == 0) + (M.shape[1] - n if M.shape[1] > n else 0)
    return facs + [0] * free


def main():
    N = 6
    print(f"H^1 invariant factors of Z[s]/(s^{N}, [w+1]_q):")
    for w in range(13):
        M = mult_matrix(qint_s_coeffs(w + 1, N), N)
        print(f"  w={w}: {invariant_factors(M)}")

    # the same at N=1 is the classical reduction: Z/(w+1)
    for w in range(13):
        M = mult_matrix(qint_s_coeffs(w + 1, 1), 1)
        assert invariant_factors(M) == ([w + 1] if w + 1 > 1 else [])
    print("classical reduction H^1 = Z/(w+1): ok")

    # weight-2 differential of the 2-variable complex, untwisted convention
    q = sp.symbols("q")
    x1, x2 = sp.symbols("x1 x2")

    def qpartial(f, v):
        out = 0
        p = sp.Poly(f, x1, x2)
        for mono, c in zip(p.monoms(), p.coeffs()):
            e = dict(zip((x1, x2), mono))
            m = e[v]
            if m == 0:
                continue
            qm = sum(q**i for i in range(m))
            out += c * qm * v ** (m - 1) * (x1 ** e[x1] if v != x1 else 1) * (
                x2 ** e[x2] if v != x2 else 1)
        return sp.expand(out)

    basis0 = [x1**2, x1 * x2, x2**2]
    basis1 = [(x1, 1), (x2, 1), (x1, 2), (x2, 2)]  # coefficient monomial, dx index
    print("weight-2 differential columns (coefficients on x1dx1, x2dx1, x1dx2, x2dx2):")
    for b in basis0:
        col = []
        d1, d2 = qpartial(b, x1), qpartial(b, x2)
        for mono, idx in basis1:
            src = d1 if idx == 1 else d2
            col.append(sp.expand(src).coeff(mono) if src != 0 else 0)
        # a cleaner extraction: polynomial coefficient of the monomial
        c = [sp.Poly(d1 if idx == 1 else d2, x1, x2).coeff_monomial(mono)
             for mono, idx in basis1]
        print(f"  d({b}) -> {c}")

    # d∘d = 0 for this convention on a generic weight-3 element
    f = 3 * x1**2 * x2 + 5 * x1 * x2**2
    d1f, d2f = qpartial(f, x1), qpartial(f, x2)
    # d² coefficient on dx1∧dx2: ∂1(d2f) - ∂2(d1f) ... with untwisted partials
    anti = sp.expand(qpartial(d2f, x1) - qpartial(d1f, x2))
    print("d∘d coefficient on dx1^dx2 for untwisted convention:", anti)
    # and the twisted alternative fails
    anti_twisted = sp.expand(qpartial(d2f, x1).subs(x1, q * x1) - qpartial(d1f, x2))
    print("a cross-twisted variant leaves:", sp.simplify(anti_twisted) != 0)


if __name__ == "__main__":
    main()
