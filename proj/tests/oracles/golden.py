"""Independent oracle for the frozen values used in the C++ tests.

Degrees are computed by Groebner-basis reduction in sympy (a route that
shares no code with either the closed-form recursion or the C++ rewrite
system). Real values come from mpmath at 200 digits.
"""
import math
import sympy as sp
from mpmath import mp, mpf, log, e, exp, cbrt, sqrt, factorial, floor

mp.dps = 200


def tower_degree(base_dim, levels):
    H = sp.Symbol("H")
    gens = [H]
    rels = [H ** (base_dim + 1)]
    iota, amp = base_dim + 1, H  # ample generator as linear form
    anti = (base_dim + 1) * H
    for j, (r, c) in enumerate(levels):
        x = sp.Symbol(f"x{j}")
        gens.append(x)
        rels.append(sp.expand(x ** (r + 1) - c * amp * x ** r))
        if r == 0:
            # P(O(cH)) is the base itself
            rels[-1] = sp.expand(x - c * amp)
            continue
        anti = sp.expand((r + 1) * x + anti - c * amp)
        poly = sp.Poly(anti, *gens)
        iota = math.gcd(*[int(v) for v in poly.coeffs()])
        amp = sp.expand(anti / iota)
    n = base_dim + sum(r for r, _ in levels)
    G = sp.groebner(rels, *reversed(gens), order="lex")
    top = sp.expand(anti ** n)
    _, rem = G.reduce(top)
    fund = H ** base_dim
    for j, (r, _) in enumerate(levels):
        fund *= sp.Symbol(f"x{j}") ** r
    return sp.Poly(rem, *gens).coeff_monomial(fund), iota


if __name__ == "__main__":
    cases = {
        "P4": (4, []),
        "batyrev2": (1, [(1, 1)]),
        "batyrev3": (2, [(1, 2)]),
        "batyrev4": (3, [(1, 3)]),
        "prop1_3": (1, [(2, 1)]),
        "prop1_4": (2, [(2, 2)]),
        "iv4": (2, [(2, 0)]),
        "iv5c": (3, [(2, 1)]),
        "iv8": (5, [(3, 2)]),
        "y72": (4, [(3, 1)]),
        "p2_83": (4, [(3, 1), (1, 2)]),
        "mixed": (2, [(1, 1), (0, 1), (2, 1)]),
        "three": (1, [(1, 1), (1, 1), (1, 0)]),
    }
    for name, (b, lv) in cases.items():
        print(name, *tower_degree(b, lv))
    print("27/(10 log 3)", mpf(27) / (10 * log(3)))
    print("(3n^2/(10log n))^n n=3", (mpf(27) / (10 * log(3))) ** 3)
    print("n=4 prop1 rhs", (mpf(48) / (10 * log(4))) ** 4)
    print("iv rhs n=4", (mpf(16) / (7 * log(4))) ** 4)
    print("iv rhs n=5", (mpf(25) / (7 * log(5))) ** 5)
    print("cbrt54", cbrt(54))
    print("sqrt8", sqrt(8))
    print("floors", [int(floor(mpf(n) / log(n))) for n in range(2, 30)])
    print("8/(2 log 8)", mpf(8) / (2 * log(8)))
    t1 = mpf(10) / (10 - 3 * e)
    t2 = mpf(14) / (7 - e)
    print("thr1", t1, exp(t1), int(floor(exp(t1))) + 1)
    print("thr2", t2, exp(t2), int(floor(exp(t2))) + 1)
    n = 500
    ke = (2 * n - 1) * (mpf(2) ** (n + 1) * factorial(n) ** 2 / factorial(2 * n)) ** (mpf(1) / n)
    print("KE500/(2n)", ke / (2 * n))
    bat = (mpf(2 * n - 1) ** n - 1) / (n - 1)
    print("bat500 delta/(2n)", bat ** (mpf(1) / n) / (2 * n))
