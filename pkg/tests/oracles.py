"""Independent brute-force oracles; nothing here touches the Groebner engine."""

from fractions import Fraction
from typing import Dict, List, Tuple

Bivariate = Dict[Tuple[int, int], Fraction]  # (deg_x, deg_y) -> coefficient


def _det(rows: List[List[Fraction]]) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return det


def _x_coeffs(f: Bivariate, y0: Fraction) -> List[Fraction]:
    dx = max(i for i, _ in f)
    out = [Fraction(0)] * (dx + 1)
    for (i, j), c in f.items():
        out[dx - i] += c * y0**j
    return out  # highest degree first


def sylvester_resultant_at(f: Bivariate, g: Bivariate, y0) -> Fraction:
    a, b = _x_coeffs(f, Fraction(y0)), _x_coeffs(g, Fraction(y0))
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for k in range(n):
        rows.append([Fraction(0)] * k + a + [Fraction(0)] * (size - m - 1 - k))
    for k in range(m):
        rows.append([Fraction(0)] * k + b + [Fraction(0)] * (size - n - 1 - k))
    return _det(rows)


def _poly_mul_linear(p: List[Fraction], root: Fraction) -> List[Fraction]:
    # p(y) * (y - root); coefficients lowest degree first
    out = [Fraction(0)] * (len(p) + 1)
    for k, c in enumerate(p):
        out[k + 1] += c
        out[k] -= c * root
    return out


def resultant_in_y(f: Bivariate, g: Bivariate) -> List[Fraction]:
    """Res_x(f, g) as coefficients in y (lowest first), by evaluation at
    enough integer points and Lagrange interpolation."""
    dxf = max(i for i, _ in f)
    dxg = max(i for i, _ in g)
    dyf = max(j for _, j in f)
    dyg = max(j for _, j in g)
    bound = dxf * dyg + dxg * dyf
    pts = [Fraction(k) for k in range(bound + 1)]
    vals = [sylvester_resultant_at(f, g, y) for y in pts]
    coeffs = [Fraction(0)] * (bound + 1)
    for k, (yk, vk) in enumerate(zip(pts, vals)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for l, yl in enumerate(pts):
            if l != k:
                basis = _poly_mul_linear(basis, yl)
                denom *= yk - yl
        for d, c in enumerate(basis):
            coeffs[d] += vk * c / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def brute_force_fixed_points(F, X, box):
    """Points x of X in ``box`` (an iterable of coordinate tuples) with
    F(x) on X and F(F(x)) = x."""
    out = []
    for x in box:
        if all(P.evaluate(x).is_zero() for P in X):
            fx = F(x)
            if all(P.evaluate(fx).is_zero() for P in X) and F(fx) == tuple(x):
                out.append(tuple(x))
    return out
