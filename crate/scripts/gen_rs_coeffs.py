"""Generate Riemann-Siegel correction polynomial tables C_0..C_4.

Each C_k(p) is expanded around p = 1/2 as a power series in x = p - 1/2,
using the classical derivative formulas for Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p).
Writes a Rust source file with the coefficients in the variable x^2
(even functions) or x * x^2 (odd functions).
"""
import sys
import mpmath as mp

mp.mp.dps = 80
DEG = 90
pi = mp.pi


def psi(p):
    return mp.cos(2 * pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * pi * p)


tay = mp.taylor(lambda x: psi(mp.mpf(1) / 2 + x), 0, DEG + 14)


def deriv(c, m):
    out = []
    for k in range(len(c) - m):
        f = mp.mpf(1)
        for j in range(m):
            f *= k + m - j
        out.append(c[k + m] * f)
    return out


def comb(terms):
    res = [mp.mpf(0)] * (DEG + 1)
    for coef, m in terms:
        d = deriv(tay, m)
        for k in range(DEG + 1):
            res[k] += coef * d[k]
    return res


C = [
    comb([(1, 0)]),
    comb([(-1 / (96 * pi**2), 3)]),
    comb([(1 / (64 * pi**2), 2), (1 / (18432 * pi**4), 6)]),
    comb([(-1 / (64 * pi**2), 1), (-1 / (3840 * pi**4), 5), (-1 / (5308416 * pi**6), 9)]),
    comb([
        (1 / (128 * pi**2), 0),
        (mp.mpf(19) / (24576 * pi**4), 4),
        (mp.mpf(11) / (5898240 * pi**6), 8),
        (1 / (2038431744 * pi**8), 12),
    ]),
]

out = sys.stdout
out.write("// Generated by scripts/gen_rs_coeffs.py. Do not edit by hand.\n\n")
for k, c in enumerate(C):
    parity = k % 2
    coeffs = [c[j] for j in range(parity, DEG + 1, 2)]
    # drop terms that cannot matter for |x| <= 1/2
    last = max(i for i, v in enumerate(coeffs) if abs(v) * mp.mpf(0.5) ** (2 * i + parity) > mp.mpf(10) ** -22)
    coeffs = coeffs[: last + 1]
    kind = "x^2" if parity == 0 else "x * x^2"
    out.write(f"/// C_{k} as a polynomial in {kind}, x = p - 1/2.\n")
    out.write(f"pub(crate) const C{k}: [f64; {len(coeffs)}] = [\n")
    for v in coeffs:
        out.write(f"    {mp.nstr(v, 20, min_fixed=1, max_fixed=0)},\n")
    out.write("];\n\n")
