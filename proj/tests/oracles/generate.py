#!/usr/bin/env python3
"""Regenerates tests/oracles/values.inc from mpmath (independent of the C++ code).

usage: python3 tests/oracles/generate.py > tests/oracles/values.inc
"""
from mpmath import mp, mpf, mpc, gamma, digamma, rgamma, hyp2f1, pi, csc, sec, cos, sqrt, exp, conj, fabs, arg, im, re

mp.dps = 40


def c(x):
    x = mpc(x)
    return "{%s, %s}" % (mp.nstr(x.real, 20, min_fixed=-99, max_fixed=99), mp.nstr(x.imag, 20, min_fixed=-99, max_fixed=99))


def r(x):
    return mp.nstr(mpf(x), 20, min_fixed=-99, max_fixed=99)


out = []
emit = out.append

# --- special functions --------------------------------------------------------
emit("// gamma on the real line: x, Gamma(x)")
emit("inline const RealPair gamma_real[] = {")
for x in ["0.5", "3.7", "-2.5", "0.001", "17.25", "-0.3"]:
    emit("    {%s, %s}," % (r(x), r(gamma(mpf(x)))))
emit("};")

emit("// principal log Gamma: z, log Gamma(z)")
emit("inline const ComplexPair log_gamma_complex[] = {")
for z in [mpc(3.5, 2), mpc(-2.3, 0.7), mpc(0.1, -20), mpc(40, 1), mpc(-7.5, -0.25)]:
    emit("    {%s, %s}," % (c(z), c(mp.log(gamma(z)))))
emit("};")

emit("// digamma: z, psi(z)")
emit("inline const ComplexPair digamma_complex[] = {")
for z in [mpc(0.3, 0), mpc(-1.7, 0), mpc(2, 3), mpc(25, -4)]:
    emit("    {%s, %s}," % (c(z), c(digamma(z))))
emit("};")

emit("// 1/Gamma: x, 1/Gamma(x)")
emit("inline const RealPair recip_gamma_real[] = {")
for x in ["-3", "-2.5", "0", "4.5"]:
    emit("    {%s, %s}," % (r(x), r(rgamma(mpf(x)))))
emit("};")

# side: 0 none, 1 above, -1 below (only used for real z > 1)
a8 = mpf(8) / mpf("5.3")
hyp_cases = [
    (1, 1, 2, mpc(0.5), 0),
    (0.5, 1, 1.5, mpc(-1), 0),
    (1 - a8, 1 - a8, 2 - 2 * a8, exp(1j * pi / 3), 0),
    (a8, a8, 2 * a8, mpc(0.9, 0.3), 0),
    (0.5, 4 / mpf("5.3"), 1.5, mpc(-30), 0),
    (0.3, 0.7, 1.0, mpc(0.95), 0),
    (0.3, 0.7, 2.0, mpc(0.97), 0),
    (0.3, 0.7, 0.0 + 0.5, mpc(0.9, 0.1), 0),
    (1.3, 1.7, 2.0, mpc(0.8, -0.3), 0),
    (-3, 2.5, 1.2, mpc(0.7), 0),
    (-4, 0.5, -5.5, mpc(3, 1), 0),
    (1.2, 0.4, 2.3, mpc(-0.9, 0.5), 0),
    (0.7, 1.1, 1.9, mpc(5, 0.1), 0),
    (0.7, 1.1, 1.9, mpc(2), 1),
    (0.7, 1.1, 1.9, mpc(2), -1),
    (a8, a8, 2 * a8, mpc(2), 1),
    (a8, a8, 2 * a8, mpc(2), -1),
    (1.5, 2.5, 3.5, mpc(0.5, 0.8), 0),
    (0.2, 0.9, 0.6, mpc(-0.6, 0.8), 0),
    (0.25, 0.5, 1.75, mpc(0.45, -0.9), 0),
    (1, 1, 2, mpc(-1e4, 3), 0),
    (0.5, 0.5, 1, mpc(-200), 0),
    (2, 3, 4.5, mpc(1.1, 1.0), 0),
]
emit("// 2F1: a, b, c, z, side (0 none, 1 above the cut, -1 below), value")
emit("inline const HypCase hyp2f1_cases[] = {")
for a, b, cc, z, side in hyp_cases:
    zz = z + side * mpc(0, mpf(10) ** -35)
    v = hyp2f1(a, b, cc, zz)
    emit("    {%s, %s, %s, %s, %d, %s}," % (r(a), r(b), r(cc), c(z), side, c(v)))
emit("};")

# --- structure constants and crossing data -----------------------------------


def c112sq(k):
    return (pi * (csc(4 * pi / k) + csc(12 * pi / k)) * gamma(1 - 8 / k) * gamma(2 - 8 / k)) / (
        gamma(2 - 12 / k) * gamma(1 - 4 / k) ** 2 * gamma(4 / k))


def c2(k):
    return pi * (csc(8 * pi / k) + csc(16 * pi / k)) * sec(8 * pi / k) * gamma(2 - 8 / k) * gamma(4 / k) * gamma(
        (k - 8) / k) * gamma(2 * (k - 6) / k) / (2 * gamma(8 / k) ** 2 * gamma(2 * (k - 8) / k) ** 2 * gamma((k - 4) / k) ** 2)


def c3(k):
    return -(k - 8) * sec(8 * pi / k) * gamma(20 / k - 1) * gamma(2 * (k - 6) / k) / (
        2 * (k - 16) * gamma(12 / k) * gamma((k - 4) / k))


def d1(k):
    return (k - 8) * (2 * cos(8 * pi / k) + 1) ** 2 * gamma((k - 12) / k) * gamma(2 * (k - 6) / k) / (
        (k - 16) * (2 * cos(8 * pi / k) + 2 * cos(16 * pi / k) + 1) * gamma(2 - 20 / k) * gamma((k - 4) / k))


def limit(f, k):
    # symmetric limit for removable singularities at special kappa
    try:
        return f(k)
    except (ZeroDivisionError, ValueError):
        e = mpf(10) ** -15
        return (f(k * (1 + e)) + f(k * (1 - e))) / 2


emit("// kappa, C112, C222, C224")
emit("inline const StructCase structure_cases[] = {")
for ks in ["2.2", "3", "3.5", "4.5", "5", "5.3", "6", "6.5", "7.5", "7.9"]:
    k = mpf(ks)
    vals = [sqrt(limit(c112sq, k)), sqrt(-limit(c2, k)), sqrt(limit(d1, k))]
    emit("    {%s, %s, %s, %s}," % (r(k), *[r(re(v)) if fabs(im(v)) < 1e-30 else "NAN" for v in vals]))
emit("};")

emit("// kappa, F11, F12, F21, F22, cst1, c2, c3, d1")
emit("inline const CrossingCase crossing_cases[] = {")
for ks in ["5.3", "6.7", "4.7", "7.3"]:
    k = mpf(ks)
    b2 = 4 / k
    F11 = -sec(pi * b2) / 2
    F12 = gamma(1 - 2 * b2) * gamma(2 - 2 * b2) / (gamma(2 - 3 * b2) * gamma(1 - b2))
    F21 = gamma(2 * b2) * gamma(2 * b2 - 1) / (gamma(b2) * gamma(3 * b2 - 1))
    F22 = sec(pi * b2) / 2
    emit("    {%s, %s, %s, %s, %s, %s, %s, %s, %s}," % (
        r(k), r(F11), r(F12), r(F21), r(F22), r(c112sq(k)), r(c2(k)), r(c3(k)), r(d1(k))))
emit("};")

# --- densities ----------------------------------------------------------------


def dims(k):
    return dict(d21=3 / k - mpf(1) / 2, d31=8 / k - 1, d51=24 / k - 2, ds=mpf(1) / 2 - 1 / k - 3 * k / 64,
                d10=(8 - k) / 16, d20=-k / 16 + 3 / k + mpf(1) / 2)


def bracket(L, z):
    # |xi^2/(1-xi)| written in z: 16 |z - zb|^2 L^2 / (16 |z|^4 - 4 (z^2 + zb^2) L^2 + L^4)
    zb = conj(z)
    den = 16 * (z * zb) ** 2 - 4 * (z * z + zb * zb) * L ** 2 + L ** 4
    return re(16 * fabs(z - zb) ** 2 * L ** 2 / den)


def xi_of(L, z):
    x1, x2 = -L / 2, L / 2
    return (x1 - x2) * (z - conj(z)) / ((x1 - z) * (x2 - conj(z)))


def h1(k, x):
    a = 8 / k
    return (x / (x - 1)) ** (a - 1) * hyp2f1(1 - a, 1 - a, 2 - 2 * a, x)


def h2(k, x):
    a = 8 / k
    return x ** (3 * a - 2) * (x - 1) ** (1 - a) * hyp2f1(a, a, 2 * a, x)


def rho(kind, k, L, z):
    d = dims(k)
    y = im(z)
    if kind == "rho110":
        zb = conj(z)
        A = L ** 2 - 4 * z * zb
        s = sqrt(re(L ** 4 - 4 * L ** 2 * (z * z + zb * zb) + 16 * (z * zb) ** 2))
        return L ** (-2 * d["d21"]) * (2 * y) ** (-2 * d["ds"]) * re(1 + A / s) ** (d["d31"] / 2)
    if kind == "rho112":
        return sqrt(limit(c112sq, k)) * L ** (-2 * d["d21"]) * (2 * y) ** (-2 * d["d10"]) * bracket(L, z) ** (d["d31"] / 2)
    if kind == "rho220":
        return sqrt(-limit(c2, k)) * L ** (-2 * d["d31"]) * (2 * y) ** (-2 * d["ds"]) * bracket(L, z) ** (d["d31"] / 2)
    if kind == "rho224":
        return sqrt(limit(d1, k)) * L ** (-2 * d["d31"]) * (2 * y) ** (-2 * d["d20"]) * bracket(L, z) ** (d["d51"] / 2)
    if kind == "rho222_lower":
        x = xi_of(L, z)
        pref = sqrt(-limit(c2, k)) * L ** (-2 * d["d31"]) * (2 * y) ** (-2 * d["d10"])
        if fabs(z) < L / 2:
            c1 = exp(-16j * pi / k) * (2 * pi * k / (k - 16)) * gamma(16 / k) ** 2 / gamma(8 / k) ** 4
            cc2 = exp(-24j * pi / k) / cos(8 * pi / k)
            v = 1j * c1 * h1(k, x) + cc2 * h2(k, x)
        else:
            v = h2(k, x)
        return pref * fabs(v)
    raise ValueError(kind)


emit("// kind, kappa, L, z, density")
emit("inline const DensityCase density_cases[] = {")
pts = [(1, mpc(0, 0.5)), (1, mpc(0.2, 0.1)), (1, mpc(-0.7, 0.3)), (2.5, mpc(1.1, 2.0)), (1, mpc(0.05, 0.01)),
       (0.3, mpc(-0.1, 0.05))]
for kind, kappas in [("rho110", ["6", "5.3", "7.5"]), ("rho112", ["6", "3.1", "5.3"]), ("rho220", ["6", "6.7"]),
                     ("rho224", ["6", "5.3"]), ("rho222_lower", ["6", "5.3", "7.1"])]:
    for ks in kappas:
        k = mpf(ks)
        for L, z in pts:
            L = mpf(L)
            if kind == "rho222_lower" and fabs(fabs(z) - L / 2) < 1e-12:
                continue
            emit('    {"%s", %s, %s, %s, %s},' % (kind, r(k), r(L), c(z), r(rho(kind, k, L, z))))
emit("};")


def lpp(k, z):
    u = -re(z) / im(z)
    return 0.5 - gamma(4 / k) / (sqrt(pi) * gamma(4 / k - mpf(1) / 2)) * u * hyp2f1(0.5, 4 / k, 1.5, -u * u)


emit("// kappa, z, left-passage probability")
emit("inline const LppCase lpp_cases[] = {")
for ks in ["6", "2", "3.3", "7.9"]:
    for z in [mpc(1, 1), mpc(-0.3, 2), mpc(5, 0.01), mpc(-40, 0.5)]:
        emit("    {%s, %s, %s}," % (r(mpf(ks)), c(z), r(lpp(mpf(ks), z))))
emit("};")

print("// generated by tests/oracles/generate.py (mpmath, %d digits); do not edit" % mp.dps)
print("\n".join(out))
