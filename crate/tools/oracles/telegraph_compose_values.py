#!/usr/bin/env python3
"""Reference values for the telegraph process (1D and planar), its
characteristic functions, and the Brownian-time compositions, computed
with mpmath.

Identities checked here: Fourier transform of the 1D density against
the characteristic function, mass balances including singular parts,
Poisson-mixture decompositions of the planar laws, and the 2D Fourier
transforms of the composed planar densities against the closed
Mittag-Leffler form.
"""

import time

from mpmath import mp

mp.dps = 60

_t0 = time.time()


def show(label, value):
    print(f"{label} = {mp.nstr(mp.mpf(value), 17)}", flush=True)


def mark(section):
    print(f"# [{time.time() - _t0:7.1f}s] {section}", flush=True)


# ---------------------------------------------------------------------------
# 1D telegraph process: absolutely continuous part and atoms e^{-lam t}/2
# at +-ct; characteristic function in cosh/sinh (cos/sin) branch form.

def tele_pdf(x, t, lam, c):
    x, t, lam, c = mp.mpf(x), mp.mpf(t), mp.mpf(lam), mp.mpf(c)
    if abs(x) >= c * t:
        return mp.mpf(0)
    g = mp.sqrt(c ** 2 * t ** 2 - x ** 2)
    u = lam / c * g
    return mp.exp(-lam * t) / (2 * c) * (lam * mp.besseli(0, u)
                                         + lam * c * t * mp.besseli(1, u) / g)


def tele_char(xi, t, lam, c):
    xi, t, lam, c = mp.mpf(xi), mp.mpf(t), mp.mpf(lam), mp.mpf(c)
    w = (lam ** 2 - c ** 2 * xi ** 2) * t ** 2
    if w >= 0:
        r = mp.sqrt(w)
        cc, ss = mp.cosh(r), (mp.sinh(r) / r if r > 0 else mp.mpf(1))
    else:
        r = mp.sqrt(-w)
        cc, ss = mp.cos(r), mp.sin(r) / r
    return mp.exp(-lam * t) * (cc + lam * t * ss)


mark("1D telegraph density and characteristic function")
show("tele_pdf(0,1;1,1)  ", tele_pdf(0, 1, 1, 1))
show("tele_pdf(0.5,1;1,1)", tele_pdf("0.5", 1, 1, 1))
show("tele_pdf(0.9,1;1,1)", tele_pdf("0.9", 1, 1, 1))

# edge limit: pdf -> (e^{-lam t}/2c)(lam + lam^2 t/2) as |x| -> ct
for t, lam, c in [(1, 1, 1), (mp.mpf("0.7"), 2, mp.mpf("1.5"))]:
    edge = tele_pdf(mp.mpf(c) * t - mp.mpf("1e-25"), t, lam, c)
    lim = mp.exp(-mp.mpf(lam) * t) / (2 * mp.mpf(c)) * (lam + mp.mpf(lam) ** 2 * t / 2)
    assert abs(edge - lim) < mp.mpf("1e-20")
print("# edge limit matches", flush=True)

for t, lam, c in [(1, 1, 1), (mp.mpf("0.7"), 2, mp.mpf("1.5"))]:
    mass = mp.quad(lambda x: tele_pdf(x, t, lam, c),
                   [-mp.mpf(c) * t, 0, mp.mpf(c) * t]) + mp.exp(-mp.mpf(lam) * t)
    assert abs(mass - 1) < mp.mpf("1e-40")
print("# 1D mass identities pass", flush=True)

for xi, t, lam, c in [(mp.mpf("0.5"), 1, 1, 1), (2, 1, 1, 1),
                      (1, mp.mpf("0.7"), 2, mp.mpf("1.5"))]:
    ft = (mp.quad(lambda x: mp.cos(mp.mpf(xi) * x) * tele_pdf(x, t, lam, c),
                  [-mp.mpf(c) * t, 0, mp.mpf(c) * t])
          + mp.exp(-mp.mpf(lam) * t) * mp.cos(mp.mpf(xi) * mp.mpf(c) * t))
    cf = tele_char(xi, t, lam, c)
    assert abs(ft - cf) < mp.mpf("1e-40")
show("tele_char(0.5;1,1,1)", tele_char("0.5", 1, 1, 1))
show("tele_char(2;1,1,1)  ", tele_char(2, 1, 1, 1))

# fractional characteristic function: c^2 xi^2 -> c^2 |xi|^(2 beta)
def tele_frac_char(beta, xi, t, lam, c):
    beta, xi = mp.mpf(beta), mp.mpf(xi)
    return tele_char(abs(xi) ** beta, t, lam, c)


assert abs(tele_frac_char("0.5", 1, 1, 1, 1) - 2 / mp.e) < mp.mpf("1e-50")
show("tele_frac_char(b=0.7,xi=1.3;1,1,1)", tele_frac_char("0.7", "1.3", 1, 1, 1))

# ---------------------------------------------------------------------------
# planar motion with uniformly redrawn directions: 2D density r on rho < ct
# plus arc mass e^{-lam t} at rho = ct; second model frak-r with AC mass
# 1 - e^{-2 lam t}; conditional laws given N(t)=n and Poisson mixtures.

def r_planar(rho, t, lam, c):
    rho, t, lam, c = mp.mpf(rho), mp.mpf(t), mp.mpf(lam), mp.mpf(c)
    if rho >= c * t:
        return mp.mpf(0)
    g = mp.sqrt(c ** 2 * t ** 2 - rho ** 2)
    return lam / (2 * mp.pi * c) * mp.exp(-lam * t + lam / c * g) / g


def rfrak_planar(rho, t, lam, c):
    rho, t, lam, c = mp.mpf(rho), mp.mpf(t), mp.mpf(lam), mp.mpf(c)
    if rho >= c * t:
        return mp.mpf(0)
    g = mp.sqrt(c ** 2 * t ** 2 - rho ** 2)
    a = lam / c * g
    return lam * mp.exp(-lam * t) / (2 * mp.pi * c) * (mp.exp(a) + mp.exp(-a)) / g


def cond_planar(n, rho, t, c):
    # conditional 2D density given N(t) = n, normalization-forced constant
    rho, t, c = mp.mpf(rho), mp.mpf(t), mp.mpf(c)
    return n / (2 * mp.pi * (c * t) ** n) * (c ** 2 * t ** 2 - rho ** 2) ** (mp.mpf(n) / 2 - 1)


mark("planar densities")
show("r_rad(0.5,1;1,1)    ", 2 * mp.pi * mp.mpf("0.5") * r_planar("0.5", 1, 1, 1))
show("rfrak_rad(0.5,1;1,1)", 2 * mp.pi * mp.mpf("0.5") * rfrak_planar("0.5", 1, 1, 1))
show("rfrak_2d(0.3,0.4,1) ", rfrak_planar("0.5", 1, 1, 1))

for t, lam, c in [(1, 1, 1), (mp.mpf("0.5"), 2, mp.mpf("1.5"))]:
    t, lam, c = mp.mpf(t), mp.mpf(lam), mp.mpf(c)
    m_r = mp.quad(lambda rho: 2 * mp.pi * rho * r_planar(rho, t, lam, c), [0, c * t / 2, c * t])
    assert abs(m_r - (1 - mp.exp(-lam * t))) < mp.mpf("1e-25")
    m_f = mp.quad(lambda rho: 2 * mp.pi * rho * rfrak_planar(rho, t, lam, c), [0, c * t / 2, c * t])
    assert abs(m_f - (1 - mp.exp(-2 * lam * t))) < mp.mpf("1e-25")
print("# planar mass identities pass", flush=True)

# radial CDFs used by the sampling tests
def cdf_r(rho, t, lam, c):
    rho, t, lam, c = mp.mpf(rho), mp.mpf(t), mp.mpf(lam), mp.mpf(c)
    g = mp.sqrt(c ** 2 * t ** 2 - rho ** 2)
    return (1 - mp.exp(-lam * t + lam / c * g)) / (1 - mp.exp(-lam * t))


def cdf_rfrak(rho, t, lam, c):
    rho, t, lam, c = mp.mpf(rho), mp.mpf(t), mp.mpf(lam), mp.mpf(c)
    g = mp.sqrt(c ** 2 * t ** 2 - rho ** 2)
    return (1 - mp.exp(-2 * lam * t) - 2 * mp.exp(-lam * t) * mp.sinh(lam / c * g)) \
        / (1 - mp.exp(-2 * lam * t))


for rho in [mp.mpf("0.3"), mp.mpf("0.8")]:
    qr = mp.quad(lambda u: 2 * mp.pi * u * r_planar(u, 1, 1, 1), [0, rho]) / (1 - mp.exp(-1))
    qf = mp.quad(lambda u: 2 * mp.pi * u * rfrak_planar(u, 1, 1, 1), [0, rho]) / (1 - mp.exp(-2))
    assert abs(qr - cdf_r(rho, 1, 1, 1)) < mp.mpf("1e-40")
    assert abs(qf - cdf_rfrak(rho, 1, 1, 1)) < mp.mpf("1e-40")
show("cdf_r(0.5,1;1,1)    ", cdf_r("0.5", 1, 1, 1))
show("cdf_rfrak(0.5,1;1,1)", cdf_rfrak("0.5", 1, 1, 1))

# Poisson mixtures of the conditional laws reproduce r and frak-r
mark("planar mixtures")
for rho in [mp.mpf("0.3"), mp.mpf("0.7")]:
    full = mp.nsum(lambda n: mp.exp(-1) / mp.factorial(n) * cond_planar(int(n), rho, 1, 1),
                   [1, 60])
    assert abs(full - r_planar(rho, 1, 1, 1)) < mp.mpf("1e-14")
    odd = 2 * mp.nsum(lambda k: mp.exp(-1) / mp.factorial(2 * int(k) + 1)
                      * cond_planar(2 * int(k) + 1, rho, 1, 1), [0, 30])
    assert abs(odd - rfrak_planar(rho, 1, 1, 1)) < mp.mpf("1e-14")
print("# mixture identities pass (n <= 60)", flush=True)

# conditional radial CDF: F_n(rho) = 1 - (1 - rho^2/(ct)^2)^(n/2)
for n in [1, 2, 5]:
    v = mp.quad(lambda u: 2 * mp.pi * u * cond_planar(n, u, 1, 1), [0, mp.mpf("0.6")])
    assert abs(v - (1 - (1 - mp.mpf("0.36")) ** (mp.mpf(n) / 2))) < mp.mpf("1e-40")
print("# conditional radial CDF closed form passes", flush=True)

# ---------------------------------------------------------------------------
# 1D composition: density of B(c^2 Lcal_1/2(t)) via the first-passage density,
# with s = t sin^2(theta) substitution, against the iterated-BM density and
# the Mittag-Leffler characteristic function.

def w1half(x, t, lam, c):
    x, t, lam, c = mp.mpf(x), mp.mpf(t), mp.mpf(lam), mp.mpf(c)

    def f(theta):
        s = t * mp.sin(theta) ** 2
        if s == 0 or s == t:
            return mp.mpf(0)
        return 2 * mp.exp(-x ** 2 / (4 * c ** 2 * s) - lam ** 2 * s ** 2 / (t - s)) \
            * (s / (2 * (t - s)) + 1)

    return lam / (c * mp.pi) * mp.quad(f, [0, mp.pi / 2])


def ibm(x, t):
    x, t = mp.mpf(x), mp.mpf(t)

    def f(u):
        if u == 0:
            return mp.mpf(0)
        return mp.exp(-x ** 2 / (4 * u ** 2) - u ** 4 / t)

    return 2 / (mp.pi * mp.sqrt(t)) * mp.quad(f, [0, (45 * t) ** mp.mpf("0.25")])


mark("1D composition density")
with mp.workdps(30):
    show("w1half(0,1;1,1)  ", w1half(0, 1, 1, 1))
    show("w1half(0.5,1;1,1)", w1half("0.5", 1, 1, 1))
    show("w1half(1.2,1;1,1)", w1half("1.2", 1, 1, 1))
    show("w1half(0.5,1;2,1)", w1half("0.5", 1, 2, 1))

with mp.workdps(25):
    m = mp.quad(lambda x: w1half(x, 1, 1, 1), [0, 1, 4, 12]) * 2
print(f"# w1half mass diff = {mp.nstr(abs(m-1), 3)}", flush=True)
assert abs(m - 1) < mp.mpf("1e-12")

# Fourier transform at xi=0.5 equals the Mittag-Leffler form with
# E_(1/2)(z) = exp(z^2) erfc(-z), s = sqrt(lam^2 - c^2 xi^2)
def w_char_half(gam, lam, t):
    gam, lam, t = mp.mpf(gam), mp.mpf(lam), mp.mpf(t)
    s = mp.sqrt(lam ** 2 - gam)
    r1, r2 = -lam + s, -lam - s
    e1 = mp.exp(r1 ** 2 * t) * mp.erfc(-r1 * mp.sqrt(t))
    e2 = mp.exp(r2 ** 2 * t) * mp.erfc(-r2 * mp.sqrt(t))
    return ((1 + lam / s) * e1 + (1 - lam / s) * e2) / 2


with mp.workdps(25):
    ft = 2 * mp.quad(lambda x: mp.cos(mp.mpf("0.5") * x) * w1half(x, 1, 1, 1), [0, 1, 4, 12])
target = w_char_half(mp.mpf("0.25"), 1, 1)
print(f"# w1half fourier diff = {mp.nstr(abs(ft-target), 3)}", flush=True)
assert abs(ft - target) < mp.mpf("1e-12")
show("w_char(nu=1/2,gam=0.25,lam=1,t=1)", target)
show("w_char(nu=1/2,gam=0.5,lam=1,t=1) ", w_char_half(mp.mpf("0.5"), 1, 1))
show("w_char(nu=1/2,gam=0.25,lam=2,t=1)", w_char_half(mp.mpf("0.25"), 2, 1))

mark("iterated-BM density and limit")
show("ibm(0,1)  ", ibm(0, 1))
show("ibm(0.5,1)", ibm("0.5", 1))
show("ibm(1,1)  ", ibm(1, 1))
assert abs(ibm(0, 1) - 2 * mp.gamma(mp.mpf("1.25")) / mp.pi) < mp.mpf("1e-18")
with mp.workdps(25):
    mi = 2 * mp.quad(lambda x: ibm(x, 1), [0, 1, 4, 12, 20])
assert abs(mi - 1) < mp.mpf("1e-14")

# limit of w1half with lam = c^2 = K toward ibm: monotone gaps, final <= 5e-3
with mp.workdps(25):
    for x in [mp.mpf(0), mp.mpf("0.5"), mp.mpf(1)]:
        gaps = []
        for K in [4, 16, 64]:
            gaps.append(abs(w1half(x, 1, K, mp.sqrt(mp.mpf(K))) - ibm(x, 1)))
        print(f"# ibm gap x={mp.nstr(x,3)}: " + ", ".join(mp.nstr(g, 6) for g in gaps),
              flush=True)
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] <= mp.mpf("5e-3")

# ---------------------------------------------------------------------------
# planar compositions: q = r composed with |B(t)|, and frak-q with the
# extra fractional-derivative weight; p_|B|(s,t) = exp(-s^2/4t)/sqrt(pi t).

def p_absb(s, t):
    s, t = mp.mpf(s), mp.mpf(t)
    return mp.exp(-s ** 2 / (4 * t)) / mp.sqrt(mp.pi * t)


def q_planar(rho, t, lam, c):
    rho, t, lam, c = mp.mpf(rho), mp.mpf(t), mp.mpf(lam), mp.mpf(c)
    s0 = rho / c
    return mp.quad(lambda s: r_planar(rho, s, lam, c) * p_absb(s, t),
                   [s0, s0 + mp.mpf("0.5"), s0 + 2, s0 + 8, 40])


def qfrak_planar(rho, t, lam, c):
    rho, t, lam, c = mp.mpf(rho), mp.mpf(t), mp.mpf(lam), mp.mpf(c)
    s0 = rho / c

    def f(s):
        w = p_absb(s, t) + s * mp.exp(-s ** 2 / (4 * t)) / (4 * lam * mp.sqrt(mp.pi) * t ** mp.mpf("1.5"))
        return rfrak_planar(rho, s, lam, c) * w

    return mp.quad(f, [s0, s0 + mp.mpf("0.5"), s0 + 2, s0 + 8, 40])


mark("planar compositions")
with mp.workdps(30):
    show("q(0.3,0.4,1;1,1) ", q_planar("0.5", 1, 1, 1))
    show("q(1,0,1;1,1)     ", q_planar(1, 1, 1, 1))
    show("qfrak(0.3,0.4,1) ", qfrak_planar("0.5", 1, 1, 1))
    show("qfrak(0.7,0,1)   ", qfrak_planar("0.7", 1, 1, 1))
    show("qfrak(1.2,0,1)   ", qfrak_planar("1.2", 1, 1, 1))

# smeared boundary mass of the composition: int e^{-lam s} p_|B|(s,t) ds
smear = mp.exp(1) * mp.erfc(1)
show("smear mass(1,1)", smear)
assert abs(mp.quad(lambda s: mp.exp(-s) * p_absb(s, 1), [0, 2, 10, 50]) - smear) < mp.mpf("1e-40")

mark("planar composition masses")
with mp.workdps(22):
    mq = mp.quad(lambda rho: 2 * mp.pi * rho * q_planar(rho, 1, 1, 1),
                 [0, mp.mpf("0.5"), 2, 8, 25], maxdegree=5)
print(f"# q mass + smear - 1 = {mp.nstr(abs(mq + smear - 1), 3)}", flush=True)
assert abs(mq + smear - 1) < mp.mpf("1e-8")

with mp.workdps(22):
    mqf = mp.quad(lambda rho: 2 * mp.pi * rho * qfrak_planar(rho, 1, 1, 1),
                  [0, mp.mpf("0.5"), 2, 8, 25], maxdegree=5)
print(f"# qfrak mass - 1 = {mp.nstr(abs(mqf - 1), 3)}", flush=True)
assert abs(mqf - 1) < mp.mpf("1e-8")

mark("planar composition Fourier")
# 2D Fourier of the radial density: 2 pi int rho qfrak(rho) J0(k rho) drho,
# matching the Mittag-Leffler form with gam = c^2 k^2
for k2 in [mp.mpf("0.5"), mp.mpf("0.25")]:
    k = mp.sqrt(k2)
    with mp.workdps(22):
        ftq = mp.quad(lambda rho: 2 * mp.pi * rho * mp.besselj(0, k * rho)
                      * qfrak_planar(rho, 1, 1, 1),
                      [0, mp.mpf("0.5"), 2, 8, 25], maxdegree=5)
    tgt = w_char_half(k2, 1, 1)
    print(f"# qfrak fourier k^2={mp.nstr(k2,3)}: diff = {mp.nstr(abs(ftq-tgt), 3)}", flush=True)
    assert abs(ftq - tgt) < mp.mpf("1e-8")

mark("done")
print("all telegraph/compose oracle checks passed", flush=True)
