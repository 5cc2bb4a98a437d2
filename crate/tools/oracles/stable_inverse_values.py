#!/usr/bin/env python3
"""Reference values for stable subordinator densities, inverse-stable
densities, first-passage-time densities, and composite subordinator
densities, computed with mpmath.

Every closed form is cross-checked against an independent route
(Talbot inversion of the known Laplace transform, or a Laplace-domain
identity) before its values are printed for freezing into tests.
Sections that nest quadratures run at reduced precision; their
tolerances still leave orders of magnitude of headroom over the f64
comparisons made in the tests.
"""

import math
import random
import time

from mpmath import mp

mp.dps = 60

THIRD = mp.mpf(1) / 3
TWO_THIRDS = mp.mpf(2) / 3

_t0 = time.time()


def show(label, value):
    print(f"{label} = {mp.nstr(mp.mpf(value), 17)}", flush=True)


def mark(section):
    print(f"# [{time.time() - _t0:7.1f}s] {section}", flush=True)


def talbot(f, t, degree=80, dps=50):
    with mp.workdps(dps):
        return mp.invertlaplace(f, t, method="talbot", degree=degree)


# ---------------------------------------------------------------------------
# stable subordinator densities h_nu(x, t), Laplace transform exp(-t mu^nu)

def h_half(x, t):
    x, t = mp.mpf(x), mp.mpf(t)
    return t * mp.exp(-t ** 2 / (4 * x)) / (2 * mp.sqrt(mp.pi) * x ** mp.mpf("1.5"))


def h_third(x, t):
    x, t = mp.mpf(x), mp.mpf(t)
    z = t / (3 * x) ** THIRD
    return t / (x * (3 * x) ** THIRD) * mp.airyai(z)


def h_twothirds(x, t):
    x, t = mp.mpf(x), mp.mpf(t)
    if x < mp.mpf("0.05") * t ** mp.mpf("1.5"):
        return mp.mpf(0)
    coeff = t * (4 / (3 * x ** 2)) ** THIRD

    def f(w):
        return mp.exp(-w) * w ** (-mp.mpf(1) / 6) * mp.airyai(-coeff * w ** THIRD)

    integral = mp.quad(f, [0, 2, 10, 40, 150])
    return t / (x * mp.sqrt(mp.pi)) * (4 / (3 * x ** 2)) ** THIRD * integral


def h_series(nu, x):
    # convergent series for h_nu(x, 1); usable for moderate x
    nu, x = mp.mpf(nu), mp.mpf(x)
    s = mp.mpf(0)
    for k in range(1, 800):
        term = ((-1) ** (k + 1) * mp.gamma(nu * k + 1) * mp.sin(mp.pi * nu * k)
                / mp.factorial(k) * x ** (-nu * k - 1))
        s += term
    return s / mp.pi


def h_talbot(nu, x, t):
    nu = mp.mpf(nu)
    return talbot(lambda s: mp.exp(-mp.mpf(t) * s ** nu), x)


mark("h_1/2, h_1/3 closed forms vs Talbot")
for x, t in [(1, 1), (mp.mpf("0.3"), 1), (2, mp.mpf("0.7"))]:
    closed = h_half(x, t)
    assert abs(closed - h_talbot(mp.mpf("0.5"), x, t)) < mp.mpf("1e-25")
    show(f"h_1/2({mp.nstr(mp.mpf(x),3)},{mp.nstr(mp.mpf(t),3)})", closed)

for x, t in [(mp.mpf("0.5"), 1), (mp.mpf("1.2"), 1), (mp.mpf("0.8"), mp.mpf("0.5"))]:
    closed = h_third(x, t)
    assert abs(closed - h_talbot(THIRD, x, t)) < mp.mpf("1e-25")
    show(f"h_1/3({mp.nstr(mp.mpf(x),3)},{mp.nstr(mp.mpf(t),3)})", closed)

mark("h_2/3 closed form vs Talbot")
for x, t in [(mp.mpf("0.5"), 1), (1, 1), (2, 1), (1, mp.mpf("0.4"))]:
    with mp.workdps(30):
        closed = h_twothirds(x, t)
    assert abs(closed - h_talbot(TWO_THIRDS, x, t)) < mp.mpf("1e-20")
    show(f"h_2/3({mp.nstr(mp.mpf(x),3)},{mp.nstr(mp.mpf(t),3)})", closed)

# Laplace identity: int_0^inf exp(-mu x) h_nu(x, t) dx = exp(-t mu^nu)
mark("Laplace identities for h")
for name, h, nu, dps, tol in [("1/2", h_half, mp.mpf("0.5"), 60, "1e-16"),
                              ("1/3", h_third, THIRD, 60, "1e-16"),
                              ("2/3", h_twothirds, TWO_THIRDS, 26, "1e-11")]:
    for mu in [mp.mpf(1), mp.mpf("0.25")]:
        with mp.workdps(dps):
            val = mp.quad(lambda x: mp.exp(-mu * x) * h(x, 1), [0, 1, 5, 20, 80, 240])
        target = mp.exp(-mu ** nu)
        print(f"# laplace h_{name} mu={mp.nstr(mu,3)}: diff = {mp.nstr(abs(val-target), 3)}",
              flush=True)
        assert abs(val - target) < mp.mpf(tol)

# general-order series against the closed forms and against Talbot
mark("general-order series")
assert abs(h_series("0.5", "1.5") - h_half("1.5", 1)) < mp.mpf("1e-30")
assert abs(h_series(THIRD, "1.2") - h_third("1.2", 1)) < mp.mpf("1e-30")
with mp.workdps(30):
    d = abs(h_series(TWO_THIRDS, 2) - h_twothirds(2, 1))
assert d < mp.mpf("1e-20")
for x in [1, mp.mpf("2.5")]:
    v = h_series("0.45", x)
    assert abs(v - h_talbot(mp.mpf("0.45"), x, 1)) < mp.mpf("1e-25")
    show(f"h_0.45({mp.nstr(mp.mpf(x),3)},1)", v)

# scaling law h_nu(x,t) = t^(-1/nu) h_nu(x t^(-1/nu), 1)
assert abs(h_third(mp.mpf("0.8"), mp.mpf("0.5"))
           - mp.mpf("0.5") ** (-3) * h_third(mp.mpf("0.8") * mp.mpf("0.5") ** (-3), 1)) < mp.mpf("1e-30")

# ---------------------------------------------------------------------------
# Kanter construction Monte Carlo check: with u ~ U(0, pi), w ~ Exp(1),
#   A = sin((1-nu)u) sin(nu u)^(nu/(1-nu)) / sin(u)^(1/(1-nu)),
#   S = (A/w)^((1-nu)/nu)  has  E exp(-mu S) = exp(-mu^nu).

def kanter_mean(nu, mu, n, seed):
    rng = random.Random(seed)
    acc = 0.0
    for _ in range(n):
        u = rng.random() * math.pi
        w = -math.log(1.0 - rng.random())
        ln_a = (math.log(math.sin((1 - nu) * u))
                + (nu / (1 - nu)) * math.log(math.sin(nu * u))
                - (1 / (1 - nu)) * math.log(math.sin(u)))
        s = math.exp(((1 - nu) / nu) * (ln_a - math.log(w)))
        acc += math.exp(-mu * s)
    return acc / n


mark("Kanter Monte Carlo")
for nu, mu in [(0.7, 1.3), (1.0 / 3.0, 2.0)]:
    est = kanter_mean(nu, mu, 400_000, seed=20240817)
    target = math.exp(-mu ** nu)
    print(f"# kanter nu={nu:.4f} mu={mu}: est={est:.6f} target={target:.6f}", flush=True)
    assert abs(est - target) < 5e-3

# ---------------------------------------------------------------------------
# inverse-stable densities l_nu(v, tau) with l_nu(v, tau) = (tau/(nu v)) h_nu(tau, v)

def l_half(v, tau):
    v, tau = mp.mpf(v), mp.mpf(tau)
    return mp.exp(-v ** 2 / (4 * tau)) / mp.sqrt(mp.pi * tau)


def l_third(v, tau):
    v, tau = mp.mpf(v), mp.mpf(tau)
    return 3 ** TWO_THIRDS * tau ** (-THIRD) * mp.airyai(v / (3 * tau) ** THIRD)


def l_twothirds(v, tau):
    v, tau = mp.mpf(v), mp.mpf(tau)
    if v > 20 * tau ** TWO_THIRDS:
        return mp.mpf(0)
    return 3 * tau / (2 * v) * h_twothirds(tau, v)


def wright_neg(nu, b, z, kmax=2000):
    # W_{-nu, b}(z) for moderate |z|
    nu, b, z = mp.mpf(nu), mp.mpf(b), mp.mpf(z)
    with mp.workdps(90):
        s = mp.mpf(0)
        zk = mp.mpf(1)
        for k in range(kmax):
            s += zk * mp.rgamma(-nu * k + b) / mp.factorial(k)
            zk *= z
        return +s


# Wright representation l_nu(v, tau) = tau^-nu W_{-nu,1-nu}(-v tau^-nu)
mark("inverse-stable densities")
for name, l, nu, v, tau in [("1/2", l_half, mp.mpf("0.5"), mp.mpf("0.7"), 1),
                            ("1/3", l_third, THIRD, mp.mpf("0.5"), 1),
                            ("2/3", l_twothirds, TWO_THIRDS, mp.mpf("0.6"), mp.mpf("1.1"))]:
    tau = mp.mpf(tau)
    direct = tau ** (-nu) * wright_neg(nu, 1 - nu, -mp.mpf(v) / tau ** nu)
    with mp.workdps(30):
        dl = abs(l(v, tau) - direct)
        dh = abs(l(v, tau) - tau / (nu * mp.mpf(v)) * {
            "1/2": h_half, "1/3": h_third, "2/3": h_twothirds}[name](tau, v))
    assert dl < mp.mpf("1e-18")
    assert dh < mp.mpf("1e-18")

show("l_1/2(0.5,1)", l_half("0.5", 1))
show("l_1/3(0.5,1)", l_third("0.5", 1))
show("l_1/3(1,2)  ", l_third(1, 2))
with mp.workdps(30):
    show("l_2/3(0.5,1)", l_twothirds("0.5", 1))

# normalization and mean: int l dv = 1, int v l dv = tau^nu / Gamma(1+nu)
mass = mp.quad(lambda v: l_third(v, 1), [0, 2, 6, 20, 40])
assert abs(mass - 1) < mp.mpf("1e-20")
mean = mp.quad(lambda v: v * l_third(v, 1), [0, 2, 6, 20, 40])
assert abs(mean - 1 / mp.gamma(1 + THIRD)) < mp.mpf("1e-20")
print("# l_1/3 mass and mean identities pass", flush=True)

# ---------------------------------------------------------------------------
# first-passage density lcal_nu(x, t) of the composite subordinator
# Hcal(s) = H^(2nu)(s) + (2 lam)^(1/nu) H^nu(s),
# i.e. density of Lcal(t) = inf{s : Hcal(s) > t}.
# Time-Laplace: int_0^inf exp(-mu t) lcal(x, t) dt
#             = (mu^(2nu-1) + 2 lam mu^(nu-1)) exp(-x (mu^(2nu) + 2 lam mu^nu))

def lcal_time_laplace(nu, lam, x, mu):
    nu, lam, x = mp.mpf(nu), mp.mpf(lam), mp.mpf(x)
    return ((mu ** (2 * nu - 1) + 2 * lam * mu ** (nu - 1))
            * mp.exp(-x * (mu ** (2 * nu) + 2 * lam * mu ** nu)))


def lcal_talbot(nu, lam, x, t, degree=80, dps=50):
    return talbot(lambda mu: lcal_time_laplace(nu, lam, x, mu), t,
                  degree=degree, dps=dps)


def lcal_half(x, t, lam):
    x, t, lam = mp.mpf(x), mp.mpf(t), mp.mpf(lam)
    if not 0 < x < t:
        return mp.mpf(0)
    return ((2 * lam * x / mp.sqrt(4 * mp.pi * (t - x) ** 3)
             + 2 * lam / mp.sqrt(mp.pi * (t - x)))
            * mp.exp(-lam ** 2 * x ** 2 / (t - x)))


mark("first-passage density, order 1/2")
for x, t, lam in [(mp.mpf("0.5"), 1, 1), (mp.mpf("0.2"), 1, 2)]:
    closed = lcal_half(x, t, lam)
    assert abs(closed - lcal_talbot(mp.mpf("0.5"), lam, x, t)) < mp.mpf("1e-20")
    show(f"lcal_1/2({mp.nstr(x,3)},{t};lam={lam})", closed)

# CDF identity for order 1/2: P(Lcal(t) < x) = erf(lam x / sqrt(t - x))
for x, t, lam in [(mp.mpf("0.5"), 1, 1), (mp.mpf("0.9"), 1, 2)]:
    cdf = mp.quad(lambda y: lcal_half(y, t, lam), [0, x])
    assert abs(cdf - mp.erf(lam * x / mp.sqrt(t - x))) < mp.mpf("1e-25")
print("# lcal_1/2 CDF identity passes", flush=True)

# order 1/3 via the convolution of closed-form components:
#   lcal(x,t) = int_0^t l_2/3(x, t-s) h_1/3(s, 2 lam x) ds
#             + 2 lam int_0^t l_1/3(2 lam x, s) h_2/3(t-s, x) ds

def lcal_third(x, t, lam):
    x, t, lam = mp.mpf(x), mp.mpf(t), mp.mpf(lam)
    t1 = mp.quad(lambda s: l_twothirds(x, t - s) * h_third(s, 2 * lam * x),
                 [0, t / 2, t])
    t2 = mp.quad(lambda s: l_third(2 * lam * x, s) * h_twothirds(t - s, x),
                 [0, t / 2, t])
    return t1 + 2 * lam * t2


mark("first-passage density, order 1/3 (convolution vs Talbot)")
for x in [mp.mpf("0.3"), mp.mpf("0.5"), mp.mpf("0.8"), mp.mpf("1.5")]:
    with mp.workdps(22):
        v = lcal_third(x, 1, 1)
    ref = lcal_talbot(THIRD, 1, x, 1)
    print(f"# lcal_1/3({mp.nstr(x,3)},1) talbot diff = {mp.nstr(abs(v-ref), 3)}", flush=True)
    assert abs(v - ref) < mp.mpf("1e-8")
    show(f"lcal_1/3({mp.nstr(x,3)},1;lam=1)", ref)

# masses (no atom: the composite subordinator is strictly increasing)
mark("first-passage masses")
with mp.workdps(22):
    m1 = mp.quad(lambda x: lcal_talbot(THIRD, 1, x, 1, degree=32, dps=24),
                 [mp.mpf("1e-8"), 1, 3, 8])
    m2 = mp.quad(lambda x: lcal_talbot(THIRD, 2, x, mp.mpf("0.5"), degree=32, dps=24),
                 [mp.mpf("1e-8"), 1, 4])
print(f"# lcal_1/3 mass(lam=1,t=1)   = {mp.nstr(m1, 12)}", flush=True)
print(f"# lcal_1/3 mass(lam=2,t=0.5) = {mp.nstr(m2, 12)}", flush=True)
assert abs(m1 - 1) < mp.mpf("1e-6")
assert abs(m2 - 1) < mp.mpf("1e-6")

# space-Laplace of lcal as a function of t:
#   int_0^inf exp(-gam x) lcal_nu(x,t) dx
#     = ((1 + lam/s) E_nu(r1 t^nu) + (1 - lam/s) E_nu(r2 t^nu)) / 2,
#   s = sqrt(lam^2 - gam), r1 = -lam + s, r2 = -lam - s

def ml(nu, z, kmax=200):
    nu, z = mp.mpf(nu), mp.mpf(z)
    s = mp.mpf(0)
    zk = mp.mpf(1)
    for k in range(kmax):
        s += zk * mp.rgamma(nu * k + 1)
        zk *= z
    return s


def lcal_space_laplace(nu, lam, gam, t):
    nu, lam, gam, t = mp.mpf(nu), mp.mpf(lam), mp.mpf(gam), mp.mpf(t)
    s = mp.sqrt(lam ** 2 - gam)
    r1, r2 = -lam + s, -lam - s
    return ((1 + lam / s) * ml(nu, r1 * t ** nu)
            + (1 - lam / s) * ml(nu, r2 * t ** nu)) / 2


# t-Laplace of the formula equals the double transform
# (mu^(2nu-1) + 2 lam mu^(nu-1)) / (mu^(2nu) + 2 lam mu^nu + gam): since the
# t-Laplace of E_nu(r t^nu) is mu^(nu-1)/(mu^nu - r) this is a partial-fraction
# identity, checked here exactly at numeric points.
mark("space-Laplace identities")
for nu, lam, gam, mu in [(THIRD, 1, mp.mpf("0.25"), mp.mpf("0.8")),
                         (mp.mpf("0.41"), mp.mpf("1.3"), mp.mpf("0.6"), mp.mpf("1.7")),
                         (mp.mpf("0.5"), 1, mp.mpf("0.5"), 1)]:
    nu, lam, gam, mu = mp.mpf(nu), mp.mpf(lam), mp.mpf(gam), mp.mpf(mu)
    s = mp.sqrt(lam ** 2 - gam)
    r1, r2 = -lam + s, -lam - s
    lhs = ((1 + lam / s) * mu ** (nu - 1) / (mu ** nu - r1)
           + (1 - lam / s) * mu ** (nu - 1) / (mu ** nu - r2)) / 2
    rhs = ((mu ** (2 * nu - 1) + 2 * lam * mu ** (nu - 1))
           / (mu ** (2 * nu) + 2 * lam * mu ** nu + gam))
    assert abs(lhs - rhs) < mp.mpf("1e-45")
print("# lcal space-Laplace partial-fraction identity passes", flush=True)

# direct numeric check at nu = 1/2 against the closed-form density; the
# Mittag-Leffler values E_(1/2)(z) = exp(z^2) erfc(-z) are closed-form there
for gam in [mp.mpf("0.25"), mp.mpf("0.5")]:
    num = mp.quad(lambda x: mp.exp(-gam * x) * lcal_half(x, 1, 1), [0, mp.mpf("0.5"), 1])
    val = lcal_space_laplace(mp.mpf("0.5"), 1, gam, 1)
    s = mp.sqrt(1 - gam)
    closed = ((1 + 1 / s) * mp.exp((-1 + s) ** 2) * mp.erfc(1 - s)
              + (1 - 1 / s) * mp.exp((1 + s) ** 2) * mp.erfc(1 + s)) / 2
    assert abs(num - val) < mp.mpf("1e-25")
    assert abs(closed - val) < mp.mpf("1e-40")
    show(f"lcal_xlap(1/2,lam=1,gam={mp.nstr(gam,3)},t=1)", val)

for gam in [mp.mpf("0.25"), mp.mpf("0.5")]:
    show(f"lcal_xlap(1/3,lam=1,gam={mp.nstr(gam,3)},t=1)",
         lcal_space_laplace(THIRD, 1, gam, 1))

show("lcal_tlap(1/2,lam=1,x=1,mu=1)", lcal_time_laplace(mp.mpf("0.5"), 1, 1, mp.mpf(1)))

# ---------------------------------------------------------------------------
# composite subordinator density hcal_nu(x, t):
#   E exp(-gam Hcal(t)) = exp(-t (gam^(2nu) + 2 lam gam^nu))

def hcal_half(x, t, lam):
    x, t, lam = mp.mpf(x), mp.mpf(t), mp.mpf(lam)
    if x <= t:
        return mp.mpf(0)
    c = (2 * lam) ** 2
    return h_half((x - t) / c, t) / c


def hcal_third(x, t, lam):
    x, t, lam = mp.mpf(x), mp.mpf(t), mp.mpf(lam)
    return mp.quad(lambda y: h_twothirds(y, t) * h_third(x - y, 2 * lam * t),
                   [0, x / 2, x])


def hcal_talbot(nu, lam, x, t, degree=80, dps=50):
    nu, lam, t = mp.mpf(nu), mp.mpf(lam), mp.mpf(t)
    return talbot(lambda g: mp.exp(-t * (g ** (2 * nu) + 2 * lam * g ** nu)), x,
                  degree=degree, dps=dps)


mark("composite subordinator densities")
for x, t, lam in [(2, 1, mp.mpf("0.5")), (3, 1, mp.mpf("0.5"))]:
    closed = hcal_half(x, t, lam)
    assert abs(closed - hcal_talbot(mp.mpf("0.5"), lam, x, t)) < mp.mpf("1e-20")
    show(f"hcal_1/2({x},{t};lam={mp.nstr(mp.mpf(lam),3)})", closed)

for x, t, lam in [(mp.mpf("1.5"), 1, mp.mpf("0.5")), (3, 1, 1)]:
    with mp.workdps(22):
        conv = hcal_third(x, t, lam)
    ref = hcal_talbot(THIRD, lam, x, t)
    print(f"# hcal_1/3({mp.nstr(x,3)},{t}) talbot diff = {mp.nstr(abs(conv-ref), 3)}", flush=True)
    assert abs(conv - ref) < mp.mpf("1e-8")
    show(f"hcal_1/3({mp.nstr(x,3)},{t};lam={mp.nstr(mp.mpf(lam),3)})", ref)

# Laplace identity for hcal_1/3 and the double transform value
mark("composite Laplace identity")
lam = mp.mpf(1)
gam = mp.mpf(1)
# the inversion is unstable for x near 0; the density there is dominated by
# the small-deviation bound for the 2/3-stable part, below 1e-20 for x < 0.05
with mp.workdps(22):
    num = mp.quad(lambda x: mp.exp(-gam * x) * hcal_talbot(THIRD, lam, x, 1, degree=32, dps=24),
                  [mp.mpf("0.05"), 2, 8, 30])
target = mp.exp(-(gam ** TWO_THIRDS + 2 * lam * gam ** THIRD))
print(f"# hcal_1/3 x-laplace diff = {mp.nstr(abs(num-target), 3)}", flush=True)
assert abs(num - target) < mp.mpf("1e-6")
# double Laplace at gam=1, mu=0.5, nu=1/3, lam=1: 1/(mu + gam^(2/3) + 2 gam^(1/3))
show("hcal double-laplace(1,0.5)", 1 / (mp.mpf("0.5") + 1 + 2))

mark("done")
print("all stable/inverse oracle checks passed", flush=True)
