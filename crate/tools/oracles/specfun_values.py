#!/usr/bin/env python3
"""Reference values for the special-function kernels.

Everything here is computed with mpmath at high precision, through routes that
are independent of the Rust implementation:

  * Mittag-Leffler at z >= -1: plain arbitrary-precision series.
  * Mittag-Leffler at z < -1: Talbot inverse Laplace transform of
    s^(nu-psi) / (s^nu + a), which equals t^(psi-1) E_{nu,psi}(-a t^nu) at t=1.
    The series route is also run at high dps where it still converges, and the
    two must agree.
  * Wright: arbitrary-precision series.
  * Airy: mpmath's airyai/airyaiprime.
  * Bessel I0/I1: mpmath's besseli.

The printed constants are frozen into the Rust unit tests.  Regenerate with
`python3 specfun_values.py`.
"""
import mpmath as mp

mp.mp.dps = 60


def ml_series(nu, psi, z, terms=4000):
    return mp.fsum(mp.mpf(z) ** k / mp.gamma(nu * k + psi) for k in range(terms))


def ml_talbot(nu, psi, z):
    assert z < 0
    a = -mp.mpf(z)
    with mp.workdps(40):
        f = lambda s: s ** (nu - psi) / (s ** nu + a)
        return mp.invertlaplace(f, 1.0, method="talbot", degree=80)


def ml(nu, psi, z):
    if z >= -1:
        return ml_series(nu, psi, z)
    v = ml_talbot(nu, psi, z)
    # cross-check against the series wherever the term peak stays affordable
    peak = mp.exp(mp.log(abs(z)) / nu)
    digits = int(float(peak / mp.log(10))) + 80
    if digits <= 1600:
        kmax = int(3 * float(peak) / float(nu)) + 400
        with mp.workdps(digits):
            s = ml_series(nu, psi, z, terms=kmax)
        assert abs(s - v) < mp.mpf("1e-25"), (nu, psi, z, s, v)
    return v


def wright(a, b, z, terms=800):
    tot = mp.mpf(0)
    for k in range(terms):
        g = a * k + b
        tot += mp.mpf(z) ** k / mp.factorial(k) * mp.rgamma(g)
    return tot


def show(name, v):
    print(f"{name} = {mp.nstr(mp.mpf(v), 17)}")


# Mittag-Leffler
show("E(1,1)(1)            ", ml(1, 1, 1))
show("E(2,1)(1)            ", ml(2, 1, 1))
show("E(1/2,1)(-1)         ", ml(mp.mpf(1) / 2, 1, -1))
show("e*erfc(1)            ", mp.e * mp.erfc(1))
show("E(1/2,1)(-4)         ", ml(mp.mpf(1) / 2, 1, -4))
show("exp(16)*erfc(4)      ", mp.exp(16) * mp.erfc(4))
show("E(1/3,1)(-2)         ", ml(mp.mpf(1) / 3, 1, -2))
show("E(0.2,1)(-5)         ", ml(mp.mpf("0.2"), 1, -5))
show("E(0.2,1)(-20)        ", ml(mp.mpf("0.2"), 1, -20))
show("E(0.45,0.55)(-3)     ", ml(mp.mpf("0.45"), mp.mpf("0.55"), -3))
show("E(1/3,2/3)(-4)       ", ml(mp.mpf(1) / 3, mp.mpf(2) / 3, -4))
show("E(1/2,1/2)(-2)       ", ml(mp.mpf(1) / 2, mp.mpf(1) / 2, -2))
show("E(1/3,1)(-0.5)       ", ml(mp.mpf(1) / 3, 1, mp.mpf("-0.5")))
show("E(0.7,1)(-9)         ", ml(mp.mpf("0.7"), 1, -9))

# identity E_{nu,1-nu}(z) = z E_{nu,1}(z) + 1/Gamma(1-nu), spot checked off-grid
nu = mp.mpf("0.45")
lhs = ml(nu, 1 - nu, -3)
rhs = -3 * ml(nu, 1, -3) + mp.rgamma(1 - nu)
assert abs(lhs - rhs) < mp.mpf("1e-24")
print("# identity E_{nu,1-nu} = z E_{nu,1} + 1/Gamma(1-nu) holds at nu=0.45, z=-3")

# Wright
show("W(-1/2,1/2)(-1)      ", wright(mp.mpf(-1) / 2, mp.mpf(1) / 2, -1))
show("exp(-1/4)/sqrt(pi)   ", mp.exp(mp.mpf(-1) / 4) / mp.sqrt(mp.pi))
show("W(-1/2,1/2)(-6)      ", wright(mp.mpf(-1) / 2, mp.mpf(1) / 2, -6))
show("exp(-9)/sqrt(pi)     ", mp.exp(-9) / mp.sqrt(mp.pi))
show("W(0,1)(1)            ", wright(0, 1, 1))
show("W(-1/3,2/3)(-0.7)    ", wright(mp.mpf(-1) / 3, mp.mpf(2) / 3, mp.mpf("-0.7")))
show("W(-2/3,1/3)(-1.5)    ", wright(mp.mpf(-2) / 3, mp.mpf(1) / 3, mp.mpf("-1.5")))
show("W(-0.25,0.75)(-2)    ", wright(mp.mpf("-0.25"), mp.mpf("0.75"), -2))
show("W(1/2,1)(2)          ", wright(mp.mpf(1) / 2, 1, 2))

# Airy function and derivative
for x in [0, 0.5, 1, 2.5, 4.4, 4.6, 5, 6.5, 8, 8.5, 10, 12, 20, 25, 30]:
    show(f"Ai({x:+5})           ", mp.airyai(x))
for x in [-0.5, -1, -2.5, -5, -7.9, -8, -8.1, -10, -12, -20, -25, -30]:
    show(f"Ai({x:+5})           ", mp.airyai(x))
for x in [0, 5, 10, -5, -8, -12, -30]:
    show(f"Ai'({x:+5})          ", mp.airyai(x, derivative=1))

# integral of Ai over the negative half line (equals 2/3).
# The tail int_{-inf}^{-Y} Ai(u) du is reduced with Ai(u) = Ai''(u)/u and
# repeated integration by parts:
#   T(p) = Ai'(-Y)(-Y)^(-p-1) + (p+1) Ai(-Y)(-Y)^(-p-2) + (p+1)(p+2) T(p+3)
# where T(p) = int_{-inf}^{-Y} Ai(u) u^(-p) du; eight levels leave a remainder
# far below the working precision.
def ai_neg_tail(Y, p=0, depth=8):
    if depth == 0:
        return mp.mpf(0)
    mY = -mp.mpf(Y)
    return (mp.airyai(mY, derivative=1) * mY ** (-p - 1)
            + (p + 1) * mp.airyai(mY) * mY ** (-p - 2)
            + (p + 1) * (p + 2) * ai_neg_tail(Y, p + 3, depth - 1))

v = mp.quad(lambda y: mp.airyai(-y), [0, 10, 40]) + ai_neg_tail(40)
show("int_0^inf Ai(-y) dy  ", v)
assert abs(v - mp.mpf(2) / 3) < mp.mpf("1e-18")

# modified Bessel
for x in [1, 2, 10, 50, 700]:
    show(f"I0({x:>3})             ", mp.besseli(0, x))
for x in [1, 2]:
    show(f"I1({x:>3})             ", mp.besseli(1, x))

# Lamperti density: value and normalization
lam_pdf = lambda nu, u: mp.sin(mp.pi * nu) / mp.pi * u ** (nu - 1) / (
    1 + u ** (2 * nu) + 2 * u ** nu * mp.cos(mp.pi * nu)
)
show("lamperti(0.5, 1)     ", lam_pdf(mp.mpf("0.5"), mp.mpf(1)))
show("int lamperti(0.4)    ", mp.quad(lambda u: lam_pdf(mp.mpf("0.4"), u), [0, 1, 10, 1000, mp.inf]))

# Bessel J0 (used by the radial Fourier checks)
show("J0(1)                ", mp.besselj(0, 1))
show("J0(2.5)              ", mp.besselj(0, mp.mpf("2.5")))

# the weighted integral representation of E_{nu,1}(-lam t^nu):
#   (sin(pi nu)/(nu pi)) * int_0^inf exp(-lam^(1/nu) t w^(1/nu)) / (w^2 + 2 w cos(pi nu) + 1) dw
def ml_weighted_integral(nu, lam, t):
    nu, lam, t = map(mp.mpf, (nu, lam, t))
    c = lam ** (1 / nu) * t
    f = lambda w: mp.exp(-c * w ** (1 / nu)) / (w ** 2 + 2 * w * mp.cos(mp.pi * nu) + 1)
    v = mp.quad(f, [0, 1, 10, 100, mp.inf])
    return mp.sin(mp.pi * nu) / (nu * mp.pi) * v

for (nu_, lam_, t_) in [(0.5, 1, 1), (1.0 / 3, 2, 1), (0.25, 1, 4)]:
    a = ml_weighted_integral(nu_, lam_, t_)
    b = ml(mp.mpf(nu_), 1, -mp.mpf(lam_) * mp.mpf(t_) ** mp.mpf(nu_))
    print(f"# weighted integral vs series, nu={nu_}: diff = {mp.nstr(abs(a-b), 3)}")

# positive-x integral representation used by the Rust kernel on 4.5 <= x < 9:
#   Ai(x)  = (exp(-z)/pi) int_0^inf exp(-sqrt(x) t^2) cos(t^3/3) dt,  z = (2/3) x^(3/2)
#   Ai'(x) = -sqrt(x) Ai(x) - (exp(-z)/(2 sqrt(x) pi)) int_0^inf t^2 exp(-sqrt(x) t^2) cos(t^3/3) dt
for x in [2, 4.5, 6, 8.9]:
    x = mp.mpf(x)
    z = mp.mpf(2) / 3 * x ** mp.mpf(1.5)
    i0 = mp.quad(lambda u: mp.exp(-mp.sqrt(x) * u * u) * mp.cos(u ** 3 / 3), [0, 1, 3, 10])
    i2 = mp.quad(lambda u: u * u * mp.exp(-mp.sqrt(x) * u * u) * mp.cos(u ** 3 / 3), [0, 1, 3, 10])
    ai = mp.exp(-z) / mp.pi * i0
    aip = -mp.sqrt(x) * ai - mp.exp(-z) / (2 * mp.sqrt(x) * mp.pi) * i2
    print(f"# airy integral rep at x={x}: dAi = {mp.nstr(abs(ai - mp.airyai(x)), 3)}, "
          f"dAi' = {mp.nstr(abs(aip - mp.airyai(x, derivative=1)), 3)}")
