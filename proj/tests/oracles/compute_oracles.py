"""Extended-precision reference values frozen into the C++ tests.

Run with: python3 compute_oracles.py
Every value here is computed independently of the C++ code: direct series
summation in multiprecision, or mpmath's Talbot inversion of the Laplace
transform.
"""
import mpmath as mp

mp.mp.dps = 50


def ml_series(rho, mu, z, gamma_=1, terms=20000):
    # Working precision grows with the largest series term ~ exp(|z|^(1/rho)).
    x = float(abs(mp.mpc(z))) ** (1.0 / float(rho))
    with mp.workdps(40 + int(x / 2.0)):
        rho, mu, z = mp.mpf(rho), mp.mpf(mu), mp.mpc(z)
        s = mp.mpc(0)
        for k in range(terms):
            c = mp.rf(gamma_, k) / mp.factorial(k) * mp.rgamma(rho * k + mu)
            term = c * z**k
            s += term
            if rho * k > x + 10 and abs(term) < mp.mpf(10) ** (-45):
                break
        return +s


def show(name, v):
    v = mp.mpc(v)
    print(f"{name}: {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")


show("ml(0.5,0.5,-1)", ml_series(0.5, 0.5, -1))
show("ml(0.5,0.5,-5)", ml_series(0.5, 0.5, -5))
show("prab2(0.5,1.0,-1)", ml_series(0.5, 1.0, -1, gamma_=2))
show("prab2(0.5,1.5,0)", ml_series(0.5, 1.5, 0, gamma_=2))
show("prab2(0.75,1.3,-2+1j)", ml_series(0.75, 1.3, mp.mpc(-2, 1), gamma_=2))
show("ml(0.9,1,-100)", ml_series(0.9, 1, -100))
show("ml(0.5,1,-1)", ml_series(0.5, 1, -1))
show("ml(0.25,0.25,-3)", ml_series(0.25, 0.25, -3))
show("ml(0.75,0.75,-3+4j)", ml_series(0.75, 0.75, mp.mpc(-3, 4)))
show("ml(0.6,1.2,-15-5j)", ml_series(0.6, 1.2, mp.mpc(-15, -5)))
show("ml(1.5,1,-30)", ml_series(1.5, 1, -30))
show("ml(0.5,1,12j)", ml_series(0.5, 1, mp.mpc(0, 12)))

# Decay ratio (1 + x)|E(-x)| for (rho,mu)=(0.5,1): E_{1/2,1}(-x) = exp(x^2) erfc(x).
f = lambda x: (1 + x) * mp.exp(x * x) * mp.erfc(x)
grid = [mp.mpf(i) / 1000 for i in range(0, 20001)] + [mp.mpf(i) for i in range(21, 1001)]
best = max(((f(x), x) for x in grid), key=lambda p: p[0])
print("cor22 sup (0.5,1) on [0,1e3]:", mp.nstr(best[0], 20), "at x =", mp.nstr(best[1], 12))
print("cor22 ratio (0.5,1) at x=1:", mp.nstr(f(1), 20))
print("cor22 limit 1/Gamma(1/2):", mp.nstr(mp.rgamma(0.5), 20))


def talbot(F, t):
    return mp.invertlaplace(F, t, method="talbot")


rho, alpha = mp.mpf("0.5"), mp.mpf(1)

lam = mp.mpf(4)
F = lambda s: (s ** (2 * rho - 1) + 2 * alpha * s ** (rho - 1)) / (s ** (2 * rho) + 2 * alpha * s**rho + lam)
show("distinct y(1) lam=4 phi1=1", talbot(F, 1))

F = lambda s: (s ** (2 * rho - 1) + 2 * alpha * s ** (rho - 1)) / (s**rho + alpha) ** 2
show("critical y(1) phi1=1", talbot(F, 1))

F = lambda s: s ** (2 * rho - 1) / (s**rho + alpha) ** 2
show("critical D^rho y(1) phi0=1", talbot(F, 1))

F = lambda s: s ** (rho - 1) / (s**rho + alpha) ** 2
show("critical y(1) phi0=1", talbot(F, 1))

F = lambda s: 1 / (s * (s**rho + alpha) ** 2)
show("critical y(1) g=1", talbot(F, 1))
show("critical y(1) g=1 series", ml_series(0.5, 2.0, -1, gamma_=2))

# Distinct case with forcing g(t) = 0.3 + 0.7 exp(-1.5 t), rho = 0.75,
# alpha = 0.5, lambda = 2, phi0 = -0.4, phi1 = 1.1.
rho, alpha, lam = mp.mpf("0.75"), mp.mpf("0.5"), mp.mpf(2)
phi0, phi1 = mp.mpf("-0.4"), mp.mpf("1.1")
G = lambda s: mp.mpf("0.3") / s + mp.mpf("0.7") / (s + mp.mpf("1.5"))
F = lambda s: (G(s) + s ** (2 * rho - 1) * phi1 + s ** (rho - 1) * phi0 + 2 * alpha * s ** (rho - 1) * phi1) / (
    s ** (2 * rho) + 2 * alpha * s**rho + lam)
for t in ["0.25", "1"]:
    show(f"forced distinct y({t})", talbot(F, mp.mpf(t)))
Fd = lambda s: s**rho * F(s) - s ** (rho - 1) * phi1
show("forced distinct D^rho y(1)", talbot(Fd, 1))

# Norm oracle: 8-mode vector, tau = 0.3.
coeffs = [0.8, -0.35, 0.12, 0.5, -0.07, 0.21, -0.44, 0.03]
lams = [1, 4, 9, 16, 25, 36, 49, 64]
val = mp.sqrt(sum(mp.mpf(l) ** (2 * mp.mpf("0.3")) * mp.mpf(c) ** 2 for c, l in zip(coeffs, lams)))
print("norm_tau 8-mode tau=0.3:", mp.nstr(val, 20))

# Synthesis oracle: Dirichlet Laplacian on (0, pi), K = 32, rho = 1/2, alpha = 1,
# phi1_k = k^-3, phi0_k = (-1)^k / k^2, f = 0, value of u(pi/2, 1/2).
# E_{1/2,1}(z) = exp(z^2) erfc(-z); mode 1 is critical and is inverted directly.
mp.mp.dps = 60
t = mp.mpf("0.5")
x = mp.pi / 2
total = mp.mpf(0)
for k in range(1, 33):
    p1 = mp.mpf(1) / k**3
    p0 = mp.mpf((-1) ** k) / k**2
    lam = mp.mpf(k) ** 2
    if k == 1:
        F = lambda s: (s ** 0 * p1 + 2 * s ** mp.mpf(-0.5) * p1 + s ** mp.mpf(-0.5) * p0) / (
            mp.sqrt(s) + 1) ** 2
        yk = talbot(F, t)
    else:
        r = mp.sqrt(mp.mpc(1 - lam))
        am = ((r + 1) * p1 + p0) / (2 * r)
        ap = ((r - 1) * p1 - p0) / (2 * r)
        e = lambda z: mp.exp(z**2) * mp.erfc(-z)
        yk = am * e(-(1 - r) * mp.sqrt(t)) + ap * e(-(1 + r) * mp.sqrt(t))
    total += yk * mp.sqrt(2 / mp.pi) * mp.sin(k * x)
show("synthesis K=32 u(pi/2, 1/2)", total)

# Decay-ratio oracle for (rho, mu) = (1/2, 1) on the negative real axis:
# E_{1/2,1}(-x) = exp(x^2) erfc(x), so the ratio is (1 + x) exp(x^2) erfc(x).
ratio = lambda x: (1 + x) * mp.exp(x * x) * mp.erfc(x)
print("decay ratio at x=1:", mp.nstr(ratio(mp.mpf(1)), 20))
print("sup on [0, 3] (dense):", mp.nstr(max(ratio(mp.mpf(i) / 1000) for i in range(3001)), 20))
