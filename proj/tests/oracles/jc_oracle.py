"""High-precision Johnson-Cook oracle values frozen into the C++ tests."""
from mpmath import mp, mpf, log, diff

mp.dps = 50
A, B, C, n, m = mpf(806), mpf(614), mpf("0.0089"), mpf("0.168"), mpf("1.1")
e0, T0, Tm = mpf(1), mpf(20), mpf(1540)


def sigma(eps, rate, T):
    return (A + B * eps**n) * (1 + C * log(rate / e0)) * (1 - ((T - T0) / (Tm - T0))**m)


pts = [(mpf("0.5"), mpf(500), mpf(300)), (mpf("0.25"), mpf(10), mpf(100)), (mpf("0.9"), mpf(40000), mpf(480))]
for p in pts:
    print("sigma", [float(v) for v in p], mp.nstr(sigma(*p), 20))
    print("  d/deps ", mp.nstr(diff(lambda e: sigma(e, p[1], p[2]), p[0]), 20))
    print("  d/drate", mp.nstr(diff(lambda r: sigma(p[0], r, p[2]), p[1]), 20))
    print("  d/dT   ", mp.nstr(diff(lambda t: sigma(p[0], p[1], t), p[2]), 20))

# normalized rate midpoint for ranges [1, 50000]
r = mp.sqrt(50000)
print("sqrt(50000)", mp.nstr(r, 20), "x2", mp.nstr(log(r) / log(50000), 20))
# adiabatic heating arithmetic
print("dT", mp.nstr(mpf("0.9") * mpf(1000) * 10**6 * mpf("0.1") / (mpf(7830) * mpf(460)), 20))
# shear modulus
E = mpf(206900); nu = mpf("0.29")
print("G", mp.nstr(E / (2 * (1 + nu)), 20), "2G*1e-3", mp.nstr(2 * E / (2 * (1 + nu)) * mpf("1e-3"), 20))
