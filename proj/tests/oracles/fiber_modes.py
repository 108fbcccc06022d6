"""Step-index fibre eigenvalue equations (HE11, TM01) for the silicon rod in vacuum."""
import numpy as np
from scipy.optimize import brentq
from scipy.special import jv, jvp, kv, kvp

c = 299792458.0
omega = 2 * np.pi * c / 780e-9
R = 0.8 * c / omega
n1, n2 = np.sqrt(13.5), 1.0
k0 = omega / c


def uw(b):
    return R * np.sqrt(k0**2 * n1**2 - b**2), R * np.sqrt(b**2 - k0**2 * n2**2)


def he11(b):
    u, w = uw(b)
    a = jvp(1, u) / (u * jv(1, u))
    q = kvp(1, w) / (w * kv(1, w))
    return (a + q) * (n1**2 * a + n2**2 * q) - (b / k0) ** 2 * (1 / u**2 + 1 / w**2) ** 2


def tm01(b):
    u, w = uw(b)
    return n1**2 * jv(1, u) / (u * jv(0, u)) + n2**2 * kv(1, w) / (w * kv(0, w))


def largest_root(f):
    bs = np.linspace(k0 * n2 * (1 + 1e-9), k0 * n1 * (1 - 1e-9), 20001)
    v = f(bs)
    for i in range(len(bs) - 2, -1, -1):
        if np.isfinite(v[i]) and np.isfinite(v[i + 1]) and v[i] * v[i + 1] < 0 and abs(v[i]) + abs(v[i + 1]) < 1e3:
            return brentq(f, bs[i], bs[i + 1], xtol=1e-16 * k0, rtol=1e-15) / k0


print("HE11 n_eff %.10f" % largest_root(he11))
print("TM01 n_eff %.10f" % largest_root(tm01))

# hollow guide in a Meissner-London cladding, eps1 = 1 - (omega_p/omega)^2 = -99, kR = 3
e_clad = 1.0 - 100.0


def tm01_metal(hR):
    u = np.sqrt(9.0 - hR**2)
    w = np.sqrt(hR**2 - 9.0 * e_clad)
    return jv(1, u) / (u * jv(0, u)) + e_clad * kv(1, w) / (w * kv(0, w))


hs = np.linspace(1e-6, 3.0 - 1e-9, 200001)
v = tm01_metal(hs)
idx = [i for i in range(len(hs) - 1) if v[i] * v[i + 1] < 0 and abs(v[i]) + abs(v[i + 1]) < 1e3]
print("metal-clad TM01 hR %.10f" % brentq(tm01_metal, hs[idx[-1]], hs[idx[-1] + 1], xtol=1e-15))
