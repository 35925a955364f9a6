#!/usr/bin/env python3
"""Regenerates the frozen expected values asserted in the C++ test suites.

Everything here is computed independently of the library: plain arithmetic,
a fixed-step trapezoid rule for the service integral, a dense scan plus
bisection for outage crossings and capacity critical points. Run it and
compare against the literals in tests/*.cpp whenever a frozen value looks
suspect.
"""

from math import atan, floor, log2, pi, sqrt

import numpy as np

V = 100.0          # train speed, m/s
L = 200.0          # train length, m
D0 = 50.0          # perpendicular track-to-BS distance, m
D = 1200.0         # inter-BS spacing, m
CTH = 0.15         # rate threshold, bits/s/Hz
SNR0 = 10 ** 0.5 * D0 * D0   # 5 dB peak SNR calibration
T_HALF = D / (2 * V)
T = D / V


def capacity(offsets, t):
    x = V * np.asarray(t)[..., None]
    dx = x - np.asarray(offsets)
    return np.log2(1.0 + SNR0 * (1.0 / (dx * dx + D0 * D0)).sum(axis=-1))


def service_trapezoid(offsets, step=1e-5):
    n = int(round(T / step))
    ts = np.linspace(-T_HALF, T_HALF, n + 1)
    c = capacity(offsets, ts)
    return (c.sum() - 0.5 * (c[0] + c[-1])) * (T / n)


def outage_ratio(offsets, cth, scan=1e-4, tol=1e-10):
    n = int(round(T / scan))
    ts = np.linspace(-T_HALF, T_HALF, n + 1)
    below = capacity(offsets, ts) < cth

    def refine(lo, hi):
        lo_below = capacity(offsets, lo) < cth
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if (capacity(offsets, mid) < cth) == lo_below:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    total, start = 0.0, ts[0] if below[0] else None
    for i in range(1, n + 1):
        if below[i] != below[i - 1]:
            crossing = refine(ts[i - 1], ts[i])
            if below[i - 1]:
                total += crossing - start
            else:
                start = crossing
    if below[-1]:
        total += ts[-1] - start
    return total / T


def critical_points(separation, scan_points=1_200_001, tol=1e-12):
    def slope(x):
        far = separation - x
        return far / ((far * far + D0 * D0) ** 2) - x / ((x * x + D0 * D0) ** 2)

    xs = np.linspace(-T_HALF * V, T_HALF * V, scan_points)
    g = slope(xs)
    roots = []
    for i in range(len(xs) - 1):
        if g[i] == 0.0:
            roots.append(xs[i])
        elif np.sign(g[i]) != np.sign(g[i + 1]) and g[i + 1] != 0.0:
            lo, hi = xs[i], xs[i + 1]
            lo_neg = g[i] < 0
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if (slope(mid) < 0) == lo_neg:
                    lo = mid
                else:
                    hi = mid
            roots.append(0.5 * (lo + hi))
    return [r / V for r in roots]


def closed_form_crossings(separation, cth):
    beta = (2 ** cth - 1) / SNR0
    s2 = separation * separation
    radicand = beta * s2 - beta * beta * s2 * D0 * D0 + 1.0
    theta = 4.0 * sqrt(radicand) + 4.0
    q = beta * (s2 - 4.0 * D0 * D0)
    phi = sqrt((q + theta) / beta)
    t2 = (separation - phi) / (2 * V)
    t1 = (separation + phi) / (2 * V)
    return t2, t1, 1.0 - phi / D


def main():
    print("snr0 (5 dB at 50 m):", repr(SNR0))
    print("log2(1 + 10^0.5):", repr(log2(1 + 10 ** 0.5)))
    print("sqrt(600^2 + 50^2):", repr(sqrt(600.0 ** 2 + 50.0 ** 2)))

    pt, gain, lam, noise, bw = 10.0, 1.0, 0.15, 10 ** -17.5, 15000.0
    print("physics calibration:", repr(pt * gain * lam ** 2 /
                                       ((4 * pi) ** 2 * noise * bw)))

    print("service {0, 200}:", repr(service_trapezoid([0.0, 200.0])))
    single = service_trapezoid([0.0])
    print("service {0}:", repr(single), " mean capacity:", repr(single / T))

    beta = (2 ** CTH - 1) / SNR0
    print("beta (base 2):", repr(beta))
    t_minus, t_plus, otr_closed = closed_form_crossings(L, CTH)
    print("crossings:", repr(t_minus), repr(t_plus))
    print("otr closed form:", repr(otr_closed))
    print("otr scanned:", repr(outage_ratio([0.0, 200.0], CTH)))

    print("critical points (sep 200):", critical_points(200.0))
    print("critical points (sep 0.001):", critical_points(0.001))

    edge = sqrt((SNR0 - D0 * D0) / (V * V))
    print("single-antenna outage edge at cth=1:", repr(edge),
          " otr:", repr(1.0 - 2.0 * edge / T))

    print("n_max(200, 0.075):", floor(200.0 / 0.075) + 1)


if __name__ == "__main__":
    main()
