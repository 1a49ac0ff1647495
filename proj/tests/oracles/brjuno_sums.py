#!/usr/bin/env python3
"""Independent oracle for small-divisor quantities.

Computes, at 80 significant digits via mpmath:
  * omega(m) = min_{2<=h<=m} |lambda^h - lambda| = min 2|sin(pi (h-1) alpha mod 1)|
  * dyadic partial sums S_K = sum_{k=0..K} 2^{-k} * ln(1/omega(2^{k+1}))
for several rotation numbers.  The printed values are frozen into
tests/test_arithmetic.cpp; this script is the source of those constants.
"""
import mpmath as mp

mp.mp.dps = 80


def frac(x):
    return x - mp.floor(x)


def omega(alpha, m):
    """min over 2<=h<=m of 2|sin(pi*((h-1)*alpha mod 1))| via incremental mod-1."""
    best = None
    x = mp.mpf(0)  # (h-1)*alpha mod 1, starting at h=2 -> 1*alpha
    for h in range(2, m + 1):
        x = frac(x + alpha)
        d = min(x, 1 - x)  # distance to nearest integer
        if best is None or d < best:
            best = d
    return 2 * mp.sin(mp.pi * best), best


def partial_sums(alpha, kmax):
    sums = []
    acc = mp.mpf(0)
    omegas = []
    for k in range(0, kmax + 1):
        w, _ = omega(alpha, 2 ** (k + 1))
        omegas.append(w)
        acc += mp.log(1 / w) / mp.mpf(2 ** k)
        sums.append(acc)
    return sums, omegas


def report(name, alpha, kmax):
    sums, omegas = partial_sums(alpha, kmax)
    print(f"== {name}  alpha = {mp.nstr(alpha, 40)}")
    for k, (s, w) in enumerate(zip(sums, omegas)):
        print(f"  K={k:2d}  omega(2^{k+1})={mp.nstr(w, 18)}  S_K={mp.nstr(s, 18)}")
    for k in range(2, kmax + 1):
        print(f"  stagnation S_{k}-S_{k-2} = {mp.nstr(sums[k] - sums[k-2], 12)}")
    return sums


golden = (mp.sqrt(5) - 1) / 2
report("golden mean", golden, 15)
print(f"golden omega(2) = 2 sin(pi*alpha) = {mp.nstr(2*mp.sin(mp.pi*golden), 20)}")
print(f"golden alpha 40 digits = {mp.nstr(golden, 40)}")

# Liouville-like: truncated sum of 10^(-n!) = 10^-1 + 10^-2 + 10^-6 + 10^-24
liou = mp.mpf(10) ** -1 + mp.mpf(10) ** -2 + mp.mpf(10) ** -6 + mp.mpf(10) ** -24
report("liouville-trunc", liou, 12)

# silver ratio rotation number sqrt(2)-1
silver = mp.sqrt(2) - 1
print(f"silver alpha 40 digits = {mp.nstr(silver, 40)}")

# admissible-style omega_j for the conjugate golden pair (alpha, 1-alpha):
# omega_j(m) = min_{2<=h<=m} min_i |lambda_j^h - lambda_i|,
# |e^(2 pi i a) - e^(2 pi i b)| = 2 |sin(pi (a-b))|
def omega_j(alphas, j, m):
    best = None
    for h in range(2, m + 1):
        for i in range(len(alphas)):
            d = frac(h * alphas[j] - alphas[i])
            d = min(d, 1 - d)
            if best is None or d < best:
                best = d
    return 2 * mp.sin(mp.pi * best)

pair = [golden, 1 - golden]
for j in (0, 1):
    acc = mp.mpf(0)
    for k in range(0, 9):
        w = omega_j(pair, j, 2 ** (k + 1))
        acc += mp.log(1 / w) / mp.mpf(2 ** k)
    print(f"golden pair omega_j sums j={j+1} S_8 = {mp.nstr(acc, 18)}  "
          f"omega_j(4) = {mp.nstr(omega_j(pair, j, 4), 18)}")

# one-resonance scan for a fixed 30-digit triple completing to an integer sum:
a = mp.mpf("0.314159265358979323846264338327")
b = mp.mpf("0.271828182845904523536028747135")
c3 = 1 - frac(a + b)
print(f"k3 tuple alpha3 = {mp.nstr(c3, 32)}")
alphas = [a, b, c3]
worst = None
for m1 in range(0, 7):
    for m2 in range(0, 7):
        for m3 in range(0, 7):
            if not (2 <= m1 + m2 + m3 <= 6):
                continue
            for j in range(3):
                e = [0, 0, 0]
                e[j] = 1
                # allowed: m = e_j + t*(1,1,1), t>=1
                t = m1 - e[0]
                if t >= 1 and (m1 - e[0], m2 - e[1], m3 - e[2]) == (t, t, t):
                    continue
                d = frac(m1 * alphas[0] + m2 * alphas[1] + m3 * alphas[2] - alphas[j])
                d = min(d, 1 - d)
                gap = 2 * mp.sin(mp.pi * d)
                if worst is None or gap < worst:
                    worst = gap
print(f"k3 tuple min non-resonant gap (deg<=6) = {mp.nstr(worst, 12)}")
