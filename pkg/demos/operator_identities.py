"""Numerical tour of the polynomial identities behind the selector.

Each block checks one identity two independent ways and prints the
agreement, mirroring what the verification suite asserts with tolerances.
"""

import numpy as np

from cssp import (
    char_poly,
    derivative,
    expected_poly_bruteforce,
    flip,
    gram,
    maxroot,
    minroot,
    polar_power,
    random_gaussian,
    spectrum_of,
    volume_mean_residual,
)

a = random_gaussian(6, 5, 42)
info = spectrum_of(a)
base = char_poly(gram(a))
print(f"matrix: 6 x 5 seeded Gaussian, rank {info.t}")
print()

print("1. subset-sum route vs operator route for the expected polynomial")
for k in (1, 2, 3):
    enumerated = expected_poly_bruteforce(a, k)
    operator = polar_power(base, k)
    err = np.max(np.abs(enumerated - operator)) / np.max(np.abs(operator))
    print(f"   k={k}: max coefficient deviation {err:.2e}")
print()

print("2. flip involution is exact")
print(f"   flip(flip(p)) == p: {np.array_equal(flip(flip(base)), base)}")
print()

print("3. reciprocal-root law: maxroot of the operator image times the")
print("   smallest root of the flipped derivative equals one")
for k in (1, 2):
    mr = maxroot(polar_power(base, k), 1e-10).value
    mn = minroot(derivative(flip(base), k), 1e-10).value
    print(f"   k={k}: product = {mr * mn:.12f}")
print()

print("4. alpha is the volume-sampling mean of the residual")
sampled = volume_mean_residual(a)
print(f"   harmonic-mean constant: {info.alpha:.10f}")
print(f"   weighted subset mean  : {sampled:.10f}")
print()

print("5. after rank-1 operator applications only x^(d-1)(x - alpha) is left")
p = polar_power(base, info.t - 1)
print(f"   largest root: {maxroot(p, 1e-10).value:.10f}  (alpha again)")
