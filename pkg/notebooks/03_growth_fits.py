# %% [markdown]
# # Hilbert quasi-polynomials and GK dimension
#
# Dimension sequences of finitely generated modules are eventually given by
# one polynomial per residue class mod k.  The fit is exact: finite
# differences detect the degree, Lagrange interpolation gives the
# coefficients, and the multiplicity is `e = d! * leading coefficient`.

# %%
from math import comb

from filtra.growth import fit_quasi_polynomial, growth_profile
from filtra.modules import cyclic_quotient_module, polynomial_module

for n in range(4):
    fit = fit_quasi_polynomial([comb(i + n, n) for i in range(12)])
    print(f"C(i+{n},{n}): degree {fit.degree}, lc {fit.leading_coefficient}, e {fit.multiplicity}")

# %% [markdown]
# A sequence with period two: the polynomials differ per residue class but
# share degree and leading coefficient.

# %%
fit = fit_quasi_polynomial([i // 2 + 1 for i in range(16)], k=2)
print(fit.polynomials, "e =", fit.multiplicity, "denominators ok:", fit.denominators_ok())

# %% [markdown]
# GK dimension estimates for modules, and an honest failure on exponential growth.

# %%
print("P_2:", growth_profile(polynomial_module(2), 8).to_json())
print("A_1:", growth_profile(cyclic_quotient_module(1, [], 9), 8).degree)
print("2^i:", fit_quasi_polynomial([2 ** i for i in range(10)]).reason)
