# %% [markdown]
# # The Poisson algebra P_2n
#
# The bracket pairs x_i with x_{n+i}.  Each polynomial a gives a derivation
# `{a, .}` which is an order-one operator in the Weyl algebra A_2n.

# %%
from filtra.poisson import as_poisson, hamiltonian_weyl_image, isotropic_bound_report, isotropic_check, poisson_bracket
from filtra.weyl import apply_to_polynomial, render

f, g = as_poisson("x1*x2", 2), as_poisson("x2^2 + x1", 2)
print("{f, g} =", poisson_bracket(f, g))
print("ad(f)  =", render(hamiltonian_weyl_image(f)))
print("ad(f) . g =", apply_to_polynomial(hamiltonian_weyl_image(f), g))

# %% [markdown]
# Isotropic subalgebras of P_2n have GK dimension at most n; the coordinate
# subalgebra K[x_1..x_n] attains the bound.

# %%
for n in (1, 2, 3):
    print(isotropic_bound_report(n, [f"x{i}" for i in range(1, n + 1)]).to_json())
print(isotropic_check([as_poisson("x1", 2), as_poisson("x2", 2)]))
