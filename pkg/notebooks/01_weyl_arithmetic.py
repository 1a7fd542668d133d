# %% [markdown]
# # Arithmetic in the Weyl algebra
#
# Elements of A_n are stored in normal form: every `d` is moved to the right
# of every `x`.  Products are reduced with the Leibniz rule, so the defining
# relation `d1*x1 - x1*d1 = 1` comes out exactly.

# %%
from filtra.weyl import Polynomial, WeylElement, ad_generator, apply_to_polynomial, filtration_basis, parse, render

x1, d1 = WeylElement.x(1, 1), WeylElement.d(1, 1)
print("d1*x1         =", render(d1 * x1))
print("[d1, x1]      =", render(d1 * x1 - x1 * d1))
print("d1^2 * x1^2   =", render(parse("d1^2*x1^2")))

# %% [markdown]
# Elements act on polynomials as differential operators; the product of two
# operators acts as their composition.

# %%
u = parse("x1*d1")
p = Polynomial.variable(1, 1) ** 3
print("(x1 d1) . x^3 =", apply_to_polynomial(u, p))
print("d1^2 . x^3    =", apply_to_polynomial(parse("d1^2"), p))

# %% [markdown]
# Commutators with a generator lower the filtration degree by at least one.

# %%
v = parse("x1^2*d2 + 3*x2*d1", 2)
for g in range(1, 5):
    print(f"ad(a_{g}) v =", render(ad_generator(g, v)))

# %% [markdown]
# The standard filtration piece A_i has dimension C(i + 2n, 2n).

# %%
for n in (1, 2):
    print(f"n={n}:", [len(filtration_basis(n, i)) for i in range(6)])
