# %% [markdown]
# # The return function of A_n and of P_n
#
# For each degree i the profile reports an interval.  The lower end comes from
# the worst element `x1^i`: every product `x * x1^i * y` with x, y in
# A_{i-1} has zero constant term.  The upper end is the cap i witnessed by
# ad-chain certificates: commutating i times with generators brings any
# degree-i element down to a nonzero scalar.

# %%
from filtra.inequalities import filter_dimension_consistency
from filtra.modules import polynomial_module
from filtra.returns import ad_chain_witness, return_function_profile
from filtra.weyl import parse

cert = ad_chain_witness(parse("x1^2*d1 + x1"))
print(cert.encode(), "replays:", cert.verify())
print("terms in the explicit expansion:", len(cert.expand()))

# %%
profile = return_function_profile(1, 5, samples=10, seed=7)
for row in profile.rows:
    print(row.i, row.lower, row.upper, row.witnesses[0])

# %% [markdown]
# The degree of the profile estimates the filter dimension, which is 1.

# %%
print(filter_dimension_consistency(profile).to_json())
module_profile = return_function_profile(polynomial_module(2), 4, samples=5, seed=1)
print("P_2:", module_profile.lower_values(), module_profile.upper_values())
