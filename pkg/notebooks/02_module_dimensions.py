# %% [markdown]
# # Filtered modules and their dimension sequences
#
# Concrete modules (polynomials, twisted polynomials, direct sums) give exact
# dimensions of `M_i = A_i M_0`.  Cyclic quotients `A_n / sum A_n g` are
# approximated with a cutoff `N`; entries whose value still moves between
# cutoffs `N - 1` and `N` are flagged as upper bounds.

# %%
from filtra.modules import (
    cyclic_quotient_module,
    direct_sum,
    module_dimension_sequence,
    polynomial_module,
    twisted_polynomial_module,
)

for module in (polynomial_module(1), polynomial_module(2), twisted_polynomial_module(1, [1])):
    print(module.description, module_dimension_sequence(module, 6).values)

p1 = polynomial_module(1)
print("P_1 + P_1", module_dimension_sequence(direct_sum(p1, p1), 6).values)

# %%
for gens in (["d1"], ["d1 - 1"], ["x1*d1"], []):
    seq = module_dimension_sequence(cyclic_quotient_module(1, gens, 8), 8)
    flags = "".join("=" if e else "?" for e in seq.exact)
    print(f"A_1/{gens}:", seq.values, flags)
