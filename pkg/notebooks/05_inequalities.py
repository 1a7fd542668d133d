# %% [markdown]
# # Inequalities: Bernstein, length bounds and the bound calculators
#
# With filter dimension 1 the first filter inequality for A_n reads
# `GK(M) >= n`.  We check it on named and random cyclic modules, then compute
# the two length bounds for holonomic modules.

# %%
import random

from filtra.growth import growth_profile
from filtra.inequalities import (
    commutative_subalgebra_bound,
    inequality_report,
    second_filter_bound,
    weyl_constants,
)
from filtra.modules import cyclic_quotient_module, direct_sum, polynomial_module, random_cyclic_quotient

rng = random.Random(1)
modules = [polynomial_module(1), cyclic_quotient_module(1, ["d1 - 1"], 10)]
modules += [random_cyclic_quotient(1, rng, 10) for _ in range(5)]
fits = [growth_profile(m, 9) for m in modules]
report = inequality_report(1, fits, [m.description for m in modules])
print(report.table())

# %%
p1 = polynomial_module(1)
summed = inequality_report(1, [growth_profile(direct_sum(p1, p1), 9)], ["P_1 + P_1"], true_lengths=[2])
print(summed.to_json()["modules"][0]["length_bounds"])

# %%
for n in range(1, 5):
    c = weyl_constants(n)
    print(n, second_filter_bound(2 * n, 1), commutative_subalgebra_bound(2 * n, 1), c.c_A.square)
