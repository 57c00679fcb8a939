# %% [markdown]
# # Uniform moduli over fans
#
# Over a finitely branching tree of paths a continuous function only ever
# needs a bounded prefix. The least such bound is found by deepening: at
# depth N every node must already fix the value.

# %%
from formalbaire import ContinuousFn, bounded_by, full_binary, modulus_M, uniform_modulus
from formalbaire.testkit import OpGenSpec, binary_sum_op, brute_force_modulus, random_ops

# %%
F = ContinuousFn.from_op(binary_sum_op())
T = full_binary()
N = uniform_modulus(F, T)
print("N =", N, "M =", modulus_M(F, T, N))
print("brute force:", brute_force_modulus(F, T, 8))

# %% [markdown]
# Random trees on the binary fan and on a fan allowing three then two
# branches. The engine and the exhaustive oracle agree on the wider fan.

# %%
T3 = bounded_by((3, 2))
for g in random_ops(8, OpGenSpec(seed=42)):
    G = ContinuousFn.from_op(g)
    print(uniform_modulus(G, T), uniform_modulus(G, T3), brute_force_modulus(G, T3, 8))
