# %% [markdown]
# # c-bars
#
# A c-bar is the set of addresses below which some function delta stops
# changing. It comes with a tree certifying that delta does stop along every
# path. From it we get a continuous function (the last depth where delta
# changed) and a uniform depth on any fan.

# %%
from formalbaire import (
    ContinuousFn,
    cbar_from_brouwer,
    cbar_from_function,
    cbar_member,
    full_binary,
    function_from_cbar,
    modulus_M,
    opaque_cbar,
    uniform_bar_modulus,
    uniform_modulus,
)
from formalbaire.testkit import binary_sum_op, min_first_one_op

# %%
P = cbar_from_function(ContinuousFn.from_op(min_first_one_op()))
for a in [(), (0,), (1,), (5, 2)]:
    print(a, cbar_member(P, a))

# %% [markdown]
# The depth M built from the uniform modulus lands inside the c-bar on
# every binary node.

# %%
F = ContinuousFn.from_op(binary_sum_op())
T = full_binary()
M = modulus_M(F, T, uniform_modulus(F, T))
P = cbar_from_function(F)
print(M, all(cbar_member(P, a).is_yes for a in T.level(M)))
print(uniform_bar_modulus(P, T))

# %% [markdown]
# A c-bar read straight off a tree, and the change-depth function it gives.

# %%
Q = cbar_from_brouwer(binary_sum_op())
G = function_from_cbar(Q)
print(G.realiser)

# %% [markdown]
# When delta is a black box only bounded answers are possible.

# %%
opaque = opaque_cbar(lambda a: min(len(a), 3))
print(cbar_member(opaque, (0, 0, 0), cutoff=2))
