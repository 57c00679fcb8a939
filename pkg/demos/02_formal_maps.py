# %% [markdown]
# # Cover certificates and formal maps
#
# The bar of a tree, shifted under a root address, is a certificate that
# the root is covered by some set of addresses. A formal map relates basic
# opens to output values and carries such a certificate for totality.

# %%
from formalbaire import (
    ContinuousFn,
    DecidableSet,
    Point,
    apply_map,
    check_cover,
    cov_from_brouwer,
    cylinder_set,
    map_from_realisable,
    realiser_from_map,
    uniform_witness,
    validate_map,
)
from formalbaire.testkit import binary_sum_op, sample_points

# %% [markdown]
# Everything of length 3 covers the empty sequence, and the uniform depth-3
# tree is the certificate. The check is exact because the set declares the
# index above which membership no longer changes.

# %%
print(check_cover((), cylinder_set((), 3), uniform_witness((), 3)))

# %% [markdown]
# The single address <0> covers nothing but itself; the failed check names an
# address of the certificate that is not reached.

# %%
v = check_cover((), DecidableSet.finite([(0,)]), uniform_witness((), 1))
print(v.status, v.witness)

# %% [markdown]
# From a tabular realiser we get a map backed by a finite table.

# %%
F = ContinuousFn.from_op(binary_sum_op())
r = map_from_realisable(F)
print(r.pairs)
print(cov_from_brouwer((), binary_sum_op()).cells())

# %% [markdown]
# Running the map on a point agrees with the function, the axioms hold, and
# turning the map back into a tree gives the original.

# %%
pts = sample_points(0, 10)
print(all(apply_map(r, p) == F(p) for p in pts))
print(validate_map(r, F, pts))
print(realiser_from_map(r).realiser == binary_sum_op())
