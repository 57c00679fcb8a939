# %% [markdown]
# # Trees that compute functions
#
# A Brouwer operation is a well-founded tree: a leaf holds an answer plus one,
# an inner node branches on the next entry of the input sequence. Reading the
# input down the tree until a leaf gives the value, and the depth of that
# leaf is how much of the input was looked at.

# %%
from formalbaire import ContinuousFn, Leaf, Point, Sup, evaluate, extract_realiser, list_bar, skeleton
from formalbaire.testkit import binary_sum_op, first_entry_op

# %% [markdown]
# A constant tree answers without reading anything.

# %%
print(evaluate(Leaf(5), Point.zeros()))

# %% [markdown]
# A tabular tree lists some children explicitly and sends every larger index
# to one default child. This one computes min(a0, 1) + min(a1, 1).

# %%
g = binary_sum_op()
for prefix in [(0, 0), (0, 1), (1, 0), (7, 3)]:
    print(prefix, evaluate(g, Point(prefix)))

# %% [markdown]
# The bar is where the tree stops. Default families are infinite, so the
# listing expands them up to a cutoff.

# %%
listing = list_bar(g, limit=20, cutoff=3)
for item in listing.items:
    print(list(item.address), item.value)
print("truncated:", listing.truncated)

# %% [markdown]
# Trees can also be generated by a rule, which is how a function like
# alpha -> alpha(0) gets a realiser at all: it needs infinitely many
# different leaves.

# %%
F = ContinuousFn.from_op(first_entry_op())
print([F(Point((n,))) for n in range(6)])

# %% [markdown]
# Given only a black-box function and the shape of a tree it is constant on,
# the labels can be recovered by probing.

# %%
box = ContinuousFn(lambda a: min(a.at(0), 1) + min(a.at(1), 1))
g2 = extract_realiser(box, skeleton(g))
print(g2 == g)
