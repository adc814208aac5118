# %% [markdown]
# BM products of order-3 hypermatrices.
#
# Three operands, one summation index per entry: operand 1 loses its middle
# slot, operand 2 its last slot, operand 3 its first slot.

# %%
from fractions import Fraction

from hyperalg import Hypermatrix, bm_product, delta, dumps, general_bm_product
from hyperalg.hypermatrix import random_hypermatrix

import random

rng = random.Random(1)

# %%
D = delta(3, 2)
print(dumps(D))
print("delta is the identity:", bm_product([D, D, D]) == D)

# %% all-ones 2x2x2: every entry sums two unit products
J = Hypermatrix.from_flat((2, 2, 2), [1] * 8)
print(bm_product([J, J, J]).flatten())

# %% rectangular operands are fine as long as the contraction lengths agree
A1 = random_hypermatrix(rng, (2, 5, 3), values=range(-3, 4))
A2 = random_hypermatrix(rng, (2, 4, 5), values=range(-3, 4))
A3 = random_hypermatrix(rng, (5, 4, 3), values=range(-3, 4))
print("result dims", bm_product([A1, A2, A3]).dims)

# %% [markdown]
# The general product threads a separate index through each operand and
# weights by a cubic background. A delta background gives back the plain
# product.

# %%
A = random_hypermatrix(rng, (3, 3, 3), values=range(-2, 3))
B = random_hypermatrix(rng, (3, 3, 3), values=range(-2, 3))
print("delta background:", general_bm_product([A, A, A], delta(3, 3)) == bm_product([A, A, A]))
for conv in ("literal", "reversed"):
    print(conv, general_bm_product([A, A, A], B, conv).flatten()[:6])

# %% order 2 is ordinary matrix multiplication
M = Hypermatrix([[1, 2], [3, 4]])
N = Hypermatrix([[0, 1], [Fraction(1, 2), 0]])
print(bm_product([M, N]).flatten())
