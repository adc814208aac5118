# %% [markdown]
# Hypermatrices as red/green/blue hypergraphs, and counting tetrahedra.
#
# Entry (r, g, b) of the cube Prod(A, A, A) of a 0/1 hypermatrix counts the
# vertices w that close a tetrahedron over the face (r, g, b).

# %%
import random

from hyperalg import bm_product, compose, count_glued, count_tetrahedra, from_hypermatrix, to_hypermatrix
from hyperalg.hypermatrix import random_hypermatrix
from hyperalg.koenig import GluingVariant, count_k_complexes

rng = random.Random(7)
A = random_hypermatrix(rng, (4, 4, 4))

# %% composing hypergraphs sums out the white vertices; same answer as the product
H = compose(from_hypermatrix(A), from_hypermatrix(A), from_hypermatrix(A))
print("composition == product:", to_hypermatrix(H) == bm_product([A, A, A]))
print(len(H.hyperedges()), "weighted hyperedges")

# %%
print("tetrahedra over r<g<b:", count_tetrahedra(A))

# %% two tetrahedra glued along a face, three ways, at the busiest face
cube = bm_product([A, A, A])
face = max(cube.nonzero(), key=lambda idx: cube[idx])
print("face", face, "closes", cube[face], "tetrahedra")
for v in GluingVariant:
    print(v.value, v.tree, count_glued(A, v, *face))

# %% complexes with k interior vertices
print([count_k_complexes(A, k, *face) for k in range(1, 5)])
