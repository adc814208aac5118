# %% [markdown]
# Telling apart two graphs with the same spectrum.
#
# K_{1,4} and C_4 plus an isolated vertex share the characteristic
# polynomial x^5 - 4x^3. Inflating each graph to the hypermatrix of its
# length-two walks and looking at the linear relations among its powers
# separates them.

# %%
from hyperalg import cospectral, distinguish, hypergraph_invariant, inflate
from hyperalg.fixtures import load_graph_fixture
from hyperalg.linalg import charpoly

K14 = load_graph_fixture("star_k14")
C4K1 = load_graph_fixture("c4_plus_k1")

# %%
print(charpoly(K14.adjacency()), charpoly(C4K1.adjacency()))
print("cospectral:", cospectral(K14, C4K1))

# %% the inflations
print(len(inflate(K14).nonzero()), "walks in the star,", len(inflate(C4K1).nonzero()), "in the cycle")

# %%
verdict, r1, r2 = distinguish(K14, C4K1, names=("K14", "C4+K1"))
print(verdict)
for rep in (r1, r2):
    print(rep.graph, "span", rep.span, "independent terms", rep.independent, "r", rep.r, "alphas", rep.alphas)

# %% relabelling never changes the report
print(hypergraph_invariant(K14, name="x") == hypergraph_invariant(K14.relabel([0, 4, 3, 2, 1]), name="x"))
