# %% [markdown]
# Powers of a cubic hypermatrix and the dimension of their span.
#
# The first family uses every parenthesization of an odd number of copies
# of A. The second uses the recurrence A^[k+2] = general product of A, A, A
# over the background A^[k].

# %%
from hyperalg import ch_coefficients, enumerate_powers_first, power_sequence_second, span_dimension
from hyperalg.fixtures import load_fixture
from hyperalg.powers import default_max_degree, enumerate_trees, fuss_catalan_closed

# %% how many distinct powers per degree
for degree in range(1, 14, 2):
    print(degree, len(enumerate_trees(degree)), fuss_catalan_closed(degree))

print([str(t) for t in enumerate_trees(5)])

# %% the witness fixtures reach the full n^3-dimensional space
for n in range(1, 4):
    A = load_fixture(f"first_A{n - 1}")
    degree = default_max_degree(n)
    terms = [t for _, t in enumerate_powers_first(A, degree)]
    print(f"first  n={n}: {len(terms)} powers through degree {degree}, span {span_dimension(terms)}")

for n in range(1, 4):
    A = load_fixture(f"second_A{n - 1}")
    print(f"second n={n}: span {span_dimension(power_sequence_second(A, n**3))}")

# %% [markdown]
# Once the span is full the next term is a combination of the earlier ones.
# Those coefficients play the role of a characteristic polynomial.

# %%
vec = ch_coefficients(load_fixture("second_A1"))
print(vec.r, vec.alpha_strings())
