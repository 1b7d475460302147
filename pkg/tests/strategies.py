from fractions import Fraction

from hypothesis import strategies as st

from quatclifford.clifford import Multivector
from quatclifford.scalar_field import FieldElement

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=12),
)

field_elements = st.builds(FieldElement, small_fractions, small_fractions, small_fractions, small_fractions)
nonzero_field = field_elements.filter(bool)
gaussian = st.builds(FieldElement, st.integers(-4, 4), st.integers(-4, 4))


def multivectors(dim: int = 4, max_terms: int = 4, coeffs=gaussian):
    return st.dictionaries(st.integers(0, 2**dim - 1), coeffs, max_size=max_terms).map(
        lambda d: Multivector(dim, d)
    )
