from fractions import Fraction

from hypothesis import settings, strategies as st

from heatsym.exact import Polynomial
from heatsym.jet import DiffFunction

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_rationals = st.builds(
    Fraction, st.integers(-6, 6), st.integers(1, 4)
)
exponents = st.tuples(*(st.integers(0, 2) for _ in range(4)))
polynomials = st.dictionaries(exponents, small_rationals, max_size=4).map(Polynomial)
deriv_indices = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
diff_functions = st.dictionaries(deriv_indices, polynomials, max_size=3).map(DiffFunction)
# no t-derivatives: stays cheap and already normal
normal_indices = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.just(0))
normal_diff_functions = st.dictionaries(normal_indices, polynomials, max_size=3).map(DiffFunction)
