"""Hypothesis strategies for Fock states."""
from hypothesis import strategies as st

from lattice_commutant.fock import FockVector
from lattice_commutant.scalars import Q

charges = st.integers(min_value=-3, max_value=3)
parts = st.lists(st.integers(min_value=1, max_value=4), max_size=3).map(lambda p: tuple(sorted(p, reverse=True)))
coefs = st.tuples(st.integers(-6, 6).filter(bool), st.integers(1, 5)).map(lambda t: Q(t[0], t[1]))


@st.composite
def monomial_states(draw, charge=charges):
    return FockVector.monomial(draw(charge), draw(parts), draw(coefs))


@st.composite
def states(draw, max_terms=3):
    """Arbitrary (not necessarily homogeneous) small states."""
    v = FockVector.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        v = v + draw(monomial_states())
    return v


@st.composite
def homogeneous_states(draw, charge=charges):
    """A bi-homogeneous state: a combination of monomials of one bidegree."""
    c = draw(charge)
    level = draw(st.integers(0, 4))
    from lattice_commutant.kernels import partitions

    ps = partitions(level)
    chosen = draw(st.lists(st.sampled_from(ps), min_size=1, max_size=3, unique=True))
    v = FockVector.zero()
    for p in chosen:
        v = v + FockVector.monomial(c, p, draw(coefs))
    return v
