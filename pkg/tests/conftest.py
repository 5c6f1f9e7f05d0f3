import hypothesis.strategies as st
from hypothesis import settings

from ontofit.core import Atom, CAtom, Interpretation, Logic, RAtom, Role, TOP, Var, conj, some

settings.register_profile("default", max_examples=80, deadline=None)
settings.load_profile("default")

NAMES = ("A", "B")
ROLES = ("r", "s")


@st.composite
def interps(draw, max_size=4, roles=ROLES, named=False):
    n = draw(st.integers(1, max_size))
    dom = list(range(n))
    cs = {a: draw(st.sets(st.sampled_from(dom))) for a in NAMES}
    pairs = [(d, e) for d in dom for e in dom]
    rs = {r: draw(st.sets(st.sampled_from(pairs), max_size=6)) for r in roles}
    nm = {f"a{d}": d for d in dom} if named else None
    return Interpretation(dom, cs, rs, nm)


def concepts(inverse=True, depth=3):
    leaf = st.sampled_from([TOP, Atom("A"), Atom("B")])
    role = st.builds(Role, st.sampled_from(ROLES), st.booleans() if inverse else st.just(False))

    def grow(children):
        return st.one_of(
            st.builds(some, role, children),
            st.lists(children, min_size=2, max_size=3).map(lambda ps: conj(*ps)),
        )

    return st.recursive(leaf, grow, max_leaves=depth * 2)


logics = st.sampled_from(list(Logic))
