"""Shared random generators and hypothesis strategies for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

import incalc as ic

ATOMS = ("a", "b", "c", "d", "e", "f")


def random_weights(rng: random.Random, size: int) -> tuple[Fraction, ...]:
    raw = [rng.randint(0, 8) if rng.random() < 0.15 else rng.randint(1, 8) for _ in range(size)]
    if sum(raw) == 0:
        raw[0] = 1
    total = sum(raw)
    return tuple(Fraction(v, total) for v in raw)


def random_space(rng: random.Random, size: int) -> ic.SampleSpace:
    if rng.random() < 0.5:
        return ic.SampleSpace.uniform(size)
    return ic.SampleSpace(random_weights(rng, size))


def random_incidence(rng: random.Random, width: int) -> ic.Incidence:
    return ic.Incidence(rng.getrandbits(width), width)


def random_formula(rng: random.Random, atoms, depth: int) -> ic.Formula:
    if depth == 0 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.05:
            return ic.TRUE
        if roll < 0.10:
            return ic.FALSE
        return ic.Atom(rng.choice(atoms))
    kind = rng.randrange(4)
    if kind == 0:
        return ic.Not(random_formula(rng, atoms, depth - 1))
    left = random_formula(rng, atoms, depth - 1)
    right = random_formula(rng, atoms, depth - 1)
    return (ic.And, ic.Or, ic.Implies)[kind - 1](left, right)


def random_env(rng: random.Random, atoms, width: int) -> dict[str, ic.Incidence]:
    return {name: random_incidence(rng, width) for name in atoms}


def loosen(rng: random.Random, inc: ic.Incidence) -> tuple[ic.Incidence, ic.Incidence]:
    """A random (lower, upper) pair that brackets inc."""
    width = inc.width
    lower = ic.Incidence(inc.bits & rng.getrandbits(width), width)
    upper = ic.Incidence(inc.bits | rng.getrandbits(width), width)
    return lower, upper


def sound_instance(rng: random.Random, *, width: int, atoms, n_sentences: int, depth: int = 3):
    """(space, assignment, env) where the bounds are loosened from a
    ground-truth model, so env is legal and the instance is consistent."""
    space = random_space(rng, width)
    env = random_env(rng, atoms, width)
    assignment = ic.BoundAssignment(space)
    for _ in range(n_sentences):
        f = random_formula(rng, atoms, depth)
        lower, upper = loosen(rng, ic.incidence_of(f, env, space))
        assignment.declare(f, lower=lower, upper=upper)
    for name in atoms:
        at = ic.Atom(name)
        if at in assignment:
            lower, upper = loosen(rng, env[name])
            assignment.declare(at, lower=lower, upper=upper)
    return space, assignment, env


def arbitrary_instance(rng: random.Random, *, width: int, atoms, n_sentences: int, depth: int = 2):
    """(space, assignment) with unconstrained random bounds; the instance
    may admit no legal assignment at all."""
    space = random_space(rng, width)
    assignment = ic.BoundAssignment(space)
    for _ in range(n_sentences):
        f = random_formula(rng, atoms, depth)
        x = random_incidence(rng, width)
        y = random_incidence(rng, width)
        if rng.random() < 0.8:
            assignment.declare(f, lower=x & y, upper=x | y)
        else:
            assignment.declare(f, lower=x, upper=y)
    return space, assignment


def truth_of(assignment: ic.BoundAssignment, env, f: ic.Formula) -> ic.Incidence:
    return ic.incidence_of(f, env, assignment.space)


# hypothesis strategies

def incidences(width: int):
    return st.integers(min_value=0, max_value=(1 << width) - 1).map(
        lambda bits: ic.Incidence(bits, width)
    )


atoms_st = st.sampled_from(ATOMS).map(ic.Atom)

formulas_st = st.recursive(
    st.sampled_from([ic.TRUE, ic.FALSE]) | atoms_st,
    lambda sub: st.one_of(
        st.builds(ic.Not, sub),
        st.builds(ic.And, sub, sub),
        st.builds(ic.Or, sub, sub),
        st.builds(ic.Implies, sub, sub),
    ),
    max_leaves=12,
)
