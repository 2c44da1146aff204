"""Propagation of lower/upper incidence bounds across sentence structure.

When only some sentences have known (or partially known) incidences, each
sentence S carries a pair (lower, upper) with the guarantee

    lower(S)  is a subset of  i(S)  is a subset of  upper(S)

for the unknown true incidence i(S).  Local rules transfer information
between a compound sentence and its direct parts: each rule either raises
a lower bound (by union) or cuts an upper bound (by intersection), so
bounds only ever tighten.  Repeating the rules to a fixed point is
confluent: the final assignment does not depend on the order in which
rules fire, which `propagate` exploits by allowing a shuffled worklist.

Soundness of every rule is a one-line set inclusion; see the `note` field
on each catalog entry.  Throughout, w is the whole space, \\ is set
difference, and the axioms fix i(~A) = w \\ i(A), i(A & B) = i(A) & i(B),
i(A | B) = i(A) | i(B), and i(A -> B) = (w \\ i(A)) | i(B).

The fixed point is sound but not always tight: some instances admit
bounds strictly looser than the envelope of all legal assignments.
`propagate(..., mode="complete")` closes that gap by case splitting on
undetermined point memberships, at worst-case exponential cost, and
`enumerate_legal` provides the brute-force ground truth for small
instances.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import (
    InstanceTooLargeError,
    UnknownSentenceError,
    WidthMismatchError,
)
from .logic import (
    And,
    Atom,
    Bottom,
    Formula,
    Implies,
    Not,
    Or,
    Top,
    children,
    format_formula,
    incidence_of,
    subformulas,
)
from .rational import format_prob
from .space import Incidence, SampleSpace

FIXPOINT = "fixpoint"
INCONSISTENT = "inconsistent"

#: Refuse exhaustive search when width * number_of_atoms exceeds this.
GUARD_BITS = 24

_Bounds = tuple[Incidence, Incidence]


class BoundAssignment:
    """Mutable map from sentences to (lower, upper) incidence bounds.

    Sentences are registered in a stable order (used for reporting and
    for dump output).  Registering a sentence registers all of its
    subformulas: unseen ones default to the vacuous bounds (empty, full),
    except the constants, whose incidences are forced by the axioms.
    Declaring bounds for an already-known sentence merges them: lower
    bounds amalgamate by union, upper bounds by intersection, which can
    leave the entry inconsistent (lower not inside upper) for
    `check_consistency` or `propagate` to report.
    """

    def __init__(self, space: SampleSpace):
        self.space = space
        self._entries: dict[Formula, _Bounds] = {}

    def declare(
        self,
        sentence: Formula,
        lower: Incidence | None = None,
        upper: Incidence | None = None,
        exact: Incidence | None = None,
    ) -> None:
        if exact is not None:
            if lower is not None or upper is not None:
                raise ValueError("pass either exact or lower/upper, not both")
            lower = upper = exact
        for sub in subformulas(sentence):
            if sub not in self._entries:
                if isinstance(sub, Top):
                    self._entries[sub] = (self.space.full(), self.space.full())
                elif isinstance(sub, Bottom):
                    self._entries[sub] = (self.space.empty(), self.space.empty())
                else:
                    self._entries[sub] = (self.space.empty(), self.space.full())
        if lower is not None:
            self.raise_lower(sentence, lower)
        if upper is not None:
            self.cut_upper(sentence, upper)

    def sentences(self) -> tuple[Formula, ...]:
        return tuple(self._entries)

    def bounds(self, sentence: Formula) -> _Bounds:
        try:
            return self._entries[sentence]
        except KeyError:
            raise UnknownSentenceError(f"no bounds registered for {sentence}") from None

    def lower(self, sentence: Formula) -> Incidence:
        return self.bounds(sentence)[0]

    def upper(self, sentence: Formula) -> Incidence:
        return self.bounds(sentence)[1]

    def raise_lower(self, sentence: Formula, inc: Incidence) -> bool:
        """Union inc into the lower bound; True if it strictly grew."""
        self._check_width(inc)
        low, high = self.bounds(sentence)
        merged = low | inc
        if merged == low:
            return False
        self._entries[sentence] = (merged, high)
        return True

    def cut_upper(self, sentence: Formula, inc: Incidence) -> bool:
        """Intersect inc into the upper bound; True if it strictly shrank."""
        self._check_width(inc)
        low, high = self.bounds(sentence)
        merged = high & inc
        if merged == high:
            return False
        self._entries[sentence] = (low, merged)
        return True

    def set_bounds(self, sentence: Formula, lower: Incidence, upper: Incidence) -> None:
        """Overwrite an entry outright (no merging)."""
        self.bounds(sentence)
        self._check_width(lower)
        self._check_width(upper)
        self._entries[sentence] = (lower, upper)

    def _check_width(self, inc: Incidence) -> None:
        if inc.width != self.space.size:
            raise WidthMismatchError(
                f"incidence width {inc.width} != space size {self.space.size}"
            )

    def consistent_at(self, sentence: Formula) -> bool:
        low, high = self.bounds(sentence)
        return low.is_subset(high)

    def is_exact(self, sentence: Formula) -> bool:
        low, high = self.bounds(sentence)
        return low == high

    def copy(self) -> "BoundAssignment":
        dup = BoundAssignment(self.space)
        dup._entries = dict(self._entries)
        return dup

    def dump(self) -> str:
        """One line per sentence in registration order:
        `<formula> inf=<bits> sup=<bits> p=[low, high]`."""
        lines = []
        for sentence, (low, high) in self._entries.items():
            p_low = format_prob(self.space.weight_of(low))
            p_high = format_prob(self.space.weight_of(high))
            lines.append(
                f"{format_formula(sentence)} inf={low.to_bitstring()}"
                f" sup={high.to_bitstring()} p=[{p_low}, {p_high}]"
            )
        return "\n".join(lines)

    def __contains__(self, sentence: Formula) -> bool:
        return sentence in self._entries

    def __iter__(self):
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundAssignment):
            return NotImplemented
        return self.space == other.space and self._entries == other._entries


def check_consistency(assignment: BoundAssignment) -> Formula | None:
    """First sentence (in registration order) whose lower bound is not
    inside its upper bound, or None when every entry is consistent."""
    for sentence in assignment:
        if not assignment.consistent_at(sentence):
            return sentence
    return None


def amalgamate_lower_bounds(
    bounds: Iterable[Incidence], width: int | None = None
) -> Incidence:
    """Combine lower bounds for the same sentence by union: if each one
    is a subset of i(S), so is their union.  An empty collection yields
    the empty incidence, for which a width must be supplied."""
    items = list(bounds)
    if not items:
        if width is None:
            raise ValueError("width is required to amalgamate no bounds")
        return Incidence.empty(width)
    result = items[0]
    for inc in items[1:]:
        result = result | inc
    if width is not None and result.width != width:
        raise WidthMismatchError(f"bounds have width {result.width}, expected {width}")
    return result


# --- the rule catalog ----------------------------------------------------
#
# One Rule per direction of information flow at a connective.  `compute`
# receives the bounds of the compound C and of its operands A (and B) and
# returns the set to merge into the target's bound.  Rules that target an
# operand come before rules that target the compound, so that when a
# contradiction is detectable both ways, it surfaces on the part that was
# registered first.


@dataclass(frozen=True)
class Rule:
    connective: type
    target: str  # "left" | "right" | "self"
    action: str  # "raise" | "cut"
    note: str
    compute: Callable[[_Bounds, _Bounds, _Bounds | None], Incidence]


def _lo(b: _Bounds) -> Incidence:
    return b[0]


def _hi(b: _Bounds) -> Incidence:
    return b[1]


RULES: tuple[Rule, ...] = (
    # C = ~A
    Rule(Not, "left", "raise", "i(C) <= sup(C), so w \\ sup(C) <= w \\ i(C) = i(A)",
         lambda c, a, b: _hi(c).complement()),
    Rule(Not, "left", "cut", "inf(C) <= i(C) = w \\ i(A), so i(A) <= w \\ inf(C)",
         lambda c, a, b: _lo(c).complement()),
    Rule(Not, "self", "raise", "i(A) <= sup(A), so w \\ sup(A) <= w \\ i(A) = i(C)",
         lambda c, a, b: _hi(a).complement()),
    Rule(Not, "self", "cut", "inf(A) <= i(A), so i(C) = w \\ i(A) <= w \\ inf(A)",
         lambda c, a, b: _lo(a).complement()),
    # C = A & B
    Rule(And, "left", "raise", "inf(C) <= i(C) = i(A) & i(B) <= i(A)",
         lambda c, a, b: _lo(c)),
    Rule(And, "left", "cut",
         "a point of i(A) lies in i(A & B) or outside i(B): "
         "i(A) <= i(C) | (w \\ i(B)) <= sup(C) | (w \\ inf(B))",
         lambda c, a, b: _hi(c) | _lo(b).complement()),
    Rule(And, "right", "raise", "inf(C) <= i(C) = i(A) & i(B) <= i(B)",
         lambda c, a, b: _lo(c)),
    Rule(And, "right", "cut",
         "mirror image: i(B) <= i(C) | (w \\ i(A)) <= sup(C) | (w \\ inf(A))",
         lambda c, a, b: _hi(c) | _lo(a).complement()),
    Rule(And, "self", "raise", "inf(A) & inf(B) <= i(A) & i(B) = i(C)",
         lambda c, a, b: _lo(a) & _lo(b)),
    Rule(And, "self", "cut", "i(C) = i(A) & i(B) <= sup(A) & sup(B)",
         lambda c, a, b: _hi(a) & _hi(b)),
    # C = A | B
    Rule(Or, "left", "raise",
         "a point of i(C) outside i(B) must lie in i(A): "
         "inf(C) & (w \\ sup(B)) <= i(C) \\ i(B) <= i(A)",
         lambda c, a, b: _lo(c) & _hi(b).complement()),
    Rule(Or, "left", "cut", "i(A) <= i(A) | i(B) = i(C) <= sup(C)",
         lambda c, a, b: _hi(c)),
    Rule(Or, "right", "raise",
         "mirror image: inf(C) & (w \\ sup(A)) <= i(C) \\ i(A) <= i(B)",
         lambda c, a, b: _lo(c) & _hi(a).complement()),
    Rule(Or, "right", "cut", "i(B) <= i(A) | i(B) = i(C) <= sup(C)",
         lambda c, a, b: _hi(c)),
    Rule(Or, "self", "raise", "inf(A) | inf(B) <= i(A) | i(B) = i(C)",
         lambda c, a, b: _lo(a) | _lo(b)),
    Rule(Or, "self", "cut", "i(C) = i(A) | i(B) <= sup(A) | sup(B)",
         lambda c, a, b: _hi(a) | _hi(b)),
    # C = A -> B, i.e. i(C) = (w \ i(A)) | i(B)
    Rule(Implies, "left", "raise", "w \\ i(C) = i(A) \\ i(B) <= i(A), and w \\ sup(C) <= w \\ i(C)",
         lambda c, a, b: _hi(c).complement()),
    Rule(Implies, "left", "cut",
         "a point of i(A) inside i(C) lies in i(B), one outside i(C) is outside inf(C): "
         "i(A) <= (w \\ inf(C)) | sup(B)",
         lambda c, a, b: _lo(c).complement() | _hi(b)),
    Rule(Implies, "right", "raise",
         "detachment: a point in both i(C) and i(A) lies in i(B), so inf(C) & inf(A) <= i(B)",
         lambda c, a, b: _lo(c) & _lo(a)),
    Rule(Implies, "right", "cut", "i(B) <= (w \\ i(A)) | i(B) = i(C) <= sup(C)",
         lambda c, a, b: _hi(c)),
    Rule(Implies, "self", "raise", "(w \\ sup(A)) | inf(B) <= (w \\ i(A)) | i(B) = i(C)",
         lambda c, a, b: _hi(a).complement() | _lo(b)),
    Rule(Implies, "self", "cut", "i(C) = (w \\ i(A)) | i(B) <= (w \\ inf(A)) | sup(B)",
         lambda c, a, b: _lo(a).complement() | _hi(b)),
)

RULES_BY_CONNECTIVE: dict[type, tuple[Rule, ...]] = {
    kind: tuple(r for r in RULES if r.connective is kind)
    for kind in (Not, And, Or, Implies)
}


@dataclass(frozen=True)
class PropagationOutcome:
    """Result of running the rules: final bounds, status, and the number
    of strict bound changes performed (each one either adds points to a
    lower bound or removes points from an upper bound, so the count is at
    most 2 * width * number_of_sentences)."""

    status: str
    culprit: Formula | None
    final: BoundAssignment
    steps: int

    @property
    def ok(self) -> bool:
        return self.status == FIXPOINT


def _is_compound(f: Formula) -> bool:
    return isinstance(f, (Not, And, Or, Implies))


def _parent_map(assignment: BoundAssignment) -> dict[Formula, list[Formula]]:
    parents: dict[Formula, list[Formula]] = {f: [] for f in assignment}
    for sentence in assignment:
        if _is_compound(sentence):
            for child in children(sentence):
                if sentence not in parents[child]:
                    parents[child].append(sentence)
    return parents


def _rule_target(sentence: Formula, rule: Rule) -> Formula:
    if rule.target == "self":
        return sentence
    if rule.target == "left":
        return children(sentence)[0]
    return children(sentence)[1]


def _run_fixpoint(
    assignment: BoundAssignment, rng: random.Random | None
) -> PropagationOutcome:
    parents = _parent_map(assignment)
    pending = [f for f in assignment if _is_compound(f)]
    queued = set(pending)
    steps = 0
    while pending:
        index = rng.randrange(len(pending)) if rng is not None else 0
        sentence = pending.pop(index)
        queued.discard(sentence)
        kids = children(sentence)
        for rule in RULES_BY_CONNECTIVE[type(sentence)]:
            c = assignment.bounds(sentence)
            a = assignment.bounds(kids[0])
            b = assignment.bounds(kids[1]) if len(kids) == 2 else None
            candidate = rule.compute(c, a, b)
            target = _rule_target(sentence, rule)
            if rule.action == "raise":
                changed = assignment.raise_lower(target, candidate)
            else:
                changed = assignment.cut_upper(target, candidate)
            if not changed:
                continue
            steps += 1
            if not assignment.consistent_at(target):
                return PropagationOutcome(INCONSISTENT, target, assignment, steps)
            wake = list(parents[target])
            if _is_compound(target) and target not in wake:
                wake.append(target)
            for f in wake:
                if f not in queued:
                    pending.append(f)
                    queued.add(f)
    return PropagationOutcome(FIXPOINT, None, assignment, steps)


def _pick_split(assignment: BoundAssignment) -> tuple[Atom, int] | None:
    """First undetermined (atom, point) in registration order.

    At a consistent fixpoint, exact atoms force every compound exact (the
    self-targeted rules pin i(C) from both sides once the parts are
    pinned), so splitting on atoms alone is enough for completeness.
    """
    for sentence in assignment:
        if isinstance(sentence, Atom):
            low, high = assignment.bounds(sentence)
            free = high.bits & ~low.bits
            if free:
                return sentence, (free & -free).bit_length() - 1
    return None


def _run_complete(assignment: BoundAssignment) -> PropagationOutcome:
    out = _run_fixpoint(assignment, None)
    if not out.ok:
        return out
    split = _pick_split(out.final)
    if split is None:
        return out
    atom, point = split
    width = assignment.space.size
    member = out.final.copy()
    member.raise_lower(atom, Incidence(1 << point, width))
    non_member = out.final.copy()
    non_member.cut_upper(atom, Incidence(1 << point, width).complement())
    first = _run_complete(member)
    second = _run_complete(non_member)
    steps = out.steps + first.steps + second.steps
    if not first.ok and not second.ok:
        # No legal assignment on either side of the split: report against
        # the atom whose cases are exhausted.
        return PropagationOutcome(INCONSISTENT, atom, out.final, steps)
    if not first.ok:
        return PropagationOutcome(FIXPOINT, None, second.final, steps)
    if not second.ok:
        return PropagationOutcome(FIXPOINT, None, first.final, steps)
    combined = first.final
    for sentence in combined:
        low1, high1 = first.final.bounds(sentence)
        low2, high2 = second.final.bounds(sentence)
        # The branches partition the legal assignments, so a sound lower
        # bound is what both branches guarantee, and a sound upper bound
        # must cover both: intersect the lowers, union the uppers.
        combined.set_bounds(sentence, low1 & low2, high1 | high2)
    return PropagationOutcome(FIXPOINT, None, combined, steps)


def propagate(
    initial: BoundAssignment,
    mode: str = "fixpoint",
    *,
    worklist_rng: random.Random | None = None,
    guard_bits: int = GUARD_BITS,
) -> PropagationOutcome:
    """Tighten bounds until no rule changes anything.

    The input assignment is not touched; the outcome holds a private
    copy.  With mode="fixpoint" the rules run to their (order-independent)
    fixed point; `worklist_rng` only varies the order in which that fixed
    point is reached.  With mode="complete" the fixed point is refined by
    case splitting until the bounds are exactly the envelope of the legal
    assignments; this is exponential in the worst case and therefore
    guarded like `enumerate_legal`.

    Inconsistency (a lower bound escaping its upper bound) is reported
    eagerly via the outcome's culprit, and propagation stops there.
    """
    if mode not in (FIXPOINT, "complete"):
        raise ValueError(f"unknown mode {mode!r}")
    work = initial.copy()
    bad = check_consistency(work)
    if bad is not None:
        return PropagationOutcome(INCONSISTENT, bad, work, 0)
    if mode == "complete":
        _check_guard(work, guard_bits)
        return _run_complete(work)
    return _run_fixpoint(work, worklist_rng)


def _check_guard(assignment: BoundAssignment, guard_bits: int) -> None:
    atoms = sum(1 for f in assignment if isinstance(f, Atom))
    cost = assignment.space.size * atoms
    if cost > guard_bits:
        raise InstanceTooLargeError(
            f"width * atoms = {cost} exceeds the {guard_bits}-bit search guard"
        )


def enumerate_legal(
    initial: BoundAssignment, *, guard_bits: int = GUARD_BITS
) -> list[dict[str, Incidence]]:
    """Brute-force oracle: every exact assignment of incidences to atoms
    whose induced sentence incidences respect all registered bounds.

    Only candidate incidences inside each atom's own bounds are tried,
    but the instance must still pass the width * atoms guard.
    """
    _check_guard(initial, guard_bits)
    space = initial.space
    width = space.size
    atoms = [f for f in initial if isinstance(f, Atom)]
    candidate_sets: list[list[Incidence]] = []
    for atom in atoms:
        low, high = initial.bounds(atom)
        free = [k for k in range(width) if k in high and k not in low]
        values = []
        for picks in range(1 << len(free)):
            bits = low.bits
            for j, k in enumerate(free):
                if picks >> j & 1:
                    bits |= 1 << k
            values.append(Incidence(bits, width))
        candidate_sets.append(values)
    legal = []
    sentences = initial.sentences()
    for combo in itertools.product(*candidate_sets):
        env = {atom.name: inc for atom, inc in zip(atoms, combo)}
        for sentence in sentences:
            value = incidence_of(sentence, env, space)
            low, high = initial.bounds(sentence)
            if not (low.is_subset(value) and value.is_subset(high)):
                break
        else:
            legal.append(env)
    return legal


def tight_bounds(
    initial: BoundAssignment, *, guard_bits: int = GUARD_BITS
) -> BoundAssignment | None:
    """The exact envelope of the legal assignments: per sentence, the
    intersection (lower) and union (upper) of its value across all legal
    assignments.  None when no assignment is legal."""
    legal = enumerate_legal(initial, guard_bits=guard_bits)
    if not legal:
        return None
    space = initial.space
    result = initial.copy()
    for sentence in initial:
        values = [incidence_of(sentence, env, space) for env in legal]
        low = values[0]
        high = values[0]
        for value in values[1:]:
            low = low & value
            high = high | value
        result.set_bounds(sentence, low, high)
    return result
