"""SR-form and A-form Morse complex sequences as handleslide collections.

An MCS here is a front diagram plus an ordered collection of handleslides,
each a vertical mark in the open gap just left of some event, joining two
strand positions of equal Maslov potential.  SR-forms are built from a
graded normal ruling: every switched crossing carries a handleslide on each
side (both on the two crossing strands), and every marked graded return
carries one just to its left.  A-forms carry exactly one handleslide just
left of each crossing in a chosen set of degree-0 crossings; the chosen set
doubles as the augmented-crossing set of the corresponding augmentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .diagram import Crossing, RightCusp
from .rulings import GRADED, configuration, enumerate_rulings


class McsError(ValueError):
    """The requested handleslide collection is not a valid SR/A-form MCS."""


@dataclass(frozen=True)
class Handleslide:
    """A vertical mark in the gap immediately left of ``events[gap]``.

    ``strands`` are the 1-based positions of its endpoints at that gap,
    top < bottom.
    """

    gap: int
    strands: tuple

    def __post_init__(self):
        u, v = self.strands
        if not u < v:
            raise McsError(f"handleslide strands must satisfy top < bottom, got {self.strands}")


class MorseComplexSequence:
    """A diagram with an ordered handleslide collection (left to right)."""

    def __init__(self, diagram, handleslides, ruling=None, marked_returns=frozenset(),
                 is_sr_form=False):
        self.diagram = diagram
        self.handleslides = tuple(handleslides)
        self.ruling = ruling
        self.marked_returns = frozenset(marked_returns)
        self.is_sr_form = is_sr_form
        self._validate()

    def _validate(self):
        n = len(self.diagram.events)
        prev = None
        for hs in self.handleslides:
            if not 0 <= hs.gap < n:
                raise McsError(f"handleslide gap {hs.gap} out of range")
            if prev is not None and hs.gap < prev:
                raise McsError("handleslides must be listed left to right")
            prev = hs.gap
            u, v = hs.strands
            width = self.diagram.width_at(hs.gap)
            if not 1 <= u < v <= width:
                raise McsError(f"handleslide strands {hs.strands} out of range at width {width}")
            pot = self.diagram.maslov
            if pot.potential_at(hs.gap, u) != pot.potential_at(hs.gap, v):
                raise McsError(
                    f"handleslide endpoints at gap {hs.gap} have unequal Maslov potential"
                )

    @cached_property
    def is_a_form(self):
        """One handleslide just left of each of some degree-0 crossings, no others."""
        degrees = self.diagram.maslov.crossing_degrees
        crossing_at_event = {e_idx: (num, p) for num, e_idx, p in self.diagram.crossings}
        gaps = [hs.gap for hs in self.handleslides]
        if len(set(gaps)) != len(gaps):
            return False
        for hs in self.handleslides:
            here = crossing_at_event.get(hs.gap)
            if here is None:
                return False
            num, p = here
            if degrees[num] != 0 or hs.strands != (p, p + 1):
                return False
        return True

    @cached_property
    def augmented_crossings(self):
        """Crossings carrying the A-form handleslides (the augmented set)."""
        if not self.is_a_form:
            raise McsError("augmented crossings are defined for A-form MCSs only")
        crossing_at_event = {e_idx: num for num, e_idx, _ in self.diagram.crossings}
        return frozenset(crossing_at_event[hs.gap] for hs in self.handleslides)

    def handleslides_left_of_crossings(self):
        """Crossing numbers whose left gap holds at least one handleslide."""
        crossing_at_event = {e_idx: num for num, e_idx, _ in self.diagram.crossings}
        out = set()
        for hs in self.handleslides:
            num = crossing_at_event.get(hs.gap)
            if num is not None:
                out.add(num)
        return sorted(out)

    def _gap_name(self, gap):
        ev = self.diagram.events[gap]
        if isinstance(ev, Crossing):
            crossing_at_event = {e_idx: num for num, e_idx, _ in self.diagram.crossings}
            return crossing_at_event[gap]
        if isinstance(ev, RightCusp):
            cusp_no = self.diagram.right_cusp_events.index(gap) + 1
            return f"r{cusp_no}"
        return f"l{gap + 1}"

    def to_json_dict(self):
        out = {}
        if self.ruling is not None:
            out["ruling"] = {"switches": sorted(self.ruling.switches)}
        out["marks"] = sorted(self.marked_returns)
        out["handleslides"] = [
            {"left_of": self._gap_name(hs.gap), "strands": list(hs.strands)}
            for hs in self.handleslides
        ]
        return out

    def __eq__(self, other):
        return (
            isinstance(other, MorseComplexSequence)
            and self.diagram == other.diagram
            and self.handleslides == other.handleslides
        )

    def __hash__(self):
        return hash((self.diagram, self.handleslides))

    def __repr__(self):
        marks = sorted(self.marked_returns)
        if self.is_sr_form:
            return f"MorseComplexSequence(switches={sorted(self.ruling.switches)}, marks={marks})"
        return f"MorseComplexSequence({len(self.handleslides)} handleslides)"


def sr_form(diagram, ruling, marks=()):
    """The SR-form MCS of a graded ruling with the given marked graded returns.

    The handleslide arrangement near each crossing depends on its companion
    configuration, so that the slot complexes between events stay the pure
    ruling differentials:

      switch, config A   one handleslide on each side, on the crossing strands
      switch, nested     the same flanking pair plus one just right of it
                         joining the two companion strands
      mark, config B     one handleslide just left, on the crossing strands
      mark, interleaved  one handleslide just right, on the crossing strands

    Coincident handleslides on the same strands compose to the identity and
    are omitted (adjacent switch patterns share them).
    """
    if ruling.diagram != diagram:
        raise McsError("ruling belongs to a different diagram")
    if not ruling.is_graded:
        raise McsError(f"ruling with switches {sorted(ruling.switches)} is not graded")
    marks = frozenset(marks)
    degrees = diagram.maslov.crossing_degrees
    for c in marks:
        if c in ruling.switches:
            raise McsError(f"marked crossing {c} is a switch, not a return")
        if c not in ruling.returns:
            raise McsError(f"marked crossing {c} is not a return of the ruling")
        if degrees[c] != 0:
            raise McsError(f"marked return {c} has degree {degrees[c]}, not 0")

    # gap -> [(order key, strands)]; keys sort right-hugging marks of the
    # previous event (0, 1) before left-hugging marks of the next one (2)
    by_gap = {}
    for c in sorted(ruling.switches):
        e_idx = diagram.crossing_event(c)
        p = diagram.crossing_pos(c)
        sigma = ruling.state_before_event(e_idx)
        config = configuration(sigma, p)
        by_gap.setdefault(e_idx, []).append((2, (p, p + 1)))
        by_gap.setdefault(e_idx + 1, []).append((0, (p, p + 1)))
        if config == "nested":
            companions = tuple(sorted((sigma[p], sigma[p + 1])))
            by_gap.setdefault(e_idx + 1, []).append((1, companions))
    for c in sorted(marks):
        e_idx = diagram.crossing_event(c)
        p = diagram.crossing_pos(c)
        config = configuration(ruling.state_before_event(e_idx), p)
        if config == "B":
            by_gap.setdefault(e_idx, []).append((2, (p, p + 1)))
        else:
            by_gap.setdefault(e_idx + 1, []).append((0, (p, p + 1)))
    handleslides = []
    for gap in sorted(by_gap):
        stack = []
        for _, strands in sorted(by_gap[gap], key=lambda item: item[0]):
            if stack and stack[-1] == strands:
                stack.pop()
            else:
                stack.append(strands)
        handleslides.extend(Handleslide(gap, strands) for strands in stack)
    return MorseComplexSequence(
        diagram, handleslides, ruling=ruling, marked_returns=marks, is_sr_form=True
    )


def a_form(diagram, crossings):
    """The A-form MCS with one handleslide just left of each listed crossing."""
    crossings = sorted(set(crossings))
    degrees = diagram.maslov.crossing_degrees
    for c in crossings:
        if c not in degrees:
            raise McsError(f"no crossing numbered {c}")
        if degrees[c] != 0:
            raise McsError(f"crossing {c} has degree {degrees[c]}, not 0")
    handleslides = []
    for c in crossings:
        e_idx = diagram.crossing_event(c)
        p = diagram.crossing_pos(c)
        handleslides.append(Handleslide(e_idx, (p, p + 1)))
    return MorseComplexSequence(diagram, handleslides)


def enumerate_sr_forms(diagram):
    """All SR-form MCSs: every graded ruling with every subset of its graded returns.

    Lazily yields sum over rulings of 2^(graded returns) sequences, rulings
    in enumeration order and mark subsets in binary counting order.
    """
    for ruling in enumerate_rulings(diagram, GRADED):
        returns = sorted(ruling.graded_returns)
        for bits in range(1 << len(returns)):
            marks = frozenset(c for i, c in enumerate(returns) if bits >> i & 1)
            yield sr_form(diagram, ruling, marks)


def count_sr_forms(diagram):
    return sum(
        1 << len(r.graded_returns) for r in enumerate_rulings(diagram, GRADED)
    )


# The family's C_i fixtures all ride on one graded ruling of D_m, the one
# with switches at the first and fourth crossings and graded returns at
# every b_j; C_i marks none of them for i=2, only b_2 for i=1, and b_3..b_i
# otherwise.
FAMILY_SWITCHES = (1, 4)


def family_marks(family, i):
    if not 1 <= i <= family.m:
        raise ValueError(f"fixture index {i} out of range 1..{family.m}")
    if i == 1:
        return frozenset({family.labels["b2"]})
    return frozenset(family.labels[f"b{j}"] for j in range(3, i + 1))


def family_sr_form(family, i):
    """The i-th fixture MCS C_i on the family diagram D_m."""
    from .rulings import sweep

    ruling = sweep(family.diagram, FAMILY_SWITCHES)
    return sr_form(family.diagram, ruling, family_marks(family, i))
