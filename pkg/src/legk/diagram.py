"""Front diagrams of Legendrian knots as ordered event sequences.

A diagram is a left-to-right list of events, each happening at its own
x-slot: a left cusp opening two strands, a right cusp closing two adjacent
strands, or a crossing of two adjacent strands.  Positions are 1-based and
counted from the top at the event's slot.  All geometry (orientation, Maslov
potential, gradings, classical invariants) is derived from the event order
alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


class DiagramError(ValueError):
    """The event sequence does not describe a valid single-knot front."""


class PlatSyntaxError(DiagramError):
    """Diagram source text does not match the `plat <k> : <word>` grammar."""


class MultiComponentError(DiagramError):
    """The closed curve traced by the events has more than one component."""


class GradingError(DiagramError):
    """No consistent integer Maslov potential exists (rotation number != 0)."""


@dataclass(frozen=True)
class LeftCusp:
    pos: int


@dataclass(frozen=True)
class RightCusp:
    pos: int


@dataclass(frozen=True)
class Crossing:
    pos: int


Event = LeftCusp | RightCusp | Crossing


@dataclass(frozen=True)
class ClassicalInvariants:
    writhe: int
    tb: int
    rotation: int
    left_cusps: int
    right_cusps: int


class Orientation:
    """A traversal direction for every strand, with cusp and crossing data.

    ``direction[s]`` is +1 when strand s is traversed rightward, -1 when
    leftward.  Crossing signs and |rotation| do not depend on which of the
    two global orientations was chosen.
    """

    def __init__(self, diagram, direction):
        self.diagram = diagram
        self.direction = tuple(direction)
        down = up = 0
        for upper, lower, kind in diagram.cusps:
            arrives_upper = self.direction[upper] == (-1 if kind == "left" else +1)
            if arrives_upper:
                down += 1
            else:
                up += 1
        self.down_cusps = down
        self.up_cusps = up
        self.rotation = (down - up) // 2
        signs = {}
        for num, e_idx, p in diagram.crossings:
            a = diagram.occupancy[e_idx][p - 1]
            b = diagram.occupancy[e_idx][p]
            signs[num] = +1 if self.direction[a] == self.direction[b] else -1
        self.signs = signs
        self.writhe = sum(signs.values())

    def reversed(self):
        """The opposite global orientation (flips every strand direction)."""
        return Orientation(self.diagram, tuple(-d for d in self.direction))


class MaslovLabeling:
    """Integer Maslov potential per strand plus the induced generator grading.

    The potential jumps by one at every cusp (upper branch = lower branch + 1)
    and is normalized so its minimum over all strands is 0.  A crossing's
    degree is the potential of its upper-left strand minus that of its
    lower-left strand; right cusps have degree 1.
    """

    def __init__(self, diagram, potentials):
        self.diagram = diagram
        self.potentials = tuple(potentials)
        degrees = {}
        for num, e_idx, p in diagram.crossings:
            top = diagram.occupancy[e_idx][p - 1]
            bot = diagram.occupancy[e_idx][p]
            degrees[num] = self.potentials[top] - self.potentials[bot]
        self.crossing_degrees = degrees

    def potential_at(self, slot, pos):
        """Potential of the strand occupying 1-based ``pos`` at ``slot``."""
        return self.potentials[self.diagram.occupancy[slot][pos - 1]]

    def potentials_at_slot(self, slot):
        return tuple(self.potentials[s] for s in self.diagram.occupancy[slot])

    def degree_census(self):
        """Crossing count per degree (right cusps not included)."""
        census = {}
        for deg in self.crossing_degrees.values():
            census[deg] = census.get(deg, 0) + 1
        return census


class FrontDiagram:
    """Validated immutable front diagram of a Legendrian knot.

    Construction checks the strand bookkeeping (count starts and ends at 0,
    every event position in range) and that the traced closed curve has
    exactly one component.  Instances hash by their event tuple.
    """

    def __init__(self, events):
        self.events = tuple(events)
        self._trace()

    def _trace(self):
        if not self.events:
            raise DiagramError("empty event sequence does not describe a knot")
        occupancy = [()]
        occ = ()
        cusps = []  # (upper strand, lower strand, "left"|"right") per cusp event
        births = {}
        next_id = 0
        for idx, ev in enumerate(self.events):
            w = len(occ)
            p = ev.pos
            if isinstance(ev, LeftCusp):
                if not 1 <= p <= w + 1:
                    raise DiagramError(f"event {idx}: left cusp position {p} out of range 1..{w + 1}")
                upper, lower = next_id, next_id + 1
                next_id += 2
                births[upper] = births[lower] = idx
                occ = occ[: p - 1] + (upper, lower) + occ[p - 1 :]
                cusps.append((upper, lower, "left"))
            elif isinstance(ev, Crossing):
                if not 1 <= p <= w - 1:
                    raise DiagramError(f"event {idx}: crossing position {p} out of range 1..{w - 1}")
                occ = occ[: p - 1] + (occ[p], occ[p - 1]) + occ[p + 1 :]
            elif isinstance(ev, RightCusp):
                if not 1 <= p <= w - 1:
                    raise DiagramError(f"event {idx}: right cusp position {p} out of range 1..{w - 1}")
                cusps.append((occ[p - 1], occ[p], "right"))
                occ = occ[: p - 1] + occ[p + 1 :]
            else:
                raise DiagramError(f"event {idx}: unknown event {ev!r}")
            occupancy.append(occ)
        if occ:
            raise DiagramError(f"{len(occ)} strands left open after the last event")

        self.occupancy = tuple(occupancy)
        self.cusps = tuple(cusps)
        self.n_strands = next_id

        birth = {}
        death = {}
        for c_idx, (upper, lower, kind) in enumerate(cusps):
            table = birth if kind == "left" else death
            table[upper] = c_idx
            table[lower] = c_idx
        self._birth_cusp = birth
        self._death_cusp = death

        # The curve is a disjoint union of cycles alternating rightward and
        # leftward strands; the knot condition is one cycle through them all.
        seen = set()
        order = []  # (strand, rightward?) in traversal order
        strand, rightward = 0, True
        while strand not in seen:
            seen.add(strand)
            order.append((strand, rightward))
            far = death[strand] if rightward else birth[strand]
            upper, lower, _ = cusps[far]
            strand = lower if strand == upper else upper
            rightward = not rightward
        if len(seen) != self.n_strands:
            raise MultiComponentError(
                f"curve has {self._component_count()} components; knots only"
            )
        self._traversal = tuple(order)

    def _component_count(self):
        roots = list(range(self.n_strands))

        def find(x):
            while roots[x] != x:
                roots[x] = roots[roots[x]]
                x = roots[x]
            return x

        for upper, lower, _ in self.cusps:
            roots[find(upper)] = find(lower)
        return len({find(s) for s in range(self.n_strands)})

    # -- basic census ------------------------------------------------------

    @cached_property
    def crossings(self):
        """Crossings as (crossing number, event index, position), left to right."""
        out = []
        for idx, ev in enumerate(self.events):
            if isinstance(ev, Crossing):
                out.append((len(out) + 1, idx, ev.pos))
        return tuple(out)

    @property
    def n_crossings(self):
        return len(self.crossings)

    @cached_property
    def right_cusp_events(self):
        return tuple(i for i, ev in enumerate(self.events) if isinstance(ev, RightCusp))

    @cached_property
    def left_cusp_events(self):
        return tuple(i for i, ev in enumerate(self.events) if isinstance(ev, LeftCusp))

    @property
    def n_left_cusps(self):
        return len(self.left_cusp_events)

    @property
    def n_right_cusps(self):
        return len(self.right_cusp_events)

    def width_at(self, slot):
        """Strand count in the gap after the first ``slot`` events."""
        return len(self.occupancy[slot])

    @cached_property
    def is_plat(self):
        """Canonical plat shape: cusps at 1,3,..., then crossings, then caps at 1."""
        k = self.n_left_cusps
        if k != self.n_right_cusps:
            return False
        head = self.events[:k]
        tail = self.events[-k:]
        if any(not isinstance(e, LeftCusp) or e.pos != 2 * i + 1 for i, e in enumerate(head)):
            return False
        if any(not isinstance(e, RightCusp) or e.pos != 1 for e in tail):
            return False
        return all(isinstance(e, Crossing) for e in self.events[k : len(self.events) - k])

    def crossing_event(self, number):
        """Event index of the crossing with the given 1-based number."""
        return self.crossings[number - 1][1]

    def crossing_pos(self, number):
        return self.crossings[number - 1][2]

    # -- derived structure -------------------------------------------------

    @cached_property
    def orientation(self):
        direction = [0] * self.n_strands
        for strand, from_left in self._traversal:
            direction[strand] = +1 if from_left else -1
        return Orientation(self, direction)

    @cached_property
    def maslov(self):
        # Assign along the traversal cycle (a spanning tree of the cusp
        # constraint graph), then verify every cusp; the one closing edge
        # fails exactly when the rotation number is nonzero.
        pot = [None] * self.n_strands
        pot[self._traversal[0][0]] = 0
        for (cur, rightward), (nxt, _) in zip(self._traversal, self._traversal[1:]):
            far = self._death_cusp[cur] if rightward else self._birth_cusp[cur]
            upper, lower, _ = self.cusps[far]
            pot[nxt] = pot[cur] + 1 if nxt == upper else pot[cur] - 1
        for upper, lower, _ in self.cusps:
            if pot[upper] != pot[lower] + 1:
                raise GradingError(
                    "no integer Maslov potential: rotation number is "
                    f"{self.orientation.rotation}, not 0"
                )
        base = min(pot)
        return MaslovLabeling(self, tuple(v - base for v in pot))

    def generator_degree(self, gen):
        """Degree of a generator: crossings by Maslov grading, right cusps 1."""
        if gen <= self.n_crossings:
            return self.maslov.crossing_degrees[gen]
        return 1

    @property
    def n_generators(self):
        return self.n_crossings + self.n_right_cusps

    def generator_event(self, gen):
        if gen <= self.n_crossings:
            return self.crossing_event(gen)
        return self.right_cusp_events[gen - self.n_crossings - 1]

    def generator_name(self, gen):
        if gen <= self.n_crossings:
            return f"x{gen}"
        return f"r{gen - self.n_crossings}"

    def __eq__(self, other):
        return isinstance(other, FrontDiagram) and self.events == other.events

    def __hash__(self):
        return hash(self.events)

    def __repr__(self):
        if self.is_plat:
            return f"FrontDiagram({to_text(self)!r})"
        return f"FrontDiagram(<{len(self.events)} events>)"


# -- parsing and serialization ----------------------------------------------


def parse_plat(text):
    """Parse `plat <k> : <i_1> ... <i_n>` into a validated FrontDiagram.

    The k left cusps open at positions 1, 3, ..., 2k-1, the word's crossings
    follow in order, and k right cusps cap the remaining pairs top-down.
    """
    tokens = text.replace(":", " : ").split()
    if len(tokens) < 3 or tokens[0] != "plat" or tokens[2] != ":":
        raise PlatSyntaxError(f"expected 'plat <k> : <word>', got {text!r}")
    try:
        k = int(tokens[1])
        word = [int(t) for t in tokens[3:]]
    except ValueError as exc:
        raise PlatSyntaxError(f"non-integer token in {text!r}") from exc
    if k < 1:
        raise PlatSyntaxError(f"need at least one cusp pair, got k={k}")
    for i in word:
        if not 1 <= i <= 2 * k - 1:
            raise PlatSyntaxError(f"crossing position {i} out of range 1..{2 * k - 1}")
    return from_plat_word(k, word)


def from_plat_word(k, word):
    events = [LeftCusp(2 * i + 1) for i in range(k)]
    events += [Crossing(i) for i in word]
    events += [RightCusp(1)] * k
    return FrontDiagram(events)


def to_text(diagram):
    """Canonical source text of a plat diagram (round-trips with parse_plat)."""
    if not diagram.is_plat:
        raise DiagramError("only plat diagrams have a canonical text form")
    k = diagram.n_left_cusps
    word = " ".join(str(p) for _, _, p in diagram.crossings)
    return f"plat {k} : {word}".rstrip()


def plat_word(diagram):
    if not diagram.is_plat:
        raise DiagramError("not a plat diagram")
    return tuple(p for _, _, p in diagram.crossings)


# -- operations ---------------------------------------------------------------


def orient(diagram):
    return diagram.orientation


def maslov(diagram):
    return diagram.maslov


def classical_invariants(diagram):
    o = diagram.orientation
    return ClassicalInvariants(
        writhe=o.writhe,
        tb=o.writhe - diagram.n_right_cusps,
        rotation=o.rotation,
        left_cusps=diagram.n_left_cusps,
        right_cusps=diagram.n_right_cusps,
    )


def connect_sum(d1, d2):
    """Splice two plats: drop d1's bottom right cusp and d2's top left cusp.

    With right cusps capped top-down, the deleted cap is d1's last event and
    leaves two open strands at positions 1, 2; d2's remaining left cusps then
    open at positions 3, 5, ... unchanged, so the splice is pure event-list
    surgery.
    """
    if not (d1.is_plat and d2.is_plat):
        raise DiagramError("connect sum requires plat diagrams")
    return FrontDiagram(d1.events[:-1] + d2.events[1:])


# -- the paper's family -------------------------------------------------------

_FAMILY_BASE = (2, 2, 4, 3, 3, 3, 2, 4)
_FAMILY_BLOCK = (2, 4, 3, 3, 4, 2)


@dataclass(frozen=True)
class FamilyDiagram:
    """D_m with its named crossings (q1, q2, a2, q3, q4, b2, c2, a_i, b_i, c_i)."""

    m: int
    diagram: FrontDiagram
    labels: dict

    def crossing(self, name):
        return self.labels[name]


def family_word(m):
    if m < 2:
        raise ValueError(f"family is defined for m >= 2, got {m}")
    return _FAMILY_BASE + _FAMILY_BLOCK * (m - 2)


def family_diagram(m):
    """The m-th diagram of the family, with its crossing label map attached."""
    word = family_word(m)
    labels = {"q1": 1, "q2": 2, "a2": 3, "q3": 4, "q4": 5, "b2": 6, "c2": 7}
    for i in range(3, m + 1):
        base = 8 + 6 * (i - 3)
        labels[f"a{i}"] = base + 2
        labels[f"b{i}"] = base + 4
        labels[f"c{i}"] = base + 6
    return FamilyDiagram(m=m, diagram=from_plat_word(3, word), labels=labels)
