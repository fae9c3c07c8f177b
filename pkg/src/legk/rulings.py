"""Normal rulings of front diagrams via a left-to-right involution sweep.

The sweep state is a fixed-point-free involution on the live strand
positions.  A left cusp inserts a companion pair, a right cusp may only cap
a companion pair, and a crossing either lets the two paths pass through
each other (conjugating the involution by the adjacent transposition) or,
when the local configuration is normal, switches them (involution
unchanged).

Configurations at a crossing of positions p, p+1 with companions
j = sigma(p), k = sigma(p+1) read immediately to the left:

    A            j < p and k > p+1   (companion intervals disjoint)
    B            k < p and j > p+1   (companion intervals interlocked)
    nested       j, k on the same side and k < j
    interleaved  j, k on the same side and j < k (interlocked)

A switch is normal when the two companion intervals are disjoint or nested
(configurations A and nested) and forbidden when they interlock (B and
interleaved); companion strands meeting at a crossing reject the sweep
outright.  A non-switch crossing is a departure when its left configuration
is normal ({A, nested}) and a return otherwise ({B, interleaved}); the
right configuration is then normal, so exactly one side is normal at every
passed crossing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .diagram import Crossing, LeftCusp, RightCusp
from .poly import LaurentPolynomial

SWITCH = "S"
RETURN = "R"
DEPARTURE = "D"

UNGRADED = "ungraded"
GRADED = "graded"
TWO_GRADED = "2graded"
MODES = (UNGRADED, GRADED, TWO_GRADED)

_EMPTY = (0,)


class RulingRejected(ValueError):
    """A switch set fails the sweep; carries the first offending event."""

    def __init__(self, event_index, reason):
        super().__init__(f"event {event_index}: {reason}")
        self.event_index = event_index
        self.reason = reason


def _insert(sigma, p):
    """Insert the companion pair (p, p+1); old positions >= p shift up by 2."""
    w = len(sigma) - 1
    out = [0] * (w + 3)
    for q in range(1, w + 1):
        qq = q if q < p else q + 2
        pp = sigma[q] if sigma[q] < p else sigma[q] + 2
        out[qq] = pp
    out[p] = p + 1
    out[p + 1] = p
    return tuple(out)


def _cap(sigma, p):
    """Remove the pair at (p, p+1); caller has checked sigma[p] == p+1."""
    w = len(sigma) - 1
    out = [0] * (w - 1)
    for q in range(1, w + 1):
        if q in (p, p + 1):
            continue
        qq = q if q < p else q - 2
        pp = sigma[q] if sigma[q] < p else sigma[q] - 2
        out[qq] = pp
    return tuple(out)


def _pass_through(sigma, p):
    """Conjugate by the transposition (p, p+1): the paths cross."""
    out = list(sigma)
    j, k = sigma[p], sigma[p + 1]
    out[p], out[p + 1] = k, j
    out[j], out[k] = p + 1, p
    return tuple(out)


def configuration(sigma, p):
    """Companion configuration at a crossing of positions p, p+1.

    ``sigma`` is the involution immediately left of the crossing; returns
    "A", "B", "nested", or "interleaved" per the table in the module
    docstring.  The crossing strands must not be companions.
    """
    j, k = sigma[p], sigma[p + 1]
    if j < p and k > p + 1:
        return "A"
    if k < p and j > p + 1:
        return "B"
    return "nested" if k < j else "interleaved"


def sweep(diagram, switches):
    """Run the involution sweep for the given switched crossings.

    Returns the NormalRuling on success and raises RulingRejected at the
    first event where the switch set fails (a switch in a non-normal
    configuration, companion strands meeting at a crossing, or a right cusp
    capping non-companions).
    """
    switches = frozenset(switches)
    unknown = switches - {num for num, _, _ in diagram.crossings}
    if unknown:
        raise RulingRejected(-1, f"unknown crossings {sorted(unknown)}")
    sigma = _EMPTY
    states = [sigma]
    classification = {}
    crossing_num = 0
    for idx, ev in enumerate(diagram.events):
        p = ev.pos
        if isinstance(ev, LeftCusp):
            sigma = _insert(sigma, p)
        elif isinstance(ev, RightCusp):
            if sigma[p] != p + 1:
                raise RulingRejected(idx, f"right cusp at {p} caps non-companion strands")
            sigma = _cap(sigma, p)
        else:
            crossing_num += 1
            if sigma[p] == p + 1:
                raise RulingRejected(idx, f"companion strands meet at crossing {crossing_num}")
            config = configuration(sigma, p)
            if crossing_num in switches:
                if config not in ("A", "nested"):
                    raise RulingRejected(
                        idx, f"switch at crossing {crossing_num} violates normality ({config})"
                    )
                classification[crossing_num] = SWITCH
            else:
                classification[crossing_num] = DEPARTURE if config in ("A", "nested") else RETURN
                sigma = _pass_through(sigma, p)
        states.append(sigma)
    return NormalRuling(diagram, switches, classification, tuple(states))


class NormalRuling:
    """A successful sweep: switch set, crossing classification, slot states."""

    def __init__(self, diagram, switches, classification, states):
        self.diagram = diagram
        self.switches = frozenset(switches)
        self.classification = dict(classification)
        self.states = states  # states[i] = involution immediately left of event i

    def state_before_event(self, event_index):
        return self.states[event_index]

    def companion(self, event_index, pos):
        """Companion position of ``pos`` immediately left of the event."""
        return self.states[event_index][pos]

    @property
    def returns(self):
        return frozenset(c for c, kind in self.classification.items() if kind == RETURN)

    @property
    def departures(self):
        return frozenset(c for c, kind in self.classification.items() if kind == DEPARTURE)

    @property
    def j(self):
        """Switch count minus right-cusp count (the ruling polynomial exponent)."""
        return len(self.switches) - self.diagram.n_right_cusps

    @cached_property
    def is_graded(self):
        degrees = self.diagram.maslov.crossing_degrees
        return all(degrees[c] == 0 for c in self.switches)

    @cached_property
    def is_two_graded(self):
        signs = self.diagram.orientation.signs
        return all(signs[c] == +1 for c in self.switches)

    @cached_property
    def graded_returns(self):
        degrees = self.diagram.maslov.crossing_degrees
        return frozenset(c for c in self.returns if degrees[c] == 0)

    def to_json_dict(self):
        return {
            "switches": sorted(self.switches),
            "classification": {str(c): kind for c, kind in sorted(self.classification.items())},
            "graded": self.is_graded,
        }

    def __eq__(self, other):
        return (
            isinstance(other, NormalRuling)
            and self.diagram == other.diagram
            and self.switches == other.switches
        )

    def __hash__(self):
        return hash((self.diagram, self.switches))

    def __repr__(self):
        return f"NormalRuling(switches={sorted(self.switches)})"


def _switch_allowed_per_crossing(diagram, mode):
    """Crossing number -> whether a switch there is admissible in the mode."""
    if mode == UNGRADED:
        return {num: True for num, _, _ in diagram.crossings}
    if mode == GRADED:
        degrees = diagram.maslov.crossing_degrees
        return {num: degrees[num] == 0 for num, _, _ in diagram.crossings}
    if mode == TWO_GRADED:
        signs = diagram.orientation.signs
        return {num: signs[num] == +1 for num, _, _ in diagram.crossings}
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _transitions(ev, sigma, may_switch):
    """Successor states of ``sigma`` across one event, tagged with the move.

    Yields (next_state, move) where move is None off crossings and SWITCH /
    not-SWITCH classification at crossings.
    """
    p = ev.pos
    if isinstance(ev, LeftCusp):
        yield _insert(sigma, p), None
        return
    if isinstance(ev, RightCusp):
        if sigma[p] == p + 1:
            yield _cap(sigma, p), None
        return
    if sigma[p] == p + 1:
        return
    config = configuration(sigma, p)
    normal = config in ("A", "nested")
    yield _pass_through(sigma, p), DEPARTURE if normal else RETURN
    if may_switch and normal:
        yield sigma, SWITCH


def _feasible_states(diagram, start, stop, entry, allowed, exit_states):
    """Per-slot state sets from which the window sweep can still finish.

    Forward pass collects reachable states, backward pass keeps those with a
    continuation into ``exit_states`` at the stop slot.
    """
    events = diagram.events
    crossing_of = {e_idx: num for num, e_idx, _ in diagram.crossings}
    reach = [set() for _ in range(stop - start + 1)]
    reach[0].add(entry)
    for i in range(start, stop):
        ev = events[i]
        may = allowed.get(crossing_of.get(i), False)
        step = reach[i - start + 1]
        for sigma in reach[i - start]:
            for nxt, _ in _transitions(ev, sigma, may):
                step.add(nxt)
    feasible = [set() for _ in range(stop - start + 1)]
    feasible[-1] = reach[-1] & exit_states if exit_states is not None else set(reach[-1])
    for i in range(stop - 1, start - 1, -1):
        ev = events[i]
        may = allowed.get(crossing_of.get(i), False)
        good = feasible[i - start + 1]
        keep = feasible[i - start]
        for sigma in reach[i - start]:
            if any(nxt in good for nxt, _ in _transitions(ev, sigma, may)):
                keep.add(sigma)
    return feasible


def enumerate_rulings_between(diagram, start, stop, entry, exit_states, mode=UNGRADED):
    """All ruling sweeps of events[start:stop] from ``entry`` into ``exit_states``.

    ``exit_states`` is a collection of admissible final involutions (None
    accepts anything).  Returns (switch set, classification, states) triples
    with global crossing numbers, sorted by switch set.  This is the engine
    behind enumerate_rulings and the window queries used for block counts.
    """
    allowed = _switch_allowed_per_crossing(diagram, mode)
    exits = None if exit_states is None else {tuple(s) for s in exit_states}
    feasible = _feasible_states(diagram, start, stop, tuple(entry), allowed, exits)
    if tuple(entry) not in feasible[0]:
        return []
    events = diagram.events
    crossing_of = {e_idx: num for num, e_idx, _ in diagram.crossings}
    out = []
    switches = []
    classification = {}
    states = [tuple(entry)]

    def walk(i):
        if i == stop:
            out.append((frozenset(switches), dict(classification), tuple(states)))
            return
        ev = events[i]
        num = crossing_of.get(i)
        sigma = states[-1]
        good = feasible[i - start + 1]
        for nxt, move in _transitions(ev, sigma, allowed.get(num, False)):
            if nxt not in good:
                continue
            if move is not None:
                classification[num] = move
                if move == SWITCH:
                    switches.append(num)
            states.append(nxt)
            walk(i + 1)
            states.pop()
            if move is not None:
                del classification[num]
                if move == SWITCH:
                    switches.pop()

    walk(start)
    out.sort(key=lambda item: sorted(item[0]))
    return out


def enumerate_rulings(diagram, mode=UNGRADED):
    """All normal rulings of the diagram in a deterministic order.

    Mode restricts where switches may sit: nowhere restricted (ungraded),
    degree-0 crossings only (graded; needs rotation number 0), or positive
    crossings only (2graded).  Sorted lexicographically by switch set.
    """
    results = enumerate_rulings_between(
        diagram, 0, len(diagram.events), _EMPTY, [_EMPTY], mode
    )
    return [
        NormalRuling(diagram, switches, classification, states)
        for switches, classification, states in results
    ]


@dataclass(frozen=True)
class RulingPolynomial:
    """The 2-graded ruling polynomial in z together with its top count."""

    poly: LaurentPolynomial

    @property
    def f_max(self):
        return self.poly.leading_coefficient

    def to_json_dict(self):
        return self.poly.to_json_dict()


def ruling_polynomial(diagram):
    """Sum of z^(switches - right cusps) over all 2-graded normal rulings.

    Computed by a transfer sweep over (state, switch count) pairs, so the
    count never enumerates individual rulings.
    """
    allowed = _switch_allowed_per_crossing(diagram, TWO_GRADED)
    crossing_of = {e_idx: num for num, e_idx, _ in diagram.crossings}
    layer = {(_EMPTY, 0): 1}
    for i, ev in enumerate(diagram.events):
        may = allowed.get(crossing_of.get(i), False)
        nxt_layer = {}
        for (sigma, count), mult in layer.items():
            for nxt, move in _transitions(ev, sigma, may):
                key = (nxt, count + 1 if move == SWITCH else count)
                nxt_layer[key] = nxt_layer.get(key, 0) + mult
        layer = nxt_layer
    coeffs = {}
    for (sigma, count), mult in layer.items():
        if sigma == _EMPTY:
            exp = count - diagram.n_right_cusps
            coeffs[exp] = coeffs.get(exp, 0) + mult
    return RulingPolynomial(LaurentPolynomial(coeffs, var="z"))


def f_max(diagram):
    """Number of 2-graded rulings achieving the maximal switch count (0 if none)."""
    return ruling_polynomial(diagram).f_max
