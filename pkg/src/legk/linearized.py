"""Linearized differential of an SR-form MCS by counting chord paths mod 2.

A chord is a vertical segment [i, j] (1-based positions, i < j) in a gap of
the diagram.  A chord path originates just left of a generator a on the two
strands meeting there and walks leftward, one chord per gap, transforming
at each object in between:

    crossing at p     endpoints follow the strands: apply the transposition
                      (p, p+1)
    right cusp at p   walking leftward the strand count grows by two:
                      endpoints at positions >= p shift by +2
    handleslide (u,v) the chord persists unchanged, and may additionally
                      jump: [t, v] -> [t, u] when t < u, or [u, b] -> [v, b]
                      when b > v (jumps only ever shrink the chord)
    left cusp         never reached (targets are crossings, and plats keep
                      all left cusps leftmost)

The path terminates at a crossing b of degree |a| - 1 at positions p, p+1
when its chord [i, j] just right of b has j = p or i = p+1 and the ruling
pairs i with j immediately left of b.  The coefficient of b in d(a) is the
mod 2 number of such paths.

Two engines compute the differential: an explicit DFS over chord paths (the
oracle; exponential in the handleslide count) and a right-to-left transfer
sweep propagating GF(2) chord vectors (the production engine; linear per
source).  They must agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Crossing, DiagramError, LeftCusp, RightCusp
from .gf2 import Gf2Matrix, gf2_compose_is_zero, gf2_rank
from .mcs import Handleslide, enumerate_sr_forms
from .poly import LaurentPolynomial


class LinearizationError(ValueError):
    """A computed homology datum violates an internal consistency check."""


def chord_step(chord, obj):
    """Successor chords of ``chord`` stepping leftward across one object.

    ``obj`` is a Crossing, RightCusp, or Handleslide; left cusps cannot be
    crossed.  Returns a frozenset with one element (deterministic objects)
    or two (a handleslide the chord jumps along).
    """
    i, j = chord
    if isinstance(obj, Crossing):
        p = obj.pos
        tau = {p: p + 1, p + 1: p}
        a, b = tau.get(i, i), tau.get(j, j)
        return frozenset({(a, b) if a < b else (b, a)})
    if isinstance(obj, RightCusp):
        p = obj.pos
        return frozenset({(i + 2 if i >= p else i, j + 2 if j >= p else j)})
    if isinstance(obj, Handleslide):
        u, v = obj.strands
        out = {(i, j)}
        if j == v and i < u:
            out.add((i, u))
        elif i == u and j > v:
            out.add((v, j))
        return frozenset(out)
    if isinstance(obj, LeftCusp):
        raise DiagramError("chord paths cannot cross a left cusp")
    raise TypeError(f"cannot step a chord across {obj!r}")


@dataclass(frozen=True)
class ChordPath:
    """One chord path: its chords right-to-left and the jumps it took.

    ``jumps`` holds (handleslide, chord before, chord after) triples in the
    order encountered.
    """

    source: int
    target: int
    chords: tuple
    jumps: tuple = field(default=())

    @property
    def jump_count(self):
        return len(self.jumps)


class _Tape:
    """The MCS unrolled left-to-right: handleslides interleaved with events."""

    def __init__(self, mcs):
        diagram = mcs.diagram
        if not diagram.is_plat:
            raise DiagramError("linearized differentials require a plat diagram")
        if mcs.ruling is None or not mcs.is_sr_form:
            raise LinearizationError("chord paths are defined for SR-form MCSs")
        self.mcs = mcs
        self.diagram = diagram
        degrees = {g: diagram.generator_degree(g) for g in range(1, diagram.n_generators + 1)}
        self.degrees = degrees

        crossing_at_event = {e_idx: (num, p) for num, e_idx, p in diagram.crossings}
        by_gap = {}
        for hs in mcs.handleslides:
            by_gap.setdefault(hs.gap, []).append(hs)
        objects = []
        self.gen_start = {}  # generator -> tape index of the object before its gap
        gen_of_cusp = {
            e_idx: diagram.n_crossings + k + 1
            for k, e_idx in enumerate(diagram.right_cusp_events)
        }
        for e_idx, ev in enumerate(diagram.events):
            for hs in by_gap.get(e_idx, []):
                objects.append(("hs", hs))
            gen = None
            if isinstance(ev, Crossing):
                gen = crossing_at_event[e_idx][0]
            elif isinstance(ev, RightCusp):
                gen = gen_of_cusp[e_idx]
            if gen is not None:
                self.gen_start[gen] = len(objects)
            objects.append(("event", ev, e_idx, gen))
        self.objects = objects

        # termination data per crossing: (position, ruling pairing just left)
        self.termination = {
            num: (p, mcs.ruling.state_before_event(e_idx))
            for num, e_idx, p in diagram.crossings
        }

    def origin_chord(self, gen):
        ev = self.diagram.events[self.diagram.generator_event(gen)]
        return (ev.pos, ev.pos + 1)

    def terminates(self, chord, crossing):
        i, j = chord
        p, sigma = self.termination[crossing]
        return (j == p or i == p + 1) and sigma[i] == j


def _eligible(tape, source):
    """Target degree for a source generator (always degree - 1)."""
    return tape.degrees[source] - 1


def chord_paths_from(mcs, source):
    """All terminating chord paths from ``source``, grouped by target.

    DFS oracle over chord_step branches; exact path objects, exponential in
    the number of handleslides met.
    """
    tape = _Tape(mcs)
    want = _eligible(tape, source)
    results = {}
    chords0 = (tape.origin_chord(source),)

    def walk(idx, chord, chords, jumps):
        if idx < 0:
            return
        obj = tape.objects[idx]
        if obj[0] == "event":
            ev, gen = obj[1], obj[3]
            if isinstance(ev, LeftCusp):
                return
            if (
                isinstance(ev, Crossing)
                and tape.degrees[gen] == want
                and tape.terminates(chord, gen)
            ):
                results.setdefault(gen, []).append(
                    ChordPath(source, gen, chords, jumps)
                )
            (nxt,) = chord_step(chord, ev)
            walk(idx - 1, nxt, chords + (nxt,), jumps)
            return
        hs = obj[1]
        for nxt in sorted(chord_step(chord, hs)):
            if nxt == chord:
                walk(idx - 1, nxt, chords + (nxt,), jumps)
            else:
                walk(idx - 1, nxt, chords + (nxt,), jumps + ((hs, chord, nxt),))

    walk(tape.gen_start[source] - 1, chords0[0], chords0, ())
    return results


def enumerate_chord_paths(mcs, source, target):
    """The chord paths from ``source`` terminating at crossing ``target``."""
    tape = _Tape(mcs)
    if target > mcs.diagram.n_crossings:
        raise LinearizationError("chord paths terminate at crossings only")
    if tape.degrees[source] != tape.degrees[target] + 1:
        raise LinearizationError(
            f"need degree({source}) = degree({target}) + 1, got "
            f"{tape.degrees[source]} and {tape.degrees[target]}"
        )
    if tape.gen_start[target] >= tape.gen_start[source]:
        raise LinearizationError("target must lie strictly left of source")
    return chord_paths_from(mcs, source).get(target, [])


def _transfer_row(tape, source):
    """One right-to-left GF(2) sweep; returns {target: parity bit}."""
    want = tape.degrees[source] - 1
    active = {tape.origin_chord(source)}
    row = {}
    for idx in range(tape.gen_start[source] - 1, -1, -1):
        if not active:
            break
        obj = tape.objects[idx]
        if obj[0] == "event":
            ev, gen = obj[1], obj[3]
            if isinstance(ev, LeftCusp):
                break
            if isinstance(ev, Crossing):
                if tape.degrees[gen] == want:
                    hits = sum(1 for c in active if tape.terminates(c, gen))
                    if hits & 1:
                        row[gen] = 1
                p = ev.pos
                tau = {p: p + 1, p + 1: p}
                active = {
                    (min(a, b), max(a, b))
                    for a, b in ((tau.get(i, i), tau.get(j, j)) for i, j in active)
                }
            else:
                p = ev.pos
                active = {
                    (i + 2 if i >= p else i, j + 2 if j >= p else j) for i, j in active
                }
        else:
            u, v = obj[1].strands
            nxt = set(active)
            for i, j in active:
                if j == v and i < u:
                    nxt ^= {(i, u)}
                elif i == u and j > v:
                    nxt ^= {(v, j)}
            active = nxt
    return row


def differential(mcs):
    """The linearized differential as one GF(2) matrix per source degree.

    Matrix for degree k has the degree-k generators as rows and the
    degree-(k-1) generators as columns, both in diagram order; entry (a, b)
    is the mod 2 chord path count from a to b.
    """
    tape = _Tape(mcs)
    diagram = mcs.diagram
    gens_by_degree = {}
    for g in range(1, diagram.n_generators + 1):
        gens_by_degree.setdefault(tape.degrees[g], []).append(g)
    out = {}
    for k, sources in sorted(gens_by_degree.items()):
        cols = gens_by_degree.get(k - 1, [])
        col_index = {g: idx for idx, g in enumerate(cols)}
        rows = []
        for a in sources:
            bits = 0
            for b, bit in _transfer_row(tape, a).items():
                bits |= bit << col_index[b]
            rows.append(bits)
        out[k] = Gf2Matrix(len(sources), len(cols), rows, row_labels=sources, col_labels=cols)
    return out


def differential_is_square_zero(diffs):
    """Check d o d = 0 over every pair of consecutive degrees."""
    for k, mat in diffs.items():
        below = diffs.get(k - 1)
        # absent below means no generators in degree k-1, so mat is zero
        if below is not None and not gf2_compose_is_zero(below, mat):
            return False
    return True


def differential_by_oracle(mcs):
    """The differential recomputed entry by entry from the DFS oracle."""
    tape = _Tape(mcs)
    diagram = mcs.diagram
    gens_by_degree = {}
    for g in range(1, diagram.n_generators + 1):
        gens_by_degree.setdefault(tape.degrees[g], []).append(g)
    out = {}
    for k, sources in sorted(gens_by_degree.items()):
        cols = gens_by_degree.get(k - 1, [])
        col_index = {g: idx for idx, g in enumerate(cols)}
        rows = []
        for a in sources:
            bits = 0
            for b, paths in chord_paths_from(mcs, a).items():
                bits |= (len(paths) & 1) << col_index[b]
            rows.append(bits)
        out[k] = Gf2Matrix(len(sources), len(cols), rows, row_labels=sources, col_labels=cols)
    return out


def homology_dimensions(mcs, diffs=None):
    """h_k = n_k - r_k - r_{k+1} per degree, with n_k counting right cusps in degree 1."""
    diagram = mcs.diagram
    if diffs is None:
        diffs = differential(mcs)
    n = {}
    for g in range(1, diagram.n_generators + 1):
        k = diagram.generator_degree(g)
        n[k] = n.get(k, 0) + 1
    ranks = {k: gf2_rank(mat) for k, mat in diffs.items()}
    h = {}
    for k in n:
        hk = n[k] - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if hk < 0:
            raise LinearizationError(
                f"negative homology dimension h_{k} = {hk}; differential is inconsistent"
            )
        if hk:
            h[k] = hk
    return h


def mcs_polynomial(mcs, diffs=None):
    """Poincare polynomial of the linearized homology, with consistency checks.

    Raises LinearizationError when any h_k is negative, the coefficient
    duality h_i = h_{-i} (i != 1), h_1 = h_{-1} + 1 fails, or P(-1) does not
    equal the Thurston-Bennequin number.
    """
    h = homology_dimensions(mcs, diffs)
    poly = LaurentPolynomial(h, var="t")
    for i in set(abs(k) for k in h) | {1}:
        if i != 1 and poly[i] != poly[-i]:
            raise LinearizationError(f"duality fails: h_{i}={poly[i]} vs h_{-i}={poly[-i]}")
    if poly[1] != poly[-1] + 1:
        raise LinearizationError(f"duality fails: h_1={poly[1]} vs h_-1+1={poly[-1] + 1}")
    tb = mcs.diagram.orientation.writhe - mcs.diagram.n_right_cusps
    if poly(-1) != tb:
        raise LinearizationError(f"P(-1)={poly(-1)} differs from tb={tb}")
    return poly


def gf2_ranks(mcs):
    """Rank of the degree-k differential for every populated degree."""
    return {k: gf2_rank(mat) for k, mat in differential(mcs).items()}


def chekanov_polynomial_set(diagram):
    """The deduplicated set of MCS polynomials over all SR-form MCSs.

    Empty exactly when the diagram admits no graded normal ruling.
    """
    return {mcs_polynomial(m) for m in enumerate_sr_forms(diagram)}
