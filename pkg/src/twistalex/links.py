"""Link diagrams, braids, planar diagram codes and Wirtinger presentations.

Conventions
-----------
Diagrams are oriented edge graphs.  Each crossing records its incoming and
outgoing under-edges, incoming and outgoing over-edges and its sign
(+1 when the pair (over direction, under direction) is positively
oriented in the plane).

Braids are read top to bottom with strands moving down.  The generator
``s_i`` crosses the strands in positions i and i+1 and is a positive
crossing, so the strand coming from position i+1 passes over.

Planar diagram (PD) codes follow the KnotTheory convention: ``X[i,j,k,l]``
lists the four edges counterclockwise starting at the incoming under-edge
``i``, so ``k`` is the outgoing under-edge; the crossing is positive when
the over-strand runs from ``l`` to ``j``.

Meridians are right-handed: the Wirtinger generator of an arc links it
with linking number +1.  With that choice the relation at a crossing of
sign ``s`` with incoming under-arc ``a``, outgoing under-arc ``b`` and
over-arc ``o`` is ``b = o^-s a o^s``, stored as the relator
``b^-1 o^-s a o^s``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace

from .errors import ParseError, PresentationError
from .fox import Word


@dataclass(frozen=True)
class Crossing:
    under_in: int
    under_out: int
    over_in: int
    over_out: int
    sign: int

    def edges(self):
        return (self.under_in, self.under_out, self.over_in, self.over_out)


class LinkDiagram:
    """Oriented link diagram.

    Parameters
    ----------
    crossings : sequence of Crossing
    components : sequence of sequences of int
        Edge labels of each component in orientation order.  A component
        made of a single edge that meets no crossing is an unknotted,
        unlinked circle drawn without crossings.
    """

    def __init__(self, crossings, components):
        self.crossings = tuple(crossings)
        self.components = tuple(tuple(c) for c in components)
        self._check()

    def _check(self):
        comp_of = {}
        for ci, comp in enumerate(self.components):
            if not comp:
                raise PresentationError(f"component {ci + 1} has no edges")
            for e in comp:
                if e in comp_of:
                    raise PresentationError(f"edge {e} listed twice")
                comp_of[e] = ci
        nxt = {}
        seen_in, seen_out = set(), set()
        for k, c in enumerate(self.crossings):
            if c.sign not in (1, -1):
                raise PresentationError(f"crossing {k} has sign {c.sign}")
            for e in c.edges():
                if e not in comp_of:
                    raise PresentationError(f"crossing {k} uses unknown edge {e}")
            for a, b in ((c.under_in, c.under_out), (c.over_in, c.over_out)):
                if a in seen_in or b in seen_out:
                    raise PresentationError(f"inconsistent arc incidence at crossing {k}")
                seen_in.add(a)
                seen_out.add(b)
                nxt[a] = b
        for ci, comp in enumerate(self.components):
            if len(comp) == 1 and comp[0] not in nxt:
                if comp[0] in seen_out:
                    raise PresentationError(f"inconsistent arc incidence on component {ci + 1}")
                continue
            for i, e in enumerate(comp):
                if nxt.get(e) != comp[(i + 1) % len(comp)]:
                    raise PresentationError(f"component {ci + 1} is not a closed oriented cycle at edge {e}")
        self._comp_of = comp_of
        self._next = nxt

    @property
    def num_components(self):
        return len(self.components)

    def component_of_edge(self, e):
        return self._comp_of[e]

    def next_edge(self, e):
        return self._next.get(e, e)

    def linking_matrix(self):
        """Symmetric integer matrix of pairwise linking numbers (zero diagonal)."""
        c = self.num_components
        twice = [[0] * c for _ in range(c)]
        for x in self.crossings:
            a = self._comp_of[x.under_in]
            b = self._comp_of[x.over_in]
            if a != b:
                twice[a][b] += x.sign
                twice[b][a] += x.sign
        out = []
        for row in twice:
            if any(v % 2 for v in row):
                raise PresentationError("half-integer linking number; diagram is inconsistent")
            out.append([v // 2 for v in row])
        return out

    def writhe(self, comp=None):
        total = 0
        for x in self.crossings:
            a = self._comp_of[x.under_in]
            b = self._comp_of[x.over_in]
            if comp is None or (a == comp and b == comp):
                total += x.sign
        return total

    def reorder_components(self, order):
        """Return the same diagram with components listed in ``order``."""
        if sorted(order) != list(range(self.num_components)):
            raise ValueError("order must be a permutation of the component indices")
        return LinkDiagram(self.crossings, [self.components[i] for i in order])

    def to_pd(self):
        """PD code text with edges renumbered 1..E along the components."""
        label = {}
        for comp in self.components:
            if len(comp) == 1 and comp[0] not in self._next:
                raise PresentationError("a crossingless component has no PD code")
            for e in comp:
                label[e] = len(label) + 1
        parts = []
        for x in self.crossings:
            ui, uo, oi, oo = (label[e] for e in x.edges())
            if x.sign > 0:
                parts.append(f"X[{ui},{oo},{uo},{oi}]")
            else:
                parts.append(f"X[{ui},{oi},{uo},{oo}]")
        text = "PD[" + ", ".join(parts) + "]"
        if self.num_components > 1:
            groups = " ".join("(" + " ".join(str(label[e]) for e in comp) + ")" for comp in self.components)
            text += "\ncomponents: " + groups
        return text

    def __repr__(self):
        return f"LinkDiagram(crossings={len(self.crossings)}, components={self.num_components})"


# -- PD codes -------------------------------------------------------------------

_X = re.compile(r"X\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")
_COMPONENTS = re.compile(r"components\s*:(.*)", re.IGNORECASE | re.DOTALL)


def parse_pd(text):
    """Parse a PD code (``X[i,j,k,l]`` entries) into a :class:`LinkDiagram`.

    An optional ``components:`` line lists each component's edges in
    orientation order, e.g. ``components: (1 2 3 4) (5 6 7 8)``.  It fixes
    both orientations and the component order (the last component is the
    default surgery component).  Without it, orientations come from the
    under-crossings and components are ordered by their smallest label.
    """
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    body = "\n".join(lines)
    block = None
    m = _COMPONENTS.search(body)
    if m:
        block = m.group(1)
        body = body[:m.start()]
    xs = [tuple(int(v) for v in g.groups()) for g in _X.finditer(body)]
    leftover = _X.sub("", body)
    leftover = re.sub(r"PD|[\[\],\s]", "", leftover)
    if leftover:
        pos = body.find(leftover[0])
        raise ParseError("unexpected text in PD code", text, pos, "X[i,j,k,l] entries")
    if not xs:
        raise ParseError("no crossings found", text, 0, "X[i,j,k,l] entries")

    occ = {}
    for c, x in enumerate(xs):
        for p, lab in enumerate(x):
            occ.setdefault(lab, []).append((c, p))
    for lab, places in occ.items():
        if len(places) != 2:
            raise ParseError(f"edge {lab} appears {len(places)} times; every edge must appear exactly twice", text)

    def other(lab, place):
        a, b = occ[lab]
        return b if place == a else a

    # walk each unoriented cycle; a walk records (edge, end occurrence)
    visited = set()
    cycles = []
    for start in sorted(occ):
        if start in visited:
            continue
        walk = []
        lab = start
        end = occ[lab][1]
        while True:
            walk.append((lab, end))
            visited.add(lab)
            c, p = end
            nplace = (c, (p + 2) % 4)
            nlab = xs[c][(p + 2) % 4]
            nend = other(nlab, nplace)
            if nlab == start and nend == walk[0][1]:
                break
            if nlab in visited:
                raise ParseError("edges do not close up into cycles", text)
            lab, end = nlab, nend
        cycles.append(walk)

    def reverse(walk):
        out = []
        for lab, end in walk:
            out.append((lab, other(lab, end)))
        out.reverse()
        return out

    oriented = []
    for walk in cycles:
        ends = [end[1] for _, end in walk]
        fwd = sum(1 for p in ends if p == 0)
        bwd = sum(1 for p in ends if p == 2)
        if fwd and bwd:
            raise ParseError("inconsistent under-crossing orientation along a component", text)
        if bwd:
            walk = reverse(walk)
        elif not fwd:
            labs = [lab for lab, _ in walk]
            up = sum(1 for a, b in zip(labs, labs[1:] + labs[:1]) if b == a + 1)
            down = sum(1 for a, b in zip(labs, labs[1:] + labs[:1]) if b == a - 1)
            if down > up:
                walk = reverse(walk)
        oriented.append(walk)

    if block is not None:
        groups = re.findall(r"\(([^()]*)\)", block)
        if not groups:
            raise ParseError("components block needs parenthesized edge lists", text)
        order = []
        by_set = {frozenset(lab for lab, _ in w): w for w in oriented}
        for g in groups:
            labs = [int(v) for v in g.replace(",", " ").split()]
            w = by_set.get(frozenset(labs))
            if w is None:
                raise ParseError(f"components entry ({g.strip()}) is not a component of the diagram", text)
            pos = {lab: i for i, (lab, _) in enumerate(w)}
            seq = [pos[lab] for lab in labs]
            n = len(w)
            # with two edges the listing reads the same both ways; keep the under-crossing orientation
            if n > 2 and all((seq[(i + 1) % n] - seq[i]) % n == n - 1 for i in range(n)):
                w = reverse(w)
                pos = {lab: i for i, (lab, _) in enumerate(w)}
                seq = [pos[lab] for lab in labs]
            if n > 1 and not all((seq[(i + 1) % n] - seq[i]) % n == 1 for i in range(n)):
                raise ParseError(f"components entry ({g.strip()}) is not in cyclic order", text)
            rot = pos[labs[0]]
            w = w[rot:] + w[:rot]
            order.append(w)
        if len(order) != len(oriented):
            raise ParseError("components block must list every component", text)
        for w in order:
            if any(end[1] == 2 for _, end in w):
                raise ParseError("components block orientation disagrees with the under-crossings", text)
        oriented = order
    else:
        oriented.sort(key=lambda w: min(lab for lab, _ in w))
        oriented = [_rotate_to_min(w) for w in oriented]

    end_at = {}
    for w in oriented:
        for lab, end in w:
            end_at[end] = lab
    crossings = []
    for c, (i, j, k, l) in enumerate(xs):
        if (c, 1) in end_at:
            oi, oo, sign = j, l, -1
        else:
            oi, oo, sign = l, j, 1
        crossings.append(Crossing(i, k, oi, oo, sign))
    components = [[lab for lab, _ in w] for w in oriented]
    return LinkDiagram(crossings, components)


def _rotate_to_min(w):
    k = min(range(len(w)), key=lambda i: w[i][0])
    return w[k:] + w[:k]


# -- braids ----------------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    """Braid on ``strands`` strands; letter ``+i`` is s_i and ``-i`` its inverse."""

    strands: int
    letters: tuple

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"generator s{abs(x)} invalid on {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters)

    def __mul__(self, other):
        return BraidWord(max(self.strands, other.strands), self.letters + other.letters)

    def __pow__(self, k):
        if k < 0:
            return BraidWord(self.strands, tuple(-x for x in reversed(self.letters))) ** (-k)
        return BraidWord(self.strands, self.letters * k)

    def permutation(self):
        """Where each top position ends up at the bottom."""
        pos = list(range(self.strands))
        for x in self.letters:
            i = abs(x) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        out = [0] * self.strands
        for bottom, top in enumerate(pos):
            out[top] = bottom
        return tuple(out)

    def num_closure_components(self):
        perm = self.permutation()
        seen, count = set(), 0
        for i in range(self.strands):
            if i not in seen:
                count += 1
                j = i
                while j not in seen:
                    seen.add(j)
                    j = perm[j]
        return count


_BRAID_TOKEN = re.compile(r"\s*(?:(s|σ|sigma)(\d+)|(-?\d+)|(\()|(\)))")
_POWER = re.compile(r"\s*\^\s*(-?\d+)")


def parse_braid(text, strands=None):
    """Parse braid text such as ``"(s1 s2)^7 s1^-2"`` or ``"1 2 -1"``.

    Grammar: a sequence of items ``sK``, ``sK^M``, a bare signed integer
    (``-K`` meaning ``sK^-1``) or a parenthesized group ``( ... )^M``.
    The strand count defaults to one more than the largest generator.
    """
    pos = 0

    def seq(depth):
        nonlocal pos
        out = []
        while True:
            m = _BRAID_TOKEN.match(text, pos)
            if not m:
                rest = text[pos:].strip()
                if not rest:
                    if depth:
                        raise ParseError("missing ')'", text, len(text), "')'")
                    return out
                raise ParseError("unexpected character in braid word", text, pos + (len(text[pos:]) - len(text[pos:].lstrip())),
                                 "sK, sK^M, an integer or '('")
            start = m.start(m.lastindex)
            pos = m.end()
            if m.group(2):
                k = int(m.group(2))
                if k < 1:
                    raise ParseError("generators are numbered from s1", text, start)
                item = [k]
            elif m.group(3):
                k = int(m.group(3))
                if k == 0:
                    raise ParseError("generator 0 does not exist", text, start)
                item = [k]
            elif m.group(4):
                item = seq(depth + 1)
            else:
                if not depth:
                    raise ParseError("unmatched ')'", text, start)
                return out
            pm = _POWER.match(text, pos)
            if pm:
                pos = pm.end()
                power = int(pm.group(1))
                if power < 0:
                    item = [-x for x in reversed(item)] * (-power)
                else:
                    item = item * power
            out.extend(item)

    letters = seq(0)
    need = max((abs(x) for x in letters), default=0) + 1
    if strands is None:
        strands = need
    elif strands < need:
        raise ParseError(f"generator s{need - 1} needs at least {need} strands, got {strands}", text)
    return BraidWord(int(strands), tuple(letters))


def braid_closure(braid, with_axis=False, axis_clockwise=True):
    """Closed braid diagram, optionally with the braid axis as last component.

    The axis is drawn as an ellipse around the top of the braid.  Its back
    half passes under every strand and its front half over; with the
    default clockwise orientation all axis crossings are positive, so the
    axis links the closure ``+strands`` times.
    """
    n = braid.strands
    counter = [0]

    def new():
        counter[0] += 1
        return counter[0]

    start = [new() for _ in range(n)]
    cur = list(start)
    crossings = []
    axis_slots = []
    if with_axis:
        for p in range(n):
            e0, e1, e2 = cur[p], new(), new()
            axis_slots.append((p, len(crossings), len(crossings) + 1))
            crossings.append(["back", e0, e1])
            crossings.append(["front", e1, e2])
            cur[p] = e2
    built = []
    for x in braid.letters:
        left, right = abs(x) - 1, abs(x)
        el, er = cur[left], cur[right]
        nl, nr = new(), new()
        if x > 0:
            built.append(Crossing(el, nr, er, nl, 1))
        else:
            built.append(Crossing(er, nl, el, nr, -1))
        cur[left], cur[right] = nl, nr
    rename = {start[p]: cur[p] for p in range(n) if start[p] != cur[p]}

    def rn(e):
        return rename.get(e, e)

    final = []
    sgn = 1 if axis_clockwise else -1
    if with_axis:
        order = [("back", p) for p in range(n)] + [("front", p) for p in reversed(range(n))]
        if not axis_clockwise:
            order = [("front", p) for p in range(n)] + [("back", p) for p in reversed(range(n))]
        axis_edges = [new() for _ in range(2 * n)]
        slot = {p: (b, f) for p, b, f in axis_slots}
        axis_cross = {}
        for k, (kind, p) in enumerate(order):
            a_in, a_out = axis_edges[k - 1], axis_edges[k]
            b, f = slot[p]
            if kind == "back":
                _, e0, e1 = crossings[b]
                axis_cross[b] = Crossing(a_in, a_out, rn(e0), e1, sgn)
            else:
                _, e1, e2 = crossings[f]
                axis_cross[f] = Crossing(e1, e2, a_in, a_out, sgn)
        final = [axis_cross[k] for k in range(len(crossings))]
    final += [Crossing(rn(c.under_in), rn(c.under_out), rn(c.over_in), rn(c.over_out), c.sign) for c in built]

    nxt = {}
    for c in final:
        nxt[c.under_in] = c.under_out
        nxt[c.over_in] = c.over_out
    components = []
    seen = set()
    for p in range(n):
        e = rn(start[p])
        if e in seen:
            continue
        comp = [e]
        seen.add(e)
        f = nxt.get(e, e)
        while f != e:
            comp.append(f)
            seen.add(f)
            f = nxt[f]
        components.append(comp)
    if with_axis:
        components.append(_cycle_from(axis_edges[-1], nxt))
    return LinkDiagram(final, components)


def _cycle_from(e, nxt):
    comp = [e]
    f = nxt[e]
    while f != e:
        comp.append(f)
        f = nxt[f]
    return comp


def braid_closure_with_axis(braid, axis_clockwise=True):
    return braid_closure(braid, with_axis=True, axis_clockwise=axis_clockwise)


# -- Wirtinger presentations -------------------------------------------------------

@dataclass
class WirtingerPresentation:
    """Wirtinger presentation of a link group read from a diagram.

    Attributes
    ----------
    generator_count : int
        Number of arcs; generator ``i`` is the right-handed meridian of arc ``i``.
    relators : tuple of Word
        Relators in use (one Wirtinger relator omitted, plus any extra
        relators such as an explicit surgery relator).
    relator_crossings : tuple
        For each relator the crossing it comes from, or None.
    crossing_data : tuple of (a, b, o, s)
        Incoming under-arc, outgoing under-arc, over-arc and sign for
        every crossing, including the omitted one.
    generator_component : tuple of int
    component_meridians : tuple of int
        The distinguished meridian of each component (the arc where its
        longitude is based).  For the last component this is the last
        generator ``x_n``.
    component_cycles : tuple of tuple of int
        Crossings where each component passes under, in traversal order
        from its distinguished arc; the last entry closes the meridian
        cycle.
    omitted_crossing : int or None
    surgery_component : int or None
        Index of the surgery component (always the last when set).
    """

    generator_count: int
    relators: tuple
    relator_crossings: tuple
    crossing_data: tuple
    generator_component: tuple
    component_meridians: tuple
    component_cycles: tuple
    omitted_crossing: int | None
    surgery_component: int | None
    diagram: LinkDiagram
    component_order: tuple = ()
    notes: dict = field(default_factory=dict)

    @property
    def component_count(self):
        return len(self.component_meridians)

    def crossing_relator(self, k):
        a, b, o, s = self.crossing_data[k]
        return Word([(b, -1), (o, -s), (a, 1), (o, s)])

    def all_crossing_relators(self):
        return [self.crossing_relator(k) for k in range(len(self.crossing_data))]

    def generators_of(self, comp):
        return [g for g, c in enumerate(self.generator_component) if c == comp]

    def longitude(self, comp=None):
        """Preferred longitude of a component as a word (surgery component by default).

        It is the product of ``o^s`` over the crossings where the
        component passes under, read along the orientation from the
        distinguished arc, corrected by a power of the distinguished
        meridian so that its exponent sum in the component's own
        meridians is zero.  It commutes with that meridian.
        """
        if comp is None:
            comp = self.surgery_component if self.surgery_component is not None else self.component_count - 1
        letters = []
        k = 0
        for c in self.component_cycles[comp]:
            a, b, o, s = self.crossing_data[c]
            letters.append((o, s))
            if self.generator_component[o] == comp:
                k += s
        w = Word(letters)
        if k:
            w = w * Word.gen(self.component_meridians[comp], -k)
        return w

    def with_relators(self, relators, crossings):
        return replace(self, relators=tuple(relators), relator_crossings=tuple(crossings))


def wirtinger(diagram, surgery_component=None):
    """Wirtinger presentation of ``diagram``.

    Parameters
    ----------
    diagram : LinkDiagram
    surgery_component : int, optional
        Component (0-based) to be used for surgery.  If it is not the last
        component the diagram is reordered so that it becomes last.  The
        omitted relator is then required to avoid its meridians.

    Generators are numbered component by component along each
    component's orientation.  Generator 0 is a meridian of the first
    component; the last generator is the distinguished meridian of the
    last component.
    """
    order = list(range(diagram.num_components))
    if surgery_component is not None:
        sc = surgery_component % diagram.num_components
        if sc != diagram.num_components - 1:
            order = [i for i in order if i != sc] + [sc]
            diagram = diagram.reorder_components(order)
        surgery_component = diagram.num_components - 1

    crossing_of_under_in = {}
    for k, c in enumerate(diagram.crossings):
        crossing_of_under_in[c.under_in] = k
    starts_arc = {c.under_out for c in diagram.crossings}

    arc_of_edge = {}
    comp_arcs = []
    comp_cycles = []
    for comp in diagram.components:
        L = len(comp)
        first = 0
        if any(e in starts_arc for e in comp):
            first = 0
            while comp[first] not in starts_arc:
                first = (first - 1) % L
        seq = comp[first:] + comp[:first]
        arcs = [[]]
        cyc = []
        for e in seq:
            arcs[-1].append(e)
            if e in crossing_of_under_in:
                cyc.append(crossing_of_under_in[e])
                arcs.append([])
        if len(arcs) > 1:
            tail = arcs.pop()
            if tail:
                raise PresentationError("arc bookkeeping failed")
        comp_arcs.append(arcs)
        comp_cycles.append(tuple(cyc))

    gen_component = []
    meridians = []
    last = len(diagram.components) - 1
    for ci, arcs in enumerate(comp_arcs):
        ordered = arcs if ci != last else arcs[1:] + arcs[:1]
        for arc in ordered:
            g = len(gen_component)
            gen_component.append(ci)
            for e in arc:
                arc_of_edge[e] = g
        meridians.append(arc_of_edge[arcs[0][0]])

    data = []
    for c in diagram.crossings:
        data.append((arc_of_edge[c.under_in], arc_of_edge[c.under_out], arc_of_edge[c.over_in], c.sign))

    omitted = None
    for k, (a, b, o, s) in enumerate(data):
        if all(gen_component[g] != last for g in (a, b, o)) or len(diagram.components) == 1:
            omitted = k
            break
    if omitted is None and data:
        if surgery_component is not None:
            raise PresentationError(
                "every crossing relator involves a meridian of the surgery component; "
                "add a crossing elsewhere in the diagram (for instance a kink) first")
        omitted = 0

    pres = WirtingerPresentation(
        generator_count=len(gen_component),
        relators=(),
        relator_crossings=(),
        crossing_data=tuple(data),
        generator_component=tuple(gen_component),
        component_meridians=tuple(meridians),
        component_cycles=tuple(comp_cycles),
        omitted_crossing=omitted,
        surgery_component=surgery_component,
        diagram=diagram,
        component_order=tuple(order),
    )
    keep = [k for k in range(len(data)) if k != omitted]
    return pres.with_relators([pres.crossing_relator(k) for k in keep], keep)


def linking_matrix(diagram):
    return diagram.linking_matrix()


def longitude_word(pres, comp=None):
    return pres.longitude(comp)


def load_link(braid=None, pd=None, axis=False, strands=None):
    """Build a diagram from braid text or PD text (exactly one of them)."""
    if (braid is None) == (pd is None):
        raise ValueError("give exactly one of braid= or pd=")
    if braid is not None:
        b = parse_braid(braid, strands) if isinstance(braid, str) else braid
        return braid_closure(b, with_axis=axis)
    dg = parse_pd(pd)
    if axis:
        raise ValueError("axis=True only applies to braids")
    return dg
