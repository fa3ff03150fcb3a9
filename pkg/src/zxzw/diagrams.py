"""Open-graph diagrams for the ZX, ZX_T and ZW calculi.

A diagram is a graph of generator nodes with ordered boundary ports.  Only
topology matters: edges are undirected, wires may bend freely, and plain
wires (identities, swaps, cups, caps) are represented as edges alone, with
no nodes.  Closed circles carry no ports at all and are tracked by a loop
counter.

Endpoints
---------
Edges join *endpoints*.  An endpoint is one of::

    ("n", node_index, port)   a port of a node (inputs first, then outputs)
    ("i", k)                  the k-th boundary input
    ("o", k)                  the k-th boundary output

Every endpoint of a validated diagram is used by exactly one edge end; a
self-loop uses two distinct ports of the same node.

The two compositions build graphs directly: sequential composition fuses
output ports to input ports pairwise and splices the wires through, so
composing `cup` after `cap` really produces a closed circle.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .phases import Phase, PhaseLike
from .rings import Cyclo


class DiagramError(Exception):
    pass


class ArityMismatch(DiagramError):
    pass


class CalculusMismatch(DiagramError):
    pass


class MissingVariable(DiagramError):
    pass


# generator kinds
Z = "Z"  # green spider, any arity, phase
X = "X"  # red spider, any arity, phase
H = "H"  # Hadamard, 1->1
W11 = "W11"  # black w node, 1->1 (NOT)
W12 = "W12"  # black w node, 1->2
WZ = "WZ"  # white zw node, any arity, complex parameter
CROSS = "CROSS"  # zw crossing, 2->2
HALF = "HALF"  # scalar 1/2, 0->0
TRI = "TRI"  # triangle, 1->1, complex parameter

_FIXED_ARITY = {H: (1, 1), W11: (1, 1), W12: (1, 2), CROSS: (2, 2), HALF: (0, 0), TRI: (1, 1)}
_PHASED = {Z, X}
_PARAMETRIC = {WZ, TRI}
_KIND_TAG = {Z: "zx", X: "zx", H: "zx", TRI: "zxt", W11: "zw", W12: "zw", WZ: "zw", CROSS: "zw", HALF: "zw"}
_TAG_KINDS = {
    "zx": {Z, X, H},
    "zxt": {Z, X, H, TRI},
    "zw": {W11, W12, WZ, CROSS, HALF},
}

# ports of a zw crossing in cyclic (clockwise) order: in0, in1, out1, out0
CROSS_CYCLE = (0, 1, 3, 2)

Param = Union[Cyclo, complex]


def _coerce_param(p) -> Param:
    if isinstance(p, Cyclo):
        return p
    if isinstance(p, int):
        return Cyclo(p)
    if isinstance(p, Fraction):
        if (2 ** (p.denominator.bit_length() - 1)) != p.denominator:
            return complex(p)
        num, den = p.numerator, p.denominator
        return Cyclo(num, 0, 0, 0, den.bit_length() - 1)
    if isinstance(p, float) and p == int(p):
        return Cyclo(int(p))
    return complex(p)


@dataclass(frozen=True)
class Gen:
    """A generator occurrence: kind, arity, and phase or parameter."""

    kind: str
    n_in: int
    n_out: int
    phase: Optional[Phase] = None
    param: Optional[Param] = None

    def __post_init__(self):
        if self.kind in _FIXED_ARITY:
            if (self.n_in, self.n_out) != _FIXED_ARITY[self.kind]:
                raise ArityMismatch(
                    f"{self.kind} is {_FIXED_ARITY[self.kind][0]}->{_FIXED_ARITY[self.kind][1]},"
                    f" got {self.n_in}->{self.n_out}"
                )
        elif self.kind not in _PHASED and self.kind != WZ:
            raise DiagramError(f"unknown generator kind {self.kind!r}")
        if self.n_in < 0 or self.n_out < 0:
            raise ArityMismatch("negative arity")
        if self.kind in _PHASED:
            if self.phase is None:
                object.__setattr__(self, "phase", Phase.ZERO)
        elif self.phase is not None:
            raise DiagramError(f"{self.kind} takes no phase")
        if self.kind in _PARAMETRIC:
            if self.param is None:
                raise DiagramError(f"{self.kind} needs a parameter")
            object.__setattr__(self, "param", _coerce_param(self.param))
        elif self.param is not None:
            raise DiagramError(f"{self.kind} takes no parameter")

    @property
    def arity(self) -> int:
        return self.n_in + self.n_out

    def port_is_input(self, port: int) -> bool:
        return port < self.n_in

    def signature(self):
        return (self.kind, self.n_in, self.n_out, self.phase, _param_key(self.param))


def _param_key(p):
    if p is None:
        return None
    if isinstance(p, Cyclo):
        return ("exact", p)
    return ("float", p)


def _merge_tags(t1: Optional[str], t2: Optional[str]) -> Optional[str]:
    if t1 is None:
        return t2
    if t2 is None:
        return t1
    if t1 == t2:
        return t1
    if {t1, t2} == {"zx", "zxt"}:
        return "zxt"
    raise CalculusMismatch(f"cannot mix {t1} and {t2} diagrams")


class Diagram:
    """An immutable open graph with ordered boundary ports.

    Build diagrams from the constructors below (`generator`, `identity`,
    `cup`, ...) and combine them with `then` / `tensor`; direct construction
    validates that the edges form a perfect matching on all ports.
    """

    __slots__ = ("tag", "nodes", "edges", "n_in", "n_out", "loops")

    def __init__(self, tag, nodes, edges, n_in, n_out, loops=0):
        self.tag = tag
        self.nodes = tuple(nodes)
        self.edges = tuple(sorted(tuple(sorted(e)) for e in edges))
        self.n_in = n_in
        self.n_out = n_out
        self.loops = loops
        self.validate()

    # -- validation ------------------------------------------------------

    def validate(self) -> None:
        if self.n_in < 0 or self.n_out < 0 or self.loops < 0:
            raise DiagramError("negative boundary or loop count")
        if self.tag is not None and self.tag not in _TAG_KINDS:
            raise DiagramError(f"unknown calculus tag {self.tag!r}")
        allowed = _TAG_KINDS.get(self.tag, set())
        if self.tag is None and self.nodes:
            raise DiagramError("untagged diagrams must be pure wires")
        for g in self.nodes:
            if not isinstance(g, Gen):
                raise DiagramError(f"node {g!r} is not a generator")
            if g.kind not in allowed:
                raise CalculusMismatch(f"{g.kind} is not a {self.tag} generator")
        expected = set()
        for i, g in enumerate(self.nodes):
            for p in range(g.arity):
                expected.add(("n", i, p))
        for k in range(self.n_in):
            expected.add(("i", k))
        for k in range(self.n_out):
            expected.add(("o", k))
        seen = Counter()
        for e in self.edges:
            if len(e) != 2 or e[0] == e[1]:
                raise DiagramError(f"malformed edge {e!r}")
            for end in e:
                if end not in expected:
                    raise DiagramError(f"dangling edge end {end!r}")
                seen[end] += 1
        for end in expected:
            if seen[end] != 1:
                raise DiagramError(
                    f"port {end!r} has {seen[end]} incident wires (needs exactly 1)"
                )

    # -- basic data --------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_in, self.n_out)

    @property
    def is_pure_wire(self) -> bool:
        return not self.nodes

    def free_variables(self) -> frozenset[str]:
        out = set()
        for g in self.nodes:
            if g.phase is not None:
                out.update(g.phase.variables())
        return frozenset(out)

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (
            self.tag == other.tag
            and self.nodes == other.nodes
            and self.edges == other.edges
            and self.shape == other.shape
            and self.loops == other.loops
        )

    def __hash__(self):
        return hash((self.tag, self.nodes, self.edges, self.n_in, self.n_out, self.loops))

    def __repr__(self):
        return (
            f"Diagram<{self.tag or 'wire'} {self.n_in}->{self.n_out}, "
            f"{len(self.nodes)} nodes, {len(self.edges)} edges"
            + (f", {self.loops} loops>" if self.loops else ">")
        )

    # -- constructors ------------------------------------------------------

    @staticmethod
    def generator(gen: Gen, tag: Optional[str] = None) -> "Diagram":
        tag = tag or _KIND_TAG[gen.kind]
        edges = [(("i", k), ("n", 0, k)) for k in range(gen.n_in)]
        edges += [(("n", 0, gen.n_in + j), ("o", j)) for j in range(gen.n_out)]
        return Diagram(tag, (gen,), edges, gen.n_in, gen.n_out)

    @staticmethod
    def identity(n: int = 1, tag: Optional[str] = None) -> "Diagram":
        return Diagram(tag, (), [(("i", k), ("o", k)) for k in range(n)], n, n)

    @staticmethod
    def permutation(perm: Iterable[int], tag: Optional[str] = None) -> "Diagram":
        """Wire crossing sending input k to output perm[k]."""
        perm = list(perm)
        if sorted(perm) != list(range(len(perm))):
            raise DiagramError(f"not a permutation: {perm}")
        return Diagram(
            tag, (), [(("i", k), ("o", p)) for k, p in enumerate(perm)], len(perm), len(perm)
        )

    @staticmethod
    def swap(tag: Optional[str] = None) -> "Diagram":
        return Diagram.permutation([1, 0], tag)

    @staticmethod
    def cup(tag: Optional[str] = None) -> "Diagram":
        """The 2->0 wire bend (row vector <00| + <11|)."""
        return Diagram(tag, (), [(("i", 0), ("i", 1))], 2, 0)

    @staticmethod
    def cap(tag: Optional[str] = None) -> "Diagram":
        """The 0->2 wire bend (column vector |00> + |11>)."""
        return Diagram(tag, (), [(("o", 0), ("o", 1))], 0, 2)

    @staticmethod
    def empty(tag: Optional[str] = None) -> "Diagram":
        return Diagram(tag, (), [], 0, 0)

    @staticmethod
    def circle(count: int = 1, tag: Optional[str] = None) -> "Diagram":
        return Diagram(tag, (), [], 0, 0, loops=count)

    # -- compositions --------------------------------------------------------

    def then(self, other: "Diagram") -> "Diagram":
        """Sequential composition in diagram order: self runs first."""
        if self.n_out != other.n_in:
            raise ArityMismatch(
                f"cannot plug {self.n_out} outputs into {other.n_in} inputs"
            )
        tag = _merge_tags(self.tag, other.tag)
        off = len(self.nodes)

        def lift_self(end):
            if end[0] == "o":
                return ("j", end[1])
            return end

        def lift_other(end):
            if end[0] == "i":
                return ("j", end[1])
            if end[0] == "n":
                return ("n", end[1] + off, end[2])
            return end

        raw = [tuple(map(lift_self, e)) for e in self.edges]
        raw += [tuple(map(lift_other, e)) for e in other.edges]
        edges, extra_loops = _splice_junctions(raw)
        return Diagram(
            tag,
            self.nodes + other.nodes,
            edges,
            self.n_in,
            other.n_out,
            self.loops + other.loops + extra_loops,
        )

    def tensor(self, other: "Diagram") -> "Diagram":
        tag = _merge_tags(self.tag, other.tag)
        off = len(self.nodes)
        di, do = self.n_in, self.n_out

        def lift(end):
            if end[0] == "n":
                return ("n", end[1] + off, end[2])
            if end[0] == "i":
                return ("i", end[1] + di)
            return ("o", end[1] + do)

        edges = list(self.edges) + [tuple(map(lift, e)) for e in other.edges]
        return Diagram(
            tag,
            self.nodes + other.nodes,
            edges,
            self.n_in + other.n_in,
            self.n_out + other.n_out,
            self.loops + other.loops,
        )

    # -- phase substitution ---------------------------------------------------

    def substitute(self, valuation: Mapping[str, PhaseLike]) -> "Diagram":
        missing = self.free_variables() - set(valuation)
        if missing:
            raise MissingVariable(f"unbound phase variables: {sorted(missing)}")
        nodes = tuple(
            Gen(g.kind, g.n_in, g.n_out, g.phase.substitute(valuation), g.param)
            if g.phase is not None
            else g
            for g in self.nodes
        )
        return Diagram(self.tag, nodes, self.edges, self.n_in, self.n_out, self.loops)


def _splice_junctions(raw_edges):
    """Resolve ("j", k) junction endpoints, returning (edges, closed_loops).

    Each junction is incident to exactly two edge ends; chains of junctions
    collapse to single wires and junction-only cycles become closed loops.
    """
    E = [tuple(e) for e in raw_edges]
    jadj: dict = {}
    for eid, e in enumerate(E):
        for end in e:
            if end[0] == "j":
                jadj.setdefault(end, []).append(eid)

    def other_end(eid, end):
        a, b = E[eid]
        return b if a == end else a

    edges = []
    consumed = [False] * len(E)
    for eid, (a, b) in enumerate(E):
        if a[0] != "j" and b[0] != "j":
            consumed[eid] = True
            edges.append((a, b))

    # walk each junction chain once, starting from a non-junction terminal
    for eid0, (a, b) in enumerate(E):
        if consumed[eid0] or (a[0] == "j" and b[0] == "j"):
            continue
        start, j = (a, b) if b[0] == "j" else (b, a)
        consumed[eid0] = True
        cur = eid0
        while True:
            e1, e2 = jadj[j]
            nxt = e2 if e1 == cur else e1
            consumed[nxt] = True
            end = other_end(nxt, j)
            if end[0] != "j":
                edges.append((start, end))
                break
            j, cur = end, nxt

    # whatever remains is junction-only cycles
    loops = 0
    for eid0, (a, b) in enumerate(E):
        if consumed[eid0]:
            continue
        loops += 1
        consumed[eid0] = True
        j, cur = b, eid0
        while True:
            e1, e2 = jadj[j]
            nxt = e2 if e1 == cur else e1
            if consumed[nxt]:
                break
            consumed[nxt] = True
            j, cur = other_end(nxt, j), nxt
    return edges, loops


# -- module-level operations ------------------------------------------------


def compose(d2: Diagram, d1: Diagram) -> Diagram:
    """Sequential composition d2 after d1 (d1 runs first)."""
    return d1.then(d2)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    return d1.tensor(d2)


def substitute(d: Diagram, valuation: Mapping[str, PhaseLike]) -> Diagram:
    return d.substitute(valuation)


def flip(d: Diagram) -> Diagram:
    """Mirror the diagram upside-down: inputs become outputs and vice versa.

    Positions are kept (the k-th input becomes the k-th output), so the
    interpretation of the result is the plain matrix transpose,
    generator-wise this turns e.g. the 1->2 w node into its 2->1 mirror.
    """

    def swap_end(end):
        if end[0] == "i":
            return ("o", end[1])
        if end[0] == "o":
            return ("i", end[1])
        return end

    edges = [tuple(map(swap_end, e)) for e in d.edges]
    return Diagram(d.tag, d.nodes, edges, d.n_out, d.n_in, d.loops)


def color_swap(d: Diagram) -> Diagram:
    """Exchange the two spider colours; triangles get Hadamard-conjugated."""
    if d.tag not in (None, "zx", "zxt"):
        raise CalculusMismatch(f"color_swap is for ZX-family diagrams, not {d.tag}")
    nodes = []
    remap = {}  # old id -> new id (for TRI: id of the triangle in its sandwich)
    edges = []
    for i, g in enumerate(d.nodes):
        if g.kind == Z:
            remap[i] = len(nodes)
            nodes.append(Gen(X, g.n_in, g.n_out, g.phase))
        elif g.kind == X:
            remap[i] = len(nodes)
            nodes.append(Gen(Z, g.n_in, g.n_out, g.phase))
        elif g.kind == TRI:
            ha = len(nodes)
            nodes.append(Gen(H, 1, 1))
            tri = len(nodes)
            nodes.append(Gen(TRI, 1, 1, None, g.param))
            hb = len(nodes)
            nodes.append(Gen(H, 1, 1))
            remap[i] = ("sandwich", ha, tri, hb)
            edges.append((("n", ha, 1), ("n", tri, 0)))
            edges.append((("n", tri, 1), ("n", hb, 0)))
        else:
            remap[i] = len(nodes)
            nodes.append(g)

    def lift(end):
        if end[0] != "n":
            return end
        _, i, p = end
        r = remap[i]
        if isinstance(r, int):
            return ("n", r, p)
        _, ha, tri, hb = r
        return ("n", ha, 0) if p == 0 else ("n", hb, 1)

    edges += [tuple(map(lift, e)) for e in d.edges]
    return Diagram(d.tag, nodes, edges, d.n_in, d.n_out, d.loops)


def rotate_cross_ports(d: Diagram, node: int, k: int = 1) -> Diagram:
    """Rotate the four wires of a zw crossing one cyclic step (times k)."""
    if d.nodes[node].kind != CROSS:
        raise DiagramError(f"node {node} is not a crossing")
    pos = {p: i for i, p in enumerate(CROSS_CYCLE)}

    def rot(end):
        if end[0] == "n" and end[1] == node:
            return ("n", node, CROSS_CYCLE[(pos[end[2]] + k) % 4])
        return end

    edges = [tuple(map(rot, e)) for e in d.edges]
    return Diagram(d.tag, d.nodes, edges, d.n_in, d.n_out, d.loops)


# -- graph isomorphism --------------------------------------------------------


def _port_class(gen: Gen, port: int) -> str:
    """Canonical port label for matching; symmetric legs share a label."""
    if gen.kind in (Z, X, WZ):
        return "in" if port < gen.n_in else "out"
    if gen.kind == W12 and port > 0:
        return "out"
    return f"p{port}"


def iso_equal(d1: Diagram, d2: Diagram) -> bool:
    """Boundary-fixing graph isomorphism (kinds, phases and params equal;
    spider legs unordered within each side, crossings matched up to cyclic
    rotation)."""
    if d1.shape != d2.shape or d1.loops != d2.loops:
        return False
    if len(d1.nodes) != len(d2.nodes) or len(d1.edges) != len(d2.edges):
        return False
    sig1 = [g.signature() for g in d1.nodes]
    sig2 = [g.signature() for g in d2.nodes]
    if Counter(sig1) != Counter(sig2):
        return False

    target = Counter()
    for a, b in d2.edges:
        target[_norm_edge(d2, a, b)] += 1

    n = len(d1.nodes)
    cands = {i: [j for j in range(n) if sig2[j] == sig1[i]] for i in range(n)}
    order = sorted(range(n), key=lambda i: len(cands[i]))
    adj = [[] for _ in range(n)]  # node -> edges incident (by index in d1.edges)
    plain = []
    for e in d1.edges:
        ns = {end[1] for end in e if end[0] == "n"}
        for i in ns:
            adj[i].append(e)
        if not ns:
            plain.append(e)

    used = Counter()
    for a, b in plain:
        ne = tuple(sorted((a, b)))
        used[ne] += 1
        if used[ne] > target[ne]:
            return False

    mapping: dict[int, tuple[int, int]] = {}  # d1 node -> (d2 node, rotation)
    taken = [False] * n

    def norm1(end):
        if end[0] != "n":
            return end
        _, i, p = end
        j, rot = mapping[i]
        g = d1.nodes[i]
        if g.kind == CROSS and rot:
            pos = {q: t for t, q in enumerate(CROSS_CYCLE)}
            p = CROSS_CYCLE[(pos[p] + rot) % 4]
        return ("n", j, _port_class(g, p))

    def ready(end):
        return end[0] != "n" or end[1] in mapping

    def attempt(idx: int) -> bool:
        if idx == len(order):
            return True
        i = order[idx]
        g = d1.nodes[i]
        rots = range(4) if g.kind == CROSS else (0,)
        for j in cands[i]:
            if taken[j]:
                continue
            for rot in rots:
                mapping[i] = (j, rot)
                taken[j] = True
                added = []
                ok = True
                for e in adj[i]:
                    a, b = e
                    other = b if (a[0] == "n" and a[1] == i) else a
                    if not ready(other) or not ready(a) or not ready(b):
                        continue
                    ne = tuple(sorted((norm1(a), norm1(b))))
                    used[ne] += 1
                    added.append(ne)
                    if used[ne] > target[ne]:
                        ok = False
                        break
                if ok and attempt(idx + 1):
                    return True
                for ne in added:
                    used[ne] -= 1
                taken[j] = False
                del mapping[i]
        return False

    return attempt(0)


def _norm_edge(d: Diagram, a, b):
    def norm(end):
        if end[0] != "n":
            return end
        _, j, p = end
        return ("n", j, _port_class(d.nodes[j], p))

    return tuple(sorted((norm(a), norm(b))))


# -- generator shorthands ------------------------------------------------------


def z(n: int, m: int, phase: PhaseLike = 0) -> Diagram:
    return Diagram.generator(Gen(Z, n, m, Phase.coerce(phase)))


def x(n: int, m: int, phase: PhaseLike = 0) -> Diagram:
    return Diagram.generator(Gen(X, n, m, Phase.coerce(phase)))


def h() -> Diagram:
    return Diagram.generator(Gen(H, 1, 1))


def w11() -> Diagram:
    return Diagram.generator(Gen(W11, 1, 1))


def w12() -> Diagram:
    return Diagram.generator(Gen(W12, 1, 2))


def w21() -> Diagram:
    """The 2->1 mirror of the 1->2 w node."""
    return flip(w12())


def white(n: int, m: int, param) -> Diagram:
    return Diagram.generator(Gen(WZ, n, m, None, param))


def white_not() -> Diagram:
    """The fixed 1->1 white node, the r=-1 white spider diag(1,-1)."""
    return white(1, 1, -1)


def white_cz() -> Diagram:
    """The fixed 2->1 white node, the r=-1 white spider [[1,0,0,0],[0,0,0,-1]]."""
    return white(2, 1, -1)


def zw_cross() -> Diagram:
    return Diagram.generator(Gen(CROSS, 2, 2))


def half() -> Diagram:
    return Diagram.generator(Gen(HALF, 0, 0))


def tri(param=1) -> Diagram:
    return Diagram.generator(Gen(TRI, 1, 1, None, param))


def seq(*ds: Diagram) -> Diagram:
    """Left-to-right sequential composition: seq(a, b, c) runs a first."""
    if not ds:
        raise DiagramError("seq needs at least one diagram")
    out = ds[0]
    for d in ds[1:]:
        out = out.then(d)
    return out


def ten(*ds: Diagram) -> Diagram:
    if not ds:
        raise DiagramError("ten needs at least one diagram")
    out = ds[0]
    for d in ds[1:]:
        out = out.tensor(d)
    return out
