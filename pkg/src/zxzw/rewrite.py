"""Rewriting: executable schemas, a simplifier, and proof-script checking.

A schema packages a matcher (diagram -> candidate locations) with an applier
(diagram, location -> rewritten diagram).  Appliers re-check their premise
against the diagram they are given and raise `StaleLocation` when it no
longer holds, so locations can be stored and replayed safely.

The default simplification strategy only uses node-count-decreasing schemas
(spider fusion, identity removal, cancelling Hadamard pairs, folding scalar
spiders into circles); the node-increasing `HOPF` and `COLOR_CHANGE` schemas
are exported for opt-in strategies.

Proof scripts are text files: a `proof NAME` line, a `set AXIOMSET` line,
then diagram blocks separated by `by RULE[, RULE ...]` lines.  `check_proof`
validates that consecutive steps are semantically equal (exactly, whenever
both sides support exact evaluation) and that every cited rule belongs to
the declared axiom set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

from . import rules as _rules
from .diagrams import Diagram, Gen, WZ, Z, X, H as H_KIND
from .dsl import DslError, parse
from .gadgets import half_scalar
from .rings import Cyclo
from .semantics import eq_semantic


class StaleLocation(ValueError):
    """The diagram no longer matches the schema at the stored location."""


class ProofError(ValueError):
    """A proof script that cannot be parsed at all."""


@dataclass(frozen=True)
class Schema:
    """A named rewrite with a matcher and an applier."""

    name: str
    matcher: Callable[[Diagram], list]
    applier: Callable[[Diagram, Any], Diagram]
    grows: bool = False  # True for schemas that may increase the node count


def find(schema: Schema, d: Diagram) -> list:
    """All locations where the schema currently applies, deterministically
    ordered."""
    return schema.matcher(d)


def apply(schema: Schema, d: Diagram, loc) -> Diagram:
    """Apply the schema at one location; raises StaleLocation if the
    location does not (or no longer does) match."""
    return schema.applier(d, loc)


# -- shared graph surgery helpers -------------------------------------------------


def _pair_edges(d: Diagram):
    """Multiset of node pairs i<j joined by at least one edge."""
    pairs = {}
    for e in d.edges:
        ns = sorted({end[1] for end in e if end[0] == "n"})
        if len(ns) == 2:
            pairs.setdefault((ns[0], ns[1]), []).append(e)
    return pairs

def _edges_between(d: Diagram, i: int, j: int):
    return [e for e in d.edges if {end[1] for end in e if end[0] == "n"} == {i, j}]


def _check_node(d: Diagram, i: int, kinds) -> Gen:
    if not (0 <= i < len(d.nodes)):
        raise StaleLocation(f"no node {i}")
    g = d.nodes[i]
    if g.kind not in kinds:
        raise StaleLocation(f"node {i} is {g.kind}, expected one of {sorted(kinds)}")
    return g


def _rebuild(d: Diagram, nodes, edges, extra_loops=0) -> Diagram:
    return Diagram(d.tag, nodes, edges, d.n_in, d.n_out, d.loops + extra_loops)


def _drop_nodes(d: Diagram, removed: set[int], edge_map, new_edges=(), extra_loops=0):
    """Remove nodes, renumber the rest, and rewrite edges.

    edge_map maps an old endpoint to a replacement endpoint (before
    renumbering) or to None to delete the whole edge; new_edges are added
    afterwards (in old numbering)."""
    order = sorted(removed)

    def shift(end):
        if end[0] != "n":
            return end
        _, i, p = end
        i -= sum(1 for r in order if r < i)
        return ("n", i, p)

    edges = []
    for e in d.edges:
        a, b = (edge_map.get(end, end) for end in e)
        if a is None or b is None:
            continue
        edges.append((shift(a), shift(b)))
    edges += [(shift(a), shift(b)) for a, b in new_edges]
    nodes = [g for i, g in enumerate(d.nodes) if i not in removed]
    return nodes, edges


def _param_mul(p, q):
    if isinstance(p, Cyclo) and isinstance(q, Cyclo):
        return p * q
    a = p.to_complex() if isinstance(p, Cyclo) else complex(p)
    b = q.to_complex() if isinstance(q, Cyclo) else complex(q)
    return a * b


# -- spider fusion ---------------------------------------------------------------

_SPIDERS = (Z, X, WZ)


def _fusion_sites(d: Diagram) -> list:
    out = []
    for (i, j), _ in sorted(_pair_edges(d).items()):
        gi, gj = d.nodes[i], d.nodes[j]
        if gi.kind == gj.kind and gi.kind in _SPIDERS:
            out.append((i, j))
    return out


def _fuse(d: Diagram, loc) -> Diagram:
    i, j = loc
    if i == j:
        raise StaleLocation("fusion needs two distinct nodes")
    i, j = min(i, j), max(i, j)
    gi = _check_node(d, i, _SPIDERS)
    gj = _check_node(d, j, _SPIDERS)
    if gi.kind != gj.kind:
        raise StaleLocation(f"cannot fuse {gi.kind} with {gj.kind}")
    shared = _edges_between(d, i, j)
    if not shared:
        raise StaleLocation(f"nodes {i} and {j} share no wire")
    used = {end for e in shared for end in e}

    surviving = []  # (old node, old port, is_input)
    for node, g in ((i, gi), (j, gj)):
        for p in range(g.arity):
            if ("n", node, p) not in used:
                surviving.append((node, p, p < g.n_in))
    inputs = [(n, p) for n, p, is_in in surviving if is_in]
    outputs = [(n, p) for n, p, is_in in surviving if not is_in]
    port_map = {}
    for new_p, (n, p) in enumerate(inputs + outputs):
        port_map[("n", n, p)] = ("n", i, new_p)

    if gi.kind == WZ:
        merged = Gen(WZ, len(inputs), len(outputs), None, _param_mul(gi.param, gj.param))
    else:
        merged = Gen(gi.kind, len(inputs), len(outputs), gi.phase + gj.phase)

    edge_map = dict(port_map)
    for e in shared:
        edge_map[e[0]] = None
        edge_map[e[1]] = None
    nodes, edges = _drop_nodes(d, {j}, edge_map)
    nodes[i] = merged
    return _rebuild(d, nodes, edges)


FUSION = Schema("fusion", _fusion_sites, _fuse)


# -- identity removal -------------------------------------------------------------


def _identity_sites(d: Diagram) -> list:
    return [
        i
        for i, g in enumerate(d.nodes)
        if g.kind in (Z, X) and g.n_in == 1 and g.n_out == 1 and g.phase.is_zero
    ]


def _neighbour(d: Diagram, end):
    for a, b in d.edges:
        if a == end:
            return b
        if b == end:
            return a
    raise StaleLocation(f"port {end!r} has no wire")


def _remove_identity(d: Diagram, i) -> Diagram:
    g = _check_node(d, i, (Z, X))
    if (g.n_in, g.n_out) != (1, 1) or not g.phase.is_zero:
        raise StaleLocation(f"node {i} is not a phase-free 1->1 spider")
    a = _neighbour(d, ("n", i, 0))
    b = _neighbour(d, ("n", i, 1))
    if a == ("n", i, 1):  # the spider's own legs are joined: a closed circle
        nodes, edges = _drop_nodes(d, {i}, {("n", i, 0): None, ("n", i, 1): None})
        return _rebuild(d, nodes, edges, extra_loops=1)
    edge_map = {("n", i, 0): None, ("n", i, 1): None}
    nodes, edges = _drop_nodes(d, {i}, edge_map, new_edges=[(a, b)])
    return _rebuild(d, nodes, edges)


IDENTITY_REMOVAL = Schema("identity-removal", _identity_sites, _remove_identity)


# -- cancelling Hadamard pairs ----------------------------------------------------


def _h_cancel_sites(d: Diagram) -> list:
    out = []
    for (i, j), _ in sorted(_pair_edges(d).items()):
        if d.nodes[i].kind == H_KIND and d.nodes[j].kind == H_KIND:
            out.append((i, j))
    return out


def _cancel_h(d: Diagram, loc) -> Diagram:
    i, j = loc
    if i == j:
        raise StaleLocation("needs two distinct Hadamards")
    i, j = min(i, j), max(i, j)
    _check_node(d, i, (H_KIND,))
    _check_node(d, j, (H_KIND,))
    shared = _edges_between(d, i, j)
    if not shared:
        raise StaleLocation(f"nodes {i} and {j} share no wire")
    dead = {("n", i, 0): None, ("n", i, 1): None, ("n", j, 0): None, ("n", j, 1): None}
    if len(shared) == 2:  # H then H closed into a circle: trace(id) = 2
        nodes, edges = _drop_nodes(d, {i, j}, dead)
        return _rebuild(d, nodes, edges, extra_loops=1)
    used = {end for end in shared[0]}
    (a,) = [_neighbour(d, ("n", i, p)) for p in (0, 1) if ("n", i, p) not in used]
    (b,) = [_neighbour(d, ("n", j, p)) for p in (0, 1) if ("n", j, p) not in used]
    nodes, edges = _drop_nodes(d, {i, j}, dead, new_edges=[(a, b)])
    return _rebuild(d, nodes, edges)


H_CANCEL = Schema("h-cancel", _h_cancel_sites, _cancel_h)


# -- scalar spiders ---------------------------------------------------------------


def _is_dot(g: Gen, k) -> bool:
    """An isolated spider whose value is 1 + e^{i k pi} (exact phase k*pi)."""
    return (
        g.kind in (Z, X)
        and g.arity == 0
        and g.phase.is_exact
        and g.phase.is_constant
        and g.phase.const == k
    )


def _scalar_sites(d: Diagram) -> list:
    out = []
    pos, neg = [], []
    for i, g in enumerate(d.nodes):
        if _is_dot(g, 0):
            out.append(("two", i))
        elif _is_dot(g, Fraction(1, 2)):
            pos.append(i)
        elif _is_dot(g, Fraction(3, 2)):
            neg.append(i)
    out += [("pair", i, j) for i, j in zip(pos, neg)]
    return sorted(out)


def _merge_scalars(d: Diagram, loc) -> Diagram:
    if loc[0] == "two":
        i = loc[1]
        g = _check_node(d, i, (Z, X))
        if not _is_dot(g, 0):
            raise StaleLocation(f"node {i} is not a phase-free scalar spider")
        nodes, edges = _drop_nodes(d, {i}, {})
        return _rebuild(d, nodes, edges, extra_loops=1)
    _, i, j = loc
    gi = _check_node(d, i, (Z, X))
    gj = _check_node(d, j, (Z, X))
    if not (_is_dot(gi, Fraction(1, 2)) and _is_dot(gj, Fraction(3, 2))):
        raise StaleLocation("expected a +pi/2 and a -pi/2 scalar spider")
    nodes, edges = _drop_nodes(d, {i, j}, {})
    return _rebuild(d, nodes, edges, extra_loops=1)


SCALAR_MERGE = Schema("scalar-merge", _scalar_sites, _merge_scalars)


# -- the Hopf pair (opt-in: emits a scalar gadget) ---------------------------------


def _hopf_sites(d: Diagram) -> list:
    out = []
    for (i, j), es in sorted(_pair_edges(d).items()):
        kinds = {d.nodes[i].kind, d.nodes[j].kind}
        if kinds == {Z, X} and len(es) >= 2:
            out.append((i, j))
    return out


def _shrink(g: Gen, dropped_ports) -> tuple[Gen, dict]:
    """The same spider with some ports deleted; returns the new generator and
    an old-port -> new-port map."""
    keep = [p for p in range(g.arity) if p not in dropped_ports]
    n_in = sum(1 for p in keep if p < g.n_in)
    port_map = {p: new for new, p in enumerate(keep)}
    return Gen(g.kind, n_in, len(keep) - n_in, g.phase), port_map


def _apply_hopf(d: Diagram, loc) -> Diagram:
    i, j = loc
    if not (0 <= i < len(d.nodes) and 0 <= j < len(d.nodes)) or i == j:
        raise StaleLocation(f"bad node pair ({i}, {j})")
    if {d.nodes[i].kind, d.nodes[j].kind} != {Z, X}:
        raise StaleLocation("needs one Z and one X spider")
    shared = _edges_between(d, i, j)
    if len(shared) < 2:
        raise StaleLocation(f"nodes {i} and {j} share fewer than two wires")
    cut = sorted(shared)[:2]
    dropped = {i: set(), j: set()}
    for e in cut:
        for end in e:
            dropped[end[1]].add(end[2])
    gen_i, map_i = _shrink(d.nodes[i], dropped[i])
    gen_j, map_j = _shrink(d.nodes[j], dropped[j])

    def remap(end):
        if end[0] == "n" and end[1] == i and end[2] in map_i:
            return ("n", i, map_i[end[2]])
        if end[0] == "n" and end[1] == j and end[2] in map_j:
            return ("n", j, map_j[end[2]])
        return end

    edges = [tuple(map(remap, e)) for e in d.edges if e not in cut]
    nodes = list(d.nodes)
    nodes[i], nodes[j] = gen_i, gen_j
    out = _rebuild(d, nodes, edges)
    return out.tensor(half_scalar())


HOPF = Schema("hopf", _hopf_sites, _apply_hopf, grows=True)


# -- colour change (opt-in: grows by one Hadamard per leg) -------------------------


def _colour_sites(d: Diagram) -> list:
    return [i for i, g in enumerate(d.nodes) if g.kind == X]


def _change_colour(d: Diagram, i) -> Diagram:
    g = _check_node(d, i, (X,))
    nodes = list(d.nodes)
    nodes[i] = Gen(Z, g.n_in, g.n_out, g.phase)
    edges = []
    for e in d.edges:
        ends = []
        for end in e:
            if end[0] == "n" and end[1] == i:
                k = len(nodes)
                nodes.append(Gen(H_KIND, 1, 1))
                edges.append((end, ("n", k, 0)))
                ends.append(("n", k, 1))
            else:
                ends.append(end)
        edges.append(tuple(ends))
    return _rebuild(d, nodes, edges)


COLOR_CHANGE = Schema("color-change", _colour_sites, _change_colour, grows=True)


DEFAULT_STRATEGY = (FUSION, IDENTITY_REMOVAL, H_CANCEL, SCALAR_MERGE)
ALL_SCHEMAS = DEFAULT_STRATEGY + (HOPF, COLOR_CHANGE)


def simplify(d: Diagram, strategy=DEFAULT_STRATEGY, fuel: Optional[int] = None):
    """Repeatedly apply the first matching schema; returns the simplified
    diagram and the trace of (schema name, location) steps taken."""
    if fuel is None:
        fuel = 10 * len(d.nodes)
    trace = []
    for _ in range(fuel):
        for schema in strategy:
            locs = find(schema, d)
            if locs:
                d = apply(schema, d, locs[0])
                trace.append((schema.name, locs[0]))
                break
        else:
            break
    return d, trace


# -- proof scripts -----------------------------------------------------------------


@dataclass(frozen=True)
class ProofScript:
    name: str
    axiom_set: str
    steps: tuple[Diagram, ...]
    citations: tuple[tuple[str, ...], ...]  # one tuple of rule names per transition


@dataclass(frozen=True)
class ProofResult:
    name: str
    axiom_set: str
    n_steps: int
    failures: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self):
        return {
            "proof": self.name,
            "set": self.axiom_set,
            "steps": self.n_steps,
            "status": "PASS" if self.ok else "FAIL",
            "failures": list(self.failures),
        }


def parse_proof(text: str) -> ProofScript:
    """Parse a proof script: header lines, then diagram blocks separated by
    `by RULE[, RULE ...]` lines."""
    name = None
    set_name = None
    blocks: list[list[str]] = [[]]
    citations: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";")[0].strip()
        if name is None:
            if not line:
                continue
            if not line.startswith("proof "):
                raise ProofError(f"line {lineno}: expected 'proof NAME', got {line!r}")
            name = line[len("proof ") :].strip()
            continue
        if set_name is None:
            if not line:
                continue
            if not line.startswith("set "):
                raise ProofError(f"line {lineno}: expected 'set AXIOMSET', got {line!r}")
            set_name = line[len("set ") :].strip()
            continue
        if line == "by" or line.startswith("by ") or line.startswith("by,"):
            cited = tuple(r.strip() for r in line[2:].split(",") if r.strip())
            if not cited:
                raise ProofError(f"line {lineno}: 'by' cites no rules")
            citations.append(cited)
            blocks.append([])
        else:
            blocks[-1].append(raw)
    if name is None or set_name is None:
        raise ProofError("missing 'proof NAME' or 'set AXIOMSET' header")
    steps = []
    for k, block in enumerate(blocks):
        src = "\n".join(block)
        if not src.strip():
            raise ProofError(f"step {k} of proof {name!r} is empty")
        try:
            steps.append(parse(src))
        except DslError as e:
            raise ProofError(f"step {k} of proof {name!r}: {e}") from None
    return ProofScript(name, set_name, tuple(steps), tuple(citations))


def check_proof(script: ProofScript) -> ProofResult:
    """Semantic check of a proof: consecutive steps must be equal (exact
    arithmetic whenever possible) and cited rules must be in the declared
    axiom set."""
    axioms = _rules.axiom_set(script.axiom_set)
    known = {r.name for r in axioms}
    failures = []
    for k, cited in enumerate(script.citations):
        for c in cited:
            if c not in known:
                failures.append(
                    {"step": k, "reason": f"rule {c!r} is not in set {script.axiom_set!r}"}
                )
        if script.steps[k].shape != script.steps[k + 1].shape:
            failures.append(
                {
                    "step": k,
                    "reason": f"shape changed from {script.steps[k].shape} "
                    f"to {script.steps[k + 1].shape}",
                }
            )
        elif not eq_semantic(script.steps[k], script.steps[k + 1]):
            failures.append({"step": k, "reason": "sides are not semantically equal"})
    return ProofResult(script.name, script.axiom_set, len(script.steps), tuple(failures))
