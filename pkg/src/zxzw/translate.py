"""Translations between the two calculi, in both directions.

Both directions are generator-wise: each node is replaced by a fixed
fragment in the other calculus with the same boundary arity, and the
original wiring is kept.  That makes the translations strict monoidal
functors by construction, and semantics preservation reduces to checking
each fragment against its generator — which the tests do exactly.

Scalars are never normalised away: every fragment matches its generator on
the nose, so a round trip preserves the interpretation exactly, global
scalar included.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from . import diagrams as dg
from . import gadgets as gad
from .diagrams import CROSS, H, HALF, TRI, W11, W12, WZ, X, Z, Diagram, Gen
from .diagrams import _splice_junctions
from .phases import Phase, PhaseLike
from .rings import Cyclo, INV_SQRT2


class TranslateError(Exception):
    pass


class SingularPhase(TranslateError):
    """Raised where an inverse is requested at the pole alpha = pi."""


# -- node-wise grafting ----------------------------------------------------------


def _graft(d: Diagram, replace, tag) -> Diagram:
    """Rebuild `d` with each node passed through `replace`.

    `replace(gen)` returns a same-arity diagram, or None to keep the node.
    Replacement boundaries are spliced into the original wiring.
    """
    reps = [replace(g) for g in d.nodes]
    nodes: list[Gen] = []
    offs: list[int] = []
    loops = d.loops
    for g, r in zip(d.nodes, reps):
        offs.append(len(nodes))
        if r is None:
            nodes.append(g)
        else:
            if r.shape != (g.n_in, g.n_out):
                raise TranslateError(
                    f"replacement for {g.kind} has shape {r.shape}, "
                    f"wanted {(g.n_in, g.n_out)}"
                )
            nodes.extend(r.nodes)
            loops += r.loops

    def lift_old(end):
        if end[0] != "n":
            return end
        _, i, p = end
        if reps[i] is None:
            return ("n", offs[i], p)
        return ("j", (i, p))

    raw = [tuple(map(lift_old, e)) for e in d.edges]
    for i, r in enumerate(reps):
        if r is None:
            continue
        g, off = d.nodes[i], offs[i]

        def lift_rep(end, off=off, i=i, n_in=g.n_in):
            if end[0] == "n":
                return ("n", end[1] + off, end[2])
            if end[0] == "i":
                return ("j", (i, end[1]))
            return ("j", (i, n_in + end[1]))

        raw += [tuple(map(lift_rep, e)) for e in r.edges]
    edges, extra = _splice_junctions(raw)
    return Diagram(tag, nodes, edges, d.n_in, d.n_out, loops + extra)


# -- zx to zw --------------------------------------------------------------------


def zw_triangle(r) -> Diagram:
    """The zw image [[1, r],[0, 1]] of a triangle: a w merge fed by (1, r)."""
    return dg.seq(
        dg.w11(), dg.ten(dg.white(0, 1, r), gad.wire()), dg.w21()
    )


def _zero_costate_zw() -> Diagram:
    # |0> = W11 . W21 . cap, flipped
    return dg.flip(dg.seq(Diagram.cap(), dg.w21(), dg.w11()))


def _had_zw() -> Diagram:
    """A zw fragment with interpretation sqrt(2) * H = [[1,1],[1,-1]].

    w-split into (A (x) B), then w-merge: A = white(-2) after a zw triangle,
    B = the rank-one |(1,1)><0|.
    """
    a = dg.seq(zw_triangle(1), dg.white(1, 1, -2))
    b = dg.seq(_zero_costate_zw(), dg.white(0, 1, 1))
    return dg.seq(dg.w11(), dg.w12(), dg.ten(a, b), dg.w21(), dg.w11())


def _white_scalar(value: Cyclo) -> Diagram:
    """A 0->0 white node worth `value` (its parameter is value - 1)."""
    return dg.white(0, 0, value - Cyclo(1))


def _omega_exp(g: Gen) -> int:
    k = g.phase.omega_exponent()
    if k is None:
        if g.phase.variables():
            raise TranslateError(
                f"free phase variables {sorted(g.phase.variables())}"
            )
        raise TranslateError(f"phase {g.phase!r} is not a multiple of pi/4")
    return k % 8


def zx_to_zw(d: Diagram) -> Diagram:
    """Translate a pi/4 zx diagram into the half-scalar w calculus.

    Green spiders become white nodes with the unit parameter omega^k; the
    hadamard becomes the sqrt(2)*H fragment paired with a scalar white node
    worth 1/sqrt(2); red spiders are green spiders in a hadamard sandwich,
    so they map to the white node wrapped in those fragments.  Triangles
    are expanded into plain spiders first.
    """
    if d.tag not in (None, "zx", "zxt"):
        raise TranslateError(f"expected a zx diagram, got tag {d.tag!r}")
    if any(g.kind == TRI for g in d.nodes):
        d = expand_triangle(d)

    inv_had_scalar = _white_scalar(INV_SQRT2)

    def replace(g: Gen):
        if g.kind == Z:
            return dg.white(g.n_in, g.n_out, Cyclo.omega_power(_omega_exp(g)))
        if g.kind == H:
            return _had_zw().tensor(inv_had_scalar)
        if g.kind == X:
            core = dg.white(g.n_in, g.n_out, Cyclo.omega_power(_omega_exp(g)))
            if g.n_in:
                core = dg.ten(*[_had_zw()] * g.n_in).then(core)
            if g.n_out:
                core = core.then(dg.ten(*[_had_zw()] * g.n_out))
            comp = Cyclo(1)
            for _ in range(g.arity):
                comp = comp * INV_SQRT2
            return core.tensor(_white_scalar(comp))
        raise TranslateError(f"no zw image for generator kind {g.kind}")

    return _graft(d, replace, "zw")


# -- parameter encoding and the zw to zx direction -------------------------------


@dataclass(frozen=True)
class ParamEncoding:
    """Polar data for a white-node parameter r = rho * e^{i theta}.

    n is the least natural with rho <= 2^n, beta recovers rho as
    2^n cos(beta), and gamma = arccos(2^-n) drives the (1, 2^n) plug.
    """

    n: int
    beta: float
    gamma: float
    theta: float

    @property
    def rho(self) -> float:
        return 2**self.n * math.cos(self.beta)


def encode_param(r: complex) -> ParamEncoding:
    r = complex(r)
    rho, theta = abs(r), cmath.phase(r)
    n = max(0, math.ceil(math.log2(rho))) if rho > 0 else 0
    while 2**n < rho:  # guard the ceil against float dust
        n += 1
    beta = math.acos(min(1.0, rho / 2**n))
    gamma = math.acos(1.0 / 2**n)
    return ParamEncoding(n, beta, gamma, theta)


def _plug_state_float(r: complex) -> Diagram:
    """A 0->1 zx diagram whose float interpretation is the state (1, r)."""
    if r == 0:
        return gad.zero_state()
    enc = encode_param(r)
    big = gad.merge_x(dg.z(0, 1, enc.gamma), dg.z(0, 1, enc.gamma))
    plug = dg.seq(
        dg.ten(gad.cos_plug(enc.beta), big),
        dg.z(2, 1, 0),
        dg.z(1, 1, enc.theta),
    )
    # cos_plug carries sqrt2, big carries sqrt2 e^{i gamma} / 2^n
    c = 2.0 * cmath.exp(1j * enc.gamma) / 2**enc.n
    return plug.tensor(gad.complex_scalar(1.0 / c))


def _plug_state(r) -> Diagram:
    if isinstance(r, Cyclo):
        return gad.ring_state(r)
    return _plug_state_float(complex(r))


def _white_zx(g: Gen) -> Diagram:
    r = g.param
    if isinstance(r, Cyclo):
        unit = r.sqrt2_power_class()
        if unit is not None and unit[1] == 0:
            return dg.z(g.n_in, g.n_out, Fraction(unit[0], 4))
        if g.arity == 0:
            value = Cyclo(1) + r
            if value.is_zero():
                return gad.dot(1)
            cls = value.sqrt2_power_class()
            if cls is not None:
                return gad.unit_scalar(*cls)
    return dg.seq(
        dg.z(g.n_in, g.n_out + 1, 0),
        dg.ten(Diagram.identity(g.n_out), dg.flip(_plug_state(r))),
    )


def zw_to_zx(d: Diagram) -> Diagram:
    """Translate a w-calculus diagram into zx spiders.

    White nodes with a unit parameter omega^k are green spiders directly;
    any other parameter becomes a phaseless green spider with one extra leg
    capped by a (1, r) plug — exact for ring parameters, float otherwise.
    The black nodes ride on the triangle construction.
    """
    if d.tag not in (None, "zw"):
        raise TranslateError(f"expected a zw diagram, got tag {d.tag!r}")

    def replace(g: Gen):
        if g.kind == WZ:
            return _white_zx(g)
        if g.kind == W11:
            return dg.x(1, 1, 1)
        if g.kind == W12:
            return gad.w12_zx()
        if g.kind == CROSS:
            return gad.crossing()
        if g.kind == HALF:
            return gad.half_scalar()
        raise TranslateError(f"no zx image for generator kind {g.kind}")

    return _graft(d, replace, "zx")


def round_trip(d: Diagram) -> Diagram:
    """zw_to_zx(zx_to_zw(d)); interpretation-preserving, exactly."""
    return zw_to_zx(zx_to_zw(d))


# -- inverses of scalar spiders --------------------------------------------------

# pi/4-grid inverses of (1 + e^{i k pi/4}), keyed by k
_GRID_INVERSE = {
    0: lambda: gad.half_scalar(),
    1: lambda: gad.dot(Fraction(-1, 4)).tensor(
        gad.loop_h2(Fraction(3, 4), Fraction(-3, 4))
    ),
    7: lambda: gad.dot(Fraction(1, 4)).tensor(
        gad.loop_h2(Fraction(3, 4), Fraction(-3, 4))
    ),
    2: lambda: dg.ten(gad.half_scalar(), gad.sqrt2(), gad.loop_h1(Fraction(1, 2))),
    6: lambda: dg.ten(gad.half_scalar(), gad.sqrt2(), gad.loop_h1(Fraction(-1, 2))),
    3: lambda: gad.dot(Fraction(-3, 4)).tensor(
        gad.loop_h2(Fraction(1, 4), Fraction(-1, 4))
    ),
    5: lambda: gad.dot(Fraction(3, 4)).tensor(
        gad.loop_h2(Fraction(1, 4), Fraction(-1, 4))
    ),
}


def gn_inverse(alpha: PhaseLike) -> Diagram:
    """A scalar zx diagram inverting the legless spider Z(alpha, 0->0).

    The product with (1 + e^{i alpha}) is the scalar 1 — exactly on the
    pi/4 grid, within float precision elsewhere.  alpha = pi is the pole.
    """
    ph = Phase.coerce(alpha)
    k = ph.omega_exponent()
    if k is not None:
        k %= 8
        if k == 4:
            raise SingularPhase("1 + e^{i pi} = 0 has no inverse")
        return _GRID_INVERSE[k]()
    a = ph.to_float()
    c = math.cos(a / 2.0)
    if abs(c) < 1e-12:
        raise SingularPhase("alpha = pi (mod 2 pi) has no inverse")
    n = max(0, math.ceil(math.log2(1.0 / abs(c))))
    while 2**n * abs(c) < 1.0:
        n += 1
    x = 1.0 / (2**n * c)
    beta = 2.0 * math.acos(max(-1.0, min(1.0, x)))
    if n >= 2:
        dress = gad.circles(n - 2)
    else:
        dress = gad.half_scalar()
        if n == 0:
            dress = dress.tensor(gad.half_scalar())
    return dg.ten(gad.dot(beta), dress, gad.unit_phase(-(a + beta) / 2.0))


# -- triangle expansion ----------------------------------------------------------


def _triangle_zx(r) -> Diagram:
    """[[1, r],[0, 1]] in plain spiders: not, (1, r) plug, w merge."""
    if isinstance(r, Cyclo):
        if r.is_zero():
            return Diagram.identity(1)
        cls = r.sqrt2_power_class()
        if cls == (0, 0):
            return gad.triangle()
        if cls is not None and cls[1] == 0:
            k = cls[0]
            return dg.seq(
                dg.z(1, 1, Fraction(k, 4)),
                gad.triangle(),
                dg.z(1, 1, Fraction(-k, 4)),
            )
    return dg.seq(
        dg.x(1, 1, 1),
        dg.ten(_plug_state(r), gad.wire()),
        gad.w21_zx(),
    )


def expand_triangle(d: Diagram) -> Diagram:
    """Replace every triangle node by its plain-spider construction."""
    if not any(g.kind == TRI for g in d.nodes):
        return d

    def replace(g: Gen):
        if g.kind != TRI:
            return None
        return _triangle_zx(g.param)

    return _graft(d, replace, "zx")
