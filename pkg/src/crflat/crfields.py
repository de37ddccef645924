"""Tangent-field bracket calculus and the non-minimality obstruction.

For a two-variable germ w = R = G + iE the field

    L = (G_2 - i E_2) d/dz1 - (G_1 - i E_1) d/dz2 + 2i (G_2 E_1 - G_1 E_2) d/dw

is a type-(1,0) tangent field along the graph.  Writing L = A d/dz1
- B d/dz2 + C d/dw, the commutator T = [L, conj L] has coefficient family
lambda_1..lambda_6 and [L, T] the family Gamma_1..Gamma_6; when the CR
points of the germ are non-minimal the combinations

    X1 = conj(B) Gamma_1 + conj(A) Gamma_2      X2 = lambda_4 B + lambda_5 A
    Y1 = B Gamma_4 + A Gamma_5                  Y2 = lambda_1 conj(B) + lambda_2 conj(A)

satisfy X1 X2 = Y1 Y2 identically.  A nonzero coefficient in the residual
X1 X2 - Y1 Y2 is therefore a finite-order certificate that no such
non-minimal structure exists; the converse direction is not decided here.

The coefficient names cf_* avoid a clash with the quadratic matrices, which
the surrounding literature also calls A and B.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ParseError, PreconditionError
from .germ import Germ
from .numeric import GaussianRational
from .series import (
    Series,
    bracket_from_exp,
    parse_term_lines,
    strip_comment,
    format_term_lines,
)

_TWO_I = GaussianRational(0, 2)
_MINUS_I = GaussianRational(0, -1)


@dataclass(frozen=True)
class TangentField:
    """Coefficients of d/dz1, d/dz2, d/dw of a (1,0) field along the graph."""

    cf_z1: Series
    cf_z2: Series
    cf_w: Series


def build_canonical_field(germ: Germ) -> TangentField:
    """The canonical tangent field of a two-variable germ."""
    if germ.n != 2:
        raise PreconditionError("the canonical field needs two variables")
    sp = germ.split()
    g, e = sp.g, sp.e
    g1, g2 = g.dz(1), g.dz(2)
    e1, e2 = e.dz(1), e.dz(2)
    a = g2 + e2.scale(_MINUS_I)
    b = g1 + e1.scale(_MINUS_I)
    c = (g2 * e1 - g1 * e2).scale(_TWO_I)
    return TangentField(a, -b, c)


@dataclass(frozen=True)
class WitnessReport:
    annihilates_h: bool
    annihilates_h_conj: bool
    annihilates_chi: Optional[bool]

    def all_true(self) -> bool:
        return (
            self.annihilates_h
            and self.annihilates_h_conj
            and (self.annihilates_chi is not False)
        )


def apply_field(field: TangentField, target: Series, w_part: GaussianRational = None) -> Series:
    """Apply the field to a function of (z, zbar) plus an optional w-slope.

    ``w_part`` is the (constant) derivative of the target with respect to w;
    the graph substitution w = R has already been folded into the series
    coefficients, so no w remains afterwards.
    """
    out = field.cf_z1 * target.dz(1) + field.cf_z2 * target.dz(2)
    if w_part is not None and w_part:
        out = out + field.cf_w.scale(w_part)
    return out


def verify_witness(germ: Germ, field: TangentField, chi: Series | None = None) -> WitnessReport:
    """Check that the field annihilates h = -w + R, its conjugate, and chi.

    All three are evaluated along the graph (w = R, conj w = conj R); the
    booleans report exact vanishing of the truncated series.
    """
    if germ.n != 2:
        raise PreconditionError("witness checks need two variables")
    r = germ.R
    lh = apply_field(field, r, w_part=GaussianRational(-1))
    lhbar = apply_field(field, r.conj())
    chi_ok = None
    if chi is not None:
        chi_ok = apply_field(field, chi).is_zero()
    return WitnessReport(lh.is_zero(), lhbar.is_zero(), chi_ok)


@dataclass(frozen=True)
class BracketData:
    """Coefficients of [L, conj L] (lambda) and [L, [L, conj L]] (gamma)."""

    lambda1: Series
    lambda2: Series
    lambda3: Series
    lambda4: Series
    lambda5: Series
    lambda6: Series
    gamma1: Series
    gamma2: Series
    gamma3: Series
    gamma4: Series
    gamma5: Series
    gamma6: Series


def bracket_data(germ: Germ) -> BracketData:
    """Both commutator coefficient families, exact at working truncation."""
    if germ.n != 2:
        raise PreconditionError("bracket calculus needs two variables")
    f = build_canonical_field(germ)
    a = f.cf_z1
    b = -f.cf_z2
    c = f.cf_w
    ab, bb, cb = a.conj(), b.conj(), c.conj()

    lam1 = a * ab.dz(1) - b * ab.dz(2)
    lam2 = -(a * bb.dz(1)) + b * bb.dz(2)
    lam3 = a * cb.dz(1) - b * cb.dz(2)
    lam4 = -(ab * a.dzbar(1)) + bb * a.dzbar(2)
    lam5 = ab * b.dzbar(1) - bb * b.dzbar(2)
    lam6 = -(ab * c.dzbar(1)) + bb * c.dzbar(2)

    def L(s: Series) -> Series:
        return a * s.dz(1) - b * s.dz(2)

    def T(s: Series) -> Series:
        return (
            lam1 * s.dzbar(1)
            + lam2 * s.dzbar(2)
            + lam4 * s.dz(1)
            + lam5 * s.dz(2)
        )

    gam1 = L(lam1)
    gam2 = L(lam2)
    gam3 = L(lam3)
    gam4 = L(lam4) - T(a)
    gam5 = L(lam5) + T(b)
    gam6 = L(lam6) - T(c)
    return BracketData(
        lam1, lam2, lam3, lam4, lam5, lam6, gam1, gam2, gam3, gam4, gam5, gam6
    )


@dataclass(frozen=True)
class ObstructionReport:
    x1: Series
    x2: Series
    y1: Series
    y2: Series
    residual: Series
    order: int
    first_nonzero: Optional[tuple[tuple[int, int, int, int], GaussianRational]]

    def residual_zero(self) -> bool:
        return self.residual.is_zero()


def achievable_order(trunc: int) -> int:
    """Highest residual order supported by a germ of the given truncation.

    The field coefficients cost one derivative, each lambda a second and
    each gamma a third, so the residual of products is exact only through
    trunc - 3.
    """
    return trunc - 3


def obstruction_series(germ: Germ) -> tuple[Series, Series, Series, Series]:
    """The four product factors of the non-minimality identity."""
    f = build_canonical_field(germ)
    a = f.cf_z1
    b = -f.cf_z2
    ab, bb = a.conj(), b.conj()
    d = bracket_data(germ)
    x1 = bb * d.gamma1 + ab * d.gamma2
    x2 = d.lambda4 * b + d.lambda5 * a
    y1 = b * d.gamma4 + a * d.gamma5
    y2 = d.lambda1 * bb + d.lambda2 * ab
    return x1, x2, y1, y2


def obstruction(germ: Germ, order: int) -> ObstructionReport:
    """Residual X1 X2 - Y1 Y2 through the requested total degree.

    A vanishing residual is necessary for CR non-minimality near the origin;
    the first nonzero term (graded-lex least) is a certified obstruction.
    """
    if germ.n != 2:
        raise PreconditionError("obstruction calculus needs two variables")
    max_order = achievable_order(germ.trunc)
    if order > max_order:
        raise PreconditionError(
            f"order {order} exceeds the achievable residual order {max_order} "
            f"for truncation {germ.trunc}"
        )
    x1, x2, y1, y2 = obstruction_series(germ)
    residual = (x1 * x2 - y1 * y2).truncate(order)
    first = None
    for e, cval in residual.items():
        first = (bracket_from_exp(e), cval)
        break
    return ObstructionReport(x1, x2, y1, y2, residual, order, first)


# -- field file format -----------------------------------------------------------
#
# Three labeled blocks of term lines::
#
#     vars 2
#     order 7
#     coef z1
#     <term lines>
#     coef z2
#     <term lines>
#     coef w
#     <term lines>


def loads_field(text: str) -> TangentField:
    nvars = order = None
    blocks: dict[str, list[str]] = {"z1": [], "z2": [], "w": []}
    current: Optional[str] = None
    for raw in text.splitlines():
        line = strip_comment(raw).strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vars":
            nvars = int(parts[1])
            continue
        if parts[0] == "order":
            order = int(parts[1])
            continue
        if parts[0] == "coef":
            if len(parts) != 2 or parts[1] not in blocks:
                raise ParseError(f"unknown field block {line!r}")
            current = parts[1]
            continue
        if current is None:
            raise ParseError("term line before any 'coef' block")
        blocks[current].append(line)
    if nvars is None or order is None:
        raise ParseError("field file needs 'vars' and 'order' headers")
    if nvars != 2:
        raise ParseError("field files are two-variable")
    return TangentField(
        parse_term_lines(blocks["z1"], nvars, order),
        parse_term_lines(blocks["z2"], nvars, order),
        parse_term_lines(blocks["w"], nvars, order),
    )


def dumps_field(field: TangentField) -> str:
    lines = [f"vars {field.cf_z1.nvars}", f"order {field.cf_z1.trunc}"]
    for label, series in (("z1", field.cf_z1), ("z2", field.cf_z2), ("w", field.cf_w)):
        lines.append(f"coef {label}")
        lines.extend(format_term_lines(series))
    return "\n".join(lines) + "\n"


def load_field(path) -> TangentField:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_field(fh.read())


def save_field(field: TangentField, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_field(field))
