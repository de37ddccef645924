"""Order-by-order formal flattening of the parabolic two-variable quadric.

Setting: a germ whose quadratic part is exactly

    q2 = |z1|^2 + |z2|^2 + (z1^2 + z2^2 + zb1^2 + zb2^2) / 2

and whose imaginary part vanishes below degree m.  Write H for the degree-m
homogeneous part of Im R.  The machinery here revolves around the linear
differential operators

    Phi = (z2 + zb2) dH/dzb1 - (z1 + zb1) dH/dzb2
    Psi = (z2 + zb2)^2 dPhi/dz1 - (z2 + zb2)(z1 + zb1) dPhi/dz2 + (z1 + zb1) Phi

and the first-order condition  (z2 + zb2) dPsi/dz1 - (z1 + zb1) dPsi/dz2 = 0,
which every H inherited from a germ that is non-minimal at its CR points
satisfies.  The degree-m normalization conditions select a unique shear
w' = w + B(z, w), B of weight m, such that H + Im B(z, q2) is normalized;
for inputs satisfying the first-order condition the normalized remainder
vanishes, which is verified, never assumed.  A nonzero remainder (or an
unsolvable normalization) is returned as an obstruction certificate.

Homogeneous coefficient tables are indexed by brackets [t s r h] (the
coefficient of z1^s z2^t zb1^h zb2^r); lookups at negative indices are zero
by convention, which every recursion identity below relies on.  The
definitional operators are implemented by generic series arithmetic, while
the recursions (coefficient shifts, alternating-sum transforms and their
identities) exist only as audit code paths: each side is an independent
implementation of the same mathematics and the audits force them to agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional

from .errors import (
    LinearSolveError,
    NormalizationError,
    PreconditionError,
    UnderdeterminedSystemError,
)
from .germ import Germ, KernelPolynomial, parabolic_pair, quadric_germ
from .linalg import ExactMatrix, nullspace, solve
from .numeric import GaussianRational, ZERO
from .series import Series, bracket_from_exp, exp_from_bracket

Bracket = tuple[int, int, int, int]
Table = dict[Bracket, GaussianRational]

_HALF = GaussianRational(Fraction(1, 2))
_INV_2I = GaussianRational(0, Fraction(-1, 2))  # 1/(2i)

_PAD = 4  # headroom so truncation never cuts an exact homogeneous result


def all_brackets(degree: int) -> list[Bracket]:
    out = []
    for t in range(degree + 1):
        for s in range(degree + 1 - t):
            for r in range(degree + 1 - t - s):
                out.append((t, s, r, degree - t - s - r))
    return out


def table_to_series(table: Mapping[Bracket, object], degree: int) -> Series:
    terms = {}
    for idx, c in table.items():
        c = GaussianRational.coerce(c)
        if c:
            terms[exp_from_bracket(*idx)] = c
    return Series(2, degree + _PAD, terms)


def series_to_table(series: Series) -> Table:
    return {bracket_from_exp(e): c for e, c in series.items()}


def _tget(table: Mapping[Bracket, GaussianRational], idx: Bracket) -> GaussianRational:
    # negative-index lookups are zero by convention
    return table.get(idx, ZERO)


class HTable:
    """Real-valued homogeneous coefficient table of one degree."""

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Mapping[Bracket, object], check_real: bool = True):
        self.m = m
        clean: Table = {}
        for idx, c in coeffs.items():
            t, s, r, h = idx
            if min(idx) < 0 or t + s + r + h != m:
                raise PreconditionError(f"index {idx} is not homogeneous of degree {m}")
            c = GaussianRational.coerce(c)
            if c:
                clean[idx] = c
        if check_real:
            for (t, s, r, h), c in clean.items():
                if _tget(clean, (r, h, t, s)) != c.conj():
                    raise PreconditionError(
                        "table is not real-valued: mirror coefficient mismatch at "
                        f"{(t, s, r, h)}"
                    )
        self.coeffs = clean

    def get(self, idx: Bracket) -> GaussianRational:
        return _tget(self.coeffs, idx)

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_series(self) -> Series:
        return table_to_series(self.coeffs, self.m)

    def items(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        if not isinstance(other, HTable):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __repr__(self):
        return f"HTable(m={self.m}, {dict(self.items())!r})"


def h_from_germ(germ: Germ, m: int) -> HTable:
    """Degree-m table of the imaginary part of a parabolic-quadric germ."""
    _require_parabolic(germ)
    if m > germ.trunc:
        raise PreconditionError("degree exceeds the germ truncation")
    e = germ.split().e.homogeneous_part(m)
    return HTable(m, series_to_table(e))


def _require_parabolic(germ: Germ):
    if germ.n != 2 or germ.quadratic_pair() != parabolic_pair():
        raise PreconditionError(
            "flattening driver requires the standard parabolic quadric quadratic part"
        )


# -- definitional operators (generic series arithmetic) -------------------------


@dataclass(frozen=True)
class PhiPsiTables:
    m: int
    phi: Table
    psi: Table


def _linear_forms(trunc: int) -> tuple[Series, Series]:
    z1, z2, zb1, zb2 = Series.generators(2, trunc)
    return z1 + zb1, z2 + zb2


def phi_psi(h: HTable | Mapping[Bracket, object], m: int | None = None) -> PhiPsiTables:
    """Both derived operators, computed by plain series arithmetic."""
    if isinstance(h, HTable):
        table, m = h.coeffs, h.m
    else:
        if m is None:
            raise PreconditionError("raw tables need an explicit degree")
        table = {k: GaussianRational.coerce(v) for k, v in h.items()}
    hs = table_to_series(table, m)
    w1, w2 = _linear_forms(hs.trunc)
    phi = w2 * hs.dzbar(1) - w1 * hs.dzbar(2)
    psi = w2 * w2 * phi.dz(1) - w2 * w1 * phi.dz(2) + w1 * phi
    return PhiPsiTables(m, series_to_table(phi), series_to_table(psi))


def fundamental_series(tables: PhiPsiTables) -> Series:
    psi = table_to_series(tables.psi, tables.m + 1)
    w1, w2 = _linear_forms(psi.trunc)
    return w2 * psi.dz(1) - w1 * psi.dz(2)


@dataclass(frozen=True)
class FundamentalReport:
    ok: bool
    violations: list[tuple[Bracket, GaussianRational]]


def check_fundamental(tables: PhiPsiTables) -> FundamentalReport:
    """Does (z2+zb2) dPsi/dz1 - (z1+zb1) dPsi/dz2 vanish identically?"""
    f = fundamental_series(tables)
    violations = [(bracket_from_exp(e), c) for e, c in f.items()]
    return FundamentalReport(not violations, violations)


# -- recursion audits (independent coefficient-shift code paths) ------------------


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    failures: list[str] = field(default_factory=list)
    skipped: Optional[str] = None


def _phi_recursion(h: Mapping[Bracket, GaussianRational], idx: Bracket) -> GaussianRational:
    t, s, r, h_ = idx
    return (
        (h_ + 1) * _tget(h, (t, s, r - 1, h_ + 1))
        + (h_ + 1) * _tget(h, (t - 1, s, r, h_ + 1))
        - (r + 1) * _tget(h, (t, s - 1, r + 1, h_))
        - (r + 1) * _tget(h, (t, s, r + 1, h_ - 1))
    )


def _psi_recursion(phi: Mapping[Bracket, GaussianRational], idx: Bracket) -> GaussianRational:
    t, s, r, h_ = idx
    return (
        (s + 1)
        * (
            _tget(phi, (t, s + 1, r - 2, h_))
            + 2 * _tget(phi, (t - 1, s + 1, r - 1, h_))
            + _tget(phi, (t - 2, s + 1, r, h_))
        )
        - (t + 1) * _tget(phi, (t + 1, s, r - 1, h_ - 1))
        - t * _tget(phi, (t, s, r, h_ - 1))
        - (t + 1) * _tget(phi, (t + 1, s - 1, r - 1, h_))
        - t * _tget(phi, (t, s - 1, r, h_))
        + _tget(phi, (t, s, r, h_ - 1))
        + _tget(phi, (t, s - 1, r, h_))
    )


def _iden_combination(psi: Mapping[Bracket, GaussianRational], idx: Bracket) -> GaussianRational:
    t, s, r, h_ = idx
    return (
        (s + 1) * _tget(psi, (t - 1, s + 1, r, h_))
        + (s + 1) * _tget(psi, (t, s + 1, r - 1, h_))
        - (t + 1) * _tget(psi, (t + 1, s - 1, r, h_))
        - (t + 1) * _tget(psi, (t + 1, s, r, h_ - 1))
    )


def recursion_audit(h: HTable | Mapping[Bracket, object], m: int | None = None) -> AuditReport:
    """Check the coefficient recursions against the series-computed operators.

    The first two identities re-derive Phi from H and Psi from Phi by index
    shifts; the third states that the alternating four-term combination of
    Psi coefficients agrees, index by index, with the first-order condition
    series.  Exact equality is required everywhere.
    """
    if isinstance(h, HTable):
        table, m = h.coeffs, h.m
    else:
        if m is None:
            raise PreconditionError("raw tables need an explicit degree")
        table = {k: GaussianRational.coerce(v) for k, v in h.items()}
    tables = phi_psi(table, m)
    failures = []
    for idx in all_brackets(m):
        if _tget(tables.phi, idx) != _phi_recursion(table, idx):
            failures.append(f"phi-recursion mismatch at {idx}")
    for idx in all_brackets(m + 1):
        if _tget(tables.psi, idx) != _psi_recursion(tables.phi, idx):
            failures.append(f"psi-recursion mismatch at {idx}")
    fund = series_to_table(fundamental_series(tables))
    for idx in all_brackets(m + 1):
        if _iden_combination(tables.psi, idx) != _tget(fund, idx):
            failures.append(f"four-term combination differs from condition series at {idx}")
    return AuditReport(not failures, failures)


# -- alternating-sum transforms ---------------------------------------------------


def _binom(t: int, k: int) -> int:
    if k < 0 or t < k:
        return 0
    return math.comb(t, k)


@dataclass(frozen=True)
class KTransform:
    k: int
    values: Table

    def get(self, s: int, h: int) -> GaussianRational:
        if s < 0 or h < 0:
            return ZERO
        return self.values.get((s, h), ZERO)


def k_transform(table: Mapping[Bracket, GaussianRational], degree: int, k: int) -> KTransform:
    """Alternating binomial-weighted sums over the first bracket slot.

    values[(s, h)] = sum_t (-1)^(degree - t - s - h) C(t, k) table[t s r h]
    with r = degree - t - s - h.
    """
    values: Table = {}
    for s in range(degree + 1):
        for h in range(degree + 1 - s):
            acc = ZERO
            for t in range(k if k > 0 else 0, degree + 1 - s - h):
                r = degree - t - s - h
                c = _tget(table, (t, s, r, h))
                if c:
                    w = _binom(t, k)
                    if w:
                        acc = acc + c * ((-1) ** (r % 2) * w)
            if acc:
                values[(s, h)] = acc
    return KTransform(k, values)


def identity_audit(h: HTable | Mapping[Bracket, object], m: int | None = None) -> AuditReport:
    """Verify the transform-level identities at lowest conjugate weight.

    Requires the first-order condition to hold for H (the audit is skipped
    otherwise).  Checked for every k and s in range, all with exact
    arithmetic:

    * the transform of Phi at (s, 0) against the three-term combination of
      transforms of H,
    * the transform of Psi at (s, 0) against transforms of Phi,
    * the two-sided ladder between Psi transforms of adjacent k,

    and for even degree additionally the odd-transform chain at the origin
    slot and the closing three-term identity on H transforms.
    """
    if isinstance(h, HTable):
        table, m = h.coeffs, h.m
    else:
        if m is None:
            raise PreconditionError("raw tables need an explicit degree")
        table = {k: GaussianRational.coerce(v) for k, v in h.items()}
    tables = phi_psi(table, m)
    fund = check_fundamental(tables)
    if not fund.ok:
        return AuditReport(False, skipped="first-order condition fails for this table")
    hk = {k: k_transform(table, m, k) for k in range(-1, m + 4)}
    pk = {k: k_transform(tables.phi, m, k) for k in range(-2, m + 4)}
    sk = {k: k_transform(tables.psi, m + 1, k) for k in range(-1, m + 4)}
    failures = []
    for k in range(0, m + 3):
        for s in range(0, m + 3):
            lhs = pk[k].get(s, 0)
            rhs = (
                hk[k - 1].get(s, 1)
                + (m - s + 1 - k) * hk[k].get(s - 1, 0)
                - (k + 1) * hk[k + 1].get(s - 1, 0)
            )
            if lhs != rhs:
                failures.append(f"phi-transform identity fails at k={k}, s={s}")
            lhs = sk[k].get(s, 0)
            rhs = (s + 1) * pk[k - 2].get(s + 1, 0) - (k - 1) * pk[k].get(s - 1, 0)
            if lhs != rhs:
                failures.append(f"psi-transform identity fails at k={k}, s={s}")
            lhs = (s + 1) * sk[k - 1].get(s + 1, 0)
            rhs = (k + 1) * sk[k + 1].get(s - 1, 0)
            if lhs != rhs:
                failures.append(f"psi-transform ladder fails at k={k}, s={s}")
    if m % 2 == 0:
        for k in range(0, m + 2, 2):
            if sk[k + 1].get(0, 0):
                failures.append(f"odd psi-transform at the origin is nonzero for k={k + 1}")
        for l in range(1, m // 2 + 2):
            val = (
                hk[2 * l - 2].get(1, 1)
                + (m + 1 - 2 * l) * hk[2 * l - 1].get(0, 0)
                - 2 * l * hk[2 * l].get(0, 0)
            )
            if val:
                failures.append(f"closing identity fails at l={l}")
    return AuditReport(not failures, failures)


# -- normalization conditions ---------------------------------------------------


@dataclass(frozen=True)
class Constraint:
    label: str
    kind: str  # "zero" (complex coefficient) or "realpart"
    index: Bracket


@dataclass(frozen=True)
class NormalizationSystem:
    m: int
    constraints: tuple[Constraint, ...]
    even_side_condition: bool


def normalization_system(m: int) -> NormalizationSystem:
    """The degree-m normalization constraint list.

    Indices are brackets [t s r h] for the coefficient of z1^s z2^t zb1^h
    zb2^r.  The list consists of: all pure-z coefficients; the mixed family
    with conjugate part a pure zb2-power (starting no higher than the
    z2-power); and one block depending on m mod 6 that pins a run of
    binary-type coefficients, a run of (1,1)-type coefficients, and in the
    even-m cases one extra real part.
    """
    if m < 3:
        raise PreconditionError("normalization starts at degree 3")
    cons: list[Constraint] = []
    for s1 in range(m + 1):
        cons.append(Constraint(f"pure-z s1={s1}", "zero", (m - s1, s1, 0, 0)))
    seen = set()
    for t1 in range(m + 1):
        for s in range(m + 1 - t1):
            big_t = m - t1 - s
            if big_t < 0:
                continue
            ok = (t1 > 0 and s <= big_t) or (t1 == 0 and s < big_t)
            idx = (big_t, t1, s, 0)
            if ok and idx not in seen and idx != (big_t, t1, 0, 0):
                # pure-z indices already covered by the first family
                seen.add(idx)
                cons.append(Constraint(f"mixed t1={t1} s={s}", "zero", idx))
    rem = m % 6
    if rem == 3:
        mh = (m + 3) // 6
        f1 = range(4 * mh - 1, m)
        f2 = range(2 * mh - 2, 3 * mh - 2)
        real_idx = None
    elif rem == 4:
        mh = (m + 2) // 6
        f1 = range(4 * mh - 1, m)
        f2 = range(2 * mh - 1, 3 * mh - 2)
        real_idx = (4 * mh - 3, 1, 2 * mh - 1, 1)
    elif rem == 5:
        mh = (m + 1) // 6
        f1 = range(4 * mh, m)
        f2 = range(2 * mh - 1, 3 * mh - 1)
        real_idx = None
    elif rem == 0:
        mh = m // 6
        f1 = range(4 * mh + 1, m)
        f2 = range(2 * mh - 1, 3 * mh - 1)
        real_idx = (4 * mh, 0, 2 * mh, 0)
    elif rem == 1:
        mh = (m - 1) // 6
        f1 = range(4 * mh + 1, m)
        f2 = range(2 * mh, 3 * mh)
        real_idx = None
    else:  # rem == 2
        mh = (m - 2) // 6
        f1 = range(4 * mh + 2, m)
        f2 = range(2 * mh, 3 * mh)
        real_idx = (4 * mh + 1, 0, 2 * mh + 1, 0)
    for t in f1:
        cons.append(Constraint(f"block binary t={t}", "zero", (t, 0, m - t, 0)))
    for t in f2:
        cons.append(
            Constraint(f"block mixed t={t}", "zero", (2 * t + 1, 1, m - 2 * t - 3, 1))
        )
    if real_idx is not None:
        cons.append(Constraint("block real part", "realpart", real_idx))
    return NormalizationSystem(m, tuple(cons), m % 2 == 0)


def constraint_residuals(
    system: NormalizationSystem, table: Mapping[Bracket, GaussianRational]
) -> list[tuple[Constraint, GaussianRational]]:
    """Nonzero constraint values of a table, in system order."""
    out = []
    for con in system.constraints:
        v = _tget(table, con.index)
        if con.kind == "realpart":
            v = GaussianRational(v.re)
        if v:
            out.append((con, v))
    return out


# -- the unique kernel solve -------------------------------------------------------


def kernel_unknowns(m: int) -> list[tuple[tuple[int, int], int]]:
    out = []
    for j in range(m // 2 + 1):
        for a1 in range(m - 2 * j + 1):
            a2 = m - 2 * j - a1
            if m % 2 == 0 and j == m // 2 and a1 == 0 and a2 == 0:
                continue  # pinned to zero for even weight
            out.append(((a1, a2), j))
    return out


@lru_cache(maxsize=None)
def _kernel_images(m: int) -> tuple:
    """Per-unknown degree-m tables of Im and Re of z^alpha q2^j."""
    q2 = quadric_germ(parabolic_pair(), m).R
    images = []
    for (a1, a2), j in kernel_unknowns(m):
        mono = Series(2, m, {(a1, a2, 0, 0): 1})
        s = mono * q2**j
        sc = s.conj()
        im_part = (s - sc).scale(_INV_2I)
        re_part = (s + sc).scale(_HALF)
        images.append(
            (((a1, a2), j), series_to_table(im_part), series_to_table(re_part))
        )
    return tuple(images)


def solve_kernel(germ: Germ, m: int) -> KernelPolynomial:
    """The unique weight-m shear datum normalizing the degree-m imaginary part.

    The germ must carry the parabolic quadric and be flattened below m.  The
    normalization conditions on H' = H + Im B(z, q2) form an overdetermined
    real-linear system in (Re b, Im b); uniqueness and consistency are
    verified by the exact solve, and failure raises with a diagnostic.
    """
    _require_parabolic(germ)
    if m < 3 or m > germ.trunc:
        raise PreconditionError("degree out of range for this germ")
    e = germ.split().e
    for d in range(3, m):
        if not e.homogeneous_part(d).is_zero():
            raise PreconditionError(f"germ is not flattened below degree {m} (degree {d})")
    h = series_to_table(e.homogeneous_part(m))
    system = normalization_system(m)
    unknowns = _kernel_images(m)
    rows: list[list[GaussianRational]] = []
    rhs: list[GaussianRational] = []

    def push(values: list[GaussianRational], target: GaussianRational):
        rows.append(values)
        rhs.append(target)

    for con in system.constraints:
        idx = con.index
        h_val = _tget(h, idx)
        re_coeffs = []
        im_coeffs = []
        for _, im_t, re_t in unknowns:
            ci = _tget(im_t, idx)  # multiplies Re b
            cr = _tget(re_t, idx)  # multiplies Im b
            re_coeffs.extend([GaussianRational(ci.re), GaussianRational(cr.re)])
            im_coeffs.extend([GaussianRational(ci.im), GaussianRational(cr.im)])
        push(re_coeffs, GaussianRational(-h_val.re))
        if con.kind == "zero":
            push(im_coeffs, GaussianRational(-h_val.im))
    mat = ExactMatrix.from_rows(rows)
    try:
        sol = solve(mat, rhs)
    except UnderdeterminedSystemError as exc:
        raise NormalizationError(
            f"normalization system singular at degree {m}", diagnostic=mat.to_literal()
        ) from exc
    except LinearSolveError as exc:
        raise NormalizationError(
            f"normalization system inconsistent at degree {m}", diagnostic=str(exc)
        ) from exc
    coeffs = {}
    for pos, (key, _, _) in enumerate(unknowns):
        x = sol[2 * pos]
        y = sol[2 * pos + 1]
        if x.im or y.im:
            raise NormalizationError("real solve returned a non-real solution")
        coeffs[key] = GaussianRational(x.re, y.re)
    return KernelPolynomial(m, coeffs)


# -- the order-by-order driver -------------------------------------------------------


@dataclass(frozen=True)
class FlattenStep:
    m: int
    kernel: Optional[KernelPolynomial]
    normalized_zero: Optional[bool]
    remainder: Optional[HTable]
    fundamental_ok: bool
    note: str = ""


@dataclass(frozen=True)
class FlattenReport:
    ok: bool
    reached: int
    kernels: dict[int, KernelPolynomial]
    final: Germ
    steps: list[FlattenStep]
    obstruction_degree: Optional[int] = None

    def remainder_at_obstruction(self) -> Optional[HTable]:
        if self.obstruction_degree is None:
            return None
        return self.steps[-1].remainder


def flatten_to_order(germ: Germ, n: int) -> FlattenReport:
    """Iterate the unique kernel solve and shear through degree n.

    Each degree verifies the normalized remainder: zero lets the iteration
    continue, a nonzero remainder (or an unsolvable normalization) stops it
    and is reported as an obstruction certificate together with the
    violations of the first-order condition that explain it.
    """
    _require_parabolic(germ)
    if n > germ.trunc:
        raise PreconditionError("target order exceeds the germ truncation")
    current = germ
    kernels: dict[int, KernelPolynomial] = {}
    steps: list[FlattenStep] = []
    for m in range(3, n + 1):
        h = h_from_germ(current, m)
        fund = check_fundamental(phi_psi(h))
        try:
            kern = solve_kernel(current, m)
        except NormalizationError as exc:
            steps.append(
                FlattenStep(m, None, None, h, fund.ok, note=str(exc))
            )
            return FlattenReport(False, m - 1, kernels, current, steps, obstruction_degree=m)
        current = current.shear(kern)
        kernels[m] = kern
        h2 = h_from_germ(current, m)
        if not h2.is_zero():
            steps.append(FlattenStep(m, kern, False, h2, fund.ok))
            return FlattenReport(False, m - 1, kernels, current, steps, obstruction_degree=m)
        steps.append(FlattenStep(m, kern, True, None, fund.ok))
    return FlattenReport(True, n, kernels, current, steps)


# -- uniqueness of the normalized solution ----------------------------------------------


@lru_cache(maxsize=None)
def _fundamental_matrix(m: int) -> tuple:
    """Columns: basis tables of degree m; rows: condition coefficients."""
    unknowns = all_brackets(m)
    col_tables = []
    for idx in unknowns:
        tables = phi_psi({idx: GaussianRational(1)}, m)
        col_tables.append(series_to_table(fundamental_series(tables)))
    rows_idx = all_brackets(m + 1)
    rows = []
    for ridx in rows_idx:
        rows.append([_tget(col, ridx) for col in col_tables])
    return tuple(unknowns), ExactMatrix.from_rows(rows)


@lru_cache(maxsize=None)
def fundamental_nullspace(m: int) -> tuple[Table, ...]:
    """A deterministic basis of all degree-m tables killed by the condition."""
    unknowns, mat = _fundamental_matrix(m)
    basis = []
    for vec in nullspace(mat):
        basis.append({idx: c for idx, c in zip(unknowns, vec) if c})
    return tuple(basis)


def uniqueness_nullspace(m: int) -> tuple[int, list[HTable]]:
    """Kernel of the combined system: first-order condition, reality,
    normalization, and the two vanishing coefficient families.

    A complex basis of the condition kernel is computed first; reality and
    the remaining constraints are then imposed on its real coordinates, so
    the returned kernel is exactly that of the full system assembled on the
    table unknowns.  The expected dimension is 0 for every degree.
    """
    if m < 3:
        raise PreconditionError("uniqueness check starts at degree 3")
    basis = fundamental_nullspace(m)
    nb = len(basis)
    if nb == 0:
        return 0, []
    system = normalization_system(m)
    rows: list[list[GaussianRational]] = []

    def push_complex(values: list[GaussianRational]):
        # values: complex linear combination coefficients per real unknown
        rows.append([GaussianRational(v.re) for v in values])
        rows.append([GaussianRational(v.im) for v in values])

    def column_values(idx: Bracket) -> list[GaussianRational]:
        vals = []
        for b in basis:
            v = _tget(b, idx)
            vals.extend([v, v * GaussianRational(0, 1)])  # x part, y part (i*v)
        return vals

    # reality: H[t s r h] - conj(H[r h t s]) = 0
    seen = set()
    for idx in all_brackets(m):
        t, s, r, h = idx
        mirror = (r, h, t, s)
        key = tuple(sorted([idx, mirror]))
        if key in seen:
            continue
        seen.add(key)
        vals = []
        for b in basis:
            v = _tget(b, idx)
            wv = _tget(b, mirror)
            # coefficient of x_j and y_j in H[idx] - conj(H[mirror])
            vals.append((v - wv.conj(), GaussianRational(0, 1) * (v + wv.conj())))
        flat = []
        for cx, cy in vals:
            flat.extend([cx, cy])
        push_complex(flat)
    # normalization constraints and the vanishing families
    extra: list[tuple[str, Bracket]] = [(c.kind, c.index) for c in system.constraints]
    for t in range(m - 1):
        extra.append(("zero", (t, 1, m - t - 2, 1)))
    for t in range(m + 1):
        extra.append(("zero", (t, 0, m - t, 0)))
    for kind, idx in extra:
        vals = column_values(idx)
        if kind == "zero":
            push_complex(vals)
        else:
            rows.append([GaussianRational(v.re) for v in vals])
    mat = ExactMatrix.from_rows(rows)
    kernel = nullspace(mat)
    out = []
    for vec in kernel:
        coeffs: Table = {}
        for j, b in enumerate(basis):
            cj = GaussianRational(vec[2 * j].re, vec[2 * j + 1].re)
            if not cj:
                continue
            for idx, v in b.items():
                nv = coeffs.get(idx, ZERO) + cj * v
                if nv:
                    coeffs[idx] = nv
                else:
                    coeffs.pop(idx, None)
        out.append(HTable(m, coeffs))
    return len(kernel), out


def parity_audit(h: HTable) -> AuditReport:
    """For odd degree: the part odd under z1 -> -z1 must vanish.

    Under the hypotheses that the table satisfies the first-order condition
    and the normalization conditions, its odd part (monomials with s + h
    odd) lies in the full uniqueness system -- the two vanishing families
    are automatic there since those indices have even s + h -- and so must
    be zero.  Hypothesis failures and surviving odd coefficients are both
    reported as findings, so an injected odd coefficient is always caught.
    """
    m = h.m
    if m % 2 == 0:
        return AuditReport(False, skipped="parity audit applies to odd degrees")
    failures = []
    if not check_fundamental(phi_psi(h)).ok:
        failures.append("hypothesis: first-order condition fails for this table")
    for con, _ in constraint_residuals(normalization_system(m), h.coeffs):
        failures.append(f"hypothesis: normalization violated ({con.label})")
    failures.extend(
        f"odd-part coefficient survives at {idx}"
        for idx, _ in h.items()
        if (idx[1] + idx[3]) % 2 == 1
    )
    return AuditReport(not failures, failures)
