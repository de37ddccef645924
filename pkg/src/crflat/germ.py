"""Graph germs w = R(z, zbar) near a CR singular point and their changes.

A :class:`Germ` stores the whole right-hand side R as one truncated series
with R = O(|z|^2) (the distinguished point is the origin and the complex
tangent there is {w = 0}).  The real/imaginary split G + iE = R, the
quadratic matrix pair, and the two families of coordinate changes used
throughout the package -- linear changes acting on the quadratic pair by
congruence-with-scaling, and shears w' = w + B(z, w) -- are derived
operations.

File formats
------------
Germ file::

    vars 2
    order 8
    1 0 0 1  1 0        # term lines: s t h r  re im

Kernel file::

    weight 3
    2 1 0  0 1          # lines: a1 a2 j  re im   (coefficient of z1^a1 z2^a2 w^j)

Both round-trip byte-stably: writers emit canonical ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import ParseError, PreconditionError
from .numeric import GaussianRational, ZERO, parse_rational
from .quadratic import QuadraticPair
from .linalg import ExactMatrix
from .series import (
    Series,
    dumps_series,
    parse_term_lines,
    strip_comment,
    subst_w,
)

_HALF = GaussianRational(Fraction(1, 2))
_MINUS_I_HALF = GaussianRational(0, Fraction(-1, 2))  # 1/(2i)


class Germ:
    """A real codimension-two graph germ w = R(z, zbar), R = O(|z|^2)."""

    __slots__ = ("n", "R", "trunc")

    def __init__(self, n: int, r: Series):
        if r.nvars != n:
            raise PreconditionError("series variable count does not match the germ")
        if r.trunc < 2:
            raise PreconditionError("germ needs truncation order at least 2")
        if not r.is_zero() and r.min_degree() < 2:
            raise PreconditionError(
                "defining series must vanish to second order at the origin"
            )
        self.n = n
        self.R = r
        self.trunc = r.trunc

    def __eq__(self, other):
        if not isinstance(other, Germ):
            return NotImplemented
        return self.n == other.n and self.R == other.R

    def __repr__(self):
        return f"Germ(n={self.n}, trunc={self.trunc}, R={self.R})"

    # -- derived data ---------------------------------------------------------

    def split(self) -> "GESplit":
        """Real and imaginary parts: G = (R + conj R)/2, E = (R - conj R)/(2i)."""
        rbar = self.R.conj()
        g = (self.R + rbar).scale(_HALF)
        e = (self.R - rbar).scale(_MINUS_I_HALF)
        return GESplit(g, e)

    def quadratic_pair(self) -> QuadraticPair:
        """Extract (A, B) with quadratic part = z A z^t + conj(...) + z B zbar^t.

        The mixed block is read off directly; the pure-holomorphic block must
        be the conjugate of the pure-antiholomorphic block, otherwise the
        series is not the graph of this normal shape and the extraction
        refuses it.
        """
        n = self.n
        q = self.R.homogeneous_part(2)
        width = 2 * n

        def unit(*slots):
            e = [0] * width
            for s in slots:
                e[s] += 1
            return tuple(e)

        b = [[q.coeff(unit(j, n + k)) for k in range(n)] for j in range(n)]
        hol = [[ZERO] * n for _ in range(n)]
        anti = [[ZERO] * n for _ in range(n)]
        for j in range(n):
            for k in range(j, n):
                hz = q.coeff(unit(j, k))
                az = q.coeff(unit(n + j, n + k))
                if az != hz.conj():
                    raise PreconditionError(
                        "quadratic part not in graph normal form: the pure "
                        "antiholomorphic block must conjugate the holomorphic block"
                    )
                if j == k:
                    hol[j][j] = hz
                else:
                    hol[j][k] = hol[k][j] = hz * _HALF
                anti[j][k] = az
        return QuadraticPair(ExactMatrix.from_rows(hol), ExactMatrix.from_rows(b))

    # -- coordinate changes ------------------------------------------------------

    def linear_change(self, p: ExactMatrix, mu) -> "Germ":
        """Apply z = z~ P, w = mu w~ and re-normalize to graph shape.

        The substituted series mu^{-1} R(z~ P, conj) is already a graph in
        z~ (R carries no w), but a non-real mu unbalances the pure
        holomorphic/antiholomorphic quadratic blocks; the standard follow-up
        shear by a holomorphic quadratic restores the balanced shape, and the
        resulting quadratic pair transforms exactly by
        B -> (1/mu) P B conj(P)^t, A -> (1/conj(mu)) P A P^t.
        """
        mu = GaussianRational.coerce(mu)
        if not mu:
            raise PreconditionError("mu must be nonzero")
        if p.rows != self.n or p.cols != self.n:
            raise PreconditionError("P must be n x n")
        if p.det().is_zero():
            raise PreconditionError("P must be invertible")
        n = self.n
        trunc = self.trunc
        forms = []
        for j in range(n):
            terms = {}
            for k in range(n):
                c = p.at(k, j)
                if c:
                    e = tuple(1 if s == k else 0 for s in range(2 * n))
                    terms[e] = c
            forms.append(Series(n, trunc, terms))
        forms += [f.conj() for f in forms]
        powers: list[dict[int, Series]] = [dict() for _ in range(2 * n)]

        def form_pow(slot: int, k: int) -> Series:
            cache = powers[slot]
            if k not in cache:
                cache[k] = forms[slot] ** k
            return cache[k]

        acc = Series.zero(n, trunc)
        for e, c in self.R.items():
            term = Series.const(n, trunc, c)
            for slot, k in enumerate(e):
                if k:
                    term = term * form_pow(slot, k)
            acc = acc + term
        acc = acc.scale(mu.inverse())
        # rebalance the quadratic blocks: keep the antiholomorphic block and
        # replace the holomorphic one by its conjugate image
        q = acc.homogeneous_part(2)
        hol = Series(n, trunc, {e: c for e, c in q.terms.items() if not any(e[n:])})
        anti = Series(n, trunc, {e: c for e, c in q.terms.items() if not any(e[:n])})
        acc = acc - hol + anti.conj()
        return Germ(n, acc)

    def shear(self, kernel: "KernelPolynomial") -> "Germ":
        """Apply w' = w + B(z, w): the new graph is R + B(z, R), truncated."""
        if self.n != 2:
            raise PreconditionError("shears are implemented for two variables")
        if kernel.is_zero():
            return self
        return Germ(self.n, self.R + subst_w(kernel.subst_template(), self.R))


@dataclass(frozen=True)
class GESplit:
    """Real-valued components with g + i e = R exactly."""

    g: Series
    e: Series


class KernelPolynomial:
    """Shear datum B(z, w) = sum b_{alpha j} z^alpha w^j of one weight.

    Every key satisfies |alpha| + 2 j = weight; for even weight the purely
    radial coefficient b_{(0,0), weight/2} is pinned to zero so the shear is
    the unique normalized representative.
    """

    __slots__ = ("m", "coeffs")

    def __init__(self, m: int, coeffs: Mapping[tuple[tuple[int, int], int], object]):
        if m < 2:
            raise PreconditionError("kernel weight must be at least 2")
        self.m = m
        clean: dict[tuple[tuple[int, int], int], GaussianRational] = {}
        for (alpha, j), c in coeffs.items():
            a1, a2 = alpha
            if a1 < 0 or a2 < 0 or j < 0 or a1 + a2 + 2 * j != m:
                raise PreconditionError(
                    f"kernel key {(alpha, j)} violates the weight-{m} grading"
                )
            c = GaussianRational.coerce(c)
            if c:
                clean[((a1, a2), j)] = c
        if m % 2 == 0 and ((0, 0), m // 2) in clean:
            raise PreconditionError(
                "even-weight kernels must omit the pure w-power coefficient"
            )
        self.coeffs = clean

    def is_zero(self) -> bool:
        return not self.coeffs

    def subst_template(self) -> dict:
        return {((a1, a2, 0, 0), j): c for ((a1, a2), j), c in self.coeffs.items()}

    def items(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        if not isinstance(other, KernelPolynomial):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __repr__(self):
        return f"KernelPolynomial(m={self.m}, {dict(self.items())!r})"


# -- quadric builders ------------------------------------------------------------


def quadric_germ(pair: QuadraticPair, trunc: int) -> Germ:
    """The exact quadric germ whose quadratic pair is the given one."""
    n = pair.n
    terms: dict[tuple, GaussianRational] = {}

    def add(e, c):
        if c:
            terms[e] = terms.get(e, ZERO) + c
            if not terms[e]:
                del terms[e]

    def unit(*slots):
        e = [0] * (2 * n)
        for s in slots:
            e[s] += 1
        return tuple(e)

    for j in range(n):
        for k in range(n):
            add(unit(j, k), pair.A.at(j, k))
            add(unit(n + j, n + k), pair.A.at(j, k).conj())
            add(unit(j, n + k), pair.B.at(j, k))
    return Germ(n, Series(n, trunc, terms))


def parabolic_pair() -> QuadraticPair:
    """The pair of |z1|^2 + |z2|^2 + (z1^2 + z2^2 + conj)/2."""
    half = GaussianRational(Fraction(1, 2))
    a = ExactMatrix.from_rows([[half, ZERO], [ZERO, half]])
    return QuadraticPair(a, ExactMatrix.identity(2))


def parabolic_quadric(trunc: int) -> Germ:
    return quadric_germ(parabolic_pair(), trunc)


# -- file formats -------------------------------------------------------------------


def loads_germ(text: str) -> Germ:
    nvars = order = None
    body: list[str] = []
    for raw in text.splitlines():
        line = strip_comment(raw).strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vars":
            nvars = int(parts[1])
        elif parts[0] == "order":
            order = int(parts[1])
        else:
            body.append(line)
    if nvars is None or order is None:
        raise ParseError("germ file needs 'vars' and 'order' headers")
    series = parse_term_lines(body, nvars, order)
    try:
        return Germ(nvars, series)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc


def dumps_germ(germ: Germ) -> str:
    return dumps_series(germ.R)


def load_germ(path) -> Germ:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_germ(fh.read())


def save_germ(germ: Germ, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_germ(germ))


def loads_kernel(text: str) -> KernelPolynomial:
    weight = None
    coeffs: dict[tuple[tuple[int, int], int], GaussianRational] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw).strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "weight":
            weight = int(parts[1])
            continue
        if len(parts) != 5:
            raise ParseError(f"kernel line {lineno}: expected 'a1 a2 j re im'")
        try:
            a1, a2, j = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ParseError(f"kernel line {lineno}: bad integer") from exc
        key = ((a1, a2), j)
        if key in coeffs:
            raise ParseError(f"kernel line {lineno}: duplicate key {key}")
        coeffs[key] = GaussianRational(
            parse_rational(parts[3]), parse_rational(parts[4])
        )
    if weight is None:
        raise ParseError("kernel file needs a 'weight' header")
    try:
        return KernelPolynomial(weight, coeffs)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc


def dumps_kernel(kernel: KernelPolynomial) -> str:
    lines = [f"weight {kernel.m}"]
    for (alpha, j), c in kernel.items():
        lines.append(f"{alpha[0]} {alpha[1]} {j} {c.re} {c.im}")
    return "\n".join(lines) + "\n"


def load_kernel(path) -> KernelPolynomial:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_kernel(fh.read())


def save_kernel(kernel: KernelPolynomial, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_kernel(kernel))
