"""Truncated polynomial ring in z_1..z_n and their conjugates over Q(i).

A :class:`Series` stores a finite map from exponents to Gaussian-rational
coefficients together with a truncation order: every arithmetic result is
cut back to the minimum truncation of its operands, so rings of different
precision interoperate safely.

Exponents are tuples of length 2n: the first n slots are the powers of
z_1..z_n, the last n the powers of their conjugates.  For n = 2 the tuple
(s, t, h, r) is the exponent of z1^s z2^t zb1^h zb2^r.  Quite a lot of the
classification literature indexes the same monomial as [t s r h]; the two
helpers :func:`exp_from_bracket` / :func:`bracket_from_exp` are the single
authority for that correspondence.

Term iteration is always sorted in graded lexicographic order (total degree
first, then the exponent tuple), which makes every report built from a
series reproducible byte for byte.
"""

from __future__ import annotations
from typing import Iterable, Iterator, Mapping

from .errors import ParseError, PreconditionError
from .numeric import ZERO, GaussianRational, parse_rational

Exponent = tuple[int, ...]


def exp_from_bracket(t: int, s: int, r: int, h: int) -> Exponent:
    """Exponent of z1^s z2^t zb1^h zb2^r from a bracket index [t s r h]."""
    return (s, t, h, r)


def bracket_from_exp(e: Exponent) -> tuple[int, int, int, int]:
    """Bracket index [t s r h] of a two-variable exponent (s, t, h, r)."""
    s, t, h, r = e
    return (t, s, r, h)


def _grlex_key(e: Exponent):
    return (sum(e), e)


def _coerce_scalar(x) -> GaussianRational:
    return GaussianRational.coerce(x)


class Series:
    """Sparse truncated polynomial in (z, zbar) with exact coefficients."""

    __slots__ = ("nvars", "trunc", "terms")

    def __init__(self, nvars: int, trunc: int, terms: Mapping[Exponent, object] | None = None):
        if nvars < 1:
            raise PreconditionError("need at least one variable")
        if trunc < 0:
            raise PreconditionError("negative truncation")
        self.nvars = nvars
        self.trunc = trunc
        clean: dict[Exponent, GaussianRational] = {}
        if terms:
            width = 2 * nvars
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != width or any(k < 0 for k in e):
                    raise PreconditionError(f"bad exponent {e} for {nvars} variables")
                if sum(e) > trunc:
                    raise PreconditionError(
                        f"exponent {e} exceeds truncation {trunc}"
                    )
                c = _coerce_scalar(c)
                if c:
                    clean[e] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(nvars: int, trunc: int) -> "Series":
        return Series(nvars, trunc)

    @staticmethod
    def const(nvars: int, trunc: int, c) -> "Series":
        e = (0,) * (2 * nvars)
        return Series(nvars, trunc, {e: _coerce_scalar(c)})

    @staticmethod
    def variable(nvars: int, trunc: int, slot: int) -> "Series":
        """The generator in the given slot: 0..n-1 are z_j, n..2n-1 are zbar_j."""
        if not 0 <= slot < 2 * nvars:
            raise PreconditionError(f"variable slot {slot} out of range")
        e = tuple(1 if k == slot else 0 for k in range(2 * nvars))
        return Series(nvars, trunc, {e: 1})

    @staticmethod
    def generators(nvars: int, trunc: int) -> tuple["Series", ...]:
        """All 2n generators: (z1, .., zn, zb1, .., zbn)."""
        return tuple(Series.variable(nvars, trunc, k) for k in range(2 * nvars))

    def _make(self, terms: dict[Exponent, GaussianRational], trunc: int | None = None) -> "Series":
        s = Series.__new__(Series)
        s.nvars = self.nvars
        s.trunc = self.trunc if trunc is None else trunc
        s.terms = terms
        return s

    # -- inspection ------------------------------------------------------------

    def coeff(self, e: Iterable[int]) -> GaussianRational:
        """Stored coefficient at the exponent, or 0 (also for out-of-range)."""
        return self.terms.get(tuple(e), ZERO)

    def coeff4(self, s: int, t: int, h: int, r: int) -> GaussianRational:
        return self.terms.get((s, t, h, r), ZERO)

    def items(self) -> Iterator[tuple[Exponent, GaussianRational]]:
        """Terms in graded-lex order."""
        for e in sorted(self.terms, key=_grlex_key):
            yield e, self.terms[e]

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        """True iff the series equals its own conjugate termwise."""
        n = self.nvars
        for e, c in self.terms.items():
            mirror = e[n:] + e[:n]
            if self.terms.get(mirror, ZERO) != c.conj():
                return False
        return True

    def max_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=0)

    def homogeneous_part(self, d: int) -> "Series":
        return self._make({e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, new_trunc: int) -> "Series":
        """Drop all terms above ``new_trunc`` and lower the truncation."""
        if new_trunc > self.trunc:
            raise PreconditionError("cannot raise truncation; use with_trunc")
        return self._make(
            {e: c for e, c in self.terms.items() if sum(e) <= new_trunc}, new_trunc
        )

    def with_trunc(self, new_trunc: int) -> "Series":
        """Re-declare the truncation (for exact polynomials known in full)."""
        if new_trunc < self.max_degree():
            raise PreconditionError("declared truncation below stored degree")
        return self._make(dict(self.terms), new_trunc)

    # -- ring operations --------------------------------------------------------

    def _check_compat(self, other: "Series"):
        if self.nvars != other.nvars:
            raise PreconditionError("variable-count mismatch")

    def __add__(self, other):
        if not isinstance(other, Series):
            return self + Series.const(self.nvars, self.trunc, other)
        self._check_compat(other)
        trunc = min(self.trunc, other.trunc)
        out = {e: c for e, c in self.terms.items() if sum(e) <= trunc}
        for e, c in other.terms.items():
            if sum(e) > trunc:
                continue
            v = out.get(e, ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._make(out, trunc)

    __radd__ = __add__

    def __neg__(self):
        return self._make({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Series):
            return self - Series.const(self.nvars, self.trunc, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        self._check_compat(other)
        trunc = min(self.trunc, other.trunc)
        out: dict[Exponent, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            if d1 > trunc:
                continue
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > trunc:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, ZERO) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return self._make(out, trunc)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Series":
        c = _coerce_scalar(c)
        if not c:
            return self._make({})
        return self._make({e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int) or k < 0:
            raise PreconditionError("series power needs a nonnegative integer")
        r = Series.const(self.nvars, self.trunc, 1)
        for _ in range(k):
            r = r * self
        return r

    # -- conjugation and derivatives ---------------------------------------------

    def conj(self) -> "Series":
        """Swap each z_j power with the zbar_j power and conjugate coefficients."""
        n = self.nvars
        return self._make(
            {e[n:] + e[:n]: c.conj() for e, c in self.terms.items()}
        )

    def diff(self, slot: int) -> "Series":
        """Formal partial derivative with respect to a variable slot.

        Slots 0..n-1 are z_1..z_n, slots n..2n-1 their conjugates.  The
        truncation drops by one degree.
        """
        if not 0 <= slot < 2 * self.nvars:
            raise PreconditionError(f"unknown variable slot {slot}")
        out: dict[Exponent, GaussianRational] = {}
        for e, c in self.terms.items():
            k = e[slot]
            if k:
                e2 = e[:slot] + (k - 1,) + e[slot + 1 :]
                out[e2] = c * k
        return self._make(out, max(self.trunc - 1, 0))

    def dz(self, j: int) -> "Series":
        """d/dz_j with 1-based j, matching the usual subscript notation."""
        if not 1 <= j <= self.nvars:
            raise PreconditionError(f"variable index {j} out of range")
        return self.diff(j - 1)

    def dzbar(self, j: int) -> "Series":
        """d/dzbar_j with 1-based j."""
        if not 1 <= j <= self.nvars:
            raise PreconditionError(f"variable index {j} out of range")
        return self.diff(self.nvars + j - 1)

    # -- equality / display ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        # truncation is bookkeeping, not value: compare stored terms only
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0])))))

    def _monomial_str(self, e: Exponent) -> str:
        n = self.nvars
        parts = []
        for j in range(n):
            if e[j]:
                parts.append(f"z{j + 1}" + (f"^{e[j]}" if e[j] > 1 else ""))
        for j in range(n):
            if e[n + j]:
                parts.append(f"zb{j + 1}" + (f"^{e[n + j]}" if e[n + j] > 1 else ""))
        return "*".join(parts) if parts else "1"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*{self._monomial_str(e)}" for e, c in self.items()
        )

    def __repr__(self):
        return f"Series(n={self.nvars}, trunc={self.trunc}, {self})"


def subst_w(
    template: Mapping[tuple[Exponent, int], object],
    value: Series,
) -> Series:
    """Evaluate a polynomial in (z, zbar, w) at w = ``value``.

    ``template`` maps (exponent, w-power) to a coefficient; each w-power is
    replaced by the corresponding power of ``value`` and everything is summed
    at the truncation of ``value``.  The substituted series must have zero
    constant term, otherwise the truncation grading would be destroyed.
    """
    if value.coeff((0,) * (2 * value.nvars)):
        raise PreconditionError("substituted series must have zero constant term")
    powers: dict[int, Series] = {0: Series.const(value.nvars, value.trunc, 1)}

    def wpow(j: int) -> Series:
        if j not in powers:
            powers[j] = wpow(j - 1) * value
        return powers[j]

    acc = Series.zero(value.nvars, value.trunc)
    for (e, j), c in sorted(template.items(), key=lambda kv: (_grlex_key(kv[0][0]), kv[0][1])):
        if j < 0:
            raise PreconditionError("negative w-power in template")
        c = _coerce_scalar(c)
        if not c:
            continue
        mono = Series(value.nvars, value.trunc, {tuple(e): 1}) if sum(e) <= value.trunc else None
        if mono is None:
            continue
        acc = acc + (mono * wpow(j)).scale(c)
    return acc


# -- term-line file format -----------------------------------------------------
#
# One term per line: 2n exponent integers followed by the real and imaginary
# parts of the coefficient as rational literals.  For n = 2 the columns are
# ``s t h r`` (powers of z1 z2 zb1 zb2).  '#' starts a comment; order is
# irrelevant; duplicate exponents are an error.


def strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse_term_lines(lines: Iterable[str], nvars: int, trunc: int) -> Series:
    terms: dict[Exponent, GaussianRational] = {}
    width = 2 * nvars
    for lineno, raw in enumerate(lines, 1):
        body = strip_comment(raw).strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) != width + 2:
            raise ParseError(
                f"term line {lineno}: expected {width} exponents and 2 rationals"
            )
        try:
            e = tuple(int(p) for p in parts[:width])
        except ValueError as exc:
            raise ParseError(f"term line {lineno}: bad exponent") from exc
        if any(k < 0 for k in e):
            raise ParseError(f"term line {lineno}: negative exponent")
        if sum(e) > trunc:
            raise ParseError(f"term line {lineno}: degree exceeds declared order")
        if e in terms:
            raise ParseError(f"term line {lineno}: duplicate exponent {e}")
        c = GaussianRational(parse_rational(parts[width]), parse_rational(parts[width + 1]))
        terms[e] = c
    return Series(nvars, trunc, terms)


def format_term_lines(series: Series) -> list[str]:
    out = []
    for e, c in series.items():
        cols = [str(k) for k in e] + [str(c.re), str(c.im)]
        out.append(" ".join(cols))
    return out


def loads_series(text: str) -> Series:
    """Parse a standalone series file: ``vars n`` / ``order N`` / term lines."""
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
        raise ParseError("series file needs 'vars' and 'order' headers")
    return parse_term_lines(body, nvars, order)


def dumps_series(series: Series) -> str:
    lines = [f"vars {series.nvars}", f"order {series.trunc}"]
    lines.extend(format_term_lines(series))
    return "\n".join(lines) + "\n"


def load_series(path) -> Series:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_series(fh.read())


def save_series(series: Series, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_series(series))
