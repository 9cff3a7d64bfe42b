"""Standard graded polynomial rings over GF(p): monomials, forms, graded ideals.

Monomials of a fixed degree are kept in degree-reverse-lexicographic order,
largest first, and a form of degree d is a coefficient vector of length
dim R_d against that basis. Ideals are handled one degree at a time as row
spaces; no Groebner bases appear anywhere, every question is answered by
row reduction of the relevant graded piece.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from levalg import gfp
from levalg.gfp import PrimeField

LOWER_NAMES = ("x", "y", "z", "w")
UPPER_NAMES = ("X", "Y", "Z", "X4")
MAX_VARIABLES = 4


def graded_dimension(nvars: int, d: int) -> int:
    """dim of the degree-d piece of a polynomial ring in nvars variables."""
    if d < 0:
        return 0
    return math.comb(d + nvars - 1, d)


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def text(self, dual: bool = False) -> str:
        names = UPPER_NAMES if dual else LOWER_NAMES
        parts = []
        for e, name in zip(self.exponents, names):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self):
        return f"Monomial({self.text()})"


def _grevlex_key(exponents):
    return tuple(reversed(exponents))


class PolyRing:
    """A polynomial ring k[x..] over GF(p) with cached monomial combinatorics.

    Instances are obtained through polynomial_ring() so that the index and
    multiplication tables are shared across the whole process.
    """

    def __init__(self, nvars: int, p: int = gfp.DEFAULT_PRIME):
        if not 1 <= nvars <= MAX_VARIABLES:
            raise ValueError(f"supported variable counts are 1..{MAX_VARIABLES}, got {nvars}")
        self.nvars = nvars
        self.field = PrimeField(p)
        self.p = self.field.p
        self.var_names = LOWER_NAMES[:nvars]
        self.dual_names = UPPER_NAMES[:nvars]
        self._monomials: dict[int, tuple[tuple[int, ...], ...]] = {}
        self._index: dict[int, dict[tuple[int, ...], int]] = {}
        self._mult_tables: dict[tuple[int, int], np.ndarray] = {}

    def __repr__(self):
        return f"PolyRing(nvars={self.nvars}, p={self.p})"

    def dim(self, d: int) -> int:
        return graded_dimension(self.nvars, d)

    def monomials(self, d: int) -> tuple[tuple[int, ...], ...]:
        """Exponent tuples of degree d, grevlex order, largest first."""
        if d < 0:
            return ()
        if d not in self._monomials:
            exps = []
            for combo in combinations_with_replacement(range(self.nvars), d):
                e = [0] * self.nvars
                for i in combo:
                    e[i] += 1
                exps.append(tuple(e))
            exps.sort(key=_grevlex_key)
            self._monomials[d] = tuple(exps)
        return self._monomials[d]

    def monomial_index(self, d: int) -> dict[tuple[int, ...], int]:
        if d not in self._index:
            self._index[d] = {e: i for i, e in enumerate(self.monomials(d))}
        return self._index[d]

    def mult_index_table(self, a: int, b: int) -> np.ndarray:
        """table[i, j] = index (in degree a+b) of the product of monomial i
        of degree a with monomial j of degree b."""
        key = (a, b)
        if key not in self._mult_tables:
            ma, mb = self.monomials(a), self.monomials(b)
            idx = self.monomial_index(a + b)
            table = np.empty((len(ma), len(mb)), dtype=np.int64)
            for i, ea in enumerate(ma):
                for j, eb in enumerate(mb):
                    table[i, j] = idx[tuple(x + y for x, y in zip(ea, eb))]
            self._mult_tables[key] = table
        return self._mult_tables[key]

    def var_shift(self, d: int, k: int) -> np.ndarray:
        """Index map of multiplication by the k-th variable, R_d -> R_{d+1}."""
        return self.mult_index_table(d, 1)[:, k]

    # ---- form constructors -------------------------------------------------

    def form(self, degree: int, coeffs) -> "Form":
        return Form(self, degree, coeffs)

    def zero_form(self, degree: int) -> "Form":
        return Form(self, degree, np.zeros(self.dim(degree), dtype=np.int64))

    def one(self) -> "Form":
        return Form(self, 0, np.ones(1, dtype=np.int64))

    def monomial_form(self, exponents) -> "Form":
        exponents = tuple(exponents)
        d = sum(exponents)
        coeffs = np.zeros(self.dim(d), dtype=np.int64)
        coeffs[self.monomial_index(d)[exponents]] = 1
        return Form(self, d, coeffs)

    def variable(self, k: int) -> "Form":
        e = [0] * self.nvars
        e[k] = 1
        return self.monomial_form(e)

    def linear_form(self, coeffs) -> "Form":
        return Form(self, 1, coeffs)

    def random_form(self, rng: np.random.Generator, degree: int) -> "Form":
        return Form(self, degree, rng.integers(0, self.p, size=self.dim(degree), dtype=np.int64))

    def parse(self, text: str, dual: bool = False) -> "Form":
        return parse_form(self, text, dual=dual)


_RING_CACHE: dict[tuple[int, int], PolyRing] = {}


def polynomial_ring(nvars: int, p: int = gfp.DEFAULT_PRIME) -> PolyRing:
    key = (nvars, p)
    if key not in _RING_CACHE:
        _RING_CACHE[key] = PolyRing(nvars, p)
    return _RING_CACHE[key]


def monomial_basis(nvars: int, d: int) -> list[Monomial]:
    ring = polynomial_ring(nvars)
    return [Monomial(e) for e in ring.monomials(d)]


class Form:
    """A homogeneous polynomial stored as a coefficient vector."""

    __slots__ = ("ring", "degree", "coeffs")

    def __init__(self, ring: PolyRing, degree: int, coeffs):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        c = np.asarray(coeffs, dtype=np.int64).reshape(-1) % ring.p
        if c.shape[0] != ring.dim(degree):
            raise ValueError(
                f"degree {degree} needs {ring.dim(degree)} coefficients, got {c.shape[0]}"
            )
        self.ring = ring
        self.degree = degree
        self.coeffs = c

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Form)
            and self.ring is other.ring
            and self.degree == other.degree
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.degree, self.coeffs.tobytes()))

    def __add__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        return Form(self.ring, self.degree, (self.coeffs + other.coeffs) % self.ring.p)

    def __sub__(self, other: "Form") -> "Form":
        self._check_compatible(other)
        return Form(self.ring, self.degree, (self.coeffs - other.coeffs) % self.ring.p)

    def __neg__(self) -> "Form":
        return Form(self.ring, self.degree, (-self.coeffs) % self.ring.p)

    def __mul__(self, other):
        if isinstance(other, Form):
            return multiply(self, other)
        return Form(self.ring, self.degree, self.coeffs * (int(other) % self.ring.p) % self.ring.p)

    __rmul__ = __mul__

    def _check_compatible(self, other: "Form"):
        if self.ring is not other.ring or self.degree != other.degree:
            raise ValueError("forms live in different graded pieces")

    def terms(self):
        """Nonzero (Monomial, coefficient) pairs in canonical order."""
        mons = self.ring.monomials(self.degree)
        for i in np.nonzero(self.coeffs)[0]:
            yield Monomial(mons[i]), int(self.coeffs[i])

    def mult_matrix(self, from_degree: int) -> np.ndarray:
        """Matrix of g -> g*self as a map R_from -> R_{from+deg}, acting on
        row coefficient vectors from the right."""
        ring = self.ring
        table = ring.mult_index_table(self.degree, from_degree)
        out = np.zeros((ring.dim(from_degree), ring.dim(from_degree + self.degree)), dtype=np.int64)
        cols = np.arange(ring.dim(from_degree))
        for i in np.nonzero(self.coeffs)[0]:
            np.add.at(out, (cols, table[i]), int(self.coeffs[i]))
        return out % ring.p

    def text(self, dual: bool = False) -> str:
        return form_text(self, dual=dual)

    def __repr__(self):
        return f"Form({self.text()})"


def multiply(f: Form, g: Form) -> Form:
    if f.ring is not g.ring:
        raise ValueError("forms from different rings")
    ring = f.ring
    table = ring.mult_index_table(f.degree, g.degree)
    out = np.zeros(ring.dim(f.degree + g.degree), dtype=np.int64)
    for i in np.nonzero(f.coeffs)[0]:
        np.add.at(out, table[i], int(f.coeffs[i]) * g.coeffs % ring.p)
    return Form(ring, f.degree + g.degree, out % ring.p)


def shift_span(ring: PolyRing, basis: np.ndarray, d: int) -> np.ndarray:
    """Rows spanning R_1 * V for V given by basis rows inside R_d."""
    if basis.shape[0] == 0:
        return np.zeros((0, ring.dim(d + 1)), dtype=np.int64)
    blocks = []
    for k in range(ring.nvars):
        out = np.zeros((basis.shape[0], ring.dim(d + 1)), dtype=np.int64)
        out[:, ring.var_shift(d, k)] = basis
        blocks.append(out)
    return np.vstack(blocks)


def substitution_matrix(src: PolyRing, dst: PolyRing, mat, d: int) -> np.ndarray:
    """Matrix of the ring map sending variable i to the linear form given by
    row i of mat, restricted to degree d (src.dim(d) x dst.dim(d))."""
    m = np.asarray(mat, dtype=np.int64) % dst.p
    if m.shape != (src.nvars, dst.nvars):
        raise ValueError(f"substitution matrix must be {src.nvars}x{dst.nvars}")
    images = [Form(dst, 1, m[i]) for i in range(src.nvars)]
    out = np.zeros((src.dim(d), dst.dim(d)), dtype=np.int64)
    for row, exps in enumerate(src.monomials(d)):
        acc = dst.one()
        for i, e in enumerate(exps):
            for _ in range(e):
                acc = acc * images[i]
        out[row] = acc.coeffs
    return out


def substitute(f: Form, mat, dst: PolyRing) -> Form:
    return Form(dst, f.degree, f.coeffs @ substitution_matrix(f.ring, dst, mat, f.degree) % dst.p)


# ---- Hilbert functions -----------------------------------------------------


@dataclass(frozen=True)
class HilbertFunction:
    """Values h_0..h_dmax of a graded quotient, plus tail bookkeeping.

    is_artinian is set when some computed value is zero; for a quotient of a
    polynomial ring the function stays at zero afterwards. stabilized_value
    is filled in only when the last three computed values agree.
    """

    values: tuple[int, ...]
    is_artinian: bool
    stabilized_value: int | None

    @staticmethod
    def from_values(values) -> "HilbertFunction":
        vals = tuple(int(v) for v in values)
        artinian = any(v == 0 for v in vals[1:]) if len(vals) > 1 else False
        stab = vals[-1] if len(vals) >= 3 and vals[-1] == vals[-2] == vals[-3] else None
        return HilbertFunction(vals, artinian, stab)

    def first_difference(self) -> tuple[int, ...]:
        prev = 0
        out = []
        for v in self.values:
            out.append(v - prev)
            prev = v
        return tuple(out)

    def socle_degree(self) -> int:
        if not self.is_artinian:
            raise ValueError("socle degree only makes sense for Artinian quotients")
        nz = [d for d, v in enumerate(self.values) if v != 0]
        return nz[-1]

    def nonzero_values(self) -> tuple[int, ...]:
        if not self.is_artinian:
            return self.values
        return self.values[: self.socle_degree() + 1]


# ---- graded ideals ---------------------------------------------------------


class GradedIdeal:
    """A homogeneous ideal handled through its graded pieces.

    Three sources are supported and are mutually exclusive:
      * generators (+ optional power-of-the-maximal-ideal truncation degree),
        where piece d is built incrementally as R_1 * I_{d-1} + new generators;
      * an explicit dict of degree -> row basis with a degree from which the
        ideal fills the whole ring;
      * a callback producing spanning rows for any requested degree.
    Every piece is cached in reduced row echelon form.
    """

    def __init__(
        self,
        ring: PolyRing,
        generators=(),
        truncation: int | None = None,
        pieces: dict[int, np.ndarray] | None = None,
        full_from: int | None = None,
        piece_fn=None,
    ):
        self.ring = ring
        self.generators = tuple(generators)
        self.truncation = truncation
        self._explicit = None
        self._full_from = full_from
        self._piece_fn = piece_fn
        modes = sum([bool(self.generators) or truncation is not None, pieces is not None, piece_fn is not None])
        if modes > 1:
            raise ValueError("choose one of: generators, explicit pieces, piece callback")
        for g in self.generators:
            if g.ring is not ring:
                raise ValueError("generator from a different ring")
            if g.is_zero():
                raise ValueError("zero generator")
        if truncation is not None and truncation < 0:
            raise ValueError("truncation degree must be nonnegative")
        if pieces is not None:
            self._explicit = dict(pieces)
        self._cache: dict[int, tuple[np.ndarray, tuple[int, ...]]] = {}

    @staticmethod
    def from_generators(ring, generators, truncation=None) -> "GradedIdeal":
        return GradedIdeal(ring, generators=tuple(generators), truncation=truncation)

    @staticmethod
    def from_pieces(ring, pieces, full_from=None) -> "GradedIdeal":
        return GradedIdeal(ring, pieces=pieces, full_from=full_from)

    @staticmethod
    def from_piece_fn(ring, piece_fn) -> "GradedIdeal":
        return GradedIdeal(ring, piece_fn=piece_fn)

    def piece_with_pivots(self, d: int) -> tuple[np.ndarray, tuple[int, ...]]:
        if d < 0:
            return np.zeros((0, 0), dtype=np.int64), ()
        if d not in self._cache:
            self._cache[d] = self._compute_piece(d)
        return self._cache[d]

    def piece(self, d: int) -> np.ndarray:
        return self.piece_with_pivots(d)[0]

    def piece_dim(self, d: int) -> int:
        return self.piece(d).shape[0]

    def _compute_piece(self, d: int):
        ring = self.ring
        p = ring.p
        if self.truncation is not None and d >= self.truncation:
            full = np.eye(ring.dim(d), dtype=np.int64)
            return full, tuple(range(ring.dim(d)))
        if self._full_from is not None and d >= self._full_from:
            full = np.eye(ring.dim(d), dtype=np.int64)
            return full, tuple(range(ring.dim(d)))
        if self._explicit is not None:
            if d not in self._explicit:
                raise ValueError(f"piece of degree {d} was never materialized")
            return gfp.rref(gfp.as_matrix(self._explicit[d], cols=ring.dim(d)), p)
        if self._piece_fn is not None:
            rows = gfp.as_matrix(self._piece_fn(d), cols=ring.dim(d))
            return gfp.rref(rows, p)
        # generated: R_1 * I_{d-1} plus generators of degree d
        rows = [np.zeros((0, ring.dim(d)), dtype=np.int64)]
        if d >= 1:
            prev = self.piece(d - 1)
            if prev.shape[0]:
                rows.append(shift_span(ring, prev, d - 1))
        gens = [g.coeffs for g in self.generators if g.degree == d]
        if gens:
            rows.append(np.vstack(gens))
        return gfp.rref(np.vstack(rows), p)

    def contains(self, f: Form) -> bool:
        if f.ring is not self.ring:
            raise ValueError("form from a different ring")
        red, piv = self.piece_with_pivots(f.degree)
        return not np.any(gfp.reduce_mod_rowspace(f.coeffs.reshape(1, -1), red, piv, self.ring.p))

    def hilbert(self, dmax: int) -> HilbertFunction:
        vals = [self.ring.dim(d) - self.piece_dim(d) for d in range(dmax + 1)]
        return HilbertFunction.from_values(vals)

    def new_generator_dim(self, d: int) -> int:
        """Number of minimal generators of the ideal in degree d, i.e. the
        codimension of R_1 * I_{d-1} inside I_d."""
        if d == 0:
            return self.piece_dim(0)
        shifted = shift_span(self.ring, self.piece(d - 1), d - 1)
        return self.piece_dim(d) - gfp.rank(shifted, self.ring.p)

    def transformed(self, mat, dst: PolyRing | None = None) -> "GradedIdeal":
        """Apply the linear variable substitution given by mat to the ideal."""
        dst = dst or self.ring
        if self.generators or self.truncation is not None:
            gens = [substitute(g, mat, dst) for g in self.generators]
            return GradedIdeal(dst, generators=gens, truncation=self.truncation)
        if self._explicit is not None:
            pieces = {
                d: gfp.as_matrix(rows, cols=self.ring.dim(d))
                @ substitution_matrix(self.ring, dst, mat, d)
                % dst.p
                for d, rows in self._explicit.items()
            }
            return GradedIdeal.from_pieces(dst, pieces, full_from=self._full_from)
        raise ValueError("cannot transform an ideal defined by a piece callback")

    def text(self) -> str:
        return ideal_text(self)

    def __repr__(self):
        if self.generators or self.truncation is not None:
            return f"GradedIdeal({self.text()})"
        return f"GradedIdeal(<{self.ring.nvars} vars, by pieces>)"


def ideal_piece(ideal: GradedIdeal, d: int) -> np.ndarray:
    return ideal.piece(d)


def hilbert_function(ideal: GradedIdeal, dmax: int) -> HilbertFunction:
    return ideal.hilbert(dmax)


def validate_graded_sequence(ring: PolyRing, spaces, start_degree: int) -> bool:
    """Check that R_1 * V_d lands inside V_{d+1} for consecutive spaces.

    spaces[i] is a row basis of a subspace of R_{start_degree+i}. Raises
    ValueError naming the first degree where the inclusion fails.
    """
    mats = [gfp.as_matrix(v, cols=ring.dim(start_degree + i)) for i, v in enumerate(spaces)]
    for i in range(len(mats) - 1):
        d = start_degree + i
        shifted = shift_span(ring, gfp.rref(mats[i], ring.p)[0], d)
        if not gfp.in_rowspace(shifted, mats[i + 1], ring.p):
            raise ValueError(f"R_1 * V_{d} is not contained in V_{d + 1}")
    return True


# ---- text grammar ----------------------------------------------------------

_TOKEN_INT = re.compile(r"\d+")


class _Tokens:
    def __init__(self, text: str, names):
        self.toks: list[tuple[str, object]] = []
        ordered = sorted(names, key=len, reverse=True)
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch in "+-*^(),":
                self.toks.append((ch, ch))
                i += 1
                continue
            m = _TOKEN_INT.match(text, i)
            if m:
                self.toks.append(("int", int(m.group())))
                i = m.end()
                continue
            for name in ordered:
                if text.startswith(name, i):
                    self.toks.append(("var", names.index(name)))
                    i += len(name)
                    break
            else:
                raise ValueError(f"unexpected character {ch!r} in {text!r}")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else (None, None)

    def next(self):
        t = self.peek()
        self.pos += 1
        return t


class _Poly(dict):
    """Sparse degree -> coefficient-vector map used only while parsing."""


def _padd(ring, a: _Poly, b: _Poly, sign=1) -> _Poly:
    out = _Poly(a)
    for d, v in b.items():
        cur = out.get(d)
        out[d] = (v * sign % ring.p) if cur is None else (cur + sign * v) % ring.p
    return _Poly({d: v for d, v in out.items() if np.any(v)})


def _pmul(ring, a: _Poly, b: _Poly) -> _Poly:
    out = _Poly()
    for da, va in a.items():
        fa = Form(ring, da, va)
        for db, vb in b.items():
            prod = multiply(fa, Form(ring, db, vb))
            cur = out.get(da + db)
            out[da + db] = prod.coeffs if cur is None else (cur + prod.coeffs) % ring.p
    return _Poly({d: v for d, v in out.items() if np.any(v)})


def _ppow(ring, a: _Poly, n: int) -> _Poly:
    out = _Poly({0: np.ones(1, dtype=np.int64)})
    for _ in range(n):
        out = _pmul(ring, out, a)
    return out


class _FormParser:
    def __init__(self, ring: PolyRing, text: str, names):
        self.ring = ring
        self.toks = _Tokens(text, names)

    def parse(self) -> _Poly:
        poly = self._expr()
        kind, _ = self.toks.peek()
        if kind is not None:
            raise ValueError(f"trailing input near token {self.toks.peek()!r}")
        return poly

    def _expr(self) -> _Poly:
        kind, _ = self.toks.peek()
        sign = 1
        if kind in ("+", "-"):
            self.toks.next()
            sign = -1 if kind == "-" else 1
        acc = _padd(self.ring, _Poly(), self._term(), sign)
        while True:
            kind, _ = self.toks.peek()
            if kind not in ("+", "-"):
                return acc
            self.toks.next()
            acc = _padd(self.ring, acc, self._term(), -1 if kind == "-" else 1)

    def _term(self) -> _Poly:
        acc = self._factor()
        while True:
            kind, _ = self.toks.peek()
            if kind == "*":
                self.toks.next()
                acc = _pmul(self.ring, acc, self._factor())
            elif kind in ("int", "var", "("):
                acc = _pmul(self.ring, acc, self._factor())
            else:
                return acc

    def _factor(self) -> _Poly:
        kind, val = self.toks.next()
        if kind == "int":
            base = _Poly({0: np.array([val % self.ring.p], dtype=np.int64)})
        elif kind == "var":
            v = np.zeros(self.ring.nvars, dtype=np.int64)
            v[val] = 1
            base = _Poly({1: v})
        elif kind == "(":
            base = self._expr()
            kind2, _ = self.toks.next()
            if kind2 != ")":
                raise ValueError("unbalanced parenthesis")
        else:
            raise ValueError(f"unexpected token {kind!r}")
        kind, _ = self.toks.peek()
        if kind == "^":
            self.toks.next()
            ekind, e = self.toks.next()
            if ekind != "int":
                raise ValueError("exponent must be an integer")
            base = _ppow(self.ring, base, e)
        return base


def parse_form(ring: PolyRing, text: str, dual: bool = False) -> Form:
    names = ring.dual_names if dual else ring.var_names
    poly = _FormParser(ring, text, names).parse()
    if not poly:
        raise ValueError(f"{text!r} is the zero polynomial; a form needs a degree")
    if len(poly) != 1:
        degs = sorted(poly)
        raise ValueError(f"{text!r} is not homogeneous (degrees {degs})")
    [(d, coeffs)] = poly.items()
    return Form(ring, d, coeffs)


_TRUNCATION = re.compile(r"^(.*?)(?:(?<=[\s,+])|^)m\s*\^\s*(\d+)\s*$")


def parse_ideal(ring: PolyRing, text: str) -> GradedIdeal:
    """Parse a comma-separated generator list with an optional trailing
    '+ m^t' truncation marker, e.g. 'x^2, y^2 + m^4'."""
    truncation = None
    m = _TRUNCATION.match(text.strip())
    if m:
        head = m.group(1).strip()
        truncation = int(m.group(2))
        if head.endswith("+"):
            head = head[:-1]
        elif head.endswith(","):
            raise ValueError("truncation marker must be attached with '+'")
        text = head
    gens = []
    for chunk in _split_top_level(text):
        chunk = chunk.strip()
        if chunk:
            gens.append(parse_form(ring, chunk))
    if not gens and truncation is None:
        raise ValueError("empty ideal description")
    return GradedIdeal(ring, generators=gens, truncation=truncation)


def _split_top_level(text: str):
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            yield text[start:i]
            start = i + 1
    yield text[start:]


def form_text(f: Form, dual: bool = False) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for mono, coeff in f.terms():
        mono_txt = mono.text(dual=dual)
        if mono_txt == "1":
            parts.append(str(coeff))
        elif coeff == 1:
            parts.append(mono_txt)
        else:
            parts.append(f"{coeff}*{mono_txt}")
    return " + ".join(parts)


def ideal_text(ideal: GradedIdeal) -> str:
    if not ideal.generators and ideal.truncation is None:
        raise ValueError("only generator-based ideals have a text form")
    parts = [form_text(g) for g in ideal.generators]
    body = ", ".join(parts)
    if ideal.truncation is not None:
        marker = f"m^{ideal.truncation}"
        body = f"{body} + {marker}" if body else marker
    return body
