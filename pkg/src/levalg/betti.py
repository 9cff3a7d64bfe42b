"""Graded Betti numbers through the Koszul complex, plus table combinatorics.

beta_{i,k} of A = R/I is the degree-k piece of the i-th homology of the
Koszul complex on the variables tensored with A. Each differential in a
fixed internal degree is a block matrix of multiplication maps between the
graded pieces of A, so the whole computation is rank bookkeeping over GF(p).
The alternating column sums always reproduce H_A(t) * (1-t)^r, and that
identity is re-checked against the stored table whenever one is built.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from levalg import gfp
from levalg.artinian import GradedQuotient
from levalg.ring import GradedIdeal

_SCAN_LIMIT = 48


@dataclass(frozen=True)
class BettiTable:
    """Sparse table of graded Betti numbers; entries maps (i, k) to beta."""

    nvars: int
    entries: tuple[tuple[tuple[int, int], int], ...]

    @staticmethod
    def from_dict(nvars: int, data: dict) -> "BettiTable":
        cleaned = {(int(i), int(k)): int(b) for (i, k), b in data.items() if b}
        for (i, k), b in cleaned.items():
            if not (0 <= i <= nvars) or k < i or b < 0:
                raise ValueError(f"bad Betti entry beta_{{{i},{k}}} = {b}")
        return BettiTable(nvars, tuple(sorted(cleaned.items())))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def get(self, i: int, k: int) -> int:
        return self.as_dict().get((i, k), 0)

    def totals(self) -> tuple[int, ...]:
        out = [0] * (self.nvars + 1)
        for (i, _), b in self.entries:
            out[i] += b
        return tuple(out)

    def max_shift(self) -> int:
        return max((k for (_, k), _ in self.entries), default=0)

    def projective_dimension(self) -> int:
        return max((i for (i, _), _ in self.entries), default=0)

    def column_support(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(k for (ii, k), b in self.entries if ii == i and b))

    def is_level(self, socle_degree: int) -> bool:
        """Last-column support concentrated in the single shift j + pd."""
        pd = self.projective_dimension()
        support = self.column_support(pd)
        return support == (socle_degree + pd,)

    def display_rows(self) -> list[list[int]]:
        """Row d, column i holds beta_{i, i+d}."""
        depth = max((k - i for (i, k), _ in self.entries), default=0)
        rows = [[0] * (self.nvars + 1) for _ in range(depth + 1)]
        for (i, k), b in self.entries:
            rows[k - i][i] = b
        return rows

    def render(self) -> str:
        rows = self.display_rows()
        totals = self.totals()
        width = max(5, max((len(str(b)) for _, b in self.entries), default=1) + 2)
        head = "".join(f"{i:>{width}}" for i in range(self.nvars + 1))
        lines = [" " * 7 + head]
        for d, row in enumerate(rows):
            cells = "".join(f"{(b if b else '-')!s:>{width}}" for b in row)
            lines.append(f"{d:>5}: {cells}")
        lines.append("total: " + "".join(f"{t:>{width}}" for t in totals))
        return "\n".join(lines)

    def to_json(self) -> str:
        payload = {
            "r": self.nvars,
            "entries": [{"i": i, "k": k, "b": b} for (i, k), b in self.entries],
            "display": self.display_rows(),
            "totals": list(self.totals()),
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "BettiTable":
        payload = json.loads(text)
        data = {(e["i"], e["k"]): e["b"] for e in payload["entries"]}
        return BettiTable.from_dict(payload["r"], data)

    def __le__(self, other: "BettiTable") -> bool:
        return betti_leq(self, other)


def betti_leq(a: BettiTable, b: BettiTable) -> bool:
    """Entrywise comparison; True when a_{i,k} <= b_{i,k} everywhere."""
    if a.nvars != b.nvars:
        raise ValueError("tables over different variable counts")
    bd = b.as_dict()
    return all(bd.get(pos, 0) >= v for pos, v in a.entries)


# ---- construction via Koszul homology ---------------------------------------


def _koszul_rank(q: GradedQuotient, i: int, k: int) -> int:
    """Rank of the Koszul differential (K_i)_k -> (K_{i-1})_k over A."""
    r = q.ring.nvars
    if i < 1 or i > r:
        return 0
    h_src, h_dst = q.dim(k - i), q.dim(k - i + 1)
    if h_src == 0 or h_dst == 0:
        return 0
    src_sets = list(combinations(range(r), i))
    dst_index = {s: n for n, s in enumerate(combinations(range(r), i - 1))}
    mat = np.zeros((h_src * len(src_sets), h_dst * len(dst_index)), dtype=np.int64)
    for s_idx, subset in enumerate(src_sets):
        for t, j in enumerate(subset):
            rest = subset[:t] + subset[t + 1 :]
            block = q.mult_var(k - i, j)
            if t % 2:
                block = (-block) % q.p
            c = dst_index[rest] * h_dst
            mat[s_idx * h_src : (s_idx + 1) * h_src, c : c + h_dst] = block
    return gfp.rank(mat, q.p)


def _betti_at_kmax(q: GradedQuotient, kmax: int) -> dict[tuple[int, int], int]:
    r = q.ring.nvars
    entries: dict[tuple[int, int], int] = {}
    ranks: dict[tuple[int, int], int] = {}

    def rank_of(i, k):
        if (i, k) not in ranks:
            ranks[(i, k)] = _koszul_rank(q, i, k)
        return ranks[(i, k)]

    for k in range(kmax + 1):
        for i in range(0, r + 1):
            dim_ik = q.dim(k - i) * math.comb(r, i)
            if dim_ik == 0:
                continue
            b = dim_ik - rank_of(i, k) - (rank_of(i + 1, k) if i < r else 0)
            if b < 0:
                raise AssertionError(f"negative homology dimension at (i={i}, k={k})")
            if b:
                entries[(i, k)] = b
    if entries.get((0, 0)) != 1 or any(i == 0 and k > 0 for (i, k) in entries):
        raise AssertionError("quotient algebra must have a single degree-0 generator")
    return entries


def _hilbert_scan(q: GradedQuotient):
    """Values of H_A until they visibly stop changing, and the last degree
    with a nonzero first difference. Raises when no plateau appears."""
    values = [q.dim(0)]
    last_jump = 0
    for d in range(1, _SCAN_LIMIT + 1):
        values.append(q.dim(d))
        if values[d] != values[d - 1]:
            last_jump = d
        if values[d] == 0:
            return values, last_jump, True
        if d - last_jump >= 3:
            return values, last_jump, False
    raise ValueError(
        "Hilbert function never plateaued; pass kmax explicitly for quotients of dimension > 1"
    )


def betti_table(ideal: GradedIdeal, kmax: int | None = None) -> BettiTable:
    """Graded Betti table of R/I.

    For Artinian quotients the table is complete once the internal degree
    passes socle degree + number of variables. Otherwise the cutoff is
    guessed from the plateau of the Hilbert function and the computation is
    repeated two degrees higher; disagreement raises, since it means the
    cutoff clipped genuine homology.
    """
    q = GradedQuotient(ideal)
    r = q.ring.nvars
    values, last_jump, artinian = _hilbert_scan(q)
    if artinian:
        top = len([v for v in values if v]) - 1
        cut = kmax if kmax is not None else top + r
        entries = _betti_at_kmax(q, cut)
    else:
        cut = kmax if kmax is not None else last_jump + r + 2
        entries = _betti_at_kmax(q, cut)
        again = _betti_at_kmax(q, cut + 2)
        if entries != again:
            raise ValueError(
                f"Betti entries changed when the cutoff moved from {cut} to {cut + 2}; "
                "the quotient is not resolved within the scanned range"
            )
    table = BettiTable.from_dict(r, entries)
    tail = values[-1] if not artinian else 0
    if not euler_identity_holds(table, values, tail):
        raise AssertionError("alternating Betti sums disagree with the Hilbert series")
    return table


def euler_identity_holds(table: BettiTable, hilbert_values, tail: int = 0) -> bool:
    """Check sum_i (-1)^i beta_{i,k} = coefficient of t^k in H_A(t)(1-t)^r."""
    r = table.nvars
    values = list(hilbert_values)

    def h(d):
        if d < 0:
            return 0
        return values[d] if d < len(values) else tail

    top = max(table.max_shift(), len(values) - 1) + r
    data = table.as_dict()
    for k in range(top + 1):
        lhs = sum((-1) ** i * data.get((i, k), 0) for i in range(r + 1))
        rhs = sum((-1) ** i * math.comb(r, i) * h(k - i) for i in range(r + 1))
        if lhs != rhs:
            return False
    return True


# ---- consecutive cancellation and poset structure ---------------------------


@dataclass(frozen=True)
class CancellationResult:
    ok: bool
    steps: tuple[tuple[int, int], ...]
    reason: str | None

    def __bool__(self):
        return self.ok


def cancellation_path(source: BettiTable, target: BettiTable) -> CancellationResult:
    """Decompose source - target into consecutive cancellations.

    Each step removes 1 from beta_{i0,k0} and beta_{i0-1,k0}. Within a fixed
    internal degree the step multiplicities are forced, so the decomposition
    either exists uniquely or fails for a reportable reason.
    """
    if source.nvars != target.nvars:
        return CancellationResult(False, (), "tables over different variable counts")
    diff: dict[tuple[int, int], int] = {}
    for pos, b in source.entries:
        diff[pos] = diff.get(pos, 0) + b
    for pos, b in target.entries:
        diff[pos] = diff.get(pos, 0) - b
    if any(v < 0 for v in diff.values()):
        bad = next(pos for pos, v in diff.items() if v < 0)
        return CancellationResult(False, (), f"target exceeds source at {bad}")
    steps: list[tuple[int, int]] = []
    for k in sorted({k for (_, k), v in diff.items() if v}):
        column = [diff.get((i, k), 0) for i in range(source.nvars + 1)]
        carry = 0
        for i in range(source.nvars + 1):
            n = column[i] - carry
            if n < 0:
                return CancellationResult(
                    False, (), f"column k={k} cannot be paired into adjacent cancellations"
                )
            if n:
                steps.extend([(i + 1, k)] * n)
            carry = n
        if carry:
            return CancellationResult(False, (), f"column k={k} has a leftover of {carry}")
    return CancellationResult(True, tuple(steps), None)


def poset_minima(tables) -> list[BettiTable]:
    """Minimal elements under entrywise comparison, duplicates removed."""
    unique: list[BettiTable] = []
    for t in tables:
        if t not in unique:
            unique.append(t)
    out = []
    for t in unique:
        if not any(s is not t and betti_leq(s, t) for s in unique):
            out.append(t)
    return out


def level_betti_minima(tables, socle_degree: int) -> list[BettiTable]:
    """Minima of the sub-poset of tables whose quotients are level."""
    level = [t for t in tables if t.is_level(socle_degree)]
    return poset_minima(level)
