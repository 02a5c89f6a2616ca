"""Verifiers for the structural statements about cups, caps and words.

Every ``check_*`` function either returns quietly (possibly with a summary)
or raises ``Falsified`` carrying a reproducible witness.  Preconditions on
freeness raise ``NotFree``.

Geometric predicates on point sets ("p_i ends a t-cup", ...) are always
phrased for the slope function of the set.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .chains import (
    Chain,
    CupCapTables,
    Kind,
    _pair_lengths,
    chain_profile,
    is_free,
    tables,
)
from .core import NEG_INF, POS_INF, PairFunction, PointSet, random_point_set, slope_function
from .errors import ConvexNGon, Falsified, MalformedInput, NotFree, NotPeeled
from .extremal import largest_convex_subset
from .words import Pattern, all_words, matches

DEFAULT_BUDGET = 10**6

CLAIM_IDS = ("a_b", "neq2", "lemma_es", "gv", "qprime", "cstrings", "clast")

CORPUS_HEADER = "corpus v1"
# every corpus instance is random_point_set(seed, m, CORPUS_SPAN)
CORPUS_SPAN = 10_000


def require_free(f: PairFunction, k: int, l: int):
    report = is_free(f, k, l)
    if not report.free:
        raise NotFree(report, k, l)
    return report


# ---------------------------------------------------------------------------
# pair-level witness scan and injectivity


@dataclass(frozen=True)
class WitnessAB:
    x: int
    y: int
    xp: int
    yp: int


def _scan_ab(tab: CupCapTables, v, i: int, j: int) -> Optional[WitnessAB]:
    a, b, g, d = tab.alpha, tab.beta, tab.gamma, tab.delta
    x = next((t for t in range(1, tab.k + 1) if a[i][t] > v >= a[j][t]), None)
    y = next((t for t in range(1, tab.l + 1) if b[i][t] < v <= b[j][t]), None)
    xp = next((t for t in range(1, tab.k + 1) if g[j][t] < v <= g[i][t]), None)
    yp = next((t for t in range(1, tab.l + 1) if d[j][t] > v >= d[i][t]), None)
    if None in (x, y, xp, yp):
        return None
    return WitnessAB(x, y, xp, yp)


def lemma_ab_witness(
    f: PairFunction, k: int, l: int, i: int, j: int, tab: Optional[CupCapTables] = None
) -> WitnessAB:
    """Smallest x, y, x', y' separating f(i,j) between the tables of i and j.

    With ``tab`` given the freeness check is skipped; the caller vouches for it.
    """
    if not 1 <= i < j <= f.m:
        raise ValueError(f"need 1 <= i < j <= {f.m}")
    if tab is None:
        require_free(f, k + 2, l + 2)
        tab = tables(f, k, l)
    w = _scan_ab(tab, f.rows[i][j], i, j)
    if w is None:
        raise Falsified("a_b", (i, j))
    return w


def check_lemma_ab(f: PairFunction, k: int, l: int) -> int:
    """Scan every pair; returns the number of pairs checked."""
    require_free(f, k + 2, l + 2)
    tab = tables(f, k, l)
    count = 0
    for i, j in f.pairs():
        lemma_ab_witness(f, k, l, i, j, tab)
        count += 1
    return count


def check_injectivity(f: PairFunction, k: int, l: int) -> Optional[tuple[int, int]]:
    """First (i, j) with L_i == L_j or R_i == R_j, or None if all words differ."""
    require_free(f, k + 2, l + 2)
    lw, rw = all_words(tables(f, k, l))
    for words in (lw, rw):
        seen: dict[str, int] = {}
        for i, w in enumerate(words, 1):
            if w.letters in seen:
                return seen[w.letters], i
            seen[w.letters] = i
    return None


# ---------------------------------------------------------------------------
# point-set statements for a fixed n; words use k = n-2, l = n-3


def _point_tables(P: PointSet, n: int) -> tuple[PairFunction, CupCapTables]:
    if n < 4:
        raise ValueError("n must be at least 4")
    f = slope_function(P)
    require_free(f, n, n - 1)
    return f, tables(f, n - 2, n - 3)


def require_no_convex_ngon(P: PointSet, n: int) -> None:
    res = largest_convex_subset(P)
    if res.size >= n:
        raise ConvexNGon(n, res.witness)


def check_lemma_es(P: PointSet, n: int) -> None:
    """No index both ends an (n-1)-cup and starts an (n-2)-cap, nor ends an
    (n-2)-cap and starts an (n-1)-cup."""
    _, tab = _point_tables(P, n)
    for i in range(1, P.m + 1):
        ends_long_cup = tab.alpha[i][n - 2] < POS_INF
        starts_cap = tab.delta[i][n - 3] < POS_INF
        ends_cap = tab.beta[i][n - 3] > NEG_INF
        starts_long_cup = tab.gamma[i][n - 2] > NEG_INF
        if ends_long_cup and starts_cap:
            raise Falsified("lemma_es", (i, "end-cup/start-cap"))
        if ends_cap and starts_long_cup:
            raise Falsified("lemma_es", (i, "end-cap/start-cup"))


# (geometric predicate, pattern, side) per bullet; profile lengths count points
def _bullets(n: int):
    return (
        (lambda p, i: p.cup_end[i] >= n - 1, Pattern("", "β"), 0),
        (lambda p, i: p.cap_end[i] >= n - 2, Pattern("α", ""), 0),
        # gamma is a max with a -inf sentinel, so a long cup starting at i
        # surfaces at the front of R_i, not the back
        (lambda p, i: p.cup_start[i] >= n - 1, Pattern("δ", ""), 1),
        (lambda p, i: p.cap_start[i] >= n - 2, Pattern("", "γ"), 1),
        (lambda p, i: p.cup_end[i] < n - 2, Pattern("", "αα"), 0),
    )


def check_word_geometry(P: PointSet, n: int) -> list[tuple[bool, ...]]:
    """Five agreements per index between chain lengths and word shapes.

    Chain lengths come from a separate longest-chain pass, not from the
    tables the words are built from.  Entry ``[i-1][b]`` is True when
    bullet ``b+1`` agrees at index i.
    """
    f, tab = _point_tables(P, n)
    prof = chain_profile(f)
    lw, rw = all_words(tab)
    out = []
    for i in range(1, P.m + 1):
        words = (lw[i - 1], rw[i - 1])
        row = tuple(
            geo(prof, i) == matches(words[side], pat) for geo, pat, side in _bullets(n)
        )
        for b, ok in enumerate(row, 1):
            if not ok:
                raise Falsified("cstrings", (i, b))
        out.append(row)
    return out


def q_members(tab: CupCapTables, n: int) -> tuple[int, ...]:
    """Indices ending an (n-2)-cup and starting both an (n-2)-cap and an (n-1)-cup."""
    return tuple(
        q
        for q in range(1, tab.m + 1)
        if tab.alpha[q][n - 3] < POS_INF
        and tab.delta[q][n - 3] < POS_INF
        and tab.gamma[q][n - 2] > NEG_INF
    )


def check_clast(P: PointSet, n: int) -> None:
    """Every R_i of shape delta*gamma has L_i of shape beta*alpha-alpha.

    The input must already be peeled (no Q points left).
    """
    _, tab = _point_tables(P, n)
    if q_members(tab, n):
        raise NotPeeled(f"Q is non-empty: {list(q_members(tab, n))}")
    lw, rw = all_words(tab)
    r_pat, l_pat = Pattern("δ", "γ"), Pattern("β", "αα")
    for i in range(1, P.m + 1):
        if matches(rw[i - 1], r_pat) and not matches(lw[i - 1], l_pat):
            raise Falsified("clast", i, f"clast falsified at {i}: R={rw[i-1]} L={lw[i-1]}")


# ---------------------------------------------------------------------------
# chain enumeration for Q-signatures


class _Enumerator:
    """Exact-length chains of one kind starting (or ending) at a fixed index."""

    def __init__(self, f: PairFunction, kind: Kind):
        self.f = f
        self.kind = kind
        n = f.m
        # longest chain starting with pair (a, b), via the reversed function
        rev_best, _ = _pair_lengths(f.reversed(), kind)
        self.start_len = [[0] * (n + 1) for _ in range(n + 1)]
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                self.start_len[a][b] = rev_best[n + 1 - b][n + 1 - a]

    def _ok(self, prev, v) -> bool:
        return prev <= v if self.kind is Kind.CUP else prev >= v

    def starting(self, q: int, length: int) -> Iterator[tuple[int, ...]]:
        rows, n, slen = self.f.rows, self.f.m, self.start_len
        if length == 1:
            yield (q,)
            return

        def extend(seq: list[int]) -> Iterator[tuple[int, ...]]:
            if len(seq) == length:
                yield tuple(seq)
                return
            last = seq[-1]
            need = length - len(seq) + 1
            for h in range(last + 1, n + 1):
                if slen[last][h] < need:
                    continue
                if len(seq) >= 2 and not self._ok(rows[seq[-2]][last], rows[last][h]):
                    continue
                seq.append(h)
                yield from extend(seq)
                seq.pop()

        yield from extend([q])

    def count_starting(self, q: int, length: int) -> int:
        """Number of chains ``starting`` would yield, by DP over pairs."""
        if length == 1:
            return 1
        rows, n = self.f.rows, self.f.m
        # cnt[a][b]: chains of the current length starting with pair (a, b)
        cnt = {(a, b): 1 for a in range(1, n + 1) for b in range(a + 1, n + 1)}
        for _ in range(length - 2):
            nxt = {}
            for (a, b) in cnt:
                v = rows[a][b]
                nxt[a, b] = sum(
                    cnt[b, c] for c in range(b + 1, n + 1) if self._ok(v, rows[b][c])
                )
            cnt = nxt
        return sum(cnt[q, b] for b in range(q + 1, n + 1))


def _first_ending(f: PairFunction, q: int, length: int, kind: Kind) -> Optional[tuple[int, ...]]:
    n = f.m
    rev = _Enumerator(f.reversed(), kind)
    for chain in rev.starting(n + 1 - q, length):
        return tuple(sorted(n + 1 - c for c in chain))
    return None


@dataclass(frozen=True)
class QSignature:
    q: int
    V: Chain
    U: Chain
    W: Chain

    @property
    def u2(self) -> int:
        return self.U.indices[1]

    @property
    def w_last(self) -> int:
        return self.W.indices[-1]


@dataclass
class QReport:
    n: int
    m: int
    Q: tuple[int, ...]
    signatures: dict[int, list[QSignature]] = field(default_factory=dict)
    signature_counts: dict[int, int] = field(default_factory=dict)
    Qprime: tuple[int, ...] = ()
    mate_claim_ok: bool = True
    bound_ok: Optional[bool] = True
    truncated: bool = False
    violations: list[QSignature] = field(default_factory=list)

    @property
    def min_mate_gap(self) -> Optional[int]:
        """Smallest index difference between consecutive mates (None if < 2 mates)."""
        if len(self.Qprime) < 2:
            return None
        return min(b - a for a, b in zip(self.Qprime, self.Qprime[1:]))


def q_report(P: PointSet, n: int, budget: int = DEFAULT_BUDGET) -> QReport:
    """Q, every (U, W) pair of each Q point, and the mates they determine.

    Besides (n, n-1)-freeness, P must have no n points in convex position
    (``ConvexNGon`` otherwise): freeness alone does not exclude a convex
    n-gon made of a cup and a cap, and the mate property fails without it.

    The claim about a signature involves only U and W, so one V per q is
    fixed and the signatures of q are V x (all U) x (all W).  When the DP
    count of a q's signatures exceeds ``budget``, only the first ``budget``
    are examined and the report is marked truncated.
    """
    if n < 5:
        raise ValueError("n must be at least 5")
    f, tab = _point_tables(P, n)
    require_no_convex_ngon(P, n)
    report = QReport(n=n, m=P.m, Q=q_members(tab, n))
    cups = _Enumerator(f, Kind.CUP)
    caps = _Enumerator(f, Kind.CAP)
    mates = set()
    for q in report.Q:
        V = Chain(Kind.CUP, _first_ending(f, q, n - 2, Kind.CUP))
        total = caps.count_starting(q, n - 2) * cups.count_starting(q, n - 1)
        report.signature_counts[q] = total
        if total > budget:
            report.truncated = True
        pairs = itertools.product(caps.starting(q, n - 2), cups.starting(q, n - 1))
        sigs = []
        for u, w in itertools.islice(pairs, budget):
            sig = QSignature(q, V, Chain(Kind.CAP, u), Chain(Kind.CUP, w))
            sigs.append(sig)
            if sig.u2 == sig.w_last:
                mates.add(sig.u2)
            else:
                report.mate_claim_ok = False
                report.violations.append(sig)
        report.signatures[q] = sigs
    report.Qprime = tuple(sorted(mates))
    within = len(report.Qprime) * (n - 2) <= P.m
    if not within:
        report.bound_ok = False
    else:
        report.bound_ok = None if report.truncated else True
    return report


def peel(P: PointSet, n: int, budget: int = DEFAULT_BUDGET) -> tuple[PointSet, tuple[int, ...], int]:
    """Remove mates until no Q point is left.

    Returns the peeled set, the removed indices (1-based, w.r.t. P) and the
    number of removal rounds.
    """
    alive = list(range(1, P.m + 1))
    removed: list[int] = []
    rounds = 0
    while True:
        cur = P.subset(alive)
        rep = q_report(cur, n, budget)
        if not rep.Q:
            return cur, tuple(sorted(removed)), rounds
        if not rep.Qprime:
            raise Falsified("gv", rep.Q[0], "Q point without a mate")
        gone = {alive[i - 1] for i in rep.Qprime}
        removed.extend(gone)
        alive = [i for i in alive if i not in gone]
        rounds += 1


# ---------------------------------------------------------------------------
# instance corpus


def sample_free_instances(n: int, m_values, count: int, seed_start: int = 0, span: int = CORPUS_SPAN):
    """Rejection-sample ``count`` random sets with no n points in convex
    position whose slope function is (n, n-1)-free.

    Seeds are tried in increasing order from ``seed_start``; for each seed
    the size cycles through ``m_values``.  Returns (seed, m, n) triples.
    """
    m_values = list(m_values)
    out = []
    seed = seed_start
    while len(out) < count:
        m = m_values[seed % len(m_values)]
        P = random_point_set(seed, m, span)
        if is_free(slope_function(P), n, n - 1).free and largest_convex_subset(P).size < n:
            out.append((seed, m, n))
        seed += 1
    return out


def format_corpus(entries) -> str:
    lines = [CORPUS_HEADER]
    lines.extend(f"{s} {m} {n}" for s, m, n in entries)
    return "\n".join(lines) + "\n"


def parse_corpus(text: str) -> list[tuple[int, int, int]]:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != CORPUS_HEADER:
        raise MalformedInput(f"expected header {CORPUS_HEADER!r}")
    out = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or not all(p.lstrip("-").isdigit() for p in parts):
            raise MalformedInput(f"bad corpus line {ln!r}")
        out.append(tuple(int(p) for p in parts))
    return out


def corpus_instance(seed: int, m: int) -> PointSet:
    return random_point_set(seed, m, CORPUS_SPAN)


def removal_envelope(m: int, n: int):
    """m/(n-3): the geometric-series cap on points removed by ``peel``."""
    return Fraction(m, n - 3)
