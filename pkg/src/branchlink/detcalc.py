"""Exact intersection-matrix determinants and link classification.

Builds the block intersection matrix of the partial resolution, evaluates
its determinant both by elimination and by the closed-form product of the
R-sequence, computes the surface determinant along two independent routes,
and classifies the link of the singularity (rational / integral homology
sphere / neither) by the gcd criterion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import _linalg
from .semigroup import CharacteristicData
from .qres import QResolutionData, RequiresG3, compute_qresolution


class MismatchedLengths(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


class LinkKind(str, Enum):
    NOT_QHS = "not_QHS"
    QHS = "QHS"
    ZHS = "ZHS"


@dataclass(frozen=True)
class LevelWitness:
    """gcd evidence at one level of the classification criterion."""

    k: int
    gcd_n_lcm: int
    gcd_quot_lcm: int
    gcd_quot_e: int | None


@dataclass(frozen=True)
class LinkClass:
    kind: LinkKind
    witnesses: tuple[LevelWitness, ...]
    noncoprime_pairs: tuple[tuple[int, int, int], ...]

    @property
    def is_qhs(self) -> bool:
        return self.kind is not LinkKind.NOT_QHS

    @property
    def is_zhs(self) -> bool:
        return self.kind is LinkKind.ZHS


class RationalMatrix:
    """Square symmetric matrix of exact rationals."""

    def __init__(self, rows):
        self.rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        self.n = len(self.rows)
        assert all(len(row) == self.n for row in self.rows)
        self._det = None

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def det(self) -> Fraction:
        if self._det is None:
            self._det = _linalg.det_exact(self.rows)
        return self._det

    def is_negative_definite(self) -> bool:
        try:
            return all(p < 0 for p in _linalg.sym_pivots(self.rows))
        except _linalg.ZeroPivot:
            return False


def build_intersection_matrix(qr: QResolutionData) -> RationalMatrix:
    """Block intersection matrix of the partial resolution.

    One row per exceptional component, levels in increasing order; the
    diagonal blocks are -a_k times the identity and each level-(k+1)
    component meets p_k consecutive level-k components with intersection
    number 1/d_{k(k+1)}.
    """
    g = qr.g
    offsets = [0]
    for k in range(1, g):
        offsets.append(offsets[-1] + qr.r[k])
    dim = offsets[-1]
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for k in range(1, g):
        for j in range(qr.r[k]):
            i = offsets[k - 1] + j
            rows[i][i] = -qr.a[k]
    for k in range(1, g - 1):
        w = Fraction(1, qr.d_edge[k])
        for j2 in range(qr.r[k + 1]):
            for t in range(qr.p[k]):
                j1 = j2 * qr.p[k] + t
                i1 = offsets[k - 1] + j1
                i2 = offsets[k] + j2
                rows[i1][i2] = w
                rows[i2][i1] = w
    return RationalMatrix(rows)


def det_exact(m) -> Fraction:
    """Exact determinant of a RationalMatrix or plain nested sequence."""
    if isinstance(m, RationalMatrix):
        return m.det()
    return _linalg.det_exact(m)


@dataclass(frozen=True)
class RSequence:
    """The sequence R_0, R_1, ..., built from (a_k), (p_k), (d_{k(k+1)}).

    values[l] = R_l; the recurrence -R_{l+1} = -a_{l+1} R_l +
    p_l R_{l-1} / d_{l(l+1)}^2 is checked against the direct signed-sum
    definition over non-adjacent index pairs at construction.
    """

    a: tuple[Fraction, ...]
    p: tuple[Fraction, ...]
    d: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __getitem__(self, l: int) -> Fraction:
        return self.values[l]


def _r_direct(a, p, d, l: int) -> Fraction:
    """R_l by enumerating non-adjacent subsets of {(k, k+1) : k < l}."""
    pairs = list(range(1, l))  # pair (k, k+1) identified with k
    total = Fraction(0)
    for mask in range(1 << len(pairs)):
        ks = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if any(k2 - k1 == 1 for k1, k2 in zip(ks, ks[1:])):
            continue
        covered = set()
        for k in ks:
            covered.update((k, k + 1))
        term = Fraction((-1) ** len(ks))
        for k in ks:
            term *= Fraction(p[k]) / (Fraction(d[k]) ** 2)
        for k in range(1, l + 1):
            if k not in covered:
                term *= Fraction(a[k])
        total += term
    return total


def r_sequence(a, p, d) -> RSequence:
    """R-sequence for self-intersections a[1..m], ratios p[1..m-1], orders d[1..m-1].

    Inputs are 1-indexed sequences (index 0 ignored); raises
    MismatchedLengths when the lengths disagree.
    """
    a = tuple(Fraction(x) for x in a)
    p = tuple(Fraction(x) for x in p)
    d = tuple(Fraction(x) for x in d)
    m = len(a) - 1
    if len(p) != m or len(d) != m:
        raise MismatchedLengths(
            f"lengths must satisfy len(p) = len(d) = len(a) - 1, "
            f"got len(a) = {len(a)}, len(p) = {len(p)}, len(d) = {len(d)}"
        )
    values = [Fraction(1)]
    if m >= 1:
        values.append(a[1])
    for l in range(1, m):
        nxt = a[l + 1] * values[l] - p[l] * values[l - 1] / d[l] ** 2
        values.append(nxt)
    for l in range(2, m + 1):
        assert values[l] == _r_direct(a, p, d, l), f"R_{l} recurrence/direct mismatch"
    return RSequence(a=a, p=p, d=d, values=tuple(values))


def _qr_r_sequence(qr: QResolutionData) -> RSequence:
    g = qr.g
    a = (Fraction(0),) + qr.a[1:]
    p = (Fraction(0),) + tuple(Fraction(x) for x in qr.p[1:])
    d = (Fraction(0),) + tuple(Fraction(x) for x in qr.d_edge[1:])
    return r_sequence(a, p, d)


def det_closed_form(qr: QResolutionData) -> Fraction:
    """det of the intersection matrix by the R-product formula (g >= 3).

    Also evaluates the explicit quotient n_g prod N_k^{r_{k-1}-r_k} /
    (N_1^{r_1} d prod d_{k(k+1)}^{r_k}) and asserts the two agree.
    """
    g = qr.g
    if g < 3:
        raise RequiresG3("closed-form determinant needs g >= 3")
    R = _qr_r_sequence(qr)
    sign = (-1) ** sum(qr.r[1:])
    det = sign * R[g - 1]
    for l in range(1, g - 1):
        det *= R[l] ** (qr.r[l] - qr.r[l + 1])
    explicit = Fraction(sign * qr.cd.n[g])
    for k in range(2, g):
        explicit *= Fraction(qr.N[k]) ** (qr.r[k - 1] - qr.r[k])
    explicit /= Fraction(qr.N[1]) ** qr.r[1]
    explicit /= qr.d_last
    for k in range(1, g - 1):
        explicit /= Fraction(qr.d_edge[k]) ** qr.r[k]
    assert det == explicit, "R-product and explicit determinant disagree"
    return det


def det_b_matrices(qr: QResolutionData, s: int) -> tuple[Fraction, Fraction]:
    """(det B_s, det B'_s): tail and head tridiagonal determinants.

    B_s is tridiagonal in -a_s, ..., -a_{g-1}; B'_s in -a_1, ..., -a_s; the
    off-diagonal entries are the 1/d_{k(k+1)}.
    """
    g = qr.g
    if not 1 <= s <= g - 1:
        raise IndexOutOfRange(f"s = {s} out of range 1..{g - 1}")

    def tridiag(ks):
        m = len(ks)
        rows = [[Fraction(0)] * m for _ in range(m)]
        for i, k in enumerate(ks):
            rows[i][i] = -qr.a[k]
        for i in range(m - 1):
            w = Fraction(1, qr.d_edge[ks[i]])
            rows[i][i + 1] = w
            rows[i + 1][i] = w
        return rows

    tail = _linalg.det_exact(tridiag(list(range(s, g))))
    head = _linalg.det_exact(tridiag(list(range(1, s + 1))))
    return tail, head


def census_order_product(qr: QResolutionData) -> int:
    """Product of the singular-point orders of the partial resolution."""
    prod = 1
    for pt in qr.census:
        prod *= pt.d ** pt.total
    return prod


def det_S(cd: CharacteristicData, qr: QResolutionData | None = None) -> int:
    """Determinant of the surface singularity (torsion order of the link).

    For g >= 3 evaluates the product formula over the levels and the
    independent route |det A| * d * prod(orders); both must agree and be a
    positive integer.  For g = 2 the singularity is Brieskorn-Pham with
    exponents (n_0, n_1, n_2) and the corresponding determinant is used,
    cross-checked against the blow-up route.
    """
    if qr is None:
        qr = compute_qresolution(cd)
    g = cd.g
    if g == 2:
        value = classify_brieskorn_pham(cd.n[0], cd.n[1], cd.n[2]).determinant
        blowup = abs(Fraction(qr.a[1])) * census_order_product(qr)
        assert blowup == value, "Brieskorn-Pham and blow-up determinants disagree"
        return value
    product = 1
    for k in range(1, g):
        dk = qr.N[k] // qr.M[k]
        exp1 = cd.beta[k] // qr.M[k] - qr.r[k]
        lcm_from_k = math.lcm(cd.n[k], cd.lcm_tail(k))
        assert qr.N[k] % lcm_from_k == 0
        exp2 = qr.r[k - 1] - qr.r[k]
        assert exp1 >= 0 and exp2 >= 0
        product *= dk ** exp1 * (qr.N[k] // lcm_from_k) ** exp2
    # census_order_product already includes the order at P
    other = abs(det_closed_form(qr)) * census_order_product(qr)
    assert other == product, "det(S) routes disagree"
    return product


def classify_link(cd: CharacteristicData) -> LinkClass:
    """Link classification by the gcd criterion on the exponents.

    QHS iff at every level one of the two gcds with the tail lcm is 1; ZHS
    iff the exponents n_0, ..., n_g are pairwise coprime and the middle
    quotients are coprime to their gcd levels.  Witness gcds are recorded
    for every level either way.
    """
    g = cd.g
    witnesses = []
    qhs = True
    for k in range(1, g):
        L = cd.lcm_tail(k)
        w1 = math.gcd(cd.n[k], L)
        w2 = math.gcd(cd.beta[k] // cd.e[k], L)
        w3 = math.gcd(cd.beta[k] // cd.e[k], cd.e[k]) if 2 <= k <= g - 1 else None
        witnesses.append(LevelWitness(k=k, gcd_n_lcm=w1, gcd_quot_lcm=w2, gcd_quot_e=w3))
        if w1 != 1 and w2 != 1:
            qhs = False
    pairs = tuple(
        (i, j, math.gcd(cd.n[i], cd.n[j]))
        for i in range(g + 1)
        for j in range(i + 1, g + 1)
        if math.gcd(cd.n[i], cd.n[j]) != 1
    )
    zhs = not pairs and all(
        w.gcd_quot_e == 1 for w in witnesses if w.gcd_quot_e is not None
    )
    if zhs:
        assert qhs
        kind = LinkKind.ZHS
    elif qhs:
        kind = LinkKind.QHS
    else:
        kind = LinkKind.NOT_QHS
    return LinkClass(kind=kind, witnesses=tuple(witnesses), noncoprime_pairs=pairs)


@dataclass(frozen=True)
class BPClassification:
    """Link data of x^a1 + y^a2 + z^a3 = 0."""

    exponents: tuple[int, int, int]
    kind: LinkKind
    genus: int
    determinant: int
    e: int
    alpha: tuple[int, int, int]
    d: tuple[int, int, int]


def classify_brieskorn_pham(a1: int, a2: int, a3: int) -> BPClassification:
    """Classify a Brieskorn-Pham surface link and compute genus/determinant."""
    if min(a1, a2, a3) < 2:
        raise ValueError("exponents must be at least 2")
    a = (a1, a2, a3)
    e = math.gcd(math.gcd(a1, a2), a3)
    alpha = tuple(
        math.gcd(a[j], a[l]) // e
        for j, l in ((1, 2), (0, 2), (0, 1))
    )
    num = e * e * alpha[0] * alpha[1] * alpha[2] - e * sum(alpha) + 2
    assert num % 2 == 0
    genus = num // 2
    d = []
    for i in range(3):
        aj, al = alpha[(i + 1) % 3], alpha[(i + 2) % 3]
        assert a[i] % (e * aj * al) == 0
        d.append(a[i] // (e * aj * al))
    determinant = e
    for i in range(3):
        determinant *= d[i] ** (e * alpha[i] - 1)
    pairwise = all(math.gcd(a[i], a[j]) == 1 for i in range(3) for j in range(i + 1, 3))
    qhs = (alpha == (1, 1, 1) and e == 2) or any(
        alpha[i] == alpha[j] == 1 and e == 1
        for i in range(3)
        for j in range(i + 1, 3)
    )
    if pairwise:
        kind = LinkKind.ZHS
        assert genus == 0 and determinant == 1
    elif qhs:
        kind = LinkKind.QHS
    else:
        kind = LinkKind.NOT_QHS
    return BPClassification(
        exponents=a,
        kind=kind,
        genus=genus,
        determinant=determinant,
        e=e,
        alpha=alpha,
        d=tuple(d),
    )
