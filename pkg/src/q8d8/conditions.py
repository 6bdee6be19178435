"""Trace-condition systems, the twenty-one hyperplanes, and the exhaustive
classification of subrepresentation characters.

Every proper nonzero subrepresentation character of the regular
representation yields a 6x5 integer system in the five reflection-class
parameters; the classification verifies that each solution space lies inside
one of the twenty-one hyperplanes (sixteen from the linear characters, five
coordinate hyperplanes).  A refutation would be recorded in the report, not
raised, so a counterexample is the most visible possible outcome.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .chars import CharacterTable, ClassFunction, character_of, decode_multiplicity
from .reflections import ReflectionClassSet

__all__ = [
    "HyperplaneCollision",
    "Hyperplane",
    "TraceConditionSystem",
    "SmoothnessReport",
    "ClassificationReport",
    "build_system",
    "solution_space",
    "hyperplane_set",
    "canonical_normal",
    "verify_complemma",
    "smoothness",
    "one_dim_rep_check",
    "ZERO_DIM_LEAF_BOUND",
]

# upper bound on zero-dimensional leaves carried on every smoothness report
ZERO_DIM_LEAF_BOUND = 10


class HyperplaneCollision(Exception):
    """Canonicalization merged two hyperplanes, or a side condition failed."""


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple       # primitive integer 5-vector, first nonzero entry > 0
    label: str          # "chiNN" for a linear character, "Rk=0" for a coordinate

    def evaluate(self, vector):
        return sum(n * v for n, v in zip(self.normal, vector))


@dataclass(frozen=True)
class TraceConditionSystem:
    matrix: tuple        # six rows of five integers
    row_labels: tuple    # ("E0", "E_R1", ..., "E_R5")
    source: tuple = None  # multiplicity vector when known

    def rows(self):
        return self.matrix


def canonical_normal(vec):
    """Scale an integer vector to primitive form with positive leading entry."""
    vec = tuple(int(v) for v in vec)
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g == 0:
        raise ValueError("zero vector has no canonical normal")
    vec = tuple(v // g for v in vec)
    lead = next(v for v in vec if v)
    return vec if lead > 0 else tuple(-v for v in vec)


def build_system(refl: ReflectionClassSet, chi: ClassFunction,
                 representatives=None, source=None) -> TraceConditionSystem:
    """The six trace conditions on c for a given integer class function.

    Row E0 has coefficient 2*chi(s_j) at class j; row E_i has 2*chi(-Id) on
    the diagonal and chi(s_i s_j) + chi(-s_i s_j) off it, products evaluated
    through the group tables.  The result does not depend on which member of
    each class the representatives are.
    """
    G = refl.group
    reps = tuple(representatives) if representatives is not None else refl.representatives
    if len(reps) != len(refl.labels):
        raise ValueError("need one representative per reflection class")
    minus = refl.minus_identity
    rows = [tuple(2 * chi.at_element(r) for r in reps)]
    labels = ["E0"]
    for i, ri in enumerate(reps):
        row = []
        for j, rj in enumerate(reps):
            if i == j:
                row.append(2 * chi.at_element(minus))
            else:
                p = G.mul(ri, rj)
                row.append(chi.at_element(p) + chi.at_element(G.mul(minus, p)))
        rows.append(tuple(row))
        labels.append("E_" + refl.labels[i])
    return TraceConditionSystem(tuple(rows), tuple(labels), source)


def _int_kernel(rows, cols):
    """Integer-scaled kernel basis of an integer matrix, one vector per free
    column, each with a positive entry at its free column and zeros at the
    other free columns.  Spans the exact rational kernel."""
    pool = [list(r) for r in rows if any(r)]
    pivots = []
    for c in range(cols):
        pr = None
        for idx, r in enumerate(pool):
            if r[c]:
                pr = idx
                break
        if pr is None:
            continue
        p = pool.pop(pr)
        pivots.append((c, p))
        pc = p[c]
        nxt = []
        for r in pool:
            rc = r[c]
            if rc:
                r = [x * pc - rc * y for x, y in zip(r, p)]
                if any(r):
                    nxt.append(r)
            else:
                nxt.append(r)
        pool = nxt
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for f in range(cols):
        if f in pivot_cols:
            continue
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for c, p in reversed(pivots):
            s = 0
            for j in range(c + 1, cols):
                if v[j]:
                    s += p[j] * v[j]
            v[c] = Fraction(-s, p[c])
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        basis.append(tuple(ints))
    return basis


def solution_space(system: TraceConditionSystem):
    """Canonical rational kernel basis (free-variable unit pattern)."""
    cols = len(system.matrix[0])
    out = []
    for v in _int_kernel(system.matrix, cols):
        lead = next(x for x in v if x)
        out.append(tuple(Fraction(x, lead) for x in v))
    return tuple(out)


def hyperplane_set(table: CharacterTable, refl: ReflectionClassSet):
    """The sixteen linear-character normals plus the five coordinate normals.

    Verifies the side conditions on every linear character (value 1 at -Id,
    product of values over the five classes equal to 1) and that
    canonicalization keeps all twenty-one distinct.
    """
    G = table.group
    cix = G.class_index()
    label_classes = [cix[r] for r in refl.representatives]
    minus_class = cix[refl.minus_identity]
    planes = []
    for i in range(len(table.rows)):
        if table.dims[i] != 1:
            continue
        row = table.rows[i]
        if row[minus_class] != 1:
            raise HyperplaneCollision("linear character %d is -1 at -Id" % i)
        vec = tuple(row[c] for c in label_classes)
        prod = 1
        for v in vec:
            prod *= v
        if prod != 1:
            raise HyperplaneCollision(
                "linear character %d has odd sign pattern on the reflections" % i)
        planes.append(Hyperplane(canonical_normal(vec), "chi%02d" % i))
    for j, lab in enumerate(refl.labels):
        normal = tuple(1 if k == j else 0 for k in range(len(refl.labels)))
        planes.append(Hyperplane(normal, "%s=0" % lab))
    if len({p.normal for p in planes}) != len(planes):
        raise HyperplaneCollision("canonicalization merged two hyperplanes")
    return tuple(planes)


@dataclass(frozen=True)
class SmoothnessReport:
    verdict: str                 # "Smooth" | "Singular"
    hyperplanes_hit: tuple       # labels, in canonical hyperplane order
    two_dim_leaves: int
    zero_dim_leaf_bound: int = ZERO_DIM_LEAF_BOUND

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "hyperplanes_hit": list(self.hyperplanes_hit),
            "two_dim_leaves": self.two_dim_leaves,
            "zero_dim_leaf_bound": self.zero_dim_leaf_bound,
        }


def smoothness(c, hyperplanes) -> SmoothnessReport:
    """Evaluate every normal at c: smooth iff none vanishes.  The number of
    two-dimensional leaves is the number of coordinate hyperplanes hit."""
    vec = c.vector
    hit = tuple(h.label for h in hyperplanes if h.evaluate(vec) == 0)
    leaves = sum(1 for h in hyperplanes
                 if h.label.endswith("=0") and h.evaluate(vec) == 0)
    verdict = "Smooth" if not hit else "Singular"
    return SmoothnessReport(verdict, hit, leaves)


def one_dim_rep_check(chi: ClassFunction, c, refl: ReflectionClassSet,
                      reflection_data=None) -> bool:
    """Whether sum over all reflections of c(s) chi(s) omega_s vanishes.

    This is the condition for the deformed algebra to act through the linear
    character chi with the coordinate generators acting by zero.  It is
    computed from the materialized forms, independently of the hyperplane
    normals.
    """
    data = reflection_data if reflection_data is not None else refl.data()
    total = None
    for lab, members in zip(refl.labels, refl.classes):
        cv = c[lab]
        for s in members:
            term = data[s].omega_s.scale(cv * chi.at_element(s))
            total = term if total is None else total + term
    return total.is_zero()


@dataclass
class ClassificationReport:
    candidates: int
    verified: int
    zero_solution_space: int
    per_hyperplane: dict
    failures: tuple
    elapsed_ms: int = 0

    def to_dict(self):
        return {
            "candidates": self.candidates,
            "verified": self.verified,
            "zero_solution_space": self.zero_solution_space,
            "per_hyperplane": dict(self.per_hyperplane),
            "failures": [{"index": i, "multiplicities": list(m)}
                         for i, m in self.failures],
        }


def _basis_systems(table: CharacterTable, refl: ReflectionClassSet):
    """Per irreducible row: the 6x5 system flattened to 30 integers.  The
    system of a multiplicity vector m is the m-weighted sum of these."""
    out = []
    for i in range(len(table.rows)):
        chi = table.row(i)
        sys = build_system(refl, chi)
        out.append(tuple(x for row in sys.matrix for x in row))
    return out


def _classify_range(args):
    """Verify candidates in [start, stop); returns mergeable partial tallies.

    Self-contained and picklable so ranges can fan out to worker processes.
    """
    start, stop, basis, normals, nlinear = args
    nrows = len(basis)
    defining = basis[-1]
    # split the 16 linear multiplicities into two 8-bit halves with
    # precomputed partial sums; candidate index = bits * 5 + m_defining
    def _half(rows):
        sums = [None] * 256
        sums[0] = (0,) * 30
        for h in range(1, 256):
            low = h & -h
            prev = sums[h ^ low]
            add = rows[7 - low.bit_length() + 1]
            sums[h] = tuple(p + a for p, a in zip(prev, add))
        return sums
    hi = _half([basis[i] for i in range(8)])
    lo = _half([basis[8 + i] for i in range(8)])
    dmult = [tuple(v * x for x in defining) for v in range(5)]
    per_plane = [0] * len(normals)
    zero_kernel = 0
    failures = []
    b = start // 5
    mv = start % 5
    base = None
    idx = start
    while idx < stop:
        if base is None or mv == 0:
            hs = hi[b >> 8]
            ls = lo[b & 255]
            base = [h + l for h, l in zip(hs, ls)]
        d = dmult[mv]
        flat = [x + y for x, y in zip(base, d)]
        rows = [flat[r * 5:r * 5 + 5] for r in range(6)]
        kernel = _int_kernel(rows, 5)
        if not kernel:
            zero_kernel += 1
        else:
            for p, normal in enumerate(normals):
                for v in kernel:
                    if sum(n * x for n, x in zip(normal, v)):
                        break
                else:
                    per_plane[p] += 1
                    break
            else:
                radices = (2,) * nlinear + (5,)
                m = []
                rest = idx
                for r in reversed(radices):
                    rest, digit = divmod(rest, r)
                    m.append(digit)
                failures.append((idx, tuple(reversed(m))))
        idx += 1
        mv += 1
        if mv == 5:
            mv = 0
            b += 1
    return per_plane, zero_kernel, failures


def verify_complemma(table: CharacterTable, refl: ReflectionClassSet,
                     hyperplanes=None, jobs: int = 1) -> ClassificationReport:
    """Exhaustively verify that every proper nonzero subrepresentation
    character has its solution space inside one of the hyperplanes.

    ``per_hyperplane`` counts, for candidates with a nonzero solution space,
    the first containing hyperplane in canonical order; candidates whose
    system has full column rank are tallied under ``zero_solution_space``
    (their solution space {0} lies in every hyperplane).  Counts are
    independent of the number of workers.
    """
    if hyperplanes is None:
        hyperplanes = hyperplane_set(table, refl)
    t0 = time.monotonic()
    basis = _basis_systems(table, refl)
    normals = tuple(h.normal for h in hyperplanes)
    nlinear = sum(1 for d in table.dims if d == 1)
    total = 1
    for d in table.dims:
        total *= d + 1
    first, last = 1, total - 1      # exclude the zero and the full vector
    jobs = max(1, int(jobs))
    bounds = [first + (last - first) * k // jobs for k in range(jobs + 1)]
    tasks = [(bounds[k], bounds[k + 1], basis, normals, nlinear)
             for k in range(jobs) if bounds[k] < bounds[k + 1]]
    if len(tasks) <= 1:
        parts = [_classify_range(t) for t in tasks]
    else:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=len(tasks)) as pool:
            parts = list(pool.map(_classify_range, tasks))
    per_plane = [0] * len(hyperplanes)
    zero_kernel = 0
    failures = []
    for pp, zk, fl in parts:
        per_plane = [a + b for a, b in zip(per_plane, pp)]
        zero_kernel += zk
        failures.extend(fl)
    failures.sort()
    elapsed = int((time.monotonic() - t0) * 1000)
    return ClassificationReport(
        candidates=last - first,
        verified=last - first - len(failures),
        zero_solution_space=zero_kernel,
        per_hyperplane={h.label: n for h, n in zip(hyperplanes, per_plane)},
        failures=tuple(failures),
        elapsed_ms=elapsed,
    )
