"""Character table and subrepresentation-character enumeration.

For the order-32 group the table is sixteen linear rows (the dual of the
elementary-abelian-2 abelianization) plus the trace of the defining
four-dimensional representation.  Completeness and orthogonality are verified
before the table is returned, so a wrong input group fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .group import FiniteMatrixGroup

__all__ = [
    "UnsupportedAbelianization",
    "NonIntegerTrace",
    "TableInconsistent",
    "ClassFunction",
    "CharacterTable",
    "linear_characters",
    "defining_character",
    "character_table",
    "subrep_count",
    "decode_multiplicity",
    "character_of",
    "enumerate_subrep_characters",
]


class UnsupportedAbelianization(Exception):
    """The abelianization is not elementary abelian of exponent 2."""


class NonIntegerTrace(Exception):
    """A trace of the defining representation is not a rational integer."""


class TableInconsistent(Exception):
    """A character-table invariant failed; the message names the check."""


class ClassFunction:
    """A function on the group constant on conjugacy classes."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteMatrixGroup, values):
        vals = tuple(values)
        if len(vals) != len(group.conjugacy_classes()):
            raise ValueError("one value per conjugacy class required")
        self.group = group
        self.values = vals

    def at_class(self, k: int):
        return self.values[k]

    def at_element(self, i: int):
        return self.values[self.group.class_index()[i]]

    def __eq__(self, other):
        return (isinstance(other, ClassFunction)
                and self.group is other.group
                and self.values == other.values)

    def __hash__(self):
        return hash(self.values)

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return "ClassFunction(%r)" % (self.values,)


def linear_characters(G: FiniteMatrixGroup):
    """All homomorphisms G -> {+1, -1}, lifted from the abelianization dual.

    Requires the abelianization to be elementary abelian of exponent 2
    (raises UnsupportedAbelianization otherwise).  Rows are sorted by their
    class-value tuples, descending, so the trivial character comes first.
    """
    comm = set(G.commutator_subgroup())
    n = G.n
    coset_of = [-1] * n
    reps = []
    for e in range(n):
        if coset_of[e] == -1:
            cid = len(reps)
            reps.append(e)
            for k in comm:
                coset_of[G.mul(e, k)] = cid
    q = len(reps)
    id_cid = coset_of[G.identity_index]
    qmul = [[coset_of[G.mul(reps[a], reps[b])] for b in range(q)] for a in range(q)]
    for a in range(q):
        if qmul[a][a] != id_cid:
            raise UnsupportedAbelianization(
                "abelianization has an element of order > 2")
    # coordinates of each coset over F2 with respect to a greedy basis
    coords = {id_cid: 0}
    nbasis = 0
    for c in range(q):
        if c not in coords:
            bit = 1 << nbasis
            nbasis += 1
            for d, bits in list(coords.items()):
                coords[qmul[c][d]] = bits | bit
    if len(coords) != q:
        raise UnsupportedAbelianization("coset coordinates do not span")
    classes = G.conjugacy_classes()
    chars = []
    for mask in range(1 << nbasis):
        vals = []
        for cl in classes:
            bits = coords[coset_of[cl.representative]]
            vals.append(1 if bin(mask & bits).count("1") % 2 == 0 else -1)
        chars.append(tuple(vals))
    chars.sort(reverse=True)
    return [ClassFunction(G, v) for v in chars]


def defining_character(G: FiniteMatrixGroup) -> ClassFunction:
    """Trace of the representative matrix, per class; must be integral."""
    vals = []
    for cl in G.conjugacy_classes():
        t = G.matrix(cl.representative).trace()
        if t.im or t.re.denominator != 1:
            raise NonIntegerTrace("non-integer trace on class of element %d"
                                  % cl.representative)
        vals.append(int(t.re))
    return ClassFunction(G, vals)


@dataclass(frozen=True)
class CharacterTable:
    group: FiniteMatrixGroup
    classes: tuple
    rows: tuple          # one tuple of integers per irreducible, per class
    dims: tuple          # row value at the identity class
    identity_class: int

    @property
    def nclasses(self) -> int:
        return len(self.classes)

    def row(self, i: int) -> ClassFunction:
        return ClassFunction(self.group, self.rows[i])

    def class_sizes(self):
        return tuple(c.size for c in self.classes)


def character_table(G: FiniteMatrixGroup) -> CharacterTable:
    """Linear rows plus the defining trace row, with all invariants checked."""
    lin = linear_characters(G)
    chi_v = defining_character(G)
    rows = [tuple(c.values) for c in lin] + [tuple(chi_v.values)]
    classes = G.conjugacy_classes()
    sizes = [c.size for c in classes]
    id_class = G.class_index()[G.identity_index]
    dims = tuple(r[id_class] for r in rows)
    if len(rows) != len(classes):
        raise TableInconsistent("row count %d != class count %d"
                                % (len(rows), len(classes)))
    if sum(d * d for d in dims) != G.n:
        raise TableInconsistent("sum of squared dimensions != group order")
    for i, ri in enumerate(rows):
        for j, rj in enumerate(rows):
            s = sum(sz * a * b for sz, a, b in zip(sizes, ri, rj))
            if s != (G.n if i == j else 0):
                raise TableInconsistent("row orthogonality fails at (%d, %d)" % (i, j))
    for k in range(len(classes)):
        for l in range(len(classes)):
            s = sum(r[k] * r[l] for r in rows)
            want = G.n // sizes[k] if k == l else 0
            if s != want:
                raise TableInconsistent("column orthogonality fails at (%d, %d)" % (k, l))
    return CharacterTable(G, classes, tuple(rows), dims, id_class)


def subrep_count(table: CharacterTable) -> int:
    """Number of proper nonzero subrepresentation characters of the regular
    representation: prod(dims_i + 1) minus the zero and the full vector."""
    total = 1
    for d in table.dims:
        total *= d + 1
    return total - 2


def decode_multiplicity(table: CharacterTable, idx: int):
    """idx -> multiplicity tuple, most-significant-first mixed radix, so the
    numeric order of idx equals lexicographic order of the tuples."""
    radices = [d + 1 for d in table.dims]
    m = [0] * len(radices)
    for j in range(len(radices) - 1, -1, -1):
        idx, m[j] = divmod(idx, radices[j])
    if idx:
        raise ValueError("index out of range")
    return tuple(m)


def character_of(table: CharacterTable, m) -> ClassFunction:
    """The class function sum_i m_i * row_i."""
    vals = [0] * table.nclasses
    for mi, row in zip(m, table.rows):
        if mi:
            for k, v in enumerate(row):
                vals[k] += mi * v
    return ClassFunction(table.group, vals)


def enumerate_subrep_characters(table: CharacterTable):
    """Yield (multiplicities, character) for every proper nonzero
    subrepresentation of the regular representation, in lexicographic order
    of the multiplicity tuple.  The zero vector and the full vector are both
    excluded (their condition systems vanish identically)."""
    total = 1
    for d in table.dims:
        total *= d + 1
    for idx in range(1, total - 1):
        m = decode_multiplicity(table, idx)
        yield m, character_of(table, m)
