"""Finite matrix-group engine and the canonical order-32 symplectic group.

Groups are closed element sets with full multiplication/inverse tables.
Elements live in a canonical order (lexicographic on the flattened entry
sequence), so indices and every downstream report are stable across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import GaussQ, Matrix, kron

__all__ = [
    "ClosureExceedsCap",
    "NonInvertibleGenerator",
    "ConjugacyClass",
    "FiniteMatrixGroup",
    "close_group",
    "build_group",
    "preserves_form",
    "structure",
    "REFLECTION_LABELS",
]

REFLECTION_LABELS = ("R1", "R2", "R3", "R4", "R5")


class ClosureExceedsCap(Exception):
    """BFS closure produced more elements than the configured cap."""


class NonInvertibleGenerator(Exception):
    """A generator has determinant zero."""


@dataclass(frozen=True)
class ConjugacyClass:
    members: tuple

    @property
    def representative(self) -> int:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)


class FiniteMatrixGroup:
    """A finite group of exact matrices with precomputed Cayley tables."""

    def __init__(self, matrices):
        elems = sorted(matrices, key=lambda m: m.sort_key())
        if not elems:
            raise ValueError("empty element set")
        self.elements = tuple(elems)
        self.n = len(elems)
        self.dim = elems[0].rows
        self.index = {m: i for i, m in enumerate(elems)}
        ident = Matrix.identity(self.dim)
        if ident not in self.index:
            raise ValueError("element set does not contain the identity")
        self.identity_index = self.index[ident]
        mul = []
        for a in elems:
            row = []
            for b in elems:
                k = self.index.get(a * b)
                if k is None:
                    raise ValueError("element set is not closed under multiplication")
                row.append(k)
            mul.append(tuple(row))
        self.mul_table = tuple(mul)
        inv = [None] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if self.mul_table[i][j] == self.identity_index:
                    inv[i] = j
                    break
        if any(v is None for v in inv):
            raise ValueError("element without inverse")
        self.inv_table = tuple(inv)
        self._classes = None
        self._class_index = None

    @property
    def order(self) -> int:
        return self.n

    def matrix(self, i: int) -> Matrix:
        return self.elements[i]

    def matrices(self):
        return self.elements

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def inv(self, a: int) -> int:
        return self.inv_table[a]

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity_index:
            x = self.mul_table[x][i]
            k += 1
        return k

    def conjugacy_classes(self):
        """Partition into conjugation orbits, sorted by representative index."""
        if self._classes is None:
            seen = [False] * self.n
            classes = []
            for i in range(self.n):
                if seen[i]:
                    continue
                orbit = set()
                for h in range(self.n):
                    orbit.add(self.mul_table[self.mul_table[h][i]][self.inv_table[h]])
                members = tuple(sorted(orbit))
                for m in members:
                    seen[m] = True
                classes.append(ConjugacyClass(members))
            classes.sort(key=lambda c: c.representative)
            self._classes = tuple(classes)
            cix = [None] * self.n
            for k, c in enumerate(self._classes):
                for m in c.members:
                    cix[m] = k
            self._class_index = tuple(cix)
        return self._classes

    def class_index(self):
        """Element index -> position of its class in conjugacy_classes()."""
        self.conjugacy_classes()
        return self._class_index

    def center(self):
        out = []
        for i in range(self.n):
            row = self.mul_table[i]
            if all(row[j] == self.mul_table[j][i] for j in range(self.n)):
                out.append(i)
        return tuple(out)

    def subgroup_closure(self, seed):
        """Indices of the subgroup generated by the given element indices."""
        members = {self.identity_index}
        frontier = [self.identity_index]
        gens = sorted(set(seed))
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    p = self.mul_table[a][g]
                    if p not in members:
                        members.add(p)
                        new.append(p)
            frontier = new
        return tuple(sorted(members))

    def commutator_subgroup(self):
        comms = set()
        for a in range(self.n):
            for b in range(self.n):
                c = self.mul_table[self.mul_table[self.mul_table[a][b]][self.inv_table[a]]][self.inv_table[b]]
                comms.add(c)
        return self.subgroup_closure(comms)

    def abelianization_order(self) -> int:
        return self.n // len(self.commutator_subgroup())

    def negation_index(self, i: int):
        """Index of -matrix(i), or None if it is not an element."""
        return self.index.get(-self.elements[i])


def close_group(generators, cap: int = 10000) -> FiniteMatrixGroup:
    """Breadth-first closure of a generator set under multiplication.

    Raises ClosureExceedsCap once more than ``cap`` elements appear (so a
    typo'd generator of an infinite group fails fast) and
    NonInvertibleGenerator for singular input.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    dim = gens[0].rows
    for g in gens:
        if g.rows != g.cols or g.rows != dim:
            raise ValueError("generators must be square and of equal dimension")
        if g.det().is_zero():
            raise NonInvertibleGenerator("generator has determinant zero")
    ident = Matrix.identity(dim)
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                p = a * g
                if p not in seen:
                    if len(seen) >= cap:
                        raise ClosureExceedsCap(
                            "closure exceeded cap of %d elements" % cap)
                    seen.add(p)
                    new.append(p)
        frontier = new
    return FiniteMatrixGroup(seen)


def q8_matrices():
    """The generators i, j (and k) of the quaternion group in SL2."""
    i = GaussQ(0, 1)
    mi = GaussQ(0, -1)
    I = Matrix.from_rows([[i, 0], [0, mi]])
    J = Matrix.from_rows([[0, -1], [1, 0]])
    K = Matrix.from_rows([[0, mi], [mi, 0]])
    return I, J, K


def d8_matrices():
    """The rotation and flip generating the dihedral group of order 8 in O2."""
    rho = Matrix.from_rows([[0, -1], [1, 0]])
    sigma = Matrix.from_rows([[0, 1], [1, 0]])
    return rho, sigma


def build_group(cap: int = 10000):
    """Construct the order-32 central product of Q8 and D8 inside Sp4.

    Returns (group, omega, labels): the closed group on C^2 (x) C^2, the
    preserved symplectic form omega2 (x) Id2, and the element indices of the
    canonical reflection-class representatives under the labels R1..R5
    (I(x)rho, J(x)rho, K(x)rho, Id(x)sigma, Id(x)sigma*rho).
    """
    I, J, K = q8_matrices()
    rho, sigma = d8_matrices()
    id2 = Matrix.identity(2)
    gens = [kron(I, id2), kron(J, id2), kron(id2, rho), kron(id2, sigma)]
    G = close_group(gens, cap=cap)
    omega2 = Matrix.from_rows([[0, 1], [-1, 0]])
    omega = kron(omega2, id2)
    reps = (kron(I, rho), kron(J, rho), kron(K, rho),
            kron(id2, sigma), kron(id2, sigma * rho))
    labels = {lab: G.index[m] for lab, m in zip(REFLECTION_LABELS, reps)}
    return G, omega, labels


def preserves_form(group_or_matrices, omega: Matrix) -> bool:
    """True iff g^T omega g = omega for every element."""
    mats = (group_or_matrices.matrices()
            if isinstance(group_or_matrices, FiniteMatrixGroup)
            else group_or_matrices)
    return all(g.transpose() * omega * g == omega for g in mats)


def structure(G: FiniteMatrixGroup):
    """(center indices, commutator-subgroup indices, abelianization order)."""
    comm = G.commutator_subgroup()
    return G.center(), comm, G.n // len(comm)
