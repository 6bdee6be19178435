"""Symplectic reflections: detection, degenerate forms, labels, parameters.

A symplectic reflection is an element s with rank(s - Id) = 2.  For each one
we split V = V^s + (V^s)-perp (perp taken with respect to the symplectic
form) and materialize the degenerate bilinear form pulled back through the
projection onto the perp summand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .exact import GaussQ, Matrix, parse_rational, rational_str
from .group import REFLECTION_LABELS, FiniteMatrixGroup

__all__ = [
    "NotAReflection",
    "ParameterError",
    "find_reflections",
    "reflections_equal_noncentral_involutions",
    "fixed_space",
    "omega_s",
    "SymplecticReflection",
    "reflection_data",
    "ReflectionClassSet",
    "ReflectionParameter",
]


class NotAReflection(Exception):
    """rank(s - Id) is not 2."""


class ParameterError(Exception):
    """Malformed reflection-parameter input (bad keys or non-rational value)."""


def find_reflections(G: FiniteMatrixGroup):
    """Indices of all elements with rank(g - Id) = 2, ascending."""
    ident = Matrix.identity(G.dim)
    return tuple(i for i in range(G.n)
                 if (G.matrix(i) - ident).rank() == 2)


def reflections_equal_noncentral_involutions(G: FiniteMatrixGroup) -> bool:
    """Whether the reflection set coincides with the noncentral involutions."""
    refl = set(find_reflections(G))
    center = set(G.center())
    invol = {i for i in range(G.n)
             if i not in center and G.element_order(i) == 2}
    return refl == invol


def fixed_space(M: Matrix):
    """Canonical basis of ker(M - Id)."""
    return (M - Matrix.identity(M.rows)).kernel_basis()


def _perp_space(fixed, omega: Matrix):
    # v is perpendicular to x iff x^T omega v = 0 for every fixed basis vector
    n = omega.rows
    if not fixed:
        return tuple(tuple(GaussQ(1) if j == k else GaussQ(0) for j in range(n))
                     for k in range(n))
    pairing = Matrix(len(fixed), n, [x for row in fixed for x in row]) * omega
    return pairing.kernel_basis()


def omega_s(s: Matrix, omega: Matrix) -> Matrix:
    """The degenerate form omega(pi v, pi w), pi projecting onto (V^s)-perp.

    Basis independent by construction; raises NotAReflection unless
    rank(s - Id) = 2.
    """
    n = s.rows
    diff = s - Matrix.identity(n)
    if diff.rank() != 2:
        raise NotAReflection("rank(s - Id) = %d, want 2" % diff.rank())
    fixed = diff.kernel_basis()
    perp = _perp_space(fixed, omega)
    cols = list(fixed) + list(perp)
    basis = Matrix(n, n, [cols[j][i] for i in range(n) for j in range(n)])
    sel = Matrix(n, n, [GaussQ(1) if (i == j and i >= len(fixed)) else GaussQ(0)
                        for i in range(n) for j in range(n)])
    proj = basis * sel * basis.inverse()
    return proj.transpose() * omega * proj


@dataclass(frozen=True)
class SymplecticReflection:
    element_index: int
    fixed_space: tuple
    perp_space: tuple
    omega_s: Matrix


def reflection_data(G: FiniteMatrixGroup, omega: Matrix, index: int) -> SymplecticReflection:
    """Fixed/perp bases and the degenerate form for one reflection."""
    m = G.matrix(index)
    fixed = fixed_space(m)
    if len(fixed) != G.dim - 2:
        raise NotAReflection("element %d is not a symplectic reflection" % index)
    return SymplecticReflection(index, fixed, _perp_space(fixed, omega),
                                omega_s(m, omega))


class ReflectionClassSet:
    """The five labeled reflection classes with canonical representatives."""

    def __init__(self, group, omega, representatives, labels=REFLECTION_LABELS):
        if len(representatives) != len(labels):
            raise ValueError("one representative per label")
        self.group = group
        self.omega = omega
        self.labels = tuple(labels)
        self.representatives = tuple(representatives)
        cix = group.class_index()
        classes = group.conjugacy_classes()
        self.classes = tuple(classes[cix[r]].members for r in self.representatives)
        minus = group.negation_index(group.identity_index)
        if minus is None:
            raise ValueError("group does not contain -Id")
        self.minus_identity = minus
        members = [i for cl in self.classes for i in cl]
        if len(set(members)) != len(members):
            raise ValueError("representatives do not lie in distinct classes")

    @classmethod
    def standard(cls, group, omega, label_map):
        return cls(group, omega, [label_map[lab] for lab in REFLECTION_LABELS])

    def with_representatives(self, representatives):
        """Same classes, different member choices (for invariance checks)."""
        other = ReflectionClassSet(self.group, self.omega, representatives, self.labels)
        if other.classes != self.classes:
            raise ValueError("new representatives change the classes")
        return other

    def label_of_element(self, index: int):
        for lab, cl in zip(self.labels, self.classes):
            if index in cl:
                return lab
        return None

    def all_reflections(self):
        """All member indices across the five classes, ascending."""
        return tuple(sorted(i for cl in self.classes for i in cl))

    def data(self):
        """SymplecticReflection for every member, keyed by element index."""
        return {i: reflection_data(self.group, self.omega, i)
                for i in self.all_reflections()}


class ReflectionParameter:
    """A class function c on the reflection classes: one exact rational per label."""

    def __init__(self, values, labels=REFLECTION_LABELS):
        self.labels = tuple(labels)
        got = set(values)
        want = set(self.labels)
        if got - want:
            raise ParameterError("unknown keys: %s" % sorted(got - want))
        if want - got:
            raise ParameterError("missing keys: %s" % sorted(want - got))
        vec = []
        for lab in self.labels:
            v = values[lab]
            if isinstance(v, str):
                try:
                    v = parse_rational(v)
                except ValueError as e:
                    raise ParameterError(str(e)) from None
            elif isinstance(v, int):
                v = Fraction(v)
            elif not isinstance(v, Fraction):
                raise ParameterError("value for %s is not an exact rational" % lab)
            vec.append(v)
        self.vector = tuple(vec)

    @classmethod
    def constant(cls, value, labels=REFLECTION_LABELS):
        return cls({lab: Fraction(value) for lab in labels}, labels)

    @classmethod
    def from_json(cls, text: str, labels=REFLECTION_LABELS):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParameterError("invalid JSON: %s" % e) from None
        if not isinstance(obj, dict):
            raise ParameterError("parameter file must be a JSON object")
        for k, v in obj.items():
            if not isinstance(v, str):
                raise ParameterError(
                    "value for %s must be a rational string (no floats)" % k)
        return cls(obj, labels)

    def __getitem__(self, label):
        return self.vector[self.labels.index(label)]

    def to_dict(self):
        return {lab: rational_str(v) for lab, v in zip(self.labels, self.vector)}

    def __repr__(self):
        return "ReflectionParameter(%r)" % (self.to_dict(),)
