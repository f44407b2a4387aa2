"""The interface of join inverse (rig) categories and the notions derived from it.

A model implements :class:`InverseCategory` (and :class:`RigStructure` when it
carries the tensor and disjointness-tensor structure).  Morphisms are plain
hashable values compared extensionally with ``==``.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from itertools import combinations
from typing import Hashable, Iterable, Sequence

Morphism = Hashable
Obj = Hashable


class CategoryError(ValueError):
    pass


class TypeMismatch(CategoryError):
    pass


class IncompatibleJoin(CategoryError):
    """Raised when a join is requested of a family that is not compatible."""


class NotEnumerable(CategoryError):
    """Raised when a hom-set cannot (or may not) be listed."""


HOM_CAP = 10**5


class InverseCategory(ABC):
    name: str = "category"

    # objects and hom-sets

    @abstractmethod
    def dom(self, f) -> Obj: ...

    @abstractmethod
    def cod(self, f) -> Obj: ...

    def objects(self) -> list[Obj]:
        """The objects over which exhaustive checks range."""
        raise NotEnumerable(f"{self.name} has no finite object list")

    def hom(self, a, b) -> list[Morphism]:
        raise NotEnumerable(f"{self.name} does not enumerate hom-sets")

    def enumerable(self) -> bool:
        try:
            self.objects()
        except NotEnumerable:
            return False
        return True

    # structure

    @abstractmethod
    def identity(self, a) -> Morphism: ...

    @abstractmethod
    def compose(self, g, f) -> Morphism:
        """``g . f``; raises TypeMismatch unless ``cod f == dom g``."""

    @abstractmethod
    def restriction(self, f) -> Morphism: ...

    @abstractmethod
    def inverse(self, f) -> Morphism: ...

    @abstractmethod
    def zero(self, a, b) -> Morphism: ...

    @abstractmethod
    def _join(self, family: Sequence, a, b) -> Morphism:
        """Join of a family already known to be inverse compatible."""

    def join(self, family: Iterable, a=None, b=None) -> Morphism:
        """Least upper bound of a compatible family of parallel morphisms.

        ``a`` and ``b`` give the hom-set; they are required for the empty family.
        The family must be pairwise inverse compatible.
        """
        family = list(family)
        if not family:
            if a is None or b is None:
                raise CategoryError("the empty join needs explicit dom and cod")
            return self.zero(a, b)
        a = self.dom(family[0]) if a is None else a
        b = self.cod(family[0]) if b is None else b
        for f in family:
            if self.dom(f) != a or self.cod(f) != b:
                raise TypeMismatch("join of non-parallel morphisms")
        for f, g in combinations(family, 2):
            if not inverse_compatible(self, f, g):
                raise IncompatibleJoin(f"{self.show(f)} and {self.show(g)} are not compatible")
        return self._join(family, a, b)

    # sampling

    def random_object(self, rng: random.Random) -> Obj:
        return rng.choice(self.objects())

    def random_morphism(self, rng: random.Random, a, b) -> Morphism:
        return rng.choice(self.hom(a, b))

    def show(self, f) -> str:
        return repr(f)

    def to_json(self, f):
        return self.show(f)


class RigStructure(ABC):
    """Tensor ``(x, 1)`` and disjointness tensor ``(+, 0)`` with a distributor."""

    @abstractmethod
    def unit_obj(self) -> Obj: ...

    @abstractmethod
    def zero_obj(self) -> Obj: ...

    @abstractmethod
    def tensor_obj(self, a, b) -> Obj: ...

    @abstractmethod
    def sum_obj(self, a, b) -> Obj: ...

    @abstractmethod
    def tensor(self, f, g) -> Morphism: ...

    @abstractmethod
    def sum(self, f, g) -> Morphism: ...

    @abstractmethod
    def inj_left(self, a, b) -> Morphism: ...

    @abstractmethod
    def inj_right(self, a, b) -> Morphism: ...

    @abstractmethod
    def associator(self, a, b, c) -> Morphism:
        """``(a x b) x c -> a x (b x c)``"""

    @abstractmethod
    def symmetry(self, a, b) -> Morphism: ...

    @abstractmethod
    def left_unitor(self, a) -> Morphism:
        """``1 x a -> a``"""

    @abstractmethod
    def right_unitor(self, a) -> Morphism:
        """``a x 1 -> a``"""

    @abstractmethod
    def sum_associator(self, a, b, c) -> Morphism: ...

    @abstractmethod
    def sum_symmetry(self, a, b) -> Morphism: ...

    @abstractmethod
    def sum_left_unitor(self, a) -> Morphism:
        """``0 + a -> a``"""

    @abstractmethod
    def distributor(self, a, b, c) -> Morphism:
        """``a x (b + c) -> (a x b) + (a x c)``"""

    def structural_isos(self, a, b, c) -> list[tuple[str, Morphism]]:
        return [
            ("associator", self.associator(a, b, c)),
            ("symmetry", self.symmetry(a, b)),
            ("left unitor", self.left_unitor(a)),
            ("right unitor", self.right_unitor(a)),
            ("sum associator", self.sum_associator(a, b, c)),
            ("sum symmetry", self.sum_symmetry(a, b)),
            ("sum left unitor", self.sum_left_unitor(a)),
            ("distributor", self.distributor(a, b, c)),
        ]


# ---------------------------------------------------------------------------
# derived notions


def _parallel(C: InverseCategory, f, g):
    if C.dom(f) != C.dom(g) or C.cod(f) != C.cod(g):
        raise TypeMismatch("morphisms are not parallel")


def leq(C: InverseCategory, f, g) -> bool:
    """``f <= g`` iff ``g . restriction(f) == f``."""
    _parallel(C, f, g)
    return C.compose(g, C.restriction(f)) == f


def restriction_compatible(C: InverseCategory, f, g) -> bool:
    _parallel(C, f, g)
    return C.compose(f, C.restriction(g)) == C.compose(g, C.restriction(f))


def inverse_compatible(C: InverseCategory, f, g) -> bool:
    return (restriction_compatible(C, f, g)
            and restriction_compatible(C, C.inverse(f), C.inverse(g)))


def disjoint(C: InverseCategory, f, g) -> bool:
    """Shared-source disjointness: ``restriction(f) . restriction(g) == 0``."""
    if C.dom(f) != C.dom(g):
        raise TypeMismatch("disjointness needs a shared source")
    a = C.dom(f)
    return C.compose(C.restriction(f), C.restriction(g)) == C.zero(a, a)


def range_disjoint(C: InverseCategory, f, g) -> bool:
    """Shared-target disjointness of images, via restrictions of the inverses."""
    if C.cod(f) != C.cod(g):
        raise TypeMismatch("range disjointness needs a shared target")
    b = C.cod(f)
    return (C.compose(C.restriction(C.inverse(f)), C.restriction(C.inverse(g)))
            == C.zero(b, b))


def is_total(C: InverseCategory, f) -> bool:
    return C.restriction(f) == C.identity(C.dom(f))


def is_total_iso(C: InverseCategory, f) -> bool:
    inv = C.inverse(f)
    return (C.compose(inv, f) == C.identity(C.dom(f))
            and C.compose(f, inv) == C.identity(C.cod(f)))


def try_join(C: InverseCategory, family, a=None, b=None):
    """The join, or None when the family is not compatible."""
    try:
        return C.join(family, a, b)
    except IncompatibleJoin:
        return None
