"""Strong, linear and weak non-decomposability on hom-enumerable instances.

A morphism ``h`` is

* strongly non-decomposable (snd) when it has no nontrivial join splitting:
  ``h = f v g`` forces ``f == 0``, ``g == 0`` or ``f == g``; equivalently
  everything below ``h`` is ``0`` or ``h`` itself;
* linearly non-decomposable (lnd) when the morphisms below it form a chain;
* weakly non-decomposable (wnd) when every splitting ``h = f v g`` has
  comparable halves.

Verdicts are exact: they are computed over whole hom-sets, never sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, product

from .category import (
    HOM_CAP, InverseCategory, NotEnumerable, leq, restriction_compatible, try_join,
)
from .laws import LawReport

FLAVORS = ("weak", "linear", "strong")


@dataclass(frozen=True)
class DecompClass:
    snd: bool
    lnd: bool
    wnd: bool

    def __post_init__(self):
        if (self.snd and not self.lnd) or (self.lnd and not self.wnd):
            raise AssertionError(f"implication chain snd => lnd => wnd broken: {self}")

    def flavor(self, flavor: str) -> bool:
        return {"strong": self.snd, "linear": self.lnd, "weak": self.wnd}[flavor]


@dataclass
class ConsistencyReport:
    flavor: str
    verdict: bool
    counterexample: dict | None = None
    checked: int = 0
    skipped: int = 0

    def __post_init__(self):
        if self.verdict != (self.counterexample is None):
            raise AssertionError("a counterexample is present exactly when the verdict is false")


class Classifier:
    """Caches hom-sets, below-sets and verdicts for one instance."""

    def __init__(self, C: InverseCategory, objects=None, cap: int = HOM_CAP):
        self.C = C
        self.cap = cap
        self.objs = list(C.objects() if objects is None else objects)
        self._homs: dict = {}
        self._below: dict = {}
        self._class: dict = {}

    def hom(self, a, b) -> list:
        key = (a, b)
        if key not in self._homs:
            size = getattr(self.C, "hom_size", None)
            if size is not None and size(a, b) > self.cap:
                raise NotEnumerable(f"hom-set has {size(a, b)} morphisms, above the cap {self.cap}")
            homs = self.C.hom(a, b)
            if len(homs) > self.cap:
                raise NotEnumerable(f"hom-set has {len(homs)} morphisms, above the cap {self.cap}")
            self._homs[key] = homs
        return self._homs[key]

    def homs(self):
        for a, b in product(self.objs, repeat=2):
            yield a, b, self.hom(a, b)

    def morphisms(self):
        for _, _, hom in self.homs():
            yield from hom

    def below_set(self, h) -> list:
        if h not in self._below:
            C = self.C
            self._below[h] = [g for g in self.hom(C.dom(h), C.cod(h)) if leq(C, g, h)]
        return self._below[h]

    def decompositions(self, h, pruned: bool = True):
        """Unordered pairs ``(f, g)`` whose join exists and equals ``h``.

        Halves of a join lie below it, so the pruned search only looks there.
        """
        C = self.C
        pool = self.below_set(h) if pruned else self.hom(C.dom(h), C.cod(h))
        for f, g in combinations_with_replacement(pool, 2):
            j = try_join(C, [f, g])
            if j is not None and j == h:
                yield f, g

    def is_snd(self, h, pruned: bool = True) -> bool:
        z = self.C.zero(self.C.dom(h), self.C.cod(h))
        return all(f == z or g == z or f == g for f, g in self.decompositions(h, pruned))

    def is_snd_by_below(self, h) -> bool:
        z = self.C.zero(self.C.dom(h), self.C.cod(h))
        return all(g == z or g == h for g in self.below_set(h))

    def is_lnd(self, h) -> bool:
        C = self.C
        return all(leq(C, f, g) or leq(C, g, f) for f, g in combinations(self.below_set(h), 2))

    def is_wnd(self, h, pruned: bool = True) -> bool:
        C = self.C
        return all(leq(C, f, g) or leq(C, g, f) for f, g in self.decompositions(h, pruned))

    def classify(self, h) -> DecompClass:
        if h not in self._class:
            snd = self.is_snd(h)
            if snd != self.is_snd_by_below(h):
                raise AssertionError(f"snd search and below-set test disagree on {self.C.show(h)}")
            self._class[h] = DecompClass(snd=snd, lnd=self.is_lnd(h), wnd=self.is_wnd(h))
        return self._class[h]

    def nd(self, h, flavor: str) -> bool:
        return self.classify(h).flavor(flavor)


def _classifier(C, clf):
    return clf if clf is not None else Classifier(C)


def below_set(C, h, clf=None) -> list:
    return _classifier(C, clf).below_set(h)


def is_snd(C, h, clf=None) -> bool:
    return _classifier(C, clf).is_snd(h)


def is_lnd(C, h, clf=None) -> bool:
    return _classifier(C, clf).is_lnd(h)


def is_wnd(C, h, clf=None) -> bool:
    return _classifier(C, clf).is_wnd(h)


def classify(C, h, clf=None) -> DecompClass:
    return _classifier(C, clf).classify(h)


def _check_flavor(flavor):
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}, not {flavor!r}")


def check_consistency(C: InverseCategory, flavor: str, clf: Classifier | None = None
                      ) -> ConsistencyReport:
    """Is ``f . h`` non-decomposable whenever ``h`` is (at the given flavor)?"""
    _check_flavor(flavor)
    clf = _classifier(C, clf)
    checked = 0
    for a, b, hom in clf.homs():
        for h in hom:
            if not clf.nd(h, flavor):
                continue
            for c in clf.objs:
                for f in clf.hom(b, c):
                    checked += 1
                    fh = C.compose(f, h)
                    if not clf.nd(fh, flavor):
                        return ConsistencyReport(flavor, False, {"h": h, "f": f, "composite": fh},
                                                 checked)
    return ConsistencyReport(flavor, True, None, checked)


def check_pattern_matching_property(C: InverseCategory, flavor: str,
                                    clf: Classifier | None = None) -> ConsistencyReport:
    """Does ``(f v g) . h`` select ``f . h`` or ``g . h`` for non-decomposable ``h``?

    Ranges over restriction-compatible pairs whose join exists; compatible
    pairs without a join are counted as skipped.
    """
    _check_flavor(flavor)
    clf = _classifier(C, clf)
    checked = skipped = 0
    nd_into = {a: [h for c in clf.objs for h in clf.hom(c, a) if clf.nd(h, flavor)]
               for a in clf.objs}
    for a, b, hom in clf.homs():
        for f, g in combinations_with_replacement(hom, 2):
            if not restriction_compatible(C, f, g):
                continue
            j = try_join(C, [f, g])
            if j is None:
                skipped += 1
                continue
            for h in nd_into[a]:
                checked += 1
                jh = C.compose(j, h)
                if jh != C.compose(f, h) and jh != C.compose(g, h):
                    return ConsistencyReport(
                        flavor, False, {"f": f, "g": g, "h": h, "composite": jh},
                        checked, skipped)
    return ConsistencyReport(flavor, True, None, checked, skipped)


def verify_theorem_bridge(C: InverseCategory, clf: Classifier | None = None) -> LawReport:
    """Consistency entails the pattern-matching property at every flavor, and
    conversely at the weak flavor; both sides are decided exactly."""
    clf = _classifier(C, clf)
    rep = LawReport("theorem-bridge", C.name)
    for flavor in FLAVORS:
        cons = check_consistency(C, flavor, clf).verdict
        pm = check_pattern_matching_property(C, flavor, clf).verdict
        rep.cases += 1
        rep.notes.append(f"{flavor}: consistent={cons} pattern-matching={pm}")
        rep.holds(f"{flavor} consistency => {flavor} pattern matching", (flavor,),
                  (not cons) or pm)
        if flavor == "weak":
            rep.holds("weak pattern matching => weak consistency", (flavor,), (not pm) or cons)
    return rep


def check_implication_chain(C: InverseCategory, clf: Classifier | None = None) -> LawReport:
    """snd => lnd => wnd on every morphism, with the pruned decomposition
    search cross-checked against the unpruned one."""
    clf = _classifier(C, clf)
    rep = LawReport("nd-implications", C.name)
    for h in clf.morphisms():
        rep.cases += 1
        k = clf.classify(h)
        rep.holds("snd => lnd", (h,), (not k.snd) or k.lnd)
        rep.holds("lnd => wnd", (h,), (not k.lnd) or k.wnd)
        rep.check("snd (pruned) = snd (full hom)", (h,), k.snd, clf.is_snd(h, pruned=False))
        rep.check("wnd (pruned) = wnd (full hom)", (h,), k.wnd, clf.is_wnd(h, pruned=False))
    return rep
