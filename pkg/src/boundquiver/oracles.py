"""Independent reference computations for linear Nakayama algebras.

Used by completeness checks and the test suite; nothing here calls into
the resolution or translate machinery.
"""
from __future__ import annotations

from .dsl import ModuleSpec, QuiverSpec


def linear_order(spec: QuiverSpec) -> list[str] | None:
    """Vertices along the arrows if the quiver is a linearly oriented A_n, else None."""
    outs = {v: [a for a in spec.arrows if a.source == v] for v in spec.vertices}
    ins = {v: [a for a in spec.arrows if a.target == v] for v in spec.vertices}
    if any(len(x) > 1 for x in outs.values()) or any(len(x) > 1 for x in ins.values()):
        return None
    starts = [v for v in spec.vertices if not ins[v]]
    if len(starts) != 1:
        return None
    order = [starts[0]]
    while outs[order[-1]]:
        order.append(outs[order[-1]][0].target)
        if len(order) > len(spec.vertices):
            return None
    return order if len(order) == len(spec.vertices) else None


def is_linear_nakayama(spec: QuiverSpec) -> bool:
    return linear_order(spec) is not None and all(len(r.terms) == 1 for r in spec.relations)


def _live(spec: QuiverSpec, word: tuple[str, ...]) -> bool:
    dead = [r.terms[0][1] for r in spec.relations]
    for rel in dead:
        k = len(rel)
        for i in range(len(word) - k + 1):
            if word[i:i + k] == rel:
                return False
    return True


def interval_modules(spec: QuiverSpec) -> list[ModuleSpec]:
    """All uniserial interval representations ``[a..b]`` with a live path a -> b."""
    order = linear_order(spec)
    if order is None or not is_linear_nakayama(spec):
        raise ValueError("interval oracle needs a linearly oriented monomial A_n quiver")
    arrow_after = {a.source: a.name for a in spec.arrows}
    out = []
    for i, a in enumerate(order):
        word: tuple[str, ...] = ()
        for j in range(i, len(order)):
            if j > i:
                word = word + (arrow_after[order[j - 1]],)
                if not _live(spec, word):
                    break
            seg = order[i:j + 1]
            m = ModuleSpec(f"[{a}..{order[j]}]" if j > i else f"[{a}]",
                           {v: (1 if v in seg else 0) for v in spec.vertices})
            for x in word:
                m.maps[x] = [[1]]
            out.append(m)
    return out


def count_paths(spec: QuiverSpec) -> int:
    """Dimension of a monomial bound path algebra by direct path enumeration."""
    if any(len(r.terms) != 1 for r in spec.relations):
        raise ValueError("path counting needs monomial relations")
    total = len(spec.vertices)
    layer = [(a.name,) for a in spec.arrows]
    targets = {a.name: a.target for a in spec.arrows}
    while layer:
        layer = [w for w in layer if _live(spec, w)]
        total += len(layer)
        layer = [w + (a.name,) for w in layer for a in spec.arrows if a.source == targets[w[-1]]]
        if layer and len(layer[0]) > 64:
            raise ValueError("path count did not terminate within length 64")
    return total
