"""Ramification data and the Hopf quiver with arrow labels (x, y, class, slot, j).

Arrows are generated implicitly: between vertices x and y with x^-1 y in a
ramified class C there are exactly r_C arrows, split into slots i (one per
irreducible summand of the class data) of width deg rho_C^(i).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .groups import Group, InputError, class_of, conjugacy_classes, parse_cycle_string


@dataclass(frozen=True)
class Ramification:
    """Formal sum of conjugacy classes with non-negative integer coefficients."""

    coeffs: tuple[tuple[int, int], ...]   # (class_index, r_C), sorted, r_C > 0

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "Ramification":
        items = []
        for k in sorted(d):
            if d[k] < 0:
                raise InputError(f"negative ramification coefficient {d[k]}")
            if d[k] > 0:
                items.append((k, d[k]))
        return cls(tuple(items))

    def r_of(self, class_index: int) -> int:
        for k, v in self.coeffs:
            if k == class_index:
                return v
        return 0

    @property
    def support(self) -> tuple[int, ...]:
        """K_r(G): the ramified class indices."""
        return tuple(k for k, _ in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def describe(self, g: Group) -> str:
        classes = conjugacy_classes(g)
        if self.is_zero():
            return "0"
        return " + ".join(f"{v}*[{g.element_name(classes[k].rep)}]"
                          for k, v in self.coeffs)


def parse_ramification(g: Group, spec: str) -> Ramification:
    """Parse "rep:count" pairs, e.g. "e:2" or "(0 1):1,(0 1 2):2"; "" is zero."""
    spec = (spec or "").strip()
    if not spec:
        return Ramification(())
    out: dict[int, int] = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise InputError(f"ramification entry {part!r} needs rep:count")
        rep_text, count_text = part.rsplit(":", 1)
        try:
            count = int(count_text)
        except ValueError:
            raise InputError(f"bad count in {part!r}") from None
        if count < 0:
            raise InputError(f"negative count in {part!r}")
        perm = parse_cycle_string(rep_text.strip(), g.degree)
        cls = class_of(g, g.find(perm))
        if cls in out:
            raise InputError(f"class of {rep_text.strip()!r} given twice")
        out[cls] = count
    return Ramification.from_dict(out)


class ArrowId(NamedTuple):
    """One arrow of the Hopf quiver: x --(cls, slot, j)--> y."""

    x: int
    y: int
    cls: int
    slot: int
    j: int


@dataclass(frozen=True)
class HopfQuiver:
    """Hopf quiver of (G, r) with slots sized by the chosen irreducibles."""

    group: Group
    ram: Ramification
    slot_degrees: tuple[tuple[int, ...], ...]   # per support position: degrees

    def class_slots(self, cls: int) -> tuple[int, ...]:
        pos = self.ram.support.index(cls)
        return self.slot_degrees[pos]

    @property
    def arrows_per_vertex(self) -> int:
        g = self.group
        classes = conjugacy_classes(g)
        return sum(v * classes[k].size for k, v in self.ram.coeffs)

    def arrow_count(self) -> int:
        return self.group.order * self.arrows_per_vertex

    def arrows_between(self, x: int, y: int) -> list[ArrowId]:
        g = self.group
        cls = class_of(g, g.mul(g.inv(x), y))
        if cls not in self.ram.support:
            return []
        return [ArrowId(x, y, cls, i, j)
                for i, d in enumerate(self.class_slots(cls))
                for j in range(d)]

    def arrows(self) -> Iterator[ArrowId]:
        """All arrows: vertices in canonical order, then class, member, slot, j."""
        g = self.group
        classes = conjugacy_classes(g)
        for x in range(g.order):
            for k, _ in self.ram.coeffs:
                for c in classes[k].elements:
                    y = g.mul(x, c)
                    for i, d in enumerate(self.slot_degrees[self.ram.support.index(k)]):
                        for j in range(d):
                            yield ArrowId(x, y, k, i, j)

    def to_dot(self) -> str:
        g = self.group
        lines = ["digraph hopfquiver {"]
        for x in range(g.order):
            lines.append(f'  v{x} [label="{g.element_name(x)}"];')
        for a in self.arrows():
            lines.append(f'  v{a.x} -> v{a.y} [label="({a.cls},{a.slot},{a.j})"];')
        lines.append("}")
        return "\n".join(lines)
