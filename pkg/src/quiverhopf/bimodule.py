"""The group-algebra Hopf bimodule on the arrow space of a Hopf quiver.

Left action: h . a_{y,x} = a_{hy,hx} (an index shift).  Right action:
a^{(i,j)}_{y,x} . h = sum_s rho^{(i)}(zeta_theta(h))[j,s] a^{(i,s)}_{yh,xh},
where theta is the coset index of x^-1 y and zeta the centralizer factor of
g_theta h.  Coefficient blocks depend only on (class, slot, zeta), so they
are stored densely per class and slot; the verifier exploits the same
factorization to cover every (g, arrow, h) triple exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import linalg
from .groups import Group, InputError, class_of
from .quiver import ArrowId, HopfQuiver
from .rsr import RSR

EXHAUSTIVE_TRIPLE_CAP = 10 ** 6


@dataclass
class Check:
    name: str
    ok: bool
    checked: int
    witness: Optional[str] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "checked": self.checked}
        if self.witness:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    """Outcome of a verifier run: per-axiom checks plus an overall flag."""

    checks: list[Check] = field(default_factory=list)
    mode: str = "exhaustive"

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, checked: int, witness: Optional[str] = None):
        self.checks.append(Check(name, ok, checked, witness))

    def first_failure(self) -> Optional[Check]:
        return next((c for c in self.checks if not c.ok), None)

    def to_json(self) -> dict:
        return {"passed": self.passed, "mode": self.mode,
                "checks": [c.to_json() for c in self.checks]}


def _transversal_for(g: Group, u: int) -> tuple[list[int], dict[int, int]]:
    """Right-coset transversal of Z_u scanning canonical order; g_0 = identity."""
    transversal: list[int] = []
    theta_of: dict[int, int] = {}
    for h in range(g.order):
        c = g.conj(u, h)
        if c not in theta_of:
            theta_of[c] = len(transversal)
            transversal.append(h)
    return transversal, theta_of


class HopfBimodule:
    """Arrow space of the quiver of an RSR with both actions and coactions."""

    def __init__(self, rsr: RSR, transversals: Optional[dict[int, list[int]]] = None):
        self.rsr = rsr
        self.group = rsr.group
        self.p = rsr.field.p
        self.quiver: HopfQuiver = rsr.quiver()
        g = self.group
        self.arrows: list[ArrowId] = list(self.quiver.arrows())
        self.arrow_index = {a: i for i, a in enumerate(self.arrows)}

        self.transversal: dict[int, list[int]] = {}
        self.theta_of: dict[int, dict[int, int]] = {}
        # zeta data per class: zl[theta, h] = centralizer element (local index),
        # tp[theta, h] = theta'
        self.zl: dict[int, np.ndarray] = {}
        self.tp: dict[int, np.ndarray] = {}
        # coefficient blocks per (class, slot): own copies, indexed by local z
        self.blocks: dict[tuple[int, int], list[np.ndarray]] = {}

        for cls in rsr.ram.support:
            u = rsr.u[cls]
            default_t, theta_of = _transversal_for(g, u)
            t = default_t
            if transversals and cls in transversals:
                t = [int(x) for x in transversals[cls]]
                if len(t) != len(default_t):
                    raise InputError("transversal has wrong length")
                z_elems = set(rsr.centralizer(cls).elements)
                for theta, (h1, h2) in enumerate(zip(default_t, t)):
                    if g.elements[g.mul(h2, g.inv(h1))] not in z_elems:
                        raise InputError(
                            f"coset mismatch at theta={theta} for class {cls}")
            self.transversal[cls] = t
            self.theta_of[cls] = theta_of
            z = rsr.centralizer(cls)
            nt = len(t)
            zl = np.empty((nt, g.order), dtype=np.int64)
            tp = np.empty((nt, g.order), dtype=np.int64)
            for theta in range(nt):
                for h in range(g.order):
                    w = g.mul(t[theta], h)
                    theta_p = theta_of[g.conj(u, w)]
                    zeta = g.mul(w, g.inv(t[theta_p]))
                    zl[theta, h] = z.find(g.element(zeta))
                    tp[theta, h] = theta_p
            self.zl[cls] = zl
            self.tp[cls] = tp
            for slot in range(len(rsr.irreps[cls])):
                rep = rsr.irrep(cls, slot)
                self.blocks[(cls, slot)] = [m.copy() for m in rep.matrices]

        self._perm_cache: dict[int, np.ndarray] = {}

    # -- structure maps -----------------------------------------------------

    def left_action(self, h: int, a: ArrowId) -> ArrowId:
        g = self.group
        return ArrowId(g.mul(h, a.x), g.mul(h, a.y), a.cls, a.slot, a.j)

    def right_action(self, a: ArrowId, h: int) -> list[tuple[ArrowId, int]]:
        g = self.group
        c = g.mul(g.inv(a.x), a.y)
        theta = self.theta_of[a.cls][c]
        zloc = int(self.zl[a.cls][theta, h])
        block = self.blocks[(a.cls, a.slot)][zloc]
        xh, yh = g.mul(a.x, h), g.mul(a.y, h)
        return [(ArrowId(xh, yh, a.cls, a.slot, s), int(block[a.j, s]))
                for s in range(block.shape[1]) if block[a.j, s]]

    def coact_left(self, a: ArrowId) -> int:
        return a.y

    def coact_right(self, a: ArrowId) -> int:
        return a.x

    def left_perm(self, h: int) -> np.ndarray:
        """Left action as a permutation of arrow indices."""
        if h not in self._perm_cache:
            perm = np.empty(len(self.arrows), dtype=np.int64)
            for i, a in enumerate(self.arrows):
                perm[i] = self.arrow_index[self.left_action(h, a)]
            self._perm_cache[h] = perm
        return self._perm_cache[h]

    def dim(self) -> int:
        return len(self.arrows)

    def to_json(self) -> dict:
        g = self.group
        doc = {
            "prime": self.p,
            "arrows": [{"x": g.element_name(a.x), "y": g.element_name(a.y),
                        "class": a.cls, "slot": a.slot, "j": a.j}
                       for a in self.arrows],
            "zeta_blocks": [],
        }
        for cls in self.rsr.ram.support:
            z = self.rsr.centralizer(cls)
            for h in range(g.order):
                entry = {"class": cls, "h": g.element_name(h), "thetas": []}
                for theta in range(len(self.transversal[cls])):
                    zloc = int(self.zl[cls][theta, h])
                    entry["thetas"].append({
                        "theta": theta,
                        "theta_prime": int(self.tp[cls][theta, h]),
                        "zeta": z.element_name(zloc),
                        "blocks": [self.blocks[(cls, slot)][zloc].tolist()
                                   for slot in range(len(self.rsr.irreps[cls]))],
                    })
                doc["zeta_blocks"].append(entry)
        return doc


def build_bimodule(rsr: RSR,
                   transversals: Optional[dict[int, list[int]]] = None) -> HopfBimodule:
    return HopfBimodule(rsr, transversals)


def _elt(g: Group, i: int) -> str:
    return g.element_name(i)


def verify_bimodule(m: HopfBimodule, exhaustive: Optional[bool] = None,
                    samples: int = 100_000, seed: int = 0) -> Report:
    """Check the Hopf-bimodule axioms.

    Exhaustive mode factors the axioms through the action tables, covering
    every (g, arrow, h) triple; sampled mode draws seeded triples and checks
    them pointwise through the public maps.
    """
    g = m.group
    n = g.order
    narrows = len(m.arrows)
    if exhaustive is None:
        exhaustive = n * narrows <= EXHAUSTIVE_TRIPLE_CAP
    report = Report(mode="exhaustive" if exhaustive else f"sampled({samples})")
    p = m.p

    if exhaustive:
        # unit: identity acts trivially on both sides
        ok = True
        witness = None
        for cls in m.rsr.ram.support:
            if not (m.zl[cls][:, 0] == 0).all() or \
               not (m.tp[cls][:, 0] == np.arange(m.zl[cls].shape[0])).all():
                ok, witness = False, f"class {cls}: zeta(.,e) not trivial"
                break
        if ok and narrows and not (m.left_perm(0) == np.arange(narrows)).all():
            ok, witness = False, "identity left action is not trivial"
        report.add("unit", ok, narrows * 2 + 1, witness)

        # left associativity: P_{gh} = P_g . P_h on all arrows
        ok, witness, count = True, None, 0
        for a in range(n):
            pa = m.left_perm(a)
            for b in range(n):
                count += narrows
                if not (m.left_perm(g.mul(a, b)) == pa[m.left_perm(b)]).all():
                    ok, witness = False, f"(g,h)=({_elt(g,a)},{_elt(g,b)})"
                    break
            if not ok:
                break
        report.add("left-associativity", ok, count, witness)

        # right associativity: zeta cocycle at block level, all (theta, g, h)
        ok, witness, count = True, None, 0
        for cls in m.rsr.ram.support:
            zl, tp = m.zl[cls], m.tp[cls]
            nslots = len(m.rsr.irreps[cls])
            for theta in range(zl.shape[0]):
                for a in range(n):
                    tpa = int(tp[theta, a])
                    for b in range(n):
                        ab = g.mul(a, b)
                        if tp[theta, ab] != tp[tpa, b]:
                            ok, witness = False, f"theta'={theta} class {cls}"
                            break
                        for slot in range(nslots):
                            blocks = m.blocks[(cls, slot)]
                            lhs = blocks[int(zl[theta, ab])]
                            rhs = linalg.matmul(blocks[int(zl[theta, a])],
                                                blocks[int(zl[tpa, b])], p)
                            count += 1
                            if not (lhs == rhs).all():
                                ok, witness = False, \
                                    f"class {cls} slot {slot} theta {theta} " \
                                    f"g={_elt(g,a)} h={_elt(g,b)}"
                                break
                        if not ok:
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("right-associativity", ok, count, witness)

        # bimodule commutation and coaction grading: index arithmetic on all
        # (g, arrow, h); coefficients agree because theta(x^-1 y) is invariant
        # under the left shift
        ok, witness, count = True, None, 0
        for i, a in enumerate(m.arrows):
            c = g.mul(g.inv(a.x), a.y)
            if class_of(g, c) != a.cls or c not in m.theta_of[a.cls]:
                ok, witness = False, f"arrow {i} has inconsistent class data"
                break
            count += 1
        if ok:
            for h in range(n):
                for cls in m.rsr.ram.support:
                    theta_of = m.theta_of[cls]
                    tp = m.tp[cls]
                    u = m.rsr.u[cls]
                    t = m.transversal[cls]
                    for c, theta in theta_of.items():
                        count += 1
                        # destination class element of a . h is h^-1 c h
                        if theta_of[g.conj(c, h)] != int(tp[theta, h]):
                            ok, witness = False, f"class {cls} h={_elt(g,h)}"
                            break
                        # defining relation g_theta h = zeta g_theta'
                        zloc = int(m.zl[cls][theta, h])
                        zeta = g.find(m.rsr.centralizer(cls).element(zloc))
                        if g.mul(t[theta], h) != g.mul(zeta, t[int(tp[theta, h])]):
                            ok, witness = False, \
                                f"factorization fails: class {cls} theta {theta}"
                            break
                    if not ok:
                        break
                if not ok:
                    break
        report.add("commutation-and-coaction", ok, count, witness)

        # right action by h then h^-1 is the identity
        ok, witness, count = True, None, 0
        for cls in m.rsr.ram.support:
            zl, tp = m.zl[cls], m.tp[cls]
            for slot in range(len(m.rsr.irreps[cls])):
                blocks = m.blocks[(cls, slot)]
                d = blocks[0].shape[0]
                eye = linalg.identity(d)
                for theta in range(zl.shape[0]):
                    for h in range(n):
                        prod = linalg.matmul(blocks[int(zl[theta, h])],
                                             blocks[int(zl[int(tp[theta, h]), g.inv(h)])], p)
                        count += 1
                        if not (prod == eye).all():
                            ok, witness = False, \
                                f"class {cls} slot {slot} theta {theta} h={_elt(g,h)}"
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        report.add("right-invertibility", ok, count, witness)
        return report

    # sampled mode: seeded triples checked through the public maps
    rng = random.Random(f"bimodule:{seed}")
    ok_assoc = ok_comm = ok_coact = ok_inv = True
    wit: dict[str, Optional[str]] = {k: None for k in
                                     ("assoc", "comm", "coact", "inv")}
    for _ in range(samples):
        a = m.arrows[rng.randrange(narrows)]
        gg = rng.randrange(n)
        h = rng.randrange(n)
        h2 = rng.randrange(n)
        lhs = _apply_right(m, [( m.left_action(gg, a), 1)], h)
        rhs = [(m.left_action(gg, b), c) for b, c in m.right_action(a, h)]
        if ok_comm and _normalize(lhs, p) != _normalize(rhs, p):
            ok_comm, wit["comm"] = False, f"g={_elt(g,gg)} arrow={a} h={_elt(g,h)}"
        two = _apply_right(m, m.right_action(a, h), h2)
        one = m.right_action(a, g.mul(h, h2))
        if ok_assoc and _normalize(two, p) != _normalize(one, p):
            ok_assoc, wit["assoc"] = False, f"arrow={a} h={_elt(g,h)} h'={_elt(g,h2)}"
        back = _apply_right(m, m.right_action(a, h), g.inv(h))
        if ok_inv and _normalize(back, p) != _normalize([(a, 1)], p):
            ok_inv, wit["inv"] = False, f"arrow={a} h={_elt(g,h)}"
        for b, _ in m.right_action(a, h):
            if b.x != g.mul(a.x, h) or b.y != g.mul(a.y, h):
                ok_coact, wit["coact"] = False, f"arrow={a} h={_elt(g,h)}"
    report.add("left-right-commutation", ok_comm, samples, wit["comm"])
    report.add("right-associativity", ok_assoc, samples, wit["assoc"])
    report.add("right-invertibility", ok_inv, samples, wit["inv"])
    report.add("coaction-grading", ok_coact, samples, wit["coact"])
    return report


def _apply_right(m: HopfBimodule, combo: list[tuple[ArrowId, int]],
                 h: int) -> list[tuple[ArrowId, int]]:
    out: dict[ArrowId, int] = {}
    for a, c in combo:
        for b, c2 in m.right_action(a, h):
            out[b] = (out.get(b, 0) + c * c2) % m.p
    return [(a, c) for a, c in out.items() if c]


def _normalize(combo: list[tuple[ArrowId, int]], p: int) -> dict:
    out: dict[ArrowId, int] = {}
    for a, c in combo:
        out[a] = (out.get(a, 0) + c) % p
    return {a: c for a, c in out.items() if c}


class BimoduleMap:
    """An arrow-basis linear map between two bimodules on the same quiver."""

    def __init__(self, source: HopfBimodule, target: HopfBimodule,
                 matrix: np.ndarray):
        self.source = source
        self.target = target
        self.matrix = matrix
        self.p = source.p

    def apply(self, combo: list[tuple[ArrowId, int]]) -> list[tuple[ArrowId, int]]:
        out: dict[ArrowId, int] = {}
        for a, c in combo:
            row = self.matrix[self.source.arrow_index[a]]
            for bidx in np.nonzero(row)[0]:
                b = self.target.arrows[bidx]
                out[b] = (out.get(b, 0) + c * int(row[bidx])) % self.p
        return [(a, c) for a, c in out.items() if c]

    def is_bijective(self) -> bool:
        return linalg.rank(self.matrix, self.p) == self.matrix.shape[0]

    def verify(self, exhaustive: bool = True, samples: int = 2000,
               seed: int = 0) -> Report:
        """Check bijectivity and that the map intertwines both actions and
        both coactions."""
        m1, m2 = self.source, self.target
        g = m1.group
        report = Report(mode="exhaustive" if exhaustive else f"sampled({samples})")
        report.add("bijective", self.is_bijective(), 1)

        ok_coact, count = True, 0
        for i, a in enumerate(m1.arrows):
            for bidx in np.nonzero(self.matrix[i])[0]:
                b = m2.arrows[bidx]
                count += 1
                if (b.x, b.y) != (a.x, a.y):
                    ok_coact = False
        report.add("coaction-intertwining", ok_coact, count)

        if exhaustive:
            pairs = [(gg, h) for gg in range(g.order) for h in range(g.order)]
            arrows = list(m1.arrows)
        else:
            rng = random.Random(f"bimodmap:{seed}")
            pairs = [(rng.randrange(g.order), rng.randrange(g.order))
                     for _ in range(samples)]
            arrows = [m1.arrows[rng.randrange(len(m1.arrows))] for _ in pairs]
        ok, witness, count = True, None, 0
        for k, (gg, h) in enumerate(pairs):
            batch = arrows if exhaustive else [arrows[k]]
            for a in batch:
                count += 1
                lhs = self.apply(_apply_right(m1, [(m1.left_action(gg, a), 1)], h))
                fa = self.apply([(a, 1)])
                rhs = _apply_right(m2, [(m2.left_action(gg, b), c) for b, c in fa], h)
                if _normalize(lhs, self.p) != _normalize(rhs, self.p):
                    ok, witness = False, f"g={_elt(g,gg)} arrow={a} h={_elt(g,h)}"
                    break
            if not ok:
                break
        report.add("action-intertwining", ok, count, witness)
        return report


def transversal_iso(rsr: RSR, t1: dict[int, list[int]],
                    t2: dict[int, list[int]]) -> BimoduleMap:
    """The explicit isomorphism between the bimodules built from two
    transversals of the same cosets (arrow a^{(i,j)} built from t1 maps to
    sum_s rho^{(i)}(g_theta h_theta^-1)[j,s] times the t2-arrow a^{(i,s)})."""
    g = rsr.group
    m1 = build_bimodule(rsr, t1)
    m2 = build_bimodule(rsr, t2)
    n = len(m1.arrows)
    matrix = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(m1.arrows):
        c = g.mul(g.inv(a.x), a.y)
        theta = m1.theta_of[a.cls][c]
        gt = m1.transversal[a.cls][theta]
        ht = m2.transversal[a.cls][theta]
        z = rsr.centralizer(a.cls)
        zelt = z.find(g.element(g.mul(gt, g.inv(ht))))
        block = m1.blocks[(a.cls, a.slot)][zelt]
        for s in range(block.shape[1]):
            if block[a.j, s]:
                bidx = m2.arrow_index[ArrowId(a.x, a.y, a.cls, a.slot, s)]
                matrix[i, bidx] = block[a.j, s]
    fmap = BimoduleMap(m1, m2, matrix)
    if not fmap.is_bijective():
        raise AssertionError("transversal-change map failed to be bijective")
    return fmap
