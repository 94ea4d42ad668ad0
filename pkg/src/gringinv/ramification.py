"""Ramification data of local extensions and the twisted unramified characteristic.

A local datum is purely group-theoretic: the Galois group, its inertia
filtration Gamma_0 >= Gamma_1 >= Gamma_2, a Frobenius lift and the residue
characteristic.  Global data are lists of wildly ramified places, each with its
decomposition subgroup and a local datum on it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .center import CenterElement, GroupRingElement, idempotent_subgroup, induce_center, nrd, twist
from .characters import ClassFunction, character_table
from .cyclotomic import Cyc
from .errors import InputError, InvalidDatumError
from .groups import FiniteGroup, Subgroup, load_group, normal_subgroups

__all__ = [
    "Check",
    "GlobalExtData",
    "LocalRamData",
    "ValidationReport",
    "WildPlace",
    "annihilation_exponent",
    "closed_form_element",
    "equivariant_y",
    "global_c",
    "load_global",
    "load_local",
    "n_of",
    "random_local_datum",
    "twisted_c",
    "twisted_c_routes",
    "unram_char_value",
    "valid_local_data",
    "validate_local",
]


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class LocalRamData:
    group: FiniteGroup
    inertia: Subgroup
    ram1: Subgroup
    ram2: Subgroup
    frobenius: int
    residue_char: int

    @classmethod
    def build(cls, group: FiniteGroup, inertia: Sequence[int], ram1: Sequence[int], ram2: Sequence[int],
              frobenius: int, residue_char: int) -> "LocalRamData":
        """Build a datum from member lists, checking that each list is a subgroup."""
        subs = []
        for label, members in (("inertia", inertia), ("ram1", ram1), ("ram2", ram2)):
            ms = sorted(set(int(m) for m in members))
            if not ms or any(m < 0 or m >= group.order for m in ms) or ms[0] != 0:
                raise InvalidDatumError(f"{label} must be a set of element indices containing the identity")
            H = Subgroup(group, tuple(ms))
            if not H.is_closed():
                raise InvalidDatumError(f"{label} is not a subgroup")
            subs.append(H)
        if not 0 <= int(frobenius) < group.order:
            raise InvalidDatumError("frobenius index out of range")
        return cls(group, subs[0], subs[1], subs[2], int(frobenius), int(residue_char))

    @property
    def is_weakly_ramified(self) -> bool:
        return self.ram2.order == 1

    @property
    def is_wild(self) -> bool:
        return self.ram1.order > 1

    @property
    def is_totally_ramified(self) -> bool:
        return self.inertia.order == self.group.order

    def with_frobenius(self, sigma: int) -> "LocalRamData":
        return LocalRamData(self.group, self.inertia, self.ram1, self.ram2, sigma, self.residue_char)

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "inertia": list(self.inertia.members),
            "ram1": list(self.ram1.members),
            "ram2": list(self.ram2.members),
            "frobenius": self.frobenius,
            "residue_char": self.residue_char,
        }


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"valid": self.valid, "checks": [c.to_json() for c in self.checks]}


def validate_local(d: LocalRamData) -> ValidationReport:
    """Check the filtration axioms; structural faults raise, the rest are reported."""
    G, ell = d.group, d.residue_char
    G0, G1, G2 = d.inertia, d.ram1, d.ram2
    if not (G2.is_subgroup_of(G1) and G1.is_subgroup_of(G0)):
        raise InvalidDatumError("filtration is not nested: need ram2 <= ram1 <= inertia")
    for label, H in (("inertia", G0), ("ram1", G1), ("ram2", G2)):
        if not H.is_normal():
            raise InvalidDatumError(f"{label} is not normal in the group")
    if len(G.generate(list(G0.members) + [d.frobenius])) != G.order:
        raise InvalidDatumError("the frobenius image does not generate the quotient by inertia")

    checks = [Check("residue_char_odd_prime", _is_prime(ell) and ell % 2 == 1, f"residue_char={ell}")]
    checks.append(Check("ram1_is_ell_group", _is_power_of(G1.order, ell), f"|ram1|={G1.order}"))
    tame_index = G0.order // G1.order
    checks.append(Check("tame_index_coprime", gcd(tame_index, ell) == 1, f"[inertia:ram1]={tame_index}"))
    if d.is_weakly_ramified:
        ok = G1.is_abelian and ell % G1.exponent == 0 if G1.order > 1 else True
        checks.append(Check("weak_wild_inertia_elementary", ok,
                            f"ram1 abelian={G1.is_abelian}, exponent={G1.exponent}"))
        if G0.is_abelian:
            ell_group = _is_power_of(G0.order, ell)
            cyclic_tame = G0.exponent == G0.order and gcd(G0.order, ell) == 1
            checks.append(Check("abelian_inertia_shape", ell_group or cyclic_tame,
                                f"|inertia|={G0.order}, exponent={G0.exponent}"))
    else:
        checks.append(Check("weakly_ramified", False, f"|ram2|={G2.order}"))
    return ValidationReport(tuple(checks))


def _require_weak(d: LocalRamData) -> None:
    rep = validate_local(d)
    if not rep.valid:
        names = ", ".join(c.name for c in rep.failures())
        raise InvalidDatumError(f"local datum fails validation: {names}")


def unram_char_value(chi: ClassFunction, d: LocalRamData) -> Cyc:
    """1 for ramified chi, (-1)^chi(1) * chi(sigma) otherwise."""
    if not all(chi(h) == chi.degree for h in d.inertia.members):
        return Cyc.rational(1)
    deg = int(chi.degree.to_fraction())
    return chi(d.frobenius) * (-1) ** deg


def equivariant_y(d: LocalRamData) -> CenterElement:
    tbl = character_table(d.group)
    return CenterElement(tbl, [unram_char_value(chi, d) for chi in tbl.characters])


def closed_form_element(d: LocalRamData) -> GroupRingElement:
    """(1 - e_inertia) + sigma^-1 * e_inertia in Q[Gamma]."""
    G = d.group
    e = idempotent_subgroup(d.inertia)
    one = GroupRingElement.one(G)
    return (one - e) + GroupRingElement.basis(G, G.inv[d.frobenius]) * e


def twisted_c_routes(d: LocalRamData) -> tuple[CenterElement, CenterElement]:
    """Both evaluations: the Adams twist of y, and the reduced norm of the closed form."""
    _require_weak(d)
    return twist(equivariant_y(d), 1, -1, 2), nrd(closed_form_element(d))


def twisted_c(d: LocalRamData) -> CenterElement:
    via_twist, via_nrd = twisted_c_routes(d)
    if via_twist != via_nrd:
        raise ArithmeticError("twisted characteristic disagrees with its closed form")
    return via_twist


def annihilation_exponent(d: LocalRamData) -> int:
    m = twisted_c(d).multiplicative_order()
    if m is None:
        raise ArithmeticError("twisted characteristic has a component that is not a root of unity")
    return m


# -- global data ----------------------------------------------------------------

@dataclass(frozen=True)
class WildPlace:
    residue_char: int
    decomposition: Subgroup
    local: LocalRamData

    def to_json(self) -> dict:
        return {"residue_char": self.residue_char, "decomposition": list(self.decomposition.members),
                "local": self.local.to_json()}


@dataclass(frozen=True)
class GlobalExtData:
    group: FiniteGroup
    wild_places: tuple[WildPlace, ...]

    def __post_init__(self):
        for k, w in enumerate(self.wild_places):
            if w.decomposition.parent is not self.group:
                raise InvalidDatumError(f"place {k}: decomposition group is not a subgroup of the global group")
            if w.local.group is not w.decomposition.as_group:
                raise InvalidDatumError(f"place {k}: local datum does not live on its decomposition group")
            if not w.local.is_wild:
                raise InvalidDatumError(f"place {k} is tamely ramified; only wild places are accepted")
            if w.local.residue_char != w.residue_char:
                raise InvalidDatumError(f"place {k}: residue characteristics disagree")

    def to_json(self) -> dict:
        return {"group": self.group.name, "wild_places": [w.to_json() for w in self.wild_places]}


def global_c(g: GlobalExtData) -> CenterElement:
    """Product over wild places of the induced local twisted characteristics."""
    result = CenterElement.ones(character_table(g.group))
    for w in g.wild_places:
        result = result * induce_center(twisted_c(w.local), w.decomposition)
    return result


def n_of(g: GlobalExtData) -> int:
    """Largest decomposition group order over the wild places."""
    if not g.wild_places:
        raise InputError("n(L/K) needs at least one wildly ramified place")
    return max(w.decomposition.order for w in g.wild_places)


# -- loaders --------------------------------------------------------------------

def _local_from_doc(doc: dict, group: FiniteGroup, relabel: Sequence[int] | None = None) -> LocalRamData:
    try:
        keys = ("inertia", "ram1", "ram2")
        lists = [list(doc[k]) for k in keys]
        frob = doc["frobenius"]
        ell = doc["residue_char"]
    except (KeyError, TypeError) as exc:
        raise InvalidDatumError(f"local datum is missing field {exc}") from exc
    if not all(isinstance(v, int) for lst in lists for v in lst) or not isinstance(frob, int) \
            or not isinstance(ell, int):
        raise InvalidDatumError("local datum fields must be integers")
    if relabel is not None:
        try:
            lists = [[relabel[v] for v in lst] for lst in lists]
            frob = relabel[frob]
        except IndexError as exc:
            raise InvalidDatumError("local index outside the decomposition list") from exc
    return LocalRamData.build(group, *lists, frob, ell)


def load_local(doc: dict) -> LocalRamData:
    if not isinstance(doc, dict) or "group" not in doc:
        raise InvalidDatumError("local datum must be an object with a 'group' field")
    return _local_from_doc(doc, load_group(doc["group"]))


def load_global(doc: dict) -> GlobalExtData:
    if not isinstance(doc, dict) or "group" not in doc:
        raise InvalidDatumError("global datum must be an object with a 'group' field")
    G = load_group(doc["group"])
    places = []
    for k, w in enumerate(doc.get("wild_places", [])):
        try:
            dec = [int(i) for i in w["decomposition"]]
            ell = int(w["residue_char"])
            loc = w["local"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidDatumError(f"place {k} is malformed: {exc}") from exc
        if len(set(dec)) != len(dec) or any(i < 0 or i >= G.order for i in dec):
            raise InvalidDatumError(f"place {k}: bad decomposition indices")
        members = tuple(sorted(dec))
        if not members or members[0] != 0:
            raise InvalidDatumError(f"place {k}: decomposition group must contain the identity")
        H = Subgroup(G, members)
        if not H.is_closed():
            raise InvalidDatumError(f"place {k}: decomposition list is not a subgroup")
        pos = {m: i for i, m in enumerate(members)}
        relabel = [pos[i] for i in dec]
        places.append(WildPlace(ell, H, _local_from_doc(loc, H.as_group, relabel)))
    return GlobalExtData(G, tuple(places))


# -- sampling of valid data -----------------------------------------------------

def valid_local_data(G: FiniteGroup, ell: int | None = None) -> list[LocalRamData]:
    """All weakly ramified data on a p-group with residue characteristic p.

    Inertia runs over the trivial subgroup and the normal elementary abelian
    subgroups with cyclic quotient; Gamma_1 = inertia, Gamma_2 = 1.
    """
    p = ell or G.prime
    if p is None:
        raise InputError("residue characteristic needed for the trivial group")
    out = []
    triv = G.trivial_subgroup
    for D in normal_subgroups(G):
        if D.order > 1 and not (D.is_abelian and D.exponent == p):
            continue
        for s in range(G.order):
            d = LocalRamData(G, D, D, triv, s, p)
            try:
                if validate_local(d).valid:
                    out.append(d)
            except InvalidDatumError:
                continue
    return out


def random_local_datum(G: FiniteGroup, rng: random.Random, ell: int | None = None) -> LocalRamData:
    return rng.choice(valid_local_data(G, ell))
