"""Covering congruences and the odd-norm residue class with no prime + (1+i)^k members.

The construction picks, for each congruence a_j mod m_j of a covering
system, a Gaussian prime pi_j in which 1+i has order exactly m_j, and
solves x = (1+i)^a_j mod pi_j together with x = 1 mod (1+i).  Every
x - (1+i)^k is then divisible by some pi_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclotomic_orders import ord_one_plus_i
from .gaussian_core import (
    ONE,
    ONE_PLUS_I,
    GInt,
    IntLike,
    canonical_associate,
    congruent,
    divrem,
    gpow,
    xgcd,
)
from .gaussian_primes import PrimeRecord, is_prime_element, prime_record
from .analytic_constants import lattice_count

__all__ = [
    "CoveringSystem",
    "ERDOS_SYSTEM",
    "GaussianCongruence",
    "Obstruction",
    "ObstructionError",
    "NonCoprimeModuli",
    "verify_covering",
    "verify_covering_by_refinement",
    "gaussian_crt",
    "build_obstruction",
    "covering_prime_for",
    "obstruction_divisibility_check",
    "scan_obstruction",
    "default_k_cap",
    "class_density",
    "PRINTED_MODULUS",
]

PRINTED_MODULUS = GInt(990, 990)


@dataclass(frozen=True)
class CoveringSystem:
    classes: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.classes:
            raise ValueError("empty congruence system")
        for _, m in self.classes:
            if m < 1:
                raise ValueError(f"bad modulus {m}")

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> CoveringSystem:
        return cls(tuple((a % m, m) for a, m in pairs))

    @property
    def lcm(self) -> int:
        return math.lcm(*(m for _, m in self.classes))


ERDOS_SYSTEM = CoveringSystem.of([(0, 2), (0, 3), (1, 4), (3, 8), (7, 12), (23, 24)])


def verify_covering(system: CoveringSystem) -> tuple[bool, int | None]:
    """Exhaustive check over one period; returns (covers, first uncovered residue)."""
    L = system.lcm
    covered = 0
    for a, m in system.classes:
        stripe = 0
        for r in range(a, L, m):
            stripe |= 1 << r
        covered |= stripe
    missing = ~covered & ((1 << L) - 1)
    if missing == 0:
        return True, None
    return False, (missing & -missing).bit_length() - 1


def verify_covering_by_refinement(system: CoveringSystem) -> tuple[bool, int | None]:
    """Independent check: refine the uncovered residue classes congruence by congruence."""
    uncovered = [(0, 1)]
    for a, m in system.classes:
        nxt = []
        for r, M in uncovered:
            L = math.lcm(M, m)
            nxt.extend((s, L) for s in range(r, L, M) if s % m != a)
        uncovered = nxt
        if not uncovered:
            return True, None
    return False, min(r for r, _ in uncovered)


@dataclass(frozen=True)
class GaussianCongruence:
    residue: GInt
    modulus: GInt

    @classmethod
    def of(cls, residue: IntLike, modulus: IntLike) -> GaussianCongruence:
        modulus = GInt.coerce(modulus)
        if modulus.is_zero():
            raise ZeroDivisionError("zero modulus")
        return cls(divrem(GInt.coerce(residue), modulus)[1], modulus)


class NonCoprimeModuli(ValueError):
    pass


def gaussian_crt(congruences: Sequence[GaussianCongruence]) -> tuple[GInt, GInt]:
    """Solve a system of congruences with pairwise coprime moduli.

    Returns (x0, M): M is the canonical product of the moduli and x0 the
    divrem representative of the solution modulo M.
    """
    if not congruences:
        raise ValueError("no congruences")
    for i, ci in enumerate(congruences):
        for cj in congruences[i + 1 :]:
            g = xgcd(ci.modulus, cj.modulus)[0]
            if not g.is_unit():
                raise NonCoprimeModuli(f"moduli {ci.modulus} and {cj.modulus} share the factor {canonical_associate(g)}")
    x = congruences[0].residue
    M = congruences[0].modulus
    for c in congruences[1:]:
        g, u, _ = xgcd(M, c.modulus)
        # u*M = g (mod c.modulus) with g a unit
        inv = divrem(u * _unit_inverse(g), c.modulus)[1]
        t = divrem((c.residue - x) * inv, c.modulus)[1]
        x = x + M * t
        M = M * c.modulus
    M = canonical_associate(M)
    return divrem(x, M)[1], M


def _unit_inverse(u: GInt) -> GInt:
    return u.conjugate()


# the construction


@dataclass(frozen=True)
class CoveringTriple:
    a: int
    m: int
    prime: PrimeRecord


ERDOS_PRIMES = ((0, 2, GInt(2, 1)), (0, 3, GInt(2, 3)), (1, 4, GInt(1, 2)), (3, 8, GInt(3, 0)), (7, 12, GInt(3, 2)), (23, 24, GInt(7, 0)))
PRINTED_RESIDUES = (GInt(1, 0), GInt(1, 0), GInt(1, 1), GInt(-2, 2), GInt(8, -8), GInt(2048, -2048))


class ObstructionError(AssertionError):
    pass


@dataclass
class Obstruction:
    x0: GInt
    M: GInt
    triples: tuple[CoveringTriple, ...]
    congruences: tuple[GaussianCongruence, ...]
    signed_modulus: GInt  # -(1+i) * prod pi_j, as the construction writes it
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def exception_primes(self) -> list[PrimeRecord]:
        return [t.prime for t in self.triples]

    @property
    def modulus_matches_printed(self) -> bool:
        return canonical_associate(self.M) == canonical_associate(PRINTED_MODULUS)

    def as_json(self) -> dict:
        return {
            "x0": str(self.x0),
            "M": str(self.M),
            "signed_modulus": str(self.signed_modulus),
            "norm_M": str(self.M.norm()),
            "x0_norm_odd": self.x0.norm() % 2 == 1,
            "pairs": [
                {"a": t.a, "m": t.m, "prime": str(t.prime.generator), "order": ord_one_plus_i(t.prime)}
                for t in self.triples
            ],
            "congruences": [{"residue": str(c.residue), "modulus": str(c.modulus)} for c in self.congruences],
            "printed_modulus": str(PRINTED_MODULUS),
            "printed_modulus_norm": str(PRINTED_MODULUS.norm()),
            "modulus_matches_printed": self.modulus_matches_printed,
            "checks": self.checks,
        }


def build_obstruction(system: CoveringSystem = ERDOS_SYSTEM, primes=ERDOS_PRIMES) -> Obstruction:
    triples = tuple(CoveringTriple(a, m, prime_record(p)) for a, m, p in primes)
    checks: dict[str, bool] = {}
    covers, witness = verify_covering(CoveringSystem.of((t.a, t.m) for t in triples))
    checks["covering"] = covers
    if not covers:
        raise ObstructionError(f"congruences do not cover; {witness} is missed")
    for t in triples:
        order = ord_one_plus_i(t.prime)
        if order != t.m:
            raise ObstructionError(f"1+i has order {order} modulo {t.prime.generator}, expected {t.m}")
    checks["orders"] = True
    congruences = [GaussianCongruence.of(gpow(ONE_PLUS_I, t.a), t.prime.generator) for t in triples]
    congruences.append(GaussianCongruence.of(ONE, ONE_PLUS_I))
    x0, M = gaussian_crt(congruences)
    for c in congruences:
        if not congruent(x0, c.residue, c.modulus):
            raise ObstructionError(f"CRT solution misses {c}")
    checks["crt"] = True
    if primes == ERDOS_PRIMES:
        checks["printed_residues"] = all(
            congruent(x0, r, t.prime.generator) for r, t in zip(PRINTED_RESIDUES, triples)
        )
    checks["odd_norm"] = x0.norm() % 2 == 1
    signed = -ONE_PLUS_I
    for t in triples:
        signed = signed * t.prime.generator
    if canonical_associate(signed) != M:
        raise ObstructionError("modulus is not an associate of (1+i) times the primes")
    return Obstruction(x0, M, triples, tuple(congruences), signed, checks)


def covering_prime_for(obs: Obstruction, k: int) -> CoveringTriple:
    for t in obs.triples:
        if k % t.m == t.a:
            return t
    raise ObstructionError(f"exponent {k} is not covered")


def obstruction_divisibility_check(obs: Obstruction, k_max: int = 48) -> bool:
    """For 1 <= k <= k_max, x0 - (1+i)^k is divisible by the prime of the covering class of k."""
    if k_max < math.lcm(*(t.m for t in obs.triples)):
        raise ValueError("k_max must reach the period of the covering system")
    return all(
        congruent(obs.x0, gpow(ONE_PLUS_I, k), covering_prime_for(obs, k).prime.generator)
        for k in range(1, k_max + 1)
    )


def default_k_cap(obs: Obstruction, B: float) -> int:
    reach = (B + math.sqrt(obs.x0.norm())) ** 2
    k = 0
    while 2 ** (k + 1) <= reach:
        k += 1
    return k + math.lcm(*(t.m for t in obs.triples))


def _class_members(obs: Obstruction, B: float) -> list[GInt]:
    bound = B * B
    span = math.ceil((B + math.sqrt(obs.x0.norm())) / math.sqrt(obs.M.norm())) + 1
    out = []
    for s in range(-span, span + 1):
        for u in range(-span, span + 1):
            z = obs.x0 + obs.M * GInt(s, u)
            if z.norm() <= bound:
                out.append(z)
    out.sort(key=GInt.sort_key)
    return out


@dataclass(frozen=True)
class Exception_:
    zeta: GInt
    k: int
    prime: GInt


def scan_obstruction(obs: Obstruction, B: float, k_cap: int | None = None) -> list[Exception_]:
    """Every representation zeta = pi + (1+i)^k inside the class, house(zeta) <= B.

    Each one found must use an associate of a covering prime; anything else
    falsifies the construction and raises ObstructionError.
    """
    if B * B < obs.M.norm():
        raise ValueError("scan radius must be at least house(M)")
    k_cap = default_k_cap(obs, B) if k_cap is None else k_cap
    allowed = {t.prime.generator for t in obs.triples}
    found = []
    for zeta in _class_members(obs, B):
        if zeta.norm() % 2 == 0:
            raise ObstructionError(f"{zeta} in the class has even norm")
        for k in range(1, k_cap + 1):
            pi = zeta - gpow(ONE_PLUS_I, k)
            if is_prime_element(pi):
                if canonical_associate(pi) not in allowed:
                    raise ObstructionError(f"{zeta} = {pi} + (1+i)^{k} with a non-covering prime")
                found.append(Exception_(zeta, k, pi))
    return found


def class_density(obs: Obstruction, B: float) -> dict[str, float]:
    """Share of the class among all Gaussian integers, and among odd-norm ones, with house <= B."""
    members = len(_class_members(obs, B))
    total = lattice_count(B)
    bound = math.floor(B * B)
    R = math.isqrt(bound)
    odd = 0
    for a in range(-R, R + 1):
        s = math.isqrt(bound - a * a)
        evens = 2 * (s // 2) + 1
        odd += (2 * s + 1 - evens) if a % 2 == 0 else evens
    n = obs.M.norm()
    return {
        "members": members,
        "lattice": total,
        "odd_norm": odd,
        "share_all": members / total,
        "expected_all": 1 / n,
        "share_odd": members / odd,
        "expected_odd": 2 / n,
    }
