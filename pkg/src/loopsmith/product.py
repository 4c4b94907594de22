"""Loops on ``K x P`` from a map ``g: K -> S`` and an embedding ``phi: S -> P``.

The group ``G = K x P x S`` acts on the cosets of ``H = {(1, phi(x), x)}``
and the set ``M = {(k, l phi(g(k)), g(k))}`` is a sharply transitive section.
The resulting loop has the product

    (a1, b1) * (a2, b2) = (a1 a2, b1 c b2 c^-1),   c = phi(g(a1)),

a semidirect product of the normal subgroup ``N = {(1, l)}`` (a copy of
``P``) by the subgroup ``{(k, 1)}`` (a copy of ``K``).  It is a group exactly
when ``g`` is a homomorphism, given that ``phi(S)`` meets the centre of ``P``
trivially.  Elements ``(k, p)`` are encoded as ``k*|P| + p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (CentreIntersection, GenerationFailure, GIsHomomorphism,
                     GNotIdentityPreserving, PhiNotMono, PNotNonAbelian)
from .groups import (CosetSpace, FiniteGroup, Mapping, Subgroup, center, cyclic,
                     direct_product, first_hom_violation, is_homomorphism,
                     is_monomorphism, left_cosets, normal_core, product_index,
                     subgroup_closure)
from .loops import (FiniteLoop, LoopHom, Subloop, factor_loop, first_associator_witness,
                    is_isomorphic, is_normal_subloop, loop_of, make_loop, subloop_generated)
from .report import Report
from .sections import Section, is_sharply_transitive


@dataclass(frozen=True, eq=False)
class ProductSpec:
    K: FiniteGroup
    P: FiniteGroup
    S: FiniteGroup
    phi: Mapping
    g: Mapping

    @classmethod
    def from_images(cls, K, P, S, phi: Sequence[int], g: Sequence[int]) -> "ProductSpec":
        return cls(K, P, S, Mapping(S, P, tuple(phi)), Mapping(K, S, tuple(g)))

    def twist(self, k: int) -> int:
        """``phi(g(k))`` in ``P``."""
        return self.phi.image[self.g.image[k]]


def generated_by_graph(spec: ProductSpec) -> Subgroup:
    """Subgroup of ``K x P x S`` generated by ``{(k, 1, g(k))}``."""
    G = direct_product([spec.K, spec.P, spec.S])
    sizes = (spec.K.order, spec.P.order, spec.S.order)
    gens = [product_index(sizes, (k, 0, spec.g.image[k])) for k in range(spec.K.order)]
    return subgroup_closure(G, gens)


def validate_spec(spec: ProductSpec) -> ProductSpec:
    """Check the construction's hypotheses in order; the first failure is raised."""
    K, P, S, phi, g = spec.K, spec.P, spec.S, spec.phi, spec.g
    if P.is_abelian():
        raise PNotNonAbelian("P must be non-abelian")
    if g.image[0] != 0:
        raise GNotIdentityPreserving(f"g(1) = {g.image[0]}, expected the identity of S")
    if not is_monomorphism(phi):
        raise PhiNotMono("phi: S -> P is not an injective homomorphism")
    meet = set(phi.image) & set(center(P).members)
    if meet != {0}:
        raise CentreIntersection(
            f"phi(S) meets the centre of P in {sorted(meet)}", elements=sorted(meet))
    closure = generated_by_graph(spec)
    if len(closure) != K.order * S.order:
        raise GenerationFailure(
            f"{{(k, 1, g(k))}} generates a subgroup of order {len(closure)}, "
            f"not |K x 1 x S| = {K.order * S.order}", order=len(closure))
    if is_homomorphism(g):
        raise GIsHomomorphism("g is a homomorphism, so the loop would be a group")
    return spec


def product_table(K: FiniteGroup, P: FiniteGroup, phi: Sequence[int],
                  g: Sequence[int]) -> np.ndarray:
    """Raw product table on ``K x P``; no hypotheses are checked."""
    nk, np_ = K.order, P.order
    T = np.empty((nk * np_, nk * np_), dtype=np.int64)
    PT = P.table
    b = np.arange(np_)
    for a1 in range(nk):
        c = phi[g[a1]]
        conj = PT[PT[c, b], P.inverse[c]]             # c b2 c^-1
        pb = PT[:, conj]                              # [b1, b2] -> b1 c b2 c^-1
        for a2 in range(nk):
            k = K.table[a1, a2]
            T[a1 * np_:(a1 + 1) * np_, a2 * np_:(a2 + 1) * np_] = k * np_ + pb
    return T


@dataclass(frozen=True, eq=False)
class ProductLoop:
    base: FiniteLoop
    spec: ProductSpec

    def encode(self, k: int, p: int) -> int:
        return k * self.spec.P.order + p

    def decode(self, x: int) -> tuple[int, int]:
        return divmod(x, self.spec.P.order)

    @property
    def order(self) -> int:
        return self.base.order


def build_product_loop(spec: ProductSpec, validate: bool = True) -> ProductLoop:
    if validate:
        validate_spec(spec)
    table = product_table(spec.K, spec.P, spec.phi.image, spec.g.image)
    return ProductLoop(make_loop(table), spec)


@dataclass(frozen=True, eq=False)
class GroupSection:
    G: FiniteGroup
    H: Subgroup
    sigma: Section
    M: frozenset
    cosets: CosetSpace


def build_group_and_section(spec: ProductSpec, validate: bool = True) -> GroupSection:
    """``G = K x P x S``, ``H = {(1, phi(x), x)}`` and the section ``M``.

    Coset ``k*|P| + p`` is the coset of ``(k, p, 1)``, matching the loop encoding.
    """
    if validate:
        validate_spec(spec)
    K, P, S = spec.K, spec.P, spec.S
    sizes = (K.order, P.order, S.order)
    G = direct_product([K, P, S])
    H = Subgroup(G, tuple(sorted(product_index(sizes, (0, spec.phi.image[x], x))
                                 for x in range(S.order))))
    assert subgroup_closure(G, H.members).members == H.members
    assert normal_core(G, H).is_trivial(), "H contains a normal subgroup of G"
    reps = [product_index(sizes, (k, p, 0)) for k in range(K.order) for p in range(P.order)]
    cosets = left_cosets(G, H, reps)
    choice = tuple(product_index(sizes, (k, int(P.table[p, spec.twist(k)]), spec.g.image[k]))
                   for k in range(K.order) for p in range(P.order))
    sigma = Section(cosets, choice)
    M = frozenset(choice)
    assert is_sharply_transitive(G, H, M, cosets=cosets)
    return GroupSection(G, H, sigma, M, cosets)


def solve_translation(spec: ProductSpec, x1: tuple[int, int], x2: tuple[int, int]
                      ) -> tuple[int, int, int]:
    """``(k, l, d)`` with ``(k, l phi(g(k)), g(k)) (a1, b1, 1) = (a2, b2, 1)(1, phi(d), d)``.

    ``k = a2 a1^-1``, ``l = b2 t b1^-1 t^-1`` with ``t = phi(g(k))``, ``d = g(k)``.
    """
    (a1, b1), (a2, b2) = x1, x2
    K, P = spec.K, spec.P
    k = int(K.table[a2, K.inverse[a1]])
    t = spec.twist(k)
    l = int(P.table[P.table[P.table[b2, t], P.inverse[b1]], P.inverse[t]])
    return k, l, spec.g.image[k]


def check_unique_solutions(spec: ProductSpec, gs: Optional[GroupSection] = None) -> bool:
    """For every coset pair the closed-form solution is the only element of ``M`` that works."""
    gs = gs or build_group_and_section(spec, validate=False)
    K, P, S = spec.K, spec.P, spec.S
    sizes = (K.order, P.order, S.order)
    G = gs.G
    Mlist = sorted(gs.M)
    pairs = [(a, b) for a in range(K.order) for b in range(P.order)]
    for x1 in pairs:
        src = product_index(sizes, (*x1, 0))
        for x2 in pairs:
            k, l, d = solve_translation(spec, x1, x2)
            m = product_index(sizes, (k, int(P.table[l, spec.twist(k)]), d))
            rhs = G.table[product_index(sizes, (*x2, 0)),
                          product_index(sizes, (0, spec.phi.image[d], d))]
            if m not in gs.M or G.table[m, src] != rhs:
                return False
            target = gs.cosets.coset_of[product_index(sizes, (*x2, 0))]
            hits = [z for z in Mlist if gs.cosets.coset_of[G.table[z, src]] == target]
            if hits != [m]:
                return False
    return True


def associativity_criterion(spec: ProductSpec) -> bool:
    """Whether ``t1 t2 b t2^-1 t1^-1 = t12 b t12^-1`` for all ``a1, a2, b``,
    where ``t1, t2, t12`` are the twists of ``a1``, ``a2``, ``a1 a2``."""
    K, P = spec.K, spec.P
    PT, inv = P.table, P.inverse
    b = np.arange(P.order)
    for a1 in range(K.order):
        for a2 in range(K.order):
            t1, t2 = spec.twist(a1), spec.twist(a2)
            t12 = spec.twist(int(K.table[a1, a2]))
            t = PT[t1, t2]
            lhs = PT[PT[t, b], inv[t]]
            rhs = PT[PT[t12, b], inv[t12]]
            if not np.array_equal(lhs, rhs):
                return False
    return True


def properness_report(spec: ProductSpec) -> Report:
    """Associativity of the loop against the homomorphism test for ``g``."""
    L = build_product_loop(spec, validate=False)
    witness = first_associator_witness(L.base)
    hom = is_homomorphism(spec.g)
    crit = associativity_criterion(spec)
    meet = set(spec.phi.image) & set(center(spec.P).members)
    r = Report("properness report")
    r.add("order", L.order, "loop order")
    r.add("associative", witness is None)
    if witness is not None:
        x, y, z = witness
        r.add("witness", witness, "first associator witness")
        r.note("  as pairs: " + ", ".join(str(L.decode(v)) for v in witness))
    r.add("g_homomorphism", hom, "g is a homomorphism")
    if not hom:
        r.add("g_violation", first_hom_violation(spec.g), "first pair with g(xy) != g(x)g(y)")
    r.add("criterion", crit, "conjugation criterion holds")
    r.add("centre_trivial", meet == {0}, "phi(S) meets Z(P) trivially")
    r.add("equivalence", (witness is None) == hom == crit,
          "associative <=> g homomorphism")
    return r


def _embedding_is_hom(L: FiniteLoop, source: FiniteGroup, image: Sequence[int]) -> bool:
    return LoopHom(loop_of(source), L, tuple(image)).is_valid() and len(set(image)) == len(image)


def decomposition_report(spec: ProductSpec) -> Report:
    """Normal subgroup ``N``, complement ``K``, unique factorization and ``L/N``."""
    PL = build_product_loop(spec, validate=False)
    L = PL.base
    K, P = spec.K, spec.P
    N_members = [PL.encode(0, l) for l in range(P.order)]
    K_members = [PL.encode(k, 0) for k in range(K.order)]
    N = Subloop(L, tuple(sorted(N_members)))
    Kbar = Subloop(L, tuple(sorted(K_members)))
    r = Report("decomposition report")
    r.add("order", L.order, "loop order")
    r.add("N_subloop", subloop_generated(L, N_members).members == N.members,
          "N = {(1, l)} is a subloop")
    r.add("N_iso_P", _embedding_is_hom(L, P, N_members), "l -> (1, l) is an isomorphism onto N")
    r.add("N_normal", is_normal_subloop(L, N), "N is normal")
    r.add("K_subloop", subloop_generated(L, K_members).members == Kbar.members,
          "K = {(k, 1)} is a subloop")
    r.add("K_iso", _embedding_is_hom(L, K, K_members), "k -> (k, 1) is an isomorphism onto K")
    counts = np.zeros(L.order, dtype=np.int64)
    for n in N_members:
        for k in K_members:
            counts[L.table[n, k]] += 1
    r.add("unique_factorizations", int((counts == 1).sum()), "elements with a unique n*k")
    r.add("factorization_unique", bool((counts == 1).all()))
    Q = factor_loop(L, N)
    r.add("factor_order", Q.order, "order of L/N")
    r.add("factor_iso_K", is_isomorphic(Q, K) is not None, "L/N is isomorphic to K")
    return r


def torus_variant_builder(m: int, s: int, P: FiniteGroup, phi: Sequence[int],
                          g: Sequence[int]) -> ProductSpec:
    """Finite stand-in with ``K = C_m`` and ``S = C_s`` (cyclic groups as tori)."""
    if m < 1 or s < 1 or m % s:
        raise ValueError(f"need s | m, got m={m}, s={s}")
    if len(g) != m or set(g) != set(range(s)):
        raise ValueError("g must map C_m onto C_s")
    return ProductSpec.from_images(cyclic(m), P, cyclic(s), phi, g)
