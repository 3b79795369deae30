"""The ternary heap operation <a,b,c> = a b^-1 c and the monoid of ordered
self-maps preserving it, with its embedding into the holomorph.
"""

from .errors import NotHeapPreserving, SearchBudgetExceeded
from .holomorph import (
    HolElement,
    MonHolElement,
    hol_action,
    hol_diamond,
    hol_from_mon,
    mon_hol,
)
from .morphisms import DEFAULT_NODE_BUDGET, is_endomorphism, is_premorphism
from .report import CheckReport


def heap(S, a, b, c):
    return S.mul[S.mul[a][S.inv[b]]][c]


def is_heap_preserving(S, eta):
    mul, inv = S.mul, S.inv
    n = S.size
    for a in range(n):
        for b in range(n):
            ab = mul[a][inv[b]]
            hab = mul[eta[a]][inv[eta[b]]]
            for c in range(n):
                if eta[mul[ab][c]] != mul[hab][eta[c]]:
                    return False
    return True


class HeapMap:
    """An ordered heap-preserving self-map with its holomorph components."""

    def __init__(self, S, eta):
        self.S = S
        self.eta = tuple(eta)

    @property
    def phi(self):
        mul, inv = self.S.mul, self.S.inv
        return tuple(
            mul[self.eta[a]][inv[self.eta[mul[inv[a]][a]]]]
            for a in range(self.S.size)
        )

    @property
    def tau(self):
        return tuple(self.eta[e] for e in self.S.idempotents)

    def __eq__(self, other):
        return isinstance(other, HeapMap) and self.eta == other.eta

    def __hash__(self):
        return hash(self.eta)

    def __repr__(self):
        return f"HeapMap{self.eta}"


def _heap_check_schedule(S):
    """Triples (a,b,c) grouped by the level at which they become checkable
    (all of a, b, c and the heap value assigned)."""
    sched = [[] for _ in range(S.size)]
    for a in range(S.size):
        for b in range(S.size):
            for c in range(S.size):
                h = heap(S, a, b, c)
                sched[max(a, b, c, h)].append((a, b, c, h))
    return sched


def enumerate_sha(S, budget=DEFAULT_NODE_BUDGET):
    """All ordered heap-preserving self-maps, lexicographic by value vector.

    Depth-first over assignments in element order; a triple is checked as
    soon as its three arguments and its value are assigned, an order pair as
    soon as both sides are.  The result is asserted to be a monoid.
    """
    n = S.size
    mul, inv = S.mul, S.inv
    leq = S.natural_order().leq
    sched = _heap_check_schedule(S)
    order_pairs = [[] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a != b and leq(a, b):
                order_pairs[max(a, b)].append((a, b))

    eta = [0] * n
    out = []
    nodes = [0]

    def ok_at(k):
        for a, b in order_pairs[k]:
            if not leq(eta[a], eta[b]):
                return False
        for a, b, c, h in sched[k]:
            if eta[h] != mul[mul[eta[a]][inv[eta[b]]]][eta[c]]:
                return False
        return True

    def rec(k):
        nodes[0] += 1
        if nodes[0] > budget:
            raise SearchBudgetExceeded(nodes[0], len(out), budget)
        if k == n:
            out.append(HeapMap(S, tuple(eta)))
            return
        for v in range(n):
            eta[k] = v
            if ok_at(k):
                rec(k + 1)

    rec(0)
    chosen = {m.eta for m in out}
    assert tuple(range(n)) in chosen, "identity map missing from the heap monoid"
    for m1 in out:
        for m2 in out:
            comp = tuple(m2.eta[m1.eta[a]] for a in range(n))
            assert comp in chosen, "heap monoid not closed under composition"
    return out


def sha_embed(S, eta):
    """eta -> (phi_eta, eta restricted to idempotents), landing in Hol(S).

    Raises NotHeapPreserving unless eta is ordered and preserves the heap.
    Asserts the holomorph invariants of the image and that the holomorph
    action of the image reproduces eta pointwise.
    """
    if isinstance(eta, HeapMap):
        hm = eta
    else:
        eta = tuple(eta)
        ordered = all(
            S.leq(eta[a], eta[b])
            for a in range(S.size)
            for b in range(S.size)
            if S.leq(a, b)
        )
        if not (ordered and is_heap_preserving(S, eta)):
            raise NotHeapPreserving(f"map {eta} is not an ordered heap map")
        hm = HeapMap(S, eta)
    h = HolElement(hm.phi, hm.tau)
    assert is_premorphism(S, S, h.alpha), "phi of a heap map must be premorphic"
    from .holomorph import is_valid_hol

    assert is_valid_hol(S, h.alpha, h.tau)
    for s in range(S.size):
        assert hol_action(S, s, h) == hm.eta[s], (
            f"action of the embedded pair disagrees with the map at {s}"
        )
    return h


def bijective_heap_maps(sha):
    return [m for m in sha if len(set(m.eta)) == len(m.eta)]


def verify_sha_embedding(S, sha=None):
    """The embedding into the holomorph is injective and multiplicative."""
    rep = CheckReport(f"heap monoid embedding on {S!r}")
    if sha is None:
        sha = enumerate_sha(S)
    rep.add("sha_count", True, detail=f"|heap monoid| = {len(sha)}")
    images = {}
    w = None
    for m in sha:
        h = sha_embed(S, m)
        if h in images:
            w = f"maps {images[h]} and {m.eta} share an image"
            break
        images[h] = m.eta
    rep.add("embedding_injective", w is None, w)

    w = None
    by_eta = {m.eta: sha_embed(S, m) for m in sha}
    for m1 in sha:
        for m2 in sha:
            comp = tuple(m2.eta[m1.eta[a]] for a in range(S.size))
            lhs = by_eta[comp]
            rhs = hol_diamond(S, by_eta[m1.eta], by_eta[m2.eta])
            if lhs != rhs:
                w = f"embedding not multiplicative at ({m1.eta},{m2.eta})"
                break
        if w:
            break
    rep.add("embedding_multiplicative", w is None, w)

    w = None
    mul, inv = S.mul, S.inv
    for m in sha:
        phi = m.phi
        for a in range(S.size):
            e = mul[inv[a]][a]
            if phi[e] != mul[m.eta[e]][inv[m.eta[e]]]:
                w = f"range-idempotent identity fails for {m.eta} at {a}"
                break
        if w:
            break
    rep.add("phi_on_range_idempotents", w is None, w)
    return rep


def verify_sha_monoid_iso(M, sha=None, mon=None):
    """For an inverse monoid, the heap monoid is exactly the submonoid of
    compressed holomorph pairs whose first component is an endomorphism."""
    rep = CheckReport(f"heap monoid vs endomorphism pairs on {M!r}")
    if M.identity is None:
        rep.add("is_monoid", False, "no identity element")
        return rep
    if sha is None:
        sha = enumerate_sha(M)
    if mon is None:
        mon = mon_hol(M)
    sub = [a for a in mon if is_endomorphism(M, a.alpha)]
    rep.add(
        "counts",
        len(sub) == len(sha),
        None if len(sub) == len(sha) else f"|End x M| = {len(sub)} vs |Sha| = {len(sha)}",
        detail=f"{len(sha)} heap maps, {len(sub)} endomorphism pairs",
    )

    # forward: every heap map embeds onto an endomorphism pair
    w = None
    image = set()
    for m in sha:
        h = sha_embed(M, m)
        a = MonHolElement(h.alpha, h.tau[M.idempotent_position[M.identity]])
        if not is_endomorphism(M, a.alpha):
            w = f"embedded pair of {m.eta} has non-endomorphism first component"
            break
        if a not in set(sub):
            w = f"embedded pair of {m.eta} missing from the submonoid"
            break
        image.add(a)
    rep.add("image_in_submonoid", w is None, w)

    # backward: every endomorphism pair acts as a heap map
    w = None
    for a in sub:
        h = hol_from_mon(M, a)
        eta = tuple(hol_action(M, s, h) for s in range(M.size))
        ordered = all(
            M.leq(eta[x], eta[y])
            for x in range(M.size)
            for y in range(M.size)
            if M.leq(x, y)
        )
        if not (ordered and is_heap_preserving(M, eta)):
            w = f"pair {a} does not act as an ordered heap map"
            break
        if a not in image:
            w = f"pair {a} is not hit by the embedding"
            break
    rep.add("submonoid_in_image", w is None, w)

    # the bijection is an isomorphism of monoids
    w = None
    from .holomorph import mon_diamond

    by_eta = {}
    for m in sha:
        h = sha_embed(M, m)
        by_eta[m.eta] = MonHolElement(h.alpha, h.tau[M.idempotent_position[M.identity]])
    for m1 in sha:
        for m2 in sha:
            comp = tuple(m2.eta[m1.eta[x]] for x in range(M.size))
            if by_eta[comp] != mon_diamond(M, by_eta[m1.eta], by_eta[m2.eta]):
                w = f"not multiplicative at ({m1.eta},{m2.eta})"
                break
        if w:
            break
    rep.add("monoid_isomorphism", w is None, w)
    return rep
