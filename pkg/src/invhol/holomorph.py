"""The holomorph of an inverse semigroup.

An element is a pair (alpha, tau): alpha a premorphic self-map and tau an
order-preserving assignment of an element to each idempotent e with
(e tau)(e tau)^-1 = e alpha.  The pairs form a monoid under the diamond
composition and simultaneously a groupoid under natural-transformation
composition; the two operations satisfy the interchange law.

enumerate_holomorph returns the full set of pairs.  For a group this set is
End(G) x G; its group of invertible elements (holomorph_units) is the
classical holomorph Aut(G) x| G, and that is the count the reports quote as
the holomorph order of a group.
"""

from dataclasses import dataclass

from .errors import NotMonoid, SizeCap
from .morphisms import ElementMap, enumerate_premorphisms
from .report import CheckReport

DEFAULT_TAU_CAP = 10**6


@dataclass(frozen=True)
class HolElement:
    alpha: tuple  # value vector of the premorphism
    tau: tuple    # one element per idempotent, in S.idempotents order


@dataclass(frozen=True)
class MonHolElement:
    alpha: tuple
    m: int


def is_valid_hol(S, alpha, tau):
    """Domain condition (e tau)(e tau)^-1 = e alpha plus tau ordered."""
    mul, inv = S.mul, S.inv
    E = S.idempotents
    for i, e in enumerate(E):
        if mul[tau[i]][inv[tau[i]]] != alpha[e]:
            return False
    leq = S.natural_order().leq
    for i, e in enumerate(E):
        for j, f in enumerate(E):
            if leq(e, f) and not leq(tau[i], tau[j]):
                return False
    return True


def hol_identity(S):
    return HolElement(tuple(range(S.size)), tuple(S.idempotents))


def hol_diamond(S, h1, h2, check=True):
    """(alpha, tau) <> (beta, sigma) = (alpha beta, e -> (e tau)beta ((e tau)^-1 (e tau))sigma)."""
    mul, inv = S.mul, S.inv
    pos = S.idempotent_position
    alpha = tuple(h2.alpha[h1.alpha[a]] for a in range(S.size))
    tau = []
    for i, e in enumerate(S.idempotents):
        t = h1.tau[i]
        r = mul[inv[t]][t]
        tau.append(mul[h2.alpha[t]][h2.tau[pos[r]]])
    out = HolElement(alpha, tuple(tau))
    if check:
        assert is_valid_hol(S, out.alpha, out.tau), "diamond left the holomorph"
    return out


def target_premorphism(S, h):
    """The functor the transformation part of h points at:
    s -> ((s s^-1) tau)^-1 (s alpha) ((s^-1 s) tau)."""
    mul, inv = S.mul, S.inv
    pos = S.idempotent_position
    beta = []
    for s in range(S.size):
        td = h.tau[pos[mul[s][inv[s]]]]
        tr = h.tau[pos[mul[inv[s]][s]]]
        beta.append(mul[mul[inv[td]][h.alpha[s]]][tr])
    return tuple(beta)


def hol_groupoid_compose(S, h1, h2):
    """Defined when the target of h1 is the source functor of h2; the
    transformation parts then multiply pointwise.  Returns None if undefined."""
    if target_premorphism(S, h1) != h2.alpha:
        return None
    mul = S.mul
    tau = tuple(mul[a][b] for a, b in zip(h1.tau, h2.tau))
    out = HolElement(h1.alpha, tau)
    assert is_valid_hol(S, out.alpha, out.tau)
    return out


def hol_inverse_arrow(S, h):
    """The groupoid inverse of h: the pointwise-inverted transformation,
    based at the target functor of h."""
    beta = target_premorphism(S, h)
    return HolElement(beta, tuple(S.inv[t] for t in h.tau))


def hol_action(S, s, h):
    """s <| (alpha, tau) = s alpha ((s^-1 s) tau)."""
    pos = S.idempotent_position
    return S.mul[h.alpha[s]][h.tau[pos[S.mul[S.inv[s]][s]]]]


def enumerate_holomorph(S, prems=None, budget=None, tau_cap=DEFAULT_TAU_CAP):
    """All pairs (alpha, tau) satisfying the holomorph conditions.

    For each premorphism the tau candidates at idempotent e are the elements
    t with t t^-1 = e alpha; the sweep assigns idempotents in order and
    prunes on the order condition.  Output is sorted by (alpha, tau).
    """
    if prems is None:
        prems = enumerate_premorphisms(S) if budget is None else enumerate_premorphisms(S, budget=budget)
    mul, inv = S.mul, S.inv
    E = S.idempotents
    leq = S.natural_order().leq
    rclass = {}
    for e in E:
        rclass[e] = [t for t in range(S.size) if mul[t][inv[t]] == e]

    out = []
    for m in prems:
        alpha = m.theta if isinstance(m, ElementMap) else tuple(m)
        cands = [rclass[alpha[e]] for e in E]
        total = 1
        for c in cands:
            total *= len(c)
            if total > tau_cap:
                raise SizeCap(total, tau_cap)
        tau = [0] * len(E)

        def rec(i):
            if i == len(E):
                out.append(HolElement(alpha, tuple(tau)))
                return
            for t in cands[i]:
                ok = True
                for j in range(i):
                    if leq(E[j], E[i]) and not leq(tau[j], t):
                        ok = False
                        break
                    if leq(E[i], E[j]) and not leq(t, tau[j]):
                        ok = False
                        break
                if ok:
                    tau[i] = t
                    rec(i + 1)

        rec(0)
    out.sort(key=lambda h: (h.alpha, h.tau))
    return out


def holomorph_units(S, hol=None):
    """Invertible elements of (Hol, diamond): the classical holomorph when S
    is a group."""
    if hol is None:
        hol = enumerate_holomorph(S)
    index = {h: i for i, h in enumerate(hol)}
    e = index[hol_identity(S)]
    table = [
        [index[hol_diamond(S, a, b, check=False)] for b in hol] for a in hol
    ]
    units = []
    for i in range(len(hol)):
        if any(table[i][j] == e and table[j][i] == e for j in range(len(hol))):
            units.append(hol[i])
    return units


def verify_hol_monoid(S, hol=None):
    """Diamond is associative with (id, e -> e) as two-sided identity; the
    action by alpha then tau is a genuine monoid action; tau is recoverable
    from its values on maximal idempotents."""
    rep = CheckReport(f"holomorph monoid laws on {S!r}")
    if hol is None:
        hol = enumerate_holomorph(S)
    index = {h: i for i, h in enumerate(hol)}
    n = len(hol)
    rep.add("element_count", True, detail=f"|pairs| = {n}")

    ident = hol_identity(S)
    w = None
    if ident not in index:
        w = "identity pair is missing"
    else:
        for h in hol:
            if hol_diamond(S, ident, h) != h or hol_diamond(S, h, ident) != h:
                w = f"identity law fails at {h}"
                break
    rep.add("two_sided_identity", w is None, w)

    table = [[index[hol_diamond(S, a, b, check=False)] for b in hol] for a in hol]
    w = None
    for i in range(n):
        for j in range(n):
            tij = table[i][j]
            for k in range(n):
                if table[tij][k] != table[i][table[j][k]]:
                    w = f"associativity fails at ({i},{j},{k})"
                    break
            if w:
                break
        if w:
            break
    rep.add("diamond_associative", w is None, w)

    w = None
    for s in range(S.size):
        for i in range(n):
            for j in range(n):
                lhs = hol_action(S, s, hol[table[i][j]])
                rhs = hol_action(S, hol_action(S, s, hol[i]), hol[j])
                if lhs != rhs:
                    w = f"action property fails at s={s}, pair ({i},{j})"
                    break
            if w:
                break
        if w:
            break
    rep.add("monoid_action", w is None, w)

    # tau is pinned down by its values at maximal idempotents via restriction
    leq = S.natural_order().leq
    E = S.idempotents
    pos = S.idempotent_position
    maximal = [e for e in E if not any(leq(e, f) and e != f for f in E)]
    w = None
    for h in hol:
        for e in E:
            ms = [m for m in maximal if leq(e, m)]
            if not ms:
                w = f"idempotent {e} below no maximal idempotent"
                break
            rebuilt = S.mul[h.alpha[e]][h.tau[pos[ms[0]]]]
            if rebuilt != h.tau[pos[e]]:
                w = f"tau of {h} not recovered at idempotent {e}"
                break
        if w:
            break
    rep.add("tau_from_maximal_idempotents", w is None, w)
    return rep


def verify_interchange(S, hol=None):
    """Both compositions interact by the interchange law on every quadruple
    whose two groupoid composites are defined."""
    rep = CheckReport(f"interchange law on {S!r}")
    if hol is None:
        hol = enumerate_holomorph(S)
    n = len(hol)
    index = {h: i for i, h in enumerate(hol)}
    targets = [target_premorphism(S, h) for h in hol]
    by_alpha = {}
    for i, h in enumerate(hol):
        by_alpha.setdefault(h.alpha, []).append(i)

    pairs = []
    gcomp = {}
    for i in range(n):
        for j in by_alpha.get(targets[i], []):
            c = hol_groupoid_compose(S, hol[i], hol[j])
            pairs.append((i, j))
            gcomp[(i, j)] = index[c]
    rep.add("composable_pairs", True, detail=f"{len(pairs)} composable pairs")

    dia = [[index[hol_diamond(S, a, b, check=False)] for b in hol] for a in hol]
    w = None
    checked = 0
    for (i, j) in pairs:
        for (k, l) in pairs:
            left = dia[gcomp[(i, j)]][gcomp[(k, l)]]
            a, b = dia[i][k], dia[j][l]
            right = gcomp.get((a, b))
            if right is None:
                c = hol_groupoid_compose(S, hol[a], hol[b])
                right = index[c] if c is not None else None
            checked += 1
            if right is None or left != right:
                w = f"quadruple ({i},{j},{k},{l})"
                break
        if w:
            break
    rep.add(
        "interchange_law",
        w is None,
        w,
        detail=f"{checked} quadruple(s) checked",
    )
    return rep


# ---------------------------------------------------------------------------
# the inverse-monoid form


def mon_hol(M, prems=None):
    """Pairs (alpha, m) with m m^-1 = 1 alpha, the compressed form of the
    holomorph available when M has an identity."""
    if M.identity is None:
        raise NotMonoid("structure has no identity element")
    if prems is None:
        prems = enumerate_premorphisms(M)
    mul, inv = M.mul, M.inv
    out = []
    for p in prems:
        alpha = p.theta
        top = alpha[M.identity]
        for m in range(M.size):
            if mul[m][inv[m]] == top:
                out.append(MonHolElement(alpha, m))
    out.sort(key=lambda h: (h.alpha, h.m))
    return out


def mon_diamond(M, a, b):
    """(alpha, m) <> (beta, n) = (alpha beta, (m beta) n)."""
    alpha = tuple(b.alpha[a.alpha[x]] for x in range(M.size))
    return MonHolElement(alpha, M.mul[b.alpha[a.m]][b.m])


def mon_action(M, t, a):
    return M.mul[a.alpha[t]][a.m]


def mon_from_hol(M, h):
    return MonHolElement(h.alpha, h.tau[M.idempotent_position[M.identity]])


def hol_from_mon(M, a):
    tau = tuple(M.mul[a.alpha[e]][a.m] for e in M.idempotents)
    return HolElement(a.alpha, tau)


def verify_mon_hol(M, hol=None, mon=None):
    """The compressed pairs biject with the full pairs, the diamonds agree
    under the bijection, and the compressed diamond is associative."""
    rep = CheckReport(f"inverse-monoid holomorph form on {M!r}")
    if hol is None:
        hol = enumerate_holomorph(M)
    if mon is None:
        mon = mon_hol(M)
    rep.add(
        "counts_match",
        len(hol) == len(mon),
        None if len(hol) == len(mon) else f"{len(hol)} != {len(mon)}",
        detail=f"{len(mon)} compressed pairs",
    )

    w = None
    hol_set = set(hol)
    for a in mon:
        h = hol_from_mon(M, a)
        if h not in hol_set or not is_valid_hol(M, h.alpha, h.tau):
            w = f"expansion of {a} is not a holomorph pair"
            break
        if mon_from_hol(M, h) != a:
            w = f"round trip fails at {a}"
            break
    if w is None:
        for h in hol:
            if hol_from_mon(M, mon_from_hol(M, h)) != h:
                w = f"tau of {h} is not determined by its identity value"
                break
    rep.add("bijection", w is None, w)

    w = None
    for a in mon:
        for b in mon:
            lhs = hol_from_mon(M, mon_diamond(M, a, b))
            rhs = hol_diamond(M, hol_from_mon(M, a), hol_from_mon(M, b))
            if lhs != rhs:
                w = f"diamonds disagree at ({a},{b})"
                break
        if w:
            break
    rep.add("diamonds_agree", w is None, w)

    w = None
    for a in mon:
        for b in mon:
            ab = mon_diamond(M, a, b)
            for c in mon:
                if mon_diamond(M, ab, c) != mon_diamond(M, a, mon_diamond(M, b, c)):
                    w = f"associativity fails at ({a},{b},{c})"
                    break
            if w:
                break
        if w:
            break
    rep.add("compressed_diamond_associative", w is None, w)

    w = None
    for t in range(M.size):
        for a in mon:
            if mon_action(M, t, a) != hol_action(M, t, hol_from_mon(M, a)):
                w = f"actions disagree at t={t}, {a}"
                break
        if w:
            break
    rep.add("actions_agree", w is None, w)
    return rep
