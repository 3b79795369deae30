"""Symbolic arithmetic in bicyclic and polycyclic monoids.

Nonzero elements of the n-generator polycyclic monoid are pairs of words
(u, v) standing for u^-1 v; the zero element is represented by None at the
raw-pair level and by PolyElement(n, None) at the API level.  "Suffix" always
means a trailing segment under left concatenation: w = p + u makes u a suffix
of w and puts w below u in the order.  All claims about the infinite monoid
are checked on explicit length windows; every report states its window.
"""

import string
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import AlphabetMismatch, ParseError, WindowExceeded, NotSuffixPreserving
from .report import CheckReport

ALPHABET = string.ascii_lowercase


def letters(n):
    if not 1 <= n <= 26:
        raise ValueError("alphabet size must be between 1 and 26")
    return ALPHABET[:n]


def words_upto(n, L):
    """All words of length <= L, ordered by length then lexicographically."""
    out = [""]
    for k in range(1, L + 1):
        out.extend("".join(w) for w in product(letters(n), repeat=k))
    return out


# ---------------------------------------------------------------------------
# raw pair arithmetic (None is the zero element)


def _mul(x, y):
    if x is None or y is None:
        return None
    u, v = x
    p, q = y
    if v.endswith(p):
        return (u, v[: len(v) - len(p)] + q)
    if p.endswith(v):
        return (p[: len(p) - len(v)] + u, q)
    return None


def _inv(x):
    return None if x is None else (x[1], x[0])


def _heap(a, b, c):
    return _mul(_mul(a, _inv(b)), c)


def word_leq(x, y):
    """Suffix order on E: x <= y iff x = p + y; the zero (None) lies below all."""
    if x is None:
        return True
    if y is None:
        return False
    return x.endswith(y)


def word_meet(x, y):
    """Meet in the suffix order: the lower of two comparable words, else zero."""
    if x is None or y is None:
        return None
    if x.endswith(y):
        return x
    if y.endswith(x):
        return y
    return None


def pair_leq(x, y):
    """(pu, pv) <= (u, v): both components extended by the same prefix."""
    if x is None:
        return True
    if y is None:
        return False
    (u1, v1), (u2, v2) = x, y
    if not (u1.endswith(u2) and v1.endswith(v2)):
        return False
    return u1[: len(u1) - len(u2)] == v1[: len(v1) - len(v2)]


def suffix_leq(x, y):
    """The suffix order, on words (zero as None), raw pairs, or PolyElements."""
    if isinstance(x, PolyElement) or isinstance(y, PolyElement):
        return poly_leq(x, y)
    if isinstance(x, str) or isinstance(y, str):
        return word_leq(x, y)
    return pair_leq(x, y)


def rewrite_mul(x, y):
    """Multiply two normal forms by free rewriting over the presentation.

    The concatenation u^-1 v p^-1 q is written as a signed-letter sequence
    and the rules  z z^-1 -> 1  and  z w^-1 -> 0 (z != w)  are applied until
    none matches; the survivor must be a block of inverses followed by a
    block of plain letters.
    """
    if x is None or y is None:
        return None
    seq = []
    for u, v in (x, y):
        seq.extend((ch, -1) for ch in reversed(u))
        seq.extend((ch, +1) for ch in v)
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            (c1, s1), (c2, s2) = seq[i], seq[i + 1]
            if s1 == +1 and s2 == -1:
                if c1 != c2:
                    return None
                del seq[i : i + 2]
                changed = True
                break
    u = []
    v = []
    for ch, s in seq:
        if s == -1:
            if v:
                raise AssertionError("rewriting left a malformed word")
            u.append(ch)
        else:
            v.append(ch)
    return ("".join(reversed(u)), "".join(v))


@dataclass(frozen=True)
class PolyElement:
    """An element of the polycyclic monoid on n letters; pair None is zero."""

    n: int
    pair: tuple | None

    def is_zero(self):
        return self.pair is None

    def inv(self):
        return PolyElement(self.n, _inv(self.pair))

    def __mul__(self, other):
        return poly_mul(self, other)

    def __str__(self):
        return format_poly(self)


def poly(n, u, v):
    for w in (u, v):
        for ch in w:
            if ch not in letters(n):
                raise AlphabetMismatch(f"letter {ch!r} outside alphabet of size {n}")
    return PolyElement(n, (u, v))


def poly_zero(n):
    return PolyElement(n, None)


def poly_one(n):
    return PolyElement(n, ("", ""))


def poly_mul(x, y):
    if x.n != y.n:
        raise AlphabetMismatch(f"alphabet sizes differ: {x.n} vs {y.n}")
    return PolyElement(x.n, _mul(x.pair, y.pair))


def poly_leq(x, y):
    if x.n != y.n:
        raise AlphabetMismatch(f"alphabet sizes differ: {x.n} vs {y.n}")
    return pair_leq(x.pair, y.pair)


def format_poly(x):
    if x.pair is None:
        return "0"
    u, v = x.pair
    if not u and not v:
        return "1"
    if not u:
        return v
    if not v:
        return f"({u})^-1"
    return f"({u})^-1 {v}"


def poly_window(n, L):
    """The zero element followed by all pairs with components of length <= L."""
    ws = words_upto(n, L)
    return [None] + [(u, v) for u in ws for v in ws]


def verify_poly_window(n, L, report_title=None):
    """Normal-form multiplication against the rewriting rules on a window,
    plus associativity, inverses, idempotents and the order comparison."""
    rep = CheckReport(report_title or f"polycyclic arithmetic, n={n}, window L={L}")
    elems = poly_window(n, L)
    rep.add("window", True, detail=f"{len(elems)} elements, components up to length {L}")

    w = None
    for x in elems:
        for y in elems:
            if _mul(x, y) != rewrite_mul(x, y):
                w = f"{x} * {y}: table {_mul(x, y)} vs rewriting {rewrite_mul(x, y)}"
                break
        if w:
            break
    rep.add("matches_rewriting", w is None, w)

    # associativity via interned product tables and a vectorised sweep
    ids = {}

    def intern(e):
        if e not in ids:
            ids[e] = len(ids)
        return ids[e]

    for e in elems:
        intern(e)
    m = len(elems)
    m1 = np.empty((m, m), dtype=np.int64)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            m1[i, j] = intern(_mul(x, y))
    by_id = {v: k for k, v in ids.items()}
    mid_elems = [by_id[i] for i in range(len(ids))]
    left = np.empty((len(ids), m), dtype=np.int64)
    right = np.empty((m, len(ids)), dtype=np.int64)
    for i, x in enumerate(mid_elems):
        for j, y in enumerate(elems):
            left[i, j] = intern(_mul(x, y))
    for i, x in enumerate(elems):
        for j, y in enumerate(mid_elems):
            right[i, j] = intern(_mul(x, y))
    w = None
    for i in range(m):
        lhs = left[m1[i, :], :]     # lhs[j,k] = (x_i x_j) x_k
        rhs = right[i, m1]          # rhs[j,k] = x_i (x_j x_k)
        if not np.array_equal(lhs, rhs):
            j, k = np.argwhere(lhs != rhs)[0]
            w = f"associativity fails at ({elems[i]},{elems[j]},{elems[k]})"
            break
    rep.add("associative_on_window", w is None, w)

    w = None
    for x in elems:
        if _mul(_mul(x, _inv(x)), x) != x or _inv(_inv(x)) != x:
            w = f"inverse laws fail at {x}"
            break
    rep.add("inverses", w is None, w)

    w = None
    for x in elems:
        idem = _mul(x, x) == x
        expect = x is None or x[0] == x[1]
        if idem != expect:
            w = f"idempotence of {x} is {idem}"
            break
    rep.add("idempotents_are_diagonal", w is None, w)

    # the defining order (via a = a a^-1 b) agrees with suffix comparison
    w = None
    for x in elems:
        for y in elems:
            npo = _mul(_mul(x, _inv(x)), y) == x
            if npo != pair_leq(x, y):
                w = f"order disagreement at ({x},{y})"
                break
        if w:
            break
    rep.add("natural_order_is_suffix_order", w is None, w)
    return rep


# ---------------------------------------------------------------------------
# the bicyclic monoid: pairs of naturals, a^-i a^j


def bicyclic_mul(x, y):
    (i, j), (k, l) = x, y
    m = max(j, k)
    return (i + m - j, l + m - k)


def bicyclic_inv(x):
    return (x[1], x[0])


def bicyclic_to_poly(x):
    return ("a" * x[0], "a" * x[1])


@dataclass(frozen=True)
class AffineNat:
    """x -> x*k + p on the naturals; also the endomorphism sending the
    generator to a^-p a^(p+k)."""

    k: int
    p: int

    def apply_nat(self, x):
        return x * self.k + self.p

    def apply_pair(self, x):
        i, j = x
        return (i * self.k + self.p, j * self.k + self.p)

    def compose(self, other):
        return AffineNat(self.k * other.k, self.p * other.k + other.p)


def bicyclic_endo(k, p):
    if k < 0 or p < 0:
        raise ValueError("parameters must be nonnegative")
    return AffineNat(k, p)


def verify_bicyclic(window=6, param=4):
    """The pair formula, the endomorphism family and its affine composition,
    all validated against single-letter polycyclic rewriting."""
    rep = CheckReport(f"bicyclic monoid, window {window}, parameters up to {param}")
    pairs = [(i, j) for i in range(window + 1) for j in range(window + 1)]

    w = None
    for x in pairs:
        for y in pairs:
            via_words = rewrite_mul(bicyclic_to_poly(x), bicyclic_to_poly(y))
            got = bicyclic_mul(x, y)
            if via_words != bicyclic_to_poly(got):
                w = f"{x} * {y}: pair formula {got} vs rewriting {via_words}"
                break
        if w:
            break
    rep.add("pair_formula_matches_rewriting", w is None, w)

    w = None
    if any(bicyclic_mul((0, 0), x) != x or bicyclic_mul(x, (0, 0)) != x for x in pairs):
        w = "identity (0,0) fails"
    rep.add("identity", w is None, w)

    params = [(k, p) for k in range(param + 1) for p in range(param + 1)]
    w = None
    for k, p in params:
        nu = bicyclic_endo(k, p)
        for x in pairs:
            for y in pairs:
                if nu.apply_pair(bicyclic_mul(x, y)) != bicyclic_mul(
                    nu.apply_pair(x), nu.apply_pair(y)
                ):
                    w = f"(k,p)=({k},{p}) not multiplicative at {x},{y}"
                    break
            if w:
                break
        if w:
            break
    rep.add("endomorphism_family_multiplicative", w is None, w)

    # generator image a -> a^-p a^(p+k) reproduces the formula through powers;
    # the identity pair (0,0) stands for the word a a^-1, not an empty product
    w = None
    for k, p in params:
        nu = bicyclic_endo(k, p)
        gen = (p, p + k)
        for i, j in pairs:
            if i == j == 0:
                acc = bicyclic_mul(gen, bicyclic_inv(gen))
            else:
                acc = None
                for _ in range(i):
                    step = bicyclic_inv(gen)
                    acc = step if acc is None else bicyclic_mul(acc, step)
                for _ in range(j):
                    acc = gen if acc is None else bicyclic_mul(acc, gen)
            if acc != nu.apply_pair((i, j)):
                w = f"(k,p)=({k},{p}): power evaluation differs at ({i},{j})"
                break
        if w:
            break
    rep.add("formula_matches_generator_powers", w is None, w)

    w = None
    for k, p in params:
        for k2, p2 in params:
            comp = bicyclic_endo(k, p).compose(bicyclic_endo(k2, p2))
            if comp != AffineNat(k * k2, p * k2 + p2):
                w = f"affine composition fails at ({k},{p}),({k2},{p2})"
                break
            for x in pairs:
                if comp.apply_pair(x) != bicyclic_endo(k2, p2).apply_pair(
                    bicyclic_endo(k, p).apply_pair(x)
                ):
                    w = f"composite map wrong at {x}"
                    break
            if w:
                break
        if w:
            break
    rep.add("family_composes_as_affine_maps", w is None, w)
    return rep


def bicyclic_hol_check(param=4, window=6):
    """Holomorph pairs of the bicyclic monoid, parameters up to `param` and
    element components up to `window`.

    A pair couples the endomorphism x -> xk+p with a monoid element (l, m);
    the domain condition forces l = p with m free.  The diamond composition,
    evaluated generically in bicyclic arithmetic, must match the semidirect
    composition law; the action law is spot-checked on a smaller sweep.
    """
    rep = CheckReport(f"bicyclic holomorph, parameters up to {param}, window {window}")
    params = [(k, p) for k in range(param + 1) for p in range(param + 1)]

    w = None
    for k, p in params:
        nu = bicyclic_endo(k, p)
        top = nu.apply_pair((0, 0))
        for l in range(window + 1):
            for m in range(window + 1):
                valid = bicyclic_mul((l, m), bicyclic_inv((l, m))) == top
                if valid != (l == p):
                    w = f"(k,p)=({k},{p}): pair ({l},{m}) validity is {valid}"
                    break
            if w:
                break
        if w:
            break
    rep.add("transformation_part_forces_l_eq_p", w is None, w)

    def diamond(e1, e2):
        (a1, m1), (a2, m2) = e1, e2
        return (a1.compose(a2), bicyclic_mul(a2.apply_pair(m1), m2))

    w = None
    for k, p in params:
        for k2, p2 in params:
            for m in range(window + 1):
                for m2 in range(window + 1):
                    a1, a2 = bicyclic_endo(k, p), bicyclic_endo(k2, p2)
                    comp_alpha, comp_m = diamond((a1, (p, m)), (a2, (p2, m2)))
                    want_alpha = AffineNat(k * k2, p * k2 + p2)
                    want_m = (p * k2 + p2, m * k2 + m2)
                    if comp_alpha != want_alpha or comp_m != want_m:
                        w = (
                            f"composition of ((k,p),m)=(({k},{p}),{m}) and "
                            f"(({k2},{p2}),{m2}) gave {comp_alpha},{comp_m}"
                        )
                        break
                if w:
                    break
            if w:
                break
        if w:
            break
    rep.add("diamond_matches_semidirect_product", w is None, w)
    rep.note("free part composes as m k' + m'; the translation p' cancels")

    w = None
    if not bicyclic_hol_identity_check(param):
        w = "identity pair does not compose neutrally"
    rep.add("identity_pair_neutral", w is None, w)

    w = None
    small = [(k, p) for k in range(3) for p in range(3)]
    pairs_w = [(i, j) for i in range(window + 1) for j in range(window + 1)]
    for k, p in small:
        for m in range(3):
            a = bicyclic_endo(k, p)
            for k2, p2 in small:
                for m2 in range(3):
                    b = bicyclic_endo(k2, p2)
                    ca, cm = diamond((a, (p, m)), (b, (p2, m2)))
                    for x in pairs_w:
                        lhs = bicyclic_mul(ca.apply_pair(x), cm)
                        step = bicyclic_mul(a.apply_pair(x), (p, m))
                        rhs = bicyclic_mul(b.apply_pair(step), (p2, m2))
                        if lhs != rhs:
                            w = f"action law fails at x={x}"
                            break
                    if w:
                        break
                if w:
                    break
            if w:
                break
        if w:
            break
    rep.add("action_law", w is None, w)
    return rep


def bicyclic_hol_identity_check(W):
    ident = (bicyclic_endo(1, 0), (0, 0))

    def diamond(e1, e2):
        (a1, m1), (a2, m2) = e1, e2
        return (a1.compose(a2), bicyclic_mul(a2.apply_pair(m1), m2))

    for k in range(W + 1):
        for p in range(W + 1):
            for m in range(W + 1):
                e = (bicyclic_endo(k, p), (p, m))
                if diamond(ident, e) != e or diamond(e, ident) != e:
                    return False
    # translations compose additively
    for m in range(W + 1):
        for m2 in range(W + 1):
            got = diamond((bicyclic_endo(1, 0), (0, m)), (bicyclic_endo(1, 0), (0, m2)))
            if got != (bicyclic_endo(1, 0), (0, m + m2)):
                return False
    return True


# ---------------------------------------------------------------------------
# ordered functions on the idempotents of the polycyclic monoid


@dataclass(frozen=True)
class ConstZero:
    n: int

    def word_image(self, u):
        return None

    @property
    def zero_image(self):
        return None


@dataclass(frozen=True)
class ConstPair:
    """0 -> w and every word -> t, with t a suffix of w."""

    n: int
    w: str
    t: str

    def __post_init__(self):
        if not self.w.endswith(self.t):
            raise ValueError("the word image at zero must lie below the constant")

    def word_image(self, u):
        return self.t

    @property
    def zero_image(self):
        return self.w


@dataclass(frozen=True)
class AffineWordMap:
    """u -> (u sigma) w for an endomorphism sigma given by letter images."""

    n: int
    images: tuple
    w: str

    def word_image(self, u):
        return "".join(self.images[letters(self.n).index(ch)] for ch in u) + self.w

    @property
    def zero_image(self):
        return None


def efun_element_image(fn, x):
    """The self-map of the polycyclic monoid induced by an ordered function
    on idempotents: (u,v) -> (u fn, v fn) and 0 -> the idempotent at 0 fn."""
    if x is None:
        z = fn.zero_image
        return None if z is None else (z, z)
    fu, fv = fn.word_image(x[0]), fn.word_image(x[1])
    if fu is None or fv is None:
        return None
    return (fu, fv)


def efun_equal_on_window(f, g, n, L):
    if f.zero_image != g.zero_image:
        return False
    return all(f.word_image(u) == g.word_image(u) for u in words_upto(n, L))


def compose_efuns(f, g):
    """Apply f, then g, as a concrete function on window points."""

    class _Composite:
        def __init__(self):
            self.n = f.n

        def word_image(self, u):
            m = f.word_image(u)
            return g.zero_image if m is None else g.word_image(m)

        @property
        def zero_image(self):
            z = f.zero_image
            return g.zero_image if z is None else g.word_image(z)

    return _Composite()


def classify_ordered_functor(n, L, zero_image, table):
    """Sort a window-restricted candidate into the constant-zero, constant
    pair, or affine families, or reject it with a witness.

    ``table`` maps every word of length <= L to a word or None; zero_image is
    the candidate value at the zero idempotent (None for zero).  Windowed
    order violations and family misfits are both rejections.
    """
    ws = words_upto(n, L)
    for u in ws:
        if u not in table:
            raise WindowExceeded(f"candidate is missing the word {u!r}")

    def value(x):
        return zero_image if x is None else table[x]

    points = [None] + ws
    for x in points:
        for y in points:
            if word_leq(x, y) and not word_leq(value(x), value(y)):
                return Classification(
                    "not_ordered_functor",
                    witness=f"order violated: {x!r} <= {y!r} but images "
                    f"{value(x)!r} !<= {value(y)!r}",
                )

    if zero_image is None:
        if all(table[u] is None for u in ws):
            return Classification("constant_zero")
        if any(table[u] is None for u in ws):
            nz = next(u for u in ws if table[u] is not None)
            z = next(u for u in ws if table[u] is None)
            return Classification(
                "not_ordered_functor",
                witness=f"{z!r} maps to zero but {nz!r} does not",
            )
        if L < 1:
            return Classification(
                "not_ordered_functor", witness="window too small to fit letter images"
            )
        root = table[""]
        images = []
        for ch in letters(n):
            img = table[ch]
            if not img.endswith(root):
                return Classification(
                    "not_ordered_functor",
                    witness=f"image of {ch!r} does not end with the image of the empty word",
                )
            images.append(img[: len(img) - len(root)])
        cand = AffineWordMap(n, tuple(images), root)
        for u in ws:
            if cand.word_image(u) != table[u]:
                return Classification(
                    "not_ordered_functor",
                    witness=f"letter images do not reproduce the value at {u!r}",
                )
        return Classification("affine", sigma=tuple(images), w=root)

    # nonzero image at zero forces a constant on words
    t = table[""]
    if t is None or any(table[u] != t for u in ws):
        bad = next((u for u in ws if table[u] != t), "")
        return Classification(
            "not_ordered_functor",
            witness=f"zero maps to {zero_image!r} but word values are not constant "
            f"(at {bad!r})",
        )
    if not zero_image.endswith(t):
        return Classification(
            "not_ordered_functor",
            witness=f"value at zero {zero_image!r} is not below the constant {t!r}",
        )
    return Classification("constant_pair", w=zero_image, t=t)


@dataclass(frozen=True)
class Classification:
    kind: str
    sigma: tuple | None = None
    w: str | None = None
    t: str | None = None
    witness: str | None = None

    def describe(self):
        if self.kind == "constant_zero":
            return "constant zero"
        if self.kind == "constant_pair":
            return f"constant pair (0 -> {self.w!r}, words -> {self.t!r})"
        if self.kind == "affine":
            return f"affine (letters -> {self.sigma}, translation {self.w!r})"
        return f"rejected: {self.witness}"


def window_table(fn, n, L):
    return {u: fn.word_image(u) for u in words_upto(n, L)}


def induced_premorphism_check(fn, n, L):
    """The element map of an ordered function satisfies the premorphism
    inequality on the element window: image of a product lies below the
    product of the images."""
    elems = poly_window(n, L)
    for x in elems:
        for y in elems:
            lhs = efun_element_image(fn, _mul(x, y))
            rhs = _mul(efun_element_image(fn, x), efun_element_image(fn, y))
            if not pair_leq(lhs, rhs):
                return f"inequality fails at {x},{y}"
    return None


def premorphism_ideal_check(n=2, L=3, param_len=2, elem_len=2):
    """Composition laws of the constant families and their interaction with
    the affine maps, checked extensionally on the window, plus the induced
    premorphism inequality for representatives of every type."""
    rep = CheckReport(
        f"ordered-function composition laws, n={n}, window L={L}, "
        f"parameters up to length {param_len}"
    )
    ws = [u for u in words_upto(n, param_len)]
    cs = [(w, t) for w in ws for t in ws if w.endswith(t)]
    sigmas = [tuple(letters(n)), tuple("" for _ in range(n))]
    if n >= 2:
        sigmas.append(("aa", "ba") + tuple(letters(n))[2:])
        sigmas.append(("ab", "b") + tuple(letters(n))[2:])
    else:
        sigmas.append(("aa",))
    trans = ["", "a"] + (["ba"] if n >= 2 else [])
    affs = [AffineWordMap(n, imgs, w) for imgs in sigmas for w in trans]

    w = None
    for w1, t1 in cs:
        for w2, t2 in cs:
            got = compose_efuns(ConstPair(n, w1, t1), ConstPair(n, w2, t2))
            if not efun_equal_on_window(got, ConstPair(n, t2, t2), n, L):
                w = f"c({w1!r},{t1!r}) then c({w2!r},{t2!r})"
                break
        if w:
            break
    rep.add("constant_then_constant", w is None, w)

    w = None
    for w1, t1 in cs:
        for af in affs:
            got = compose_efuns(ConstPair(n, w1, t1), af)
            want = ConstPair(n, af.word_image(w1), af.word_image(t1))
            if not efun_equal_on_window(got, want, n, L):
                w = f"c({w1!r},{t1!r}) then affine {af}"
                break
        if w:
            break
    rep.add("constant_then_affine", w is None, w)

    w = None
    for w1, t1 in cs:
        for af in affs:
            got = compose_efuns(af, ConstPair(n, w1, t1))
            if not efun_equal_on_window(got, ConstPair(n, w1, t1), n, L):
                w = f"affine {af} then c({w1!r},{t1!r})"
                break
        if w:
            break
    rep.add("affine_then_constant", w is None, w)

    z = ConstZero(n)
    w = None
    for fn in [z] + affs + [ConstPair(n, a, b) for a, b in cs]:
        if not efun_equal_on_window(compose_efuns(fn, z), z, n, L):
            w = f"{fn} then zero map"
            break
    if w is None:
        for af in affs:
            if not efun_equal_on_window(compose_efuns(z, af), z, n, L):
                w = f"zero map then affine {af}"
                break
    if w is None:
        for a, b in cs:
            got = compose_efuns(z, ConstPair(n, a, b))
            if not efun_equal_on_window(got, ConstPair(n, a, a), n, L):
                w = f"zero map then c({a!r},{b!r}) is not c({a!r},{a!r})"
                break
    rep.add("zero_map_composition", w is None, w)
    rep.note("the zero map absorbs on the right; composing it into a constant "
             "pair yields the constant at that pair's zero value")

    w = None
    for fn in [z] + [ConstPair(n, a, b) for a, b in cs] + affs:
        bad = induced_premorphism_check(fn, n, elem_len)
        if bad:
            w = f"{fn}: {bad}"
            break
    rep.add("induced_maps_are_premorphic", w is None, w,
            detail=f"element window {elem_len}")
    return rep


# ---------------------------------------------------------------------------
# suffix codes and the endomorphism characterisation


def is_suffix_code(words):
    """No word in the set is a proper suffix of another word in the set."""
    ws = sorted(set(words), key=len)
    for i, u in enumerate(ws):
        for v in ws[i + 1 :]:
            if len(v) > len(u) and v.endswith(u):
                return False
    return True


def endo_classification_check(n, sigma_images, w, L):
    """Meet preservation on the window against injectivity plus the suffix
    code condition, in both directions, for the affine map (u sigma) w."""
    af = AffineWordMap(n, tuple(sigma_images), w)
    rep = CheckReport(
        f"endomorphism test for letters->{tuple(sigma_images)} translation {w!r}, "
        f"n={n}, window L={L}"
    )
    ws = words_upto(n, L)

    meet_ok = True
    witness = None
    points = [None] + ws
    for x in points:
        for y in points:
            lhs_arg = word_meet(x, y)
            lhs = None if lhs_arg is None else af.word_image(lhs_arg)
            if x is None or y is None:
                lhs = None
            rhs = word_meet(af.word_image(x) if x is not None else None,
                            af.word_image(y) if y is not None else None)
            if lhs != rhs:
                meet_ok = False
                witness = f"meet mismatch at ({x!r},{y!r}): {lhs!r} vs {rhs!r}"
                break
        if not meet_ok:
            break

    images = ["".join(tuple(sigma_images)[letters(n).index(ch)] for ch in u) for u in ws]
    injective = len(set(images)) == len(images)
    code = is_suffix_code(sigma_images)
    agree = meet_ok == (injective and code)
    rep.add(
        "meet_preserving_iff_injective_suffix_code",
        agree,
        None
        if agree
        else f"meets {'preserved' if meet_ok else 'broken'} but injective={injective}, "
        f"suffix_code={code}; {witness}",
        detail=f"meets {'preserved' if meet_ok else 'not preserved'}; "
        f"injective={injective}, suffix_code={code}",
    )
    if witness and not agree:
        rep.note(witness)
    return rep


# ---------------------------------------------------------------------------
# heap behaviour of the holomorph element types


def _hol_pair_action(fn, m):
    """x -> (x fn) m, the action of a holomorph pair in compressed form."""

    def act(x):
        return _mul(efun_element_image(fn, x), m)

    return act


def _hol_pair_tau(fn, m, e):
    """The transformation part at idempotent e, rebuilt from the compressed
    form: e tau = (e alpha) m."""
    return _mul(efun_element_image(fn, e), m)


def _hol_pair_action_tau_form(fn, m):
    """x -> (x alpha) ((x^-1 x) tau), the uncompressed action formula."""

    def act(x):
        r = None if x is None else _mul(_inv(x), x)
        e = r if x is not None else None
        return _mul(efun_element_image(fn, x), _hol_pair_tau(fn, m, e))

    return act


def _valid_hol_pair(fn, m):
    top = efun_element_image(fn, ("", ""))
    return _mul(m, _inv(m)) == top


def heap_type_check_polycyclic(n=2, L=1, param_len=2, deep_reps=True):
    """Heap behaviour of the three holomorph element families on a window.

    For each representative pair the action map is built generically and
    every heap instance over the element window is compared both ways.  The
    constant-pair family is tested against the stated boundary
    "zero-valued instances survive exactly when w = s = t"; the observed
    boundary is reported alongside.
    """
    rep = CheckReport(
        f"holomorph element heap behaviour, n={n}, element window L={L}, "
        f"parameters up to length {param_len}"
    )
    elems = poly_window(n, L)
    triples = [(a, b, c) for a in elems for b in elems for c in elems]
    rep.add("window", True, detail=f"{len(elems)} elements, {len(triples)} heap instances")

    def heap_split(act):
        """(all nonzero-valued instances preserved, all zero-valued preserved,
        first witnesses)."""
        ok_nz, ok_z = True, True
        w_nz = w_z = None
        for a, b, c in triples:
            val = _heap(a, b, c)
            lhs = act(val)
            rhs = _heap(act(a), act(b), act(c))
            if val is None:
                if lhs != rhs and ok_z:
                    ok_z, w_z = False, f"<{a},{b},{c}> = 0: {lhs} vs {rhs}"
            else:
                if lhs != rhs and ok_nz:
                    ok_nz, w_nz = False, f"<{a},{b},{c}> = {val}: {lhs} vs {rhs}"
        return ok_nz, ok_z, w_nz, w_z

    zact = _hol_pair_action(ConstZero(n), None)
    ok_nz, ok_z, w_nz, w_z = heap_split(zact)
    rep.add("zero_pair_preserves_heap", ok_nz and ok_z, w_nz or w_z)

    ws = words_upto(n, param_len)
    creps = [
        (w, s, t)
        for w in ws
        for s in ws
        if w.endswith(s)
        for t in ws
    ]
    w_nonzero = None
    stated_w = None
    observed = []
    for (w, s, t) in creps:
        fn = ConstPair(n, w, s)
        m = (s, t)
        assert _valid_hol_pair(fn, m)
        act = _hol_pair_action(fn, m)
        ok_nz, ok_z, wit_nz, wit_z = heap_split(act)
        if not ok_nz and w_nonzero is None:
            w_nonzero = f"(c_({w!r},{s!r}), ({s!r},{t!r})): {wit_nz}"
        stated = w == s == t
        if ok_z != stated and stated_w is None:
            stated_w = (
                f"(c_({w!r},{s!r}), ({s!r},{t!r})): zero instances "
                f"{'preserved' if ok_z else 'broken'} but w=s=t is {stated}"
            )
        observed.append(((w, s, t), ok_z))
    rep.add("constant_pairs_preserve_nonzero_instances", w_nonzero is None, w_nonzero)
    rep.add("constant_pair_zero_iff_w_eq_s_eq_t", stated_w is None, stated_w)
    boundary = all(ok == (w == s) for (w, s, t), ok in observed)
    rep.note(
        "observed boundary on this window: zero-valued instances are preserved "
        f"exactly when w = s ({'confirmed' if boundary else 'not confirmed'}); "
        "such pairs act as constant maps"
    )

    w = None
    for wd in ws:
        fn = ConstPair(n, wd, wd)
        m = (wd, wd)
        act = _hol_pair_action(fn, m)
        act2 = _hol_pair_action(ConstPair(n, "", ""), m)
        if any(act(x) != act2(x) for x in elems):
            w = f"w={wd!r}"
            break
    rep.add("diagonal_constant_acts_as_translation", w is None, w)

    sig_reps = [
        tuple(letters(n)),
        ("aa", "ba") if n >= 2 else ("aa",),
        ("ab", "b") if n >= 2 else ("a",),
        ("b", "a") if n >= 2 else ("",),
    ]
    w = None
    for images in sig_reps:
        for u in ["", "a"]:
            for v in ["", "b"[: n - 1] or "a"]:
                fn = AffineWordMap(n, images, u)
                m = (fn.word_image(""), v)
                if not _valid_hol_pair(fn, m):
                    continue
                act = _hol_pair_action(fn, m)
                ok_nz, ok_z, wit_nz, wit_z = heap_split(act)
                preserved = ok_nz and ok_z
                endo = endo_classification_check(n, images, u, max(L + 1, 2))
                inj_code = is_suffix_code(images) and len(
                    {fn.word_image(x) for x in words_upto(n, max(L + 1, 2))}
                ) == len(words_upto(n, max(L + 1, 2)))
                if preserved != inj_code:
                    w = (
                        f"affine letters->{images}, translation {u!r}, m=({u!r},{v!r}): "
                        f"heap {'preserved' if preserved else 'broken'} but "
                        f"endomorphism condition is {inj_code}"
                    )
                    break
            if w:
                break
        if w:
            break
    rep.add("affine_pairs_heap_iff_endomorphism", w is None, w)
    return rep


# ---------------------------------------------------------------------------
# suffix-preserving maps and the twisted product


class SuffixMap:
    """A suffix-preserving self-map of the free monoid, stored on a window.

    The defining property: the image of p + u always ends with the image of
    u.  The prefix-transfer of u sends p to the left-over prefix of the image
    of p + u after the image of u is removed.
    """

    def __init__(self, n, L, table):
        self.n = n
        self.L = L
        self.table = dict(table)
        for u in words_upto(n, L):
            if u not in self.table:
                raise WindowExceeded(f"map is missing the word {u!r} inside its window")
        for u in words_upto(n, L):
            if len(u) >= 1:
                rest = u[1:]
                if not self.table[u].endswith(self.table[rest]):
                    raise NotSuffixPreserving(
                        f"image of {u!r} does not end with the image of {rest!r}"
                    )

    def apply(self, u):
        if len(u) > self.L:
            raise WindowExceeded(f"word {u!r} is outside window {self.L}")
        return self.table[u]

    def transfer(self, u):
        """The prefix-transfer map of u, on the shrunken window."""
        if len(u) > self.L:
            raise WindowExceeded(f"word {u!r} is outside window {self.L}")
        base = self.table[u]
        out = {}
        for p in words_upto(self.n, self.L - len(u)):
            img = self.table[p + u]
            out[p] = img[: len(img) - len(base)]
        return SuffixMap(self.n, self.L - len(u), out)

    def compose(self, other, L_out=None):
        """Apply self, then other; the result lives on the largest window on
        which every intermediate image fits inside the other map's window."""
        if L_out is None:
            L_out = self.L
            for u in words_upto(self.n, self.L):
                if len(u) <= L_out and len(self.table[u]) > other.L:
                    L_out = len(u) - 1
        if L_out < 0:
            raise WindowExceeded("composition has an empty window")
        out = {}
        for u in words_upto(self.n, L_out):
            mid = self.table[u]
            if len(mid) > other.L:
                raise WindowExceeded(
                    f"intermediate image {mid!r} is outside window {other.L}"
                )
            out[u] = other.table[mid]
        return SuffixMap(self.n, L_out, out)

    def agrees_with(self, other, L=None):
        if L is None:
            L = min(self.L, other.L)
        return all(self.table[u] == other.table[u] for u in words_upto(self.n, L))

    @staticmethod
    def identity(n, L):
        return SuffixMap(n, L, {u: u for u in words_upto(n, L)})

    @staticmethod
    def right_translation(n, L, w):
        return SuffixMap(n, L, {u: u + w for u in words_upto(n, L)})

    @staticmethod
    def constant(n, L, t):
        return SuffixMap(n, L, {u: t for u in words_upto(n, L)})

    @staticmethod
    def from_affine(n, L, images, w):
        fn = AffineWordMap(n, tuple(images), w)
        return SuffixMap(n, L, {u: fn.word_image(u) for u in words_upto(n, L)})

    @staticmethod
    def random(n, L, rng, root_len=2, snippet_len=1):
        """Build a random suffix-preserving map down the word tree: the image
        of x + u is an arbitrary prefix glued onto the image of u."""
        table = {"": "".join(rng.choice(letters(n)) for _ in range(rng.randint(0, root_len)))}
        for k in range(1, L + 1):
            for u in words_upto(n, k):
                if len(u) == k:
                    snippet = "".join(
                        rng.choice(letters(n)) for _ in range(rng.randint(0, snippet_len))
                    )
                    table[u] = snippet + table[u[1:]]
        return SuffixMap(n, L, table)

    def __repr__(self):
        return f"<suffix map on {self.n} letters, window {self.L}>"


def zappa_compose(pair1, pair2):
    """(phi, u)(psi, v) = (phi then (u-transfer of psi), (u psi) v)."""
    phi, u = pair1
    psi, v = pair2
    return (phi.compose(psi.transfer(u)), psi.apply(u) + v)


def verify_zappa(n=2, L=3, samples=6, seed=0, store=None):
    """The transfer identities, the product splitting law, associativity of
    the twisted product, and the collapse homomorphism onto suffix maps,
    on randomly sampled suffix maps plus translations and constants."""
    import random as _random

    rng = _random.Random(seed)
    if store is None:
        store = L + 6
    rep = CheckReport(
        f"twisted product of suffix maps, n={n}, window L={L}, "
        f"store {store}, samples {samples}, seed {seed}"
    )
    maps = [SuffixMap.identity(n, store), SuffixMap.right_translation(n, store, "a")]
    if n >= 2:
        maps.append(SuffixMap.from_affine(n, store, ("ba", "b"), "a"))
        maps.append(SuffixMap.constant(n, store, "ab"))
    for _ in range(samples):
        maps.append(SuffixMap.random(n, store, rng))
    words = [u for u in words_upto(n, 2) if u]

    w = None
    for phi in maps:
        for u in words:
            for v in words:
                lhs = phi.transfer(u + v)
                rhs = phi.transfer(v).transfer(u)
                if not lhs.agrees_with(rhs, L):
                    w = f"u={u!r}, v={v!r} on {phi}"
                    break
            if w:
                break
        if w:
            break
    rep.add("transfer_splits_concatenation", w is None, w)

    w = None
    for phi in maps:
        for psi in maps:
            prod = phi.compose(psi)
            for u in words:
                lhs = prod.transfer(u)
                rhs = phi.transfer(u).compose(psi.transfer(phi.apply(u)))
                if not lhs.agrees_with(rhs, min(L, lhs.L, rhs.L)):
                    w = f"u={u!r} on {phi}, {psi}"
                    break
            if w:
                break
        if w:
            break
    rep.add("transfer_of_composite", w is None, w)

    w = None
    for phi in maps:
        for psi in maps:
            prod = phi.compose(psi)
            for u in words_upto(n, min(L, prod.L)):
                if prod.apply(u) != psi.apply(phi.apply(u)):
                    w = f"u={u!r}"
                    break
            if w:
                break
        if w:
            break
    rep.add("action_associates", w is None, w)

    w = None
    for phi in maps:
        for u in words:
            for v in words:
                if len(v + u) > phi.L:
                    continue
                lhs = phi.apply(u + v)
                rhs = phi.transfer(v).apply(u) + phi.apply(v)
                if lhs != rhs:
                    w = f"u={u!r}, v={v!r}"
                    break
            if w:
                break
        if w:
            break
    rep.add("image_of_product_splits", w is None, w)

    w = None
    for phi in maps[:4]:
        for psi in maps[:4]:
            for chi in maps[:4]:
                for u in words[:2]:
                    for v in words[:2]:
                        for x in words[:2]:
                            try:
                                l1 = zappa_compose(zappa_compose((phi, u), (psi, v)), (chi, x))
                                l2 = zappa_compose((phi, u), zappa_compose((psi, v), (chi, x)))
                            except WindowExceeded:
                                continue
                            if l1[1] != l2[1] or not l1[0].agrees_with(
                                l2[0], min(L, l1[0].L, l2[0].L)
                            ):
                                w = f"({phi},{u!r}),({psi},{v!r}),({chi},{x!r})"
                                break
                        if w:
                            break
                    if w:
                        break
                if w:
                    break
            if w:
                break
        if w:
            break
    rep.add("twisted_product_associative", w is None, w)

    w = None
    for v in words:
        for trans in ["", "a", "ab"[: min(2, n)]]:
            rho = SuffixMap.right_translation(n, store, trans)
            if not rho.transfer(v).agrees_with(SuffixMap.identity(n, store - len(v)), L):
                w = f"v={v!r}, w={trans!r}"
                break
        if w:
            break
    rep.add("translations_transfer_trivially", w is None, w)

    w = None
    for phi in maps[:5]:
        for psi in maps[:5]:
            for u in words:
                for v in words:
                    try:
                        zphi, zword = zappa_compose((phi, u), (psi, v))
                        mu_prod = zphi.compose(
                            SuffixMap.right_translation(n, store, zword)
                        )
                        mu_left = phi.compose(SuffixMap.right_translation(n, store, u))
                        mu_right = psi.compose(SuffixMap.right_translation(n, store, v))
                        both = mu_left.compose(mu_right)
                    except WindowExceeded:
                        continue
                    if not mu_prod.agrees_with(both, min(L, mu_prod.L, both.L)):
                        w = f"({phi},{u!r}) ({psi},{v!r})"
                        break
                if w:
                    break
            if w:
                break
        if w:
            break
    rep.add("collapse_map_multiplicative", w is None, w)
    return rep


# ---------------------------------------------------------------------------
# expression parsing for the command line


def parse_poly_expression(text, n):
    """Evaluate an expression over words, "0", "1", "^-1" and "*".

    Juxtaposed atoms multiply, as does "*"; parentheses group.  Returns a
    PolyElement.
    """
    tokens = _tokenize(text, n)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else None

    def take():
        t = tokens[pos[0]]
        pos[0] += 1
        return t

    def parse_expr():
        acc = parse_term()
        while peek() == "*":
            take()
            acc = poly_mul(acc, parse_term())
        return acc

    def parse_term():
        acc = parse_atom()
        while peek() is not None and peek() not in ("*", ")"):
            acc = poly_mul(acc, parse_atom())
        return acc

    def parse_atom():
        t = peek()
        if t is None:
            raise ParseError("unexpected end of expression")
        if t == "(":
            take()
            inner = parse_expr()
            if peek() != ")":
                raise ParseError("missing closing parenthesis")
            take()
            val = inner
        elif t == "0":
            take()
            val = poly_zero(n)
        elif t == "1":
            take()
            val = poly_one(n)
        elif t == ")" or t == "*" or t == "^-1":
            raise ParseError(f"unexpected token {t!r}")
        else:
            take()
            val = poly(n, "", t)
        if peek() == "^-1":
            take()
            val = val.inv()
        return val

    result = parse_expr()
    if pos[0] != len(tokens):
        raise ParseError(f"trailing input at token {pos[0]}: {tokens[pos[0]]!r}")
    return result


def _tokenize(text, n):
    tokens = []
    i = 0
    word_letters = letters(n)
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()*":
            tokens.append(ch)
            i += 1
        elif text.startswith("^-1", i):
            tokens.append("^-1")
            i += 3
        elif ch in "01":
            tokens.append(ch)
            i += 1
        elif ch in word_letters:
            j = i
            while j < len(text) and text[j] in word_letters:
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ParseError(f"bad character {ch!r} at position {i}")
    return tokens
