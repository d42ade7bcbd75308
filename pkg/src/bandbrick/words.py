"""Strings, bands, substring classification and graph-map counts.

Letters are handled internally as integer codes (see ``Quiver.code``); the
public API trades in :class:`~bandbrick.quiver.Letter` and
:class:`~bandbrick.quiver.Walk`.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import ceil
from typing import Iterator, NamedTuple, Optional, Sequence, Union

from .errors import (
    CheckFailed,
    InvalidInput,
    NotABand,
    NotAString,
    NotClosed,
    NotCyclicallyReduced,
    NotSpecialBiserial,
)
from .quiver import Letter, Presentation, Walk, invert_letters, is_special_biserial

SUBMODULE = "submodule"
QUOTIENT = "quotient"
BOTH = "both"
NEITHER = "neither"


# -- words ------------------------------------------------------------------


def _runs_ok(letters: Sequence[Letter], pres: Presentation) -> bool:
    """No direct run, and no inverted inverse run, contains a relation."""
    if not pres.relations:
        return True
    i, n = 0, len(letters)
    while i < n:
        inv = letters[i].inverse
        j = i
        while j < n and letters[j].inverse == inv:
            j += 1
        run = [x.arrow for x in letters[i:j]]
        if inv:
            run.reverse()
        if pres.contains_relation(run):
            return False
        i = j
    return True


def is_string(w: Walk, pres: Presentation) -> bool:
    return _runs_ok(w.letters, pres)


@dataclass(frozen=True)
class StringWord:
    walk: Walk
    pres: Presentation = field(compare=False, repr=False)

    @property
    def letters(self) -> tuple[Letter, ...]:
        return self.walk.letters

    def __len__(self) -> int:
        return len(self.walk)

    def __str__(self) -> str:
        return str(self.walk)

    @property
    def dimension(self) -> int:
        return len(self.walk) + 1


def make_string(pres: Presentation, w: Union[Walk, str]) -> StringWord:
    if isinstance(w, str):
        w = pres.parse_walk(w)
    if not is_string(w, pres):
        raise NotAString(f"{w} is not a string")
    return StringWord(w, pres)


def _smallest_period(seq: Sequence) -> int:
    n = len(seq)
    for d in range(1, n + 1):
        if n % d == 0 and all(seq[i] == seq[(i + d) % n] for i in range(n)):
            return d
    return n


def _band_ok(letters: tuple[Letter, ...], pres: Presentation) -> bool:
    if not any(x.direct for x in letters) or not any(x.inverse for x in letters):
        return False
    if _smallest_period(letters) != len(letters):
        return False
    k = ceil(max(pres.max_relation_length, 1) / len(letters)) + 1
    return _runs_ok(letters * k, pres)


def is_band(c: Walk, pres: Presentation) -> bool:
    if c.is_trivial:
        return False
    if c.start != c.end:
        raise NotClosed(f"{c} is not closed")
    if c.letters[-1] == c.letters[0].inv():
        raise NotCyclicallyReduced(f"{c} is not cyclically reduced")
    return _band_ok(c.letters, pres)


@dataclass(frozen=True)
class Band:
    """A band; ``letters`` is the reading used for display and module layout."""

    letters: tuple[Letter, ...]
    pres: Presentation = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.letters)

    def rotate(self, r: int) -> "Band":
        r %= len(self.letters)
        return Band(self.letters[r:] + self.letters[:r], self.pres)

    def inverse(self) -> "Band":
        return Band(invert_letters(self.letters), self.pres)

    def vertex(self, gap: int) -> str:
        """Vertex at the gap just before letter ``gap``."""
        return self.pres.quiver.source(self.letters[gap % len(self.letters)])

    @property
    def walk(self) -> Walk:
        return self.pres.quiver.walk(self.letters)


def make_band(pres: Presentation, c: Union[Walk, str, Sequence[Letter]]) -> Band:
    try:
        if isinstance(c, str):
            c = pres.parse_walk(c)
        elif not isinstance(c, Walk):
            c = pres.quiver.walk(c)
        ok = is_band(c, pres)
    except NotABand:
        raise
    except InvalidInput as e:
        raise NotABand(f"{c} is not a band: {e}") from e
    if not ok:
        raise NotABand(f"{c} is not a band")
    return Band(c.letters, pres)


def _canonical_codes(codes: tuple[int, ...]) -> tuple[int, ...]:
    n = len(codes)
    inv = tuple(c ^ 1 for c in reversed(codes))
    return min(min(codes[r:] + codes[:r] for r in range(n)),
               min(inv[r:] + inv[:r] for r in range(n)))


def canonical_band(b: Band) -> Band:
    q = b.pres.quiver
    codes = _canonical_codes(tuple(q.code[x] for x in b.letters))
    return Band(tuple(q.letters[c] for c in codes), b.pres)


def same_band(b: Band, c: Band) -> bool:
    """True iff ``c`` is a rotation of ``b`` or of its inverse."""
    return canonical_band(b).letters == canonical_band(c).letters


def _bands_of_length(pres: Presentation, length: int) -> list[tuple[int, ...]]:
    q = pres.quiver
    out_codes = {v: [q.code[x] for x in q.letters_from(v)] for v in q.vertices}
    src, tgt = q.code_source, q.code_target
    arrow = [x.arrow for x in q.letters]
    found: list[tuple[int, ...]] = []
    maxrel = pres.max_relation_length

    def extend_ok(word: list[int], c: int) -> bool:
        if not pres.relations:
            return True
        inv = c & 1
        run = [c]
        for d in reversed(word[-(maxrel - 1):] if maxrel > 1 else []):
            if d & 1 != inv:
                break
            run.append(d)
        if len(run) < 2:
            return True
        # run is read backwards from the new letter
        if inv:
            return not pres.relation_starts_at_first([arrow[d] for d in run])
        return not pres.relation_ends_at_last([arrow[d] for d in reversed(run)])

    def dfs(word: list[int], first: int):
        if len(word) == length:
            if tgt[word[-1]] == src[word[0]] and word[-1] != word[0] ^ 1:
                codes = tuple(word)
                letters = tuple(q.letters[c] for c in codes)
                if _canonical_codes(codes) == codes and _band_ok(letters, pres):
                    found.append(codes)
            return
        for c in out_codes[tgt[word[-1]]]:
            if c < first or (c ^ 1) < first or c == word[-1] ^ 1:
                continue
            if extend_ok(word, c):
                word.append(c)
                dfs(word, first)
                word.pop()

    # the canonical reading always starts with a direct letter (even code)
    for first in range(0, len(q.letters), 2):
        dfs([first], first)
    return sorted(found)


def iter_bands(pres: Presentation, max_len: int, min_len: int = 2) -> Iterator[Band]:
    """Canonical bands in (length, lexicographic) order, generated lazily by length."""
    q = pres.quiver
    for length in range(max(min_len, 2), max_len + 1):
        for codes in _bands_of_length(pres, length):
            yield Band(tuple(q.letters[c] for c in codes), pres)


def enumerate_bands(pres: Presentation, max_len: int) -> list[Band]:
    return list(iter_bands(pres, max_len))


# -- occurrences ------------------------------------------------------------


def _kind(prev: Optional[Letter], nxt: Optional[Letter]) -> str:
    quotient = (prev is None or prev.inverse) and (nxt is None or nxt.direct)
    submodule = (prev is None or prev.direct) and (nxt is None or nxt.inverse)
    if quotient and submodule:
        return BOTH
    return QUOTIENT if quotient else SUBMODULE if submodule else NEITHER


@dataclass(frozen=True)
class Occurrence:
    """A located substring.  ``start`` is a gap index; for band hosts it is
    taken modulo the band length."""

    host: Union[StringWord, Band] = field(compare=False, repr=False)
    start: int
    length: int
    kind: str
    word: tuple[Letter, ...]
    vertex: str
    inverted: bool = False

    @property
    def is_quotient(self) -> bool:
        return self.kind in (QUOTIENT, BOTH)

    @property
    def is_submodule(self) -> bool:
        return self.kind in (SUBMODULE, BOTH)

    def word_str(self) -> str:
        return " ".join(str(x) for x in self.word) if self.word else f"@{self.vertex}"

    def to_json(self) -> dict:
        return {"start": self.start, "length": self.length, "kind": self.kind,
                "word": self.word_str(), "inverted": self.inverted}


def _word_key(word: tuple[Letter, ...], vertex: str):
    if not word:
        return ("@", vertex)
    return min(word, invert_letters(word))


def _string_windows(w: StringWord) -> Iterator[Occurrence]:
    letters = w.walk.letters
    q = w.pres.quiver
    n = len(letters)
    gaps = [w.walk.start] + [q.target(x) for x in letters]
    for start in range(n + 1):
        for length in range(n - start + 1):
            prev = letters[start - 1] if start > 0 else None
            nxt = letters[start + length] if start + length < n else None
            yield Occurrence(w, start, length, _kind(prev, nxt),
                             letters[start:start + length], gaps[start])


def _band_windows(b: Band, max_len: int, kinds=(QUOTIENT, SUBMODULE)) -> Iterator[Occurrence]:
    letters = b.letters
    n = len(letters)
    for start in range(n):
        prev = letters[start - 1]
        if QUOTIENT in kinds and prev.inverse:
            kind = QUOTIENT
        elif SUBMODULE in kinds and prev.direct:
            kind = SUBMODULE
        else:
            continue
        for length in range(max_len + 1):
            nxt = letters[(start + length) % n]
            if (kind == QUOTIENT and nxt.direct) or (kind == SUBMODULE and nxt.inverse):
                word = tuple(letters[(start + i) % n] for i in range(length))
                yield Occurrence(b, start, length, kind, word, b.vertex(start))


def occurrences(host: Union[StringWord, Band], sub: Union[StringWord, Walk],
                max_len: Optional[int] = None) -> list[Occurrence]:
    """All occurrences of ``sub`` or of its inverse in ``host`` with their kind.

    For a band host the search runs over one representative per shift class
    and over windows up to ``3 * len(band)`` unless ``max_len`` says otherwise.
    """
    walk = sub.walk if isinstance(sub, StringWord) else sub
    target = walk.letters
    inv_target = invert_letters(target)
    out: list[Occurrence] = []
    if isinstance(host, Band):
        n = len(host)
        cap = 3 * n if max_len is None else max_len
        if len(target) > cap:
            return out
        letters = host.letters
        length = len(target)
        for start in range(n):
            word = tuple(letters[(start + i) % n] for i in range(length))
            vertex = host.vertex(start)
            if not target and vertex != walk.start:
                continue
            for inverted, want in ((False, target), (True, inv_target)):
                if word == want and (target or not inverted):
                    kind = _kind(letters[start - 1], letters[(start + length) % n])
                    out.append(Occurrence(host, start, length, kind, word, vertex, inverted))
        return out
    for occ in _string_windows(host):
        if occ.length != len(target):
            continue
        if not target:
            if occ.vertex == walk.start:
                out.append(occ)
            continue
        if occ.word == target:
            out.append(occ)
        elif occ.word == inv_target:
            out.append(Occurrence(host, occ.start, occ.length, occ.kind, occ.word,
                                  occ.vertex, True))
    return out


# -- graph maps -------------------------------------------------------------


class HomPair(NamedTuple):
    """A graph map: a common word, quotient in the source, submodule in the target."""

    word: str
    quotient: Occurrence
    submodule: Occurrence
    inverted: bool

    def to_json(self) -> dict:
        return {"word": self.word, "quotient": self.quotient.to_json(),
                "submodule": self.submodule.to_json(), "inverted": self.inverted}


EndoPair = HomPair


def _pair_up(quotients: list[Occurrence], submodules: list[Occurrence]) -> list[HomPair]:
    by_key: dict = defaultdict(list)
    for s in submodules:
        by_key[_word_key(s.word, s.vertex)].append(s)
    pairs = []
    for qo in quotients:
        for s in by_key.get(_word_key(qo.word, qo.vertex), ()):
            inverted = bool(qo.word) and s.word != qo.word
            pairs.append(HomPair(qo.word_str(), qo, s, inverted))
    return pairs


def string_hom_pairs(v: StringWord, w: StringWord) -> list[HomPair]:
    """Basis of Hom(M(v), M(w)) as graph maps; its size is the hom dimension."""
    quotients = [o for o in _string_windows(v) if o.is_quotient]
    submodules = [o for o in _string_windows(w) if o.is_submodule]
    return _pair_up(quotients, submodules)


def band_hom_pairs(b: Band, c: Band, window: Optional[int] = None) -> list[HomPair]:
    """Graph maps M(b, -, 1) -> M(c, -, 1) given by finite common words.

    Occurrences are recorded modulo the band length on each side.  For the
    same band (up to rotation and inversion) the common words are shorter
    than the band; for different bands they are shorter than
    ``len(b) + len(c) - 1``.  Both bounds are checked on the scanned window.
    """
    same = same_band(b, c)
    if window is None:
        window = 3 * len(b) if same else len(b) + len(c)
    quotients = list(_band_windows(b, window, kinds=(QUOTIENT,)))
    submodules = list(_band_windows(c, window, kinds=(SUBMODULE,)))
    pairs = _pair_up(quotients, submodules)
    bound = len(b) - 1 if same else len(b) + len(c) - 2
    for p in pairs:
        if p.quotient.length > bound:
            raise CheckFailed(f"common word {p.word} of length {p.quotient.length} exceeds {bound}")
    return pairs


def mixed_hom_pairs(src: Union[StringWord, Band], tgt: Union[StringWord, Band]) -> list[HomPair]:
    """Graph maps between a string module and a band module with n = 1.

    Every common word is a substring of the string side, which bounds the
    window scanned on the band side.
    """
    if isinstance(src, Band) == isinstance(tgt, Band):
        raise TypeError("exactly one side must be a band")
    if isinstance(src, Band):
        quotients = list(_band_windows(src, len(tgt), kinds=(QUOTIENT,)))
        submodules = [o for o in _string_windows(tgt) if o.is_submodule]
    else:
        quotients = [o for o in _string_windows(src) if o.is_quotient]
        submodules = list(_band_windows(tgt, len(src), kinds=(SUBMODULE,)))
    return _pair_up(quotients, submodules)


def _assert_letter_multiplicity(b: Band, pairs: list[HomPair]) -> None:
    counts = Counter(x.arrow for x in b.letters)
    for p in pairs:
        for x in p.quotient.word:
            if counts[x.arrow] < 2:
                raise CheckFailed(f"arrow {x.arrow} of endomorphism word {p.word} occurs once in {b}")


def band_endo_pairs(b: Band) -> list[EndoPair]:
    """Nilpotent graph-map endomorphisms of M(b, lambda, 1); the identity is excluded."""
    if not isinstance(b, Band) or not _band_ok(b.letters, b.pres):
        raise NotABand(f"{b} is not a band")
    pairs = band_hom_pairs(b, b, window=3 * len(b))
    _assert_letter_multiplicity(b, pairs)
    return pairs


def is_band_brick(b: Band, check_invariance: bool = True) -> bool:
    pairs = band_endo_pairs(b)
    if check_invariance:
        count = len(pairs)
        for other in (b.rotate(1), b.inverse(), b.inverse().rotate(len(b) // 2)):
            if len(band_hom_pairs(other, other, window=3 * len(b))) != count:
                raise CheckFailed(f"endomorphism count of {b} changes under rotation/inversion")
    return not pairs


def band_hom_dim(b: Band, lam, c: Band, mu) -> int:
    """Combinatorial dim Hom(M(b, lam, 1), M(c, mu, 1))."""
    pairs = len(band_hom_pairs(b, c))
    cb, cc = canonical_band(b).letters, canonical_band(c).letters
    if cb != cc:
        return pairs
    # The identity-type map exists iff the monodromies agree in a common reading.
    orient_b = _orientation_to_canonical(b)
    orient_c = _orientation_to_canonical(c)
    lam_b = lam if orient_b else 1 / lam
    mu_c = mu if orient_c else 1 / mu
    return pairs + (1 if lam_b == mu_c else 0)


def _orientation_to_canonical(b: Band) -> bool:
    canon = canonical_band(b).letters
    n = len(b)
    rots = {b.letters[r:] + b.letters[:r] for r in range(n)}
    return canon in rots


def is_string_brick(w: StringWord) -> bool:
    return len(string_hom_pairs(w, w)) == 1


# -- top and socle ------------------------------------------------------------


class TopSocle(NamedTuple):
    top: Counter
    socle: Counter

    def to_json(self) -> dict:
        return {"top": sorted(self.top.elements()), "socle": sorted(self.socle.elements())}


def top_socle(m: Union[StringWord, Band]) -> TopSocle:
    top: Counter = Counter()
    soc: Counter = Counter()
    if isinstance(m, Band):
        n = len(m)
        for g in range(n):
            kind = _kind(m.letters[g - 1], m.letters[g])
            if kind == QUOTIENT:
                top[m.vertex(g)] += 1
            elif kind == SUBMODULE:
                soc[m.vertex(g)] += 1
        return TopSocle(top, soc)
    for occ in _string_windows(m):
        if occ.length:
            continue
        if occ.is_quotient:
            top[occ.vertex] += 1
        if occ.is_submodule:
            soc[occ.vertex] += 1
    return TopSocle(top, soc)


# -- families and patterns ----------------------------------------------------


def _rotation_order(letters: tuple[Letter, ...]) -> list[int]:
    n = len(letters)
    shaped = [r for r in range(n) if letters[r].direct and letters[r - 1].inverse]
    return shaped + [r for r in range(n) if r not in shaped]


def brick_rotation(b: Band, n: int = 2) -> Optional[int]:
    """First rotation whose powers 1..max(n, 2) are all string bricks.

    Rotations starting with a direct letter and ending with an inverse one
    are tried first.  Cutting ``b`` open creates two boundaries, and a
    prefix or suffix can pick up a kind there that it never has inside
    ``b`` repeated forever, so not every such rotation works.
    """
    letters = b.letters
    q = b.pres.quiver
    for r in _rotation_order(letters):
        rotated = letters[r:] + letters[:r]
        if all(is_string_brick(make_string(b.pres, q.walk(rotated * k))) for k in range(1, max(n, 2) + 1)):
            return r
    return None


def power_string(b: Band, n: int) -> StringWord:
    """``b`` cut open at a fixed rotation and repeated ``n`` times.

    For a brick band the rotation is :func:`brick_rotation`; otherwise, or
    when no rotation qualifies, it is the first one starting direct and
    ending inverse.
    """
    if not isinstance(b, Band) or not _band_ok(b.letters, b.pres):
        raise NotABand(f"{b} is not a band")
    if n < 1:
        raise ValueError("n must be positive")
    letters = b.letters
    r = brick_rotation(b, n) if not band_endo_pairs(b) else None
    if r is None:
        r = _rotation_order(letters)[0]
    rotated = letters[r:] + letters[:r]
    return make_string(b.pres, b.pres.quiver.walk(rotated * n))


class BandPattern(NamedTuple):
    alpha: Letter
    beta: Letter
    v: Walk
    position: int

    @property
    def band_letters(self) -> tuple[Letter, ...]:
        return (self.beta.inv(),) + self.v.letters + (self.alpha,)

    def to_json(self) -> dict:
        return {"alpha": str(self.alpha), "beta": str(self.beta), "v": str(self.v),
                "position": self.position,
                "band": " ".join(str(x) for x in self.band_letters)}


def find_band_subpattern(w: StringWord) -> Optional[BandPattern]:
    """First subword ``alpha beta- v alpha`` with ``beta- v alpha`` a band and
    ``alpha`` not a letter of ``v``.  Present whenever the socle of M(w) has
    at least ``2n + 3`` summands, ``n`` the number of vertices."""
    pres = w.pres
    report = is_special_biserial(pres)
    if not report:
        raise NotSpecialBiserial(report.violation)
    letters = w.letters
    q = pres.quiver
    for i in range(len(letters) - 2):
        alpha, nxt = letters[i], letters[i + 1]
        if not (alpha.direct and nxt.inverse):
            continue
        for j in range(i + 2, len(letters)):
            if letters[j] == alpha:
                inner = letters[i + 2:j]
                band = (nxt,) + inner + (alpha,)
                if _band_ok(band, pres):
                    v = q.walk(inner) if inner else Walk.trivial(q.target(nxt))
                    return BandPattern(alpha, nxt.inv(), v, i)
                break
    return None


def enumerate_strings(pres: Presentation, max_len: int, up_to_inverse: bool = False) -> list[StringWord]:
    """All strings of length <= ``max_len``, trivial ones first, then by length and letters.

    With ``up_to_inverse`` only the lexicographically smaller of ``w`` and its
    inverse is kept (M(w) and M(w-) are isomorphic).
    """
    q = pres.quiver
    found: list[tuple[int, ...]] = []

    def dfs(word: list[Letter]):
        found.append(tuple(q.code[x] for x in word))
        if len(word) == max_len:
            return
        for x in q.letters_from(q.target(word[-1])):
            if x == word[-1].inv():
                continue
            word.append(x)
            if _runs_ok(word[-max(pres.max_relation_length, 1):], pres) if pres.relations else True:
                dfs(word)
            word.pop()

    if max_len >= 1:
        for x in q.letters:
            dfs([x])
    out = [StringWord(Walk.trivial(v), pres) for v in q.vertices]
    seen = set()
    for codes in sorted(found, key=lambda c: (len(c), c)):
        if up_to_inverse:
            inv = tuple(c ^ 1 for c in reversed(codes))
            if inv < codes:
                continue
        if codes in seen:
            continue
        seen.add(codes)
        out.append(StringWord(q.walk(q.letters[c] for c in codes), pres))
    return out
