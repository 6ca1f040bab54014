"""Symbolic canonical form of two-layer networks and complete prefix sets.

A connected two-layer network is written as a *word* over {0,1,2}: walking
the unique maximal path of the component, each channel contributes '0' if it
is untouched by the first layer (a free channel), '2' if it is the lower
endpoint of its first-layer comparator and '1' if it is the upper endpoint.
Components come in four shapes:

* head  -- odd channel count, one free channel; the word starts with '0'.
* stick -- even count, no free channel, two channels unused in layer 2.
* cycle -- even count, every channel used in both layers; tagged with ``c``.
* tail  -- even count, two free channels; the word starts and ends with '0'.

A whole two-layer network is a *sentence*: the lexicographically sorted
multiset of its component words, e.g. ``(012,0120,1221,1221c)``.  Equal
sentences mean equal networks up to channel permutation, which is what makes
sentence enumeration a complete, symmetry-reduced prefix generator.

Words are plain strings (cycles carry a trailing ``c``); sentences are sorted
tuples of words.  Ordinary string comparison gives the intended order since
``'0' < '1' < '2' < 'c'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from sortnetsat.networks import Comparator, Network

Word = str
Sentence = tuple[Word, ...]

HEAD, STICK, CYCLE, TAIL = "head", "stick", "cycle", "tail"

_SWAP12 = str.maketrans("12", "21")


class WordError(ValueError):
    """A string is not a grammar-valid word or sentence."""


# ---------------------------------------------------------------------------
# word basics


def _pairs_valid(core: str) -> bool:
    if not core or len(core) % 2:
        return False
    return all(core[t : t + 2] in ("12", "21") for t in range(0, len(core), 2))


def word_kind(word: Word) -> str:
    """Classify a grammar-valid word; raises WordError otherwise."""
    if word.endswith("c"):
        # any pair-valid rotation names the cycle; the canonical one starts 12
        if _pairs_valid(word[:-1]):
            return CYCLE
        raise WordError(f"malformed cycle word {word!r}")
    if word == "0":
        return HEAD
    if word.startswith("0"):
        if word.endswith("0") and len(word) > 1:
            if _pairs_valid(word[1:-1]):
                return TAIL
            raise WordError(f"malformed tail word {word!r}")
        if _pairs_valid(word[1:]):
            return HEAD
        raise WordError(f"malformed head word {word!r}")
    if _pairs_valid(word):
        return STICK
    raise WordError(f"malformed word {word!r}")


def word_channels(word: Word) -> int:
    """Channels covered by the word (the ``c`` tag is not a channel)."""
    return len(word) - 1 if word.endswith("c") else len(word)


def _canonical_cycle_core(core: str) -> str:
    """Smallest word of the cycle class: minimum over all traversals that
    start with a first-layer comparator, i.e. over even rotations of the
    cyclic character sequence in both directions."""
    best = None
    for base in (core, core[::-1]):
        for r in range(0, len(base), 2):
            cand = base[r:] + base[:r]
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def canonical_word(word: Word) -> Word:
    """Canonical representative of the word's equivalence class."""
    kind = word_kind(word)
    if kind == CYCLE:
        return _canonical_cycle_core(word[:-1]) + "c"
    if kind in (STICK, TAIL):
        return min(word, word[::-1])
    return word


def reflect_word(word: Word) -> Word:
    """Word of the mirrored component: swap '1' and '2', re-canonicalize."""
    kind = word_kind(word)
    if kind == CYCLE:
        return _canonical_cycle_core(word[:-1].translate(_SWAP12)) + "c"
    swapped = word.translate(_SWAP12)
    if kind == HEAD:
        return swapped
    return min(swapped, swapped[::-1])


def enumerate_words(channels: int, kind: str) -> list[Word]:
    """All canonical words of one kind covering exactly ``channels`` channels.

    Returns the empty list when the parity does not fit the kind.
    """
    if kind == HEAD:
        if channels % 2 == 0 or channels < 1:
            return []
        if channels == 1:
            return ["0"]
        return sorted(
            "0" + "".join(p) for p in product(("12", "21"), repeat=(channels - 1) // 2)
        )
    if channels % 2 or channels < 2:
        return []
    if kind == STICK:
        cores = {"".join(p) for p in product(("12", "21"), repeat=channels // 2)}
        return sorted({min(c, c[::-1]) for c in cores})
    if kind == TAIL:
        if channels < 4:
            return []
        return ["0" + s + "0" for s in enumerate_words(channels - 2, STICK)]
    if kind == CYCLE:
        out = set()
        for p in product(("12", "21"), repeat=channels // 2 - 1):
            core = "12" + "".join(p)
            out.add(_canonical_cycle_core(core))
        return sorted(w + "c" for w in out)
    raise ValueError(f"unknown word kind {kind!r}")


# ---------------------------------------------------------------------------
# network -> sentence


def _component_word(
    chans: list[int], l1: dict[int, int], l2: dict[int, int]
) -> Word:
    def char(c: int) -> str:
        if c not in l1:
            return "0"
        return "2" if c < l1[c] else "1"

    if len(chans) == 1:
        return "0"
    if not any(c in l1 for c in chans):
        # a single comparator living only in layer 2 acts exactly like the
        # one-comparator first-layer network, which already represents it
        return "12"

    def walk(start: int, first_l1: bool) -> str:
        seq = [start]
        use_l1 = first_l1
        cur = start
        while True:
            nxt = (l1 if use_l1 else l2).get(cur)
            if nxt is None:
                break
            seq.append(nxt)
            cur = nxt
            use_l1 = not use_l1
        return "".join(char(c) for c in seq)

    free = [c for c in chans if c not in l1]
    if len(chans) % 2:
        return walk(free[0], first_l1=False)
    if len(free) == 2:
        return min(walk(free[0], False), walk(free[1], False))
    ends = [c for c in chans if c not in l2]
    if ends:
        return min(walk(ends[0], True), walk(ends[1], True))
    # cycle: try every first-layer comparator in both directions
    best = None
    edges = sorted({(min(c, l1[c]), max(c, l1[c])) for c in chans})
    for a, b in edges:
        for s, t in ((a, b), (b, a)):
            seq = [s, t]
            cur = t
            use_l1 = False
            while len(seq) < len(chans):
                cur = (l1 if use_l1 else l2)[cur]
                seq.append(cur)
                use_l1 = not use_l1
            cand = "".join(char(c) for c in seq)
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best + "c"


def _layer_maps(net: Network) -> tuple[dict[int, int], dict[int, int]]:
    if net.depth > 2:
        raise ValueError(f"symbolic form needs at most two layers, got {net.depth}")
    maps: list[dict[int, int]] = [{}, {}]
    for k in range(min(2, net.depth)):
        for i, j in net.layers[k]:
            maps[k][i] = j
            maps[k][j] = i
    return maps[0], maps[1]


def sentence_of(net: Network) -> Sentence:
    """Canonical sentence of a network with at most two layers."""
    l1, l2 = _layer_maps(net)
    seen: set[int] = set()
    words: list[Word] = []
    for c in range(1, net.n + 1):
        if c in seen:
            continue
        comp = [c]
        seen.add(c)
        stack = [c]
        while stack:
            v = stack.pop()
            for m in (l1, l2):
                w = m.get(v)
                if w is not None and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        words.append(_component_word(sorted(comp), l1, l2))
    return tuple(sorted(words))


def word_of(net: Network) -> Word:
    """Word of a connected network with at most two layers."""
    sent = sentence_of(net)
    if len(sent) != 1:
        raise ValueError(f"network is not connected: components {sent}")
    return sent[0]


# ---------------------------------------------------------------------------
# sentence -> network


def _word_comparators(
    word: Word, base: int
) -> tuple[list[Comparator], list[Comparator]]:
    """Comparators of the word's network on channels base+1..base+channels.

    Free channels take the top of the block; first-layer comparators ladder
    below them, and the path described by the word enters them bottom-up
    ('2' names the lower endpoint of a pair, '1' the upper).
    """
    word_kind(word)  # validate
    cyclic = word.endswith("c")
    core = word[:-1] if cyclic else word
    lead = core.startswith("0")
    trail = lead and len(core) > 1 and core.endswith("0")
    inner = core[1 if lead else 0 : len(core) - (1 if trail else 0)]
    nfree = int(lead) + int(trail)
    m = len(inner) // 2
    pairs = [
        (base + nfree + 2 * k + 1, base + nfree + 2 * k + 2) for k in range(m)
    ]

    def endpoint(pair: Comparator, ch: str) -> int:
        return pair[0] if ch == "2" else pair[1]

    enters = [endpoint(pairs[m - 1 - j], inner[2 * j]) for j in range(m)]
    exits = [endpoint(pairs[m - 1 - j], inner[2 * j + 1]) for j in range(m)]

    def std(a: int, b: int) -> Comparator:
        return (a, b) if a < b else (b, a)

    layer2: list[Comparator] = []
    if lead and m:
        layer2.append(std(base + 1, enters[0]))
    layer2.extend(std(exits[j], enters[j + 1]) for j in range(m - 1))
    if trail:
        layer2.append(std(exits[m - 1], base + 2))
    if cyclic:
        layer2.append(std(exits[m - 1], enters[0]))
    return pairs, layer2


def net_of(sentence: Sentence | str) -> Network:
    """Two-layer network realizing the sentence, word blocks stacked in order."""
    if isinstance(sentence, str):
        sentence = parse_sentence(sentence)
    layer1: list[Comparator] = []
    layer2: list[Comparator] = []
    base = 0
    for word in sentence:
        l1, l2 = _word_comparators(word, base)
        layer1.extend(l1)
        layer2.extend(l2)
        base += word_channels(word)
    return Network.make(base, [layer1, layer2])


def reflect_sentence(sentence: Sentence) -> Sentence:
    """Sentence of the mirrored network; agrees with
    ``sentence_of(reflect(net_of(s)))`` and is an involution."""
    return tuple(sorted(reflect_word(w) for w in sentence))


def format_sentence(sentence: Sentence) -> str:
    return "(" + ",".join(sentence) + ")"


def parse_sentence(text: str) -> Sentence:
    """Parse ``(w1,w2,...)`` (parentheses optional) into a sorted sentence."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    if not body:
        raise WordError(f"empty sentence {text!r}")
    words = tuple(w.strip() for w in body.split(","))
    for w in words:
        word_kind(w)
    return tuple(sorted(words))


# ---------------------------------------------------------------------------
# complete prefix sets


@dataclass(frozen=True)
class PrefixSet:
    n: int
    variant: str
    sentences: tuple[Sentence, ...]

    def __len__(self) -> int:
        return len(self.sentences)


def _normalize_variant(variant: str) -> str:
    key = variant.strip().lower().replace("'", "prime")
    table = {"h": "H", "t": "T", "tprime": "T'", "g": "G"}
    if key not in table:
        raise ValueError(f"unknown prefix variant {variant!r} (H, T, T', G)")
    return table[key]


@lru_cache(maxsize=None)
def _word_pool(n: int) -> tuple[tuple[Word, int, int], ...]:
    """All canonical words on at most n channels as (word, channels, zeros),
    sorted by word string."""
    pool: list[tuple[Word, int, int]] = []
    for length in range(1, n + 1):
        for kind in (HEAD, STICK, CYCLE, TAIL):
            for w in enumerate_words(length, kind):
                pool.append((w, length, w.count("0")))
    pool.sort()
    return tuple(pool)


@lru_cache(maxsize=None)
def _all_sentences(n: int) -> tuple[Sentence, ...]:
    """R(H_n): every multiset of canonical words totalling n channels,
    generated directly in sorted word order so each appears exactly once."""
    pool = _word_pool(n)
    words = [p[0] for p in pool]
    chans = [p[1] for p in pool]
    out: list[Sentence] = []
    acc: list[Word] = []

    def rec(idx: int, remaining: int) -> None:
        if remaining == 0:
            out.append(tuple(acc))
            return
        for t in range(idx, len(words)):
            c = chans[t]
            if c > remaining:
                continue
            acc.append(words[t])
            rec(t, remaining - c)
            acc.pop()

    rec(0, n)
    return tuple(sorted(out))


def _is_second_layer_empty(sentence: Sentence) -> bool:
    return all(w in ("0", "12") for w in sentence)


def generate_prefixes(n: int, variant: str = "T'") -> PrefixSet:
    """Complete symmetry-reduced sets of two-layer prefixes on n channels.

    * ``H``  -- one representative per permutation-equivalence class.
    * ``T``  -- H without redundant comparators (word ``12c``), without the
      empty network, and without prefixes whose second layer is empty.
    * ``T'`` -- T further reduced by reflections (keep the lexicographically
      smaller of a sentence and its mirror).
    * ``G``  -- the H-subset with a maximal first layer.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    variant = _normalize_variant(variant)
    sentences = _all_sentences(n)
    if variant == "H":
        picked = sentences
    elif variant == "G":
        budget = n % 2
        picked = tuple(
            s for s in sentences if sum(w.count("0") for w in s) == budget
        )
    else:
        reduced = [
            s
            for s in sentences
            if "12c" not in s and not _is_second_layer_empty(s)
        ]
        if variant == "T'":
            reduced = [s for s in reduced if s <= reflect_sentence(s)]
        picked = tuple(reduced)
    return PrefixSet(n, variant, picked)


# ---------------------------------------------------------------------------
# closed-form counting (independent of the enumeration above)


def _kind_counts(length: int) -> dict[str, int]:
    return {k: len(enumerate_words(length, k)) for k in (HEAD, STICK, CYCLE, TAIL)}


def _multiset_count(items: list[tuple[int, int]], total: int) -> int:
    """Number of multisets with given (weight, distinct choices) item groups
    summing to ``total``; standard stars-and-bars convolution."""
    dp = [0] * (total + 1)
    dp[0] = 1
    for weight, choices in items:
        if choices == 0 or weight > total:
            continue
        new = [0] * (total + 1)
        for used in range(0, total // weight + 1):
            ways = math.comb(choices + used - 1, used)
            for rest in range(0, total - used * weight + 1):
                if dp[rest]:
                    new[rest + used * weight] += dp[rest] * ways
        dp = new
    return dp[total]


def _pool_items(n: int, drop_redundant: bool, zero_free: bool) -> list[tuple[int, int]]:
    items = []
    for length in range(1, n + 1):
        counts = _kind_counts(length)
        total = 0
        for kind in (HEAD, STICK, CYCLE, TAIL):
            if zero_free and kind in (HEAD, TAIL):
                continue
            c = counts[kind]
            if kind == CYCLE and drop_redundant and length == 2:
                c -= 1  # the redundant-comparator word 12c
            total += c
        if total:
            items.append((length, total))
    return items


def _reflection_orbit_items(n: int, drop_redundant: bool) -> list[tuple[int, int]]:
    """Item groups for reflection-invariant sentences: fixed words count with
    weight l, and each {w, mirror} pair must be used in equal numbers, i.e. as
    a single item of weight 2l."""
    items: list[tuple[int, int]] = []
    for length in range(1, n + 1):
        fixed = 0
        paired = 0
        for kind in (HEAD, STICK, CYCLE, TAIL):
            for w in enumerate_words(length, kind):
                if drop_redundant and w == "12c":
                    continue
                r = reflect_word(w)
                if r == w:
                    fixed += 1
                elif w < r:
                    paired += 1
        if fixed:
            items.append((length, fixed))
        if paired and 2 * length <= n:
            items.append((2 * length, paired))
    return items


def count_prefixes(n: int, variant: str = "T'") -> int:
    """|R(H_n)| / |R(T_n)| / |R(T'_n)| / |R(G_n)| by direct counting.

    Uses stars-and-bars convolutions over the canonical word pool, so it
    scales far beyond what materializing the sets does (n = 26 is instant).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    variant = _normalize_variant(variant)
    if variant == "H":
        return _multiset_count(_pool_items(n, False, False), n)
    if variant == "G":
        if n % 2 == 0:
            return _multiset_count(_pool_items(n, False, True), n)
        zero_free = _pool_items(n, False, True)
        total = 0
        for length in range(1, n + 1, 2):
            heads = len(enumerate_words(length, HEAD))
            if heads:
                total += heads * _multiset_count(zero_free, n - length)
        return total
    # T: drop 12c-containing sentences and those with an empty second layer;
    # the latter are the multisets over {0, 12}, one per number of comparators
    t_count = _multiset_count(_pool_items(n, True, False), n) - (n // 2 + 1)
    if variant == "T":
        return t_count
    invariant = _multiset_count(_reflection_orbit_items(n, True), n) - (n // 2 + 1)
    return (t_count + invariant) // 2
