"""Tokenization, stemming and low-level text statistics.

The tokenizer lowercases and splits on whitespace and punctuation but
keeps punctuation marks as tokens, so '.'/'!'/'?' counts can be read
straight off the token stream. Capitalization-based counts must be
taken from the raw text before tokenizing.
"""

from __future__ import annotations

import re

_TOKEN_RE = re.compile(r"[A-Za-z]+(?:'[A-Za-z]+)*|\d+(?:[.,]\d+)*|[^\w\s]")
_WORD_RE = re.compile(r"[a-z]+(?:'[a-z]+)*$")
_SENT_SPLIT_RE = re.compile(r"\s*[.?!]+[\'\")\]]*\s*")
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")


def tokenize(text: str) -> list[str]:
    """Lowercased word, number and punctuation tokens, in order."""
    return [t.lower() for t in _TOKEN_RE.findall(text)]


def word_tokens(tokens: list[str]) -> list[str]:
    return [t for t in tokens if _WORD_RE.match(t)]


def count_all_caps(text: str) -> int:
    """Fully-uppercase words of length >= 2 in the raw text (shouting)."""
    return sum(
        1
        for t in _TOKEN_RE.findall(text)
        if len(t) >= 2 and t.isalpha() and t.isupper()
    )


def count_syllables(word: str) -> int:
    """Vowel-group syllable estimate with a silent-e correction."""
    word = "".join(ch for ch in word.lower() if ch.isalpha())
    if not word:
        return 0
    groups = _VOWEL_GROUP_RE.findall(word)
    count = len(groups)
    if count > 1 and word.endswith("e") and not word.endswith(("le", "ee")):
        count -= 1
    return max(1, count)


def split_sentences(text: str) -> list[str]:
    return [chunk for chunk in _SENT_SPLIT_RE.split(text) if chunk.strip()]


def count_sentences(text: str) -> int:
    """Sentence count, ignoring fragments of two words or fewer.

    Texts with at least one word always count as one sentence; empty
    text counts as zero.
    """
    chunks = _SENT_SPLIT_RE.split(text)
    words_total = 0
    full = 0
    for chunk in chunks:
        n = len(word_tokens(tokenize(chunk)))
        words_total += n
        if n > 2:
            full += 1
    if words_total == 0:
        return 0
    return max(1, full)


# ---------------------------------------------------------------------------
# Porter stemmer (Porter 1980), used to expand both dialogue tokens and
# lexicon entries so inflected forms match through their shared stem.

_V = "aeiou"


def _is_cons(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _V:
        return False
    if ch == "y":
        return i == 0 or not _is_cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    # number of VC sequences in [C](VC)^m[V]
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        if _is_cons(stem, i):
            if prev_vowel:
                m += 1
            prev_vowel = False
        else:
            prev_vowel = True
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_cons(stem, i) for i in range(len(stem)))


def _ends_double_cons(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_cons(word, len(word) - 1)
    )


def _ends_cvc(word: str) -> bool:
    if len(word) < 3:
        return False
    return (
        _is_cons(word, len(word) - 3)
        and not _is_cons(word, len(word) - 2)
        and _is_cons(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


_STEP2 = (
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
)

_STEP3 = (
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
)

_STEP4 = (
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
)


def _replace_longest(word, rules, min_measure):
    best = None
    for suffix, repl in rules:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best[0])):
            best = (suffix, repl)
    if best is None:
        return word
    stem = word[: len(word) - len(best[0])]
    if _measure(stem) > min_measure - 1:
        return stem + best[1]
    return word


def porter_stem(word: str) -> str:
    word = word.lower()
    if len(word) <= 2 or not word.isalpha():
        return word

    # step 1a
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("ies"):
        word = word[:-2]
    elif not word.endswith("ss") and word.endswith("s"):
        word = word[:-1]

    # step 1b
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            word = word[:-1]
    else:
        for suffix in ("ed", "ing"):
            if word.endswith(suffix) and _has_vowel(word[: -len(suffix)]):
                word = word[: -len(suffix)]
                if word.endswith(("at", "bl", "iz")):
                    word += "e"
                elif _ends_double_cons(word) and word[-1] not in "lsz":
                    word = word[:-1]
                elif _measure(word) == 1 and _ends_cvc(word):
                    word += "e"
                break

    # step 1c
    if word.endswith("y") and _has_vowel(word[:-1]):
        word = word[:-1] + "i"

    word = _replace_longest(word, _STEP2, 1)
    word = _replace_longest(word, _STEP3, 1)

    # step 4: drop the longest matching suffix when the stem is long enough
    best = None
    for suffix in _STEP4:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best)):
            best = suffix
    if best is not None:
        stem = word[: len(word) - len(best)]
        if _measure(stem) > 1 and (best != "ion" or (stem and stem[-1] in "st")):
            word = stem

    # step 5a
    if word.endswith("e"):
        stem = word[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            word = stem

    # step 5b
    if _measure(word) > 1 and _ends_double_cons(word) and word.endswith("l"):
        word = word[:-1]

    return word


def stem_tokens(tokens: list[str]) -> list[str]:
    return [porter_stem(t) for t in tokens]
