"""Words in a free group as tuples of nonzero signed integers.

Letter ``g + 1`` is the generator with 0-based index ``g``; negation is
inversion.  All operations keep words freely reduced.
"""

from __future__ import annotations

Word = tuple[int, ...]


def reduce_word(letters) -> Word:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def mul(*words: Word) -> Word:
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def inv(w: Word) -> Word:
    return tuple(-x for x in reversed(w))


def conj(w: Word, by: Word) -> Word:
    """by * w * by^{-1}."""
    return mul(by, w, inv(by))


def gen(i: int) -> Word:
    return (i + 1,)


def exponent_sums(w: Word, num_gens: int) -> list[int]:
    out = [0] * num_gens
    for x in w:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return out


def cyclically_reduce(w: Word) -> Word:
    w = reduce_word(w)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w
