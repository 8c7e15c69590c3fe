"""Noncommutative polynomials in ``a, b`` or ``c, d`` with exact rational coefficients."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]

ALPHABETS = {"ab": ("a", "b"), "cd": ("c", "d")}


class NCPolyError(ValueError):
    pass


class NCPoly:
    """Sparse map from words (strings over a two-letter alphabet) to nonzero rationals."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: str, terms: Mapping[str, Coeff] | Iterable[tuple[str, Coeff]] = ()):
        if alphabet not in ALPHABETS:
            raise NCPolyError(f"unknown alphabet {alphabet!r}")
        letters = set(ALPHABETS[alphabet])
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[str, Fraction] = {}
        for word, coeff in items:
            if not set(word) <= letters:
                raise NCPolyError(f"word {word!r} uses letters outside {alphabet!r}")
            clean[word] = clean.get(word, Fraction(0)) + Fraction(coeff)
        self.alphabet = alphabet
        self.terms = {w: c for w, c in clean.items() if c != 0}

    @classmethod
    def zero(cls, alphabet: str) -> "NCPoly":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: str) -> "NCPoly":
        return cls(alphabet, {"": 1})

    @classmethod
    def letter(cls, alphabet: str, ch: str) -> "NCPoly":
        return cls(alphabet, {ch: 1})

    # -- arithmetic -----------------------------------------------------------------

    def _coerce(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            if other.alphabet != self.alphabet:
                raise NCPolyError("cannot combine polynomials over different alphabets")
            return other
        if isinstance(other, (int, Fraction)):
            return NCPoly(self.alphabet, {"": other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NCPoly(self.alphabet, list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NCPoly(self.alphabet, {w: c * other for w, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[str, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return NCPoly(self.alphabet, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, k: Coeff) -> "NCPoly":
        return self * (Fraction(1) / Fraction(k))

    def __pow__(self, n: int) -> "NCPoly":
        out = NCPoly.one(self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = NCPoly(self.alphabet, {"": other})
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- structure ------------------------------------------------------------------

    def coeff(self, word: str) -> Fraction:
        return self.terms.get(word, Fraction(0))

    def word_degree(self, word: str) -> int:
        if self.alphabet == "cd":
            return len(word) + word.count("d")
        return len(word)

    def degrees(self) -> set[int]:
        return {self.word_degree(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if not degs:
            return -1
        return max(degs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def reverse(self) -> "NCPoly":
        return NCPoly(self.alphabet, {w[::-1]: c for w, c in self.terms.items()})

    def sorted_terms(self) -> list[tuple[str, Fraction]]:
        """Degree, then word length descending (fewer ``d``), then lexicographic."""
        return sorted(self.terms.items(), key=lambda wc: (-self.word_degree(wc[0]), -len(wc[0]), wc[0]))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"NCPoly({self.alphabet!r}, {format_poly(self)!r})"


def _format_word(word: str) -> str:
    if not word:
        return ""
    parts = []
    for m in re.finditer(r"(.)\1*", word):
        run = m.group(0)
        parts.append(run[0] if len(run) == 1 else f"{run[0]}^{len(run)}")
    return "*".join(parts)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: NCPoly) -> str:
    """Canonical text, e.g. ``c^3 + 2*c*d + 2*d*c``."""
    if not p.terms:
        return "0"
    out = []
    for k, (word, c) in enumerate(p.sorted_terms()):
        mag = abs(c)
        w = _format_word(word)
        if not w:
            body = _format_coeff(mag)
        elif mag == 1:
            body = w
        else:
            body = f"{_format_coeff(mag)}*{w}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR = re.compile(r"(\d+(?:/\d+)?)|([a-z])(?:\^(\d+))?")


def parse(text: str, alphabet: str | None = None) -> NCPoly:
    """Inverse of :func:`format_poly`; accepts terms in any order and implicit products like ``cd``."""
    text = text.strip()
    if not text:
        raise NCPolyError("empty polynomial")
    letters_seen = set(re.findall(r"[a-z]", text))
    if alphabet is None:
        alphabet = "ab" if letters_seen & {"a", "b"} else "cd"
    allowed = set(ALPHABETS[alphabet])
    if not letters_seen <= allowed:
        raise NCPolyError(f"letters {sorted(letters_seen - allowed)} not in alphabet {alphabet!r}")
    terms: list[tuple[str, Fraction]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise NCPolyError(f"cannot parse {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        word = ""
        body = m.group(2).replace(" ", "")
        if not body or "**" in body or body.startswith("*") or body.endswith("*"):
            raise NCPolyError(f"bad term {m.group(2)!r}")
        flat = body.replace("*", "")
        at = 0
        for fm in _FACTOR.finditer(flat):
            if fm.start() != at:
                break
            if fm.group(1):
                coeff *= Fraction(fm.group(1))
            else:
                word += fm.group(2) * int(fm.group(3) or 1)
            at = fm.end()
        if at != len(flat):
            raise NCPolyError(f"bad term {m.group(2)!r}")
        terms.append((word, coeff))
        pos = m.end()
    return NCPoly(alphabet, terms)


def expand_cd(p: NCPoly) -> NCPoly:
    """Substitute ``c = a + b`` and ``d = ab + ba``."""
    if p.alphabet != "cd":
        raise NCPolyError("expand_cd expects a cd-polynomial")
    out: dict[str, Fraction] = {}
    for word, coeff in p.terms.items():
        for w, k in _expand_word(word).items():
            out[w] = out.get(w, Fraction(0)) + coeff * k
    return NCPoly("ab", out)


@lru_cache(maxsize=None)
def _expand_word(word: str) -> dict[str, int]:
    if not word:
        return {"": 1}
    head = ("a", "b") if word[0] == "c" else ("ab", "ba")
    out: dict[str, int] = {}
    for tail, k in _expand_word(word[1:]).items():
        for h in head:
            out[h + tail] = out.get(h + tail, 0) + k
    return out


def cd_monomials(n: int) -> list[str]:
    """All cd-words of degree ``n`` (``deg c = 1``, ``deg d = 2``)."""
    if n < 0:
        return []
    if n == 0:
        return [""]
    out = ["c" + w for w in cd_monomials(n - 1)]
    if n >= 2:
        out += ["d" + w for w in cd_monomials(n - 2)]
    return sorted(out)


def _derivation(p: NCPoly, on_c: NCPoly, on_d: NCPoly) -> NCPoly:
    if p.alphabet != "cd":
        raise NCPolyError("derivations act on cd-polynomials")
    out = NCPoly.zero("cd")
    for word, coeff in p.terms.items():
        for i, ch in enumerate(word):
            left = NCPoly("cd", {word[:i]: coeff})
            right = NCPoly("cd", {word[i + 1:]: 1})
            out = out + left * (on_c if ch == "c" else on_d) * right
    return out


def derivation_G(p: NCPoly) -> NCPoly:
    return _derivation(p, NCPoly("cd", {"d": 1}), NCPoly("cd", {"cd": 1}))


def derivation_Gprime(p: NCPoly) -> NCPoly:
    return _derivation(p, NCPoly("cd", {"d": 1}), NCPoly("cd", {"dc": 1}))


def derivation_D(p: NCPoly) -> NCPoly:
    return derivation_G(p) + derivation_Gprime(p)
