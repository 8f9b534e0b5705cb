"""Integer group rings over a rewriting-system monoid.

``MonoidRingElement`` is an element of ZM keyed by normal forms.
``BiRingElement`` is an element of ZM ⊗ ZM^op keyed by pairs ``(x, y)``,
standing for ``x ⊗ y`` and acting on a bimodule generator ``e`` as ``x e y``.
"""

from __future__ import annotations

from .monoid import multiply


class _FreeAbelian:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __eq__(self, other):
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return type(self)({w: k * v for w, v in self.terms.items()})

    def augmentation(self):
        """Image under the map sending every monoid element to 1."""
        return sum(self.terms.values())

    def __repr__(self):
        return f"{type(self).__name__}({self.terms!r})"

    def _format(self, render, sort_key):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=sort_key, reverse=True):
            c = self.terms[k]
            body = render(k)
            mag = abs(c)
            if body == "1":
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}·{body}"
            if not parts:
                parts.append(text if c > 0 else f"-{text}")
            else:
                parts.append(f"+ {text}" if c > 0 else f"- {text}")
        return " ".join(parts)


class MonoidRingElement(_FreeAbelian):
    __slots__ = ()

    @classmethod
    def of(cls, word, coeff=1):
        return cls({tuple(word): coeff})

    def mul(self, other, rs):
        out = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                k = multiply(a, b, rs)
                out[k] = out.get(k, 0) + x * y
        return MonoidRingElement(out)

    def format(self, rs):
        key = rs.alphabet.shortlex_key
        return self._format(rs.format, key)


class BiRingElement(_FreeAbelian):
    __slots__ = ()

    @classmethod
    def of(cls, left, right, coeff=1):
        return cls({(tuple(left), tuple(right)): coeff})

    def mul(self, other, rs):
        """``(a⊗b)(c⊗d) = ac ⊗ db``: left factors compose left to right,
        right factors right to left."""
        out = {}
        for (a, b), x in self.terms.items():
            for (c, d), y in other.terms.items():
                k = (multiply(a, c, rs), multiply(d, b, rs))
                out[k] = out.get(k, 0) + x * y
        return BiRingElement(out)

    def multiplied_out(self, rs):
        """Image in ZM under ``x ⊗ y ↦ xy``."""
        out = {}
        for (a, b), x in self.terms.items():
            k = multiply(a, b, rs)
            out[k] = out.get(k, 0) + x
        return MonoidRingElement(out)

    def format(self, rs):
        key = rs.alphabet.shortlex_key
        return self._format(lambda k: f"{rs.format(k[0])}⊗{rs.format(k[1])}",
                            lambda k: (key(k[0]), key(k[1])))
