"""Second exterior power of the free abelian group on opaque symbols."""

from __future__ import annotations

from typing import Any, Hashable, Iterable, Iterator


def _order_key(symbol: Hashable) -> tuple[str, Any]:
    # total order across mixed symbol types
    return (type(symbol).__name__, symbol if isinstance(symbol, (str, int, tuple)) else repr(symbol))


class WedgeSum:
    """Integer combination of ``a ^ b`` with ``a < b``; immutable once built."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Hashable, Hashable, int]] = ()):
        acc: dict[tuple[Hashable, Hashable], int] = {}
        for a, b, n in terms:
            if a == b or n == 0:
                continue
            if _order_key(a) > _order_key(b):
                a, b, n = b, a, -n
            acc[a, b] = acc.get((a, b), 0) + n
        self._terms = {k: v for k, v in sorted(acc.items(), key=lambda kv: (_order_key(kv[0][0]), _order_key(kv[0][1]))) if v}

    @property
    def terms(self) -> dict[tuple[Hashable, Hashable], int]:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[Hashable, Hashable, int]]:
        for (a, b), n in self._terms.items():
            yield a, b, n

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: WedgeSum) -> WedgeSum:
        return WedgeSum([*self, *other])

    def __neg__(self) -> WedgeSum:
        return self.scale(-1)

    def __sub__(self, other: WedgeSum) -> WedgeSum:
        return self + (-other)

    def scale(self, n: int) -> WedgeSum:
        return WedgeSum((a, b, k * n) for a, b, k in self)

    def __mul__(self, n: int) -> WedgeSum:
        return self.scale(n)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WedgeSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "WedgeSum(0)"
        parts = [f"{n:+d}*({a}^{b})" for (a, b), n in self._terms.items()]
        return "WedgeSum(" + " ".join(parts) + ")"


ZERO = WedgeSum()


def wedge(a: Hashable, b: Hashable) -> WedgeSum:
    return WedgeSum([(a, b, 1)])


def add(x: WedgeSum, y: WedgeSum) -> WedgeSum:
    return x + y


def scale(x: WedgeSum, n: int) -> WedgeSum:
    return x.scale(n)


def is_zero(x: WedgeSum) -> bool:
    return x.is_zero()


def wedge_linear(u: dict[Hashable, int], v: dict[Hashable, int]) -> WedgeSum:
    """Bilinear expansion of ``(sum u_s s) ^ (sum v_t t)``."""
    return WedgeSum((s, t, m * n) for s, m in u.items() for t, n in v.items())
