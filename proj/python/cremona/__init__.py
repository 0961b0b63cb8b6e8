"""Exact plane Cremona maps over the rationals.

Maps, points and words are passed as text in the formats of the
``cremona`` command-line tool, for example ``"sigma3"``,
``"[y*z : x*z : x*y]"``, ``"lin(1,0,0;0,1,1;0,0,1)"`` or ``"[1:2:3]"``.
Domain errors raise :class:`CremonaError`; the message starts with the
error name, e.g. ``"NotDeJonquieres: ..."``.
"""

from ._cremona import (
    CremonaError,
    apply,
    basepoints,
    classify,
    decompose_dj,
    degree,
    factor,
    factor_dj,
    fbullet,
    inverse,
    is_dejonquieres,
    reduce_word,
    system,
    verify_presentation,
)
from ._cremona import compose as _compose


def compose(*maps: str) -> str:
    """Product of the maps, leftmost applied last."""
    return _compose(list(maps))


__all__ = [
    "CremonaError",
    "apply",
    "basepoints",
    "classify",
    "compose",
    "decompose_dj",
    "degree",
    "factor",
    "factor_dj",
    "fbullet",
    "inverse",
    "is_dejonquieres",
    "reduce_word",
    "system",
    "verify_presentation",
]
