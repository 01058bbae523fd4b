"""Controlled vocabularies for text-attribute conditions.

Three condition kinds constrain how a piece of rendered text should look:
a color name, a font style drawn from five contrasting pairs, or a named
position on the image.
"""
from __future__ import annotations

COLORS: tuple[str, ...] = (
    "red", "blue", "green", "yellow", "orange", "purple",
    "pink", "brown", "black", "white", "gray", "cyan",
)

# Contrasting style pairs; the two members of a pair must never be asked
# for within the same prompt.
FONT_PAIRS: tuple[tuple[str, str], ...] = (
    ("cursive style", "block style"),
    ("3D style", "flat style"),
    ("sans-serif", "serif"),
    ("upright", "slant"),
    ("rounded", "angular"),
)

FONT_STYLES: tuple[str, ...] = tuple(s for pair in FONT_PAIRS for s in pair)

# Phrase inserted after a quoted text caption when a font condition applies.
FONT_DESCRIPTIONS: dict[str, str] = {
    "cursive style": "in the cursive font style",
    "block style": "in the block font style",
    "3D style": "which are 3D letters",
    "flat style": "which sits flat",
    "sans-serif": "in the sans-serif style",
    "serif": "in the serif style",
    "upright": "in the upright font style",
    "slant": "in the slant font style",
    "rounded": "in the rounded font style",
    "angular": "in the angular font style",
}

POSITIONS: tuple[str, ...] = (
    "top", "bottom", "left", "right",
    "upper left corner", "lower left corner",
    "upper right corner", "lower right corner",
    "center",
)

CONDITION_KINDS: tuple[str, ...] = ("color", "font", "position")


def allowed_values(kind: str) -> tuple[str, ...]:
    """Return the legal condition values for a condition kind."""
    if kind == "color":
        return COLORS
    if kind == "font":
        return FONT_STYLES
    if kind == "position":
        return POSITIONS
    raise ValueError(f"unknown condition kind: {kind!r}")


def font_pair_opposite(style: str) -> str:
    """Return the contrasting style paired with ``style``."""
    for a, b in FONT_PAIRS:
        if style == a:
            return b
        if style == b:
            return a
    raise ValueError(f"unknown font style: {style!r}")
