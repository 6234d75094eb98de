"""Desk-scale size caps, overridable from the CLI."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Caps:
    """Bounds keeping every construction desk-sized.

    ``max_total_letters`` bounds z + N + p' + q for the complex builders;
    ``char_table_max_n`` bounds symmetric-group character tables.
    """

    max_total_letters: int = 10
    char_table_max_n: int = 8


DEFAULT_CAPS = Caps()
