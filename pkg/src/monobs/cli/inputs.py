#!/usr/bin/env python3
"""
Argument parsing helpers shared by the command modules.
"""

import argparse
from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple

from ..config.settings import get_ideal_path
from ..core.errors import IdealParseError
from ..core.ideal import MonomialIdeal, parse_ideal


def load_ideal(path: str) -> MonomialIdeal:
    """Read an ideal document from a file, or from the shipped corpus by stem (e.g. 'ex2')."""
    candidate = Path(path)
    if not candidate.exists() and get_ideal_path(path).exists():
        candidate = get_ideal_path(path)
    try:
        text = candidate.read_text()
    except OSError as e:
        raise IdealParseError(f"cannot read ideal file {path}: {e.strerror}") from e
    return parse_ideal(text)


def load_ideal_or_inline(value: Optional[str], nvars: int) -> MonomialIdeal:
    """--J accepts a path or an inline document; absent means (X_1, ..., X_n)."""
    if value is None:
        return MonomialIdeal.maximal(nvars)
    if value.lstrip().startswith("{"):
        return parse_ideal(value)
    return load_ideal(value)


def int_list(text: str) -> Tuple[int, ...]:
    """argparse type for comma separated integers."""
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def rational(text: str) -> Fraction:
    """argparse type for an exact rational "p/q"."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value
