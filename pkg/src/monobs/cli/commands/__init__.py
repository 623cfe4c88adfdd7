"""Command modules; each exposes register(subparsers, common)."""

from . import invariants, roots, selftest

COMMAND_MODULES = [invariants, roots, selftest]
