"""Substitution subshifts, Toeplitz flows, and their bounded speedups.

The native core speaks canonical JSON; :class:`System` parses those documents
into plain Python dictionaries.
"""

import json
from pathlib import Path

from ._toeplitz import AnalysisError, Spec

__all__ = ["AnalysisError", "Spec", "System", "load", "load_file"]


class System:
    """A system specification plus the analyses that run on it."""

    def __init__(self, text):
        self._spec = Spec(text)

    @property
    def has_jump(self):
        return self._spec.has_jump

    def to_dict(self):
        return json.loads(self._spec.to_json())

    def classify(self):
        return json.loads(self._spec.classify())

    def periods(self, depth=8):
        return json.loads(self._spec.periods(depth))

    def kr(self, level):
        return json.loads(self._spec.kr(level))

    def labeling(self):
        return json.loads(self._spec.labeling())

    def minimality(self, depth=6):
        return json.loads(self._spec.minimality(depth))

    def decide(self, mode="substitutive", depth=3, period_bound=0):
        return json.loads(self._spec.decide(mode, depth, period_bound))

    def coboundary(self, level):
        return json.loads(self._spec.coboundary(level))

    def conjugacy(self):
        return json.loads(self._spec.conjugacy())

    def recode_constant(self, c):
        return json.loads(self._spec.recode_constant(c))

    def construct_speedup(self, c, level):
        return System(self._spec.construct_speedup(c, level))

    def factor_onto(self, small, max_shift, check_length=0):
        return json.loads(self._spec.factor_onto(small._spec, max_shift, check_length))


def load(text):
    """Parse a system specification document."""
    return System(text)


def load_file(path):
    """Load a system specification from a JSON file."""
    return System(Path(path).read_text())
