"""Full-line regular expression matching with bit-parallel backends."""

from ._rxe import Matcher, PatternError, explain, match, parse, select_backend

__all__ = ["Matcher", "PatternError", "explain", "match", "parse", "select_backend"]
