"""Exact piecewise-linear arithmetic in Thompson's group F and a checked construction
of two-generated markings that are nearly free but not free."""

from .dyadic import Dyadic
from .plmap import IDENTITY, Interval, PLMap, compose, evaluate, invert, support
from .words import Letter, ParseError, Word, enumerate_reduced, parse, reduce, word_to_map
from .normalform import NormalForm, nf_equal, to_normal_form
from .construct import GeneratorSet, Params, build_generators, the_defs

__all__ = [
    "Dyadic",
    "IDENTITY",
    "Interval",
    "PLMap",
    "compose",
    "evaluate",
    "invert",
    "support",
    "Letter",
    "ParseError",
    "Word",
    "enumerate_reduced",
    "parse",
    "reduce",
    "word_to_map",
    "NormalForm",
    "nf_equal",
    "to_normal_form",
    "GeneratorSet",
    "Params",
    "build_generators",
    "the_defs",
]
