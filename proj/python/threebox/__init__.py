"""Exact statistics, classicality verdicts and wager simulation for
three-box pre/post-selection experiments.

Probabilities cross the C++ boundary as exact fraction strings; the helpers
here decode JSON payloads and turn probabilities into ``fractions.Fraction``
where that is lossless.
"""

import json
from fractions import Fraction

try:
    from ._threebox import (
        Model,
        ParseError,
        builtin,
        builtin_names,
        load_model,
        model_from_json,
        model_to_json,
        save_model,
        validate,
    )
    from . import _threebox as _core
except ImportError:  # pragma: no cover - build-tree layout
    from _threebox import (
        Model,
        ParseError,
        builtin,
        builtin_names,
        load_model,
        model_from_json,
        model_to_json,
        save_model,
        validate,
    )
    import _threebox as _core

__all__ = [
    "Model",
    "ParseError",
    "builtin",
    "builtin_names",
    "load_model",
    "model_from_json",
    "model_to_json",
    "save_model",
    "validate",
    "analyze",
    "sequence_distribution",
    "play",
    "settle",
    "umpire",
    "cheat_check",
]


def _model(model):
    return builtin(model) if isinstance(model, str) else model


def sequence_distribution(model, labels, prep=""):
    """Exact joint distribution of a measurement sequence.

    Returns ``{"outcome,outcome,...": Fraction}``.
    """
    raw = _core.sequence_distribution(_model(model), list(labels), prep)
    return {key: Fraction(value) for key, value in raw.items()}


def analyze(model, prep=""):
    """Full classicality report as a dict (fractions kept as strings)."""
    return json.loads(_core.report_json(_model(model), prep))


def play(model, strategy="probe", rounds=1000, seed=1):
    """Simulate the wager; returns the transcript as a dict."""
    return json.loads(_core.play_json(_model(model), strategy, rounds, seed))


def settle(model, strategy="probe", rounds=1000, seed=1, odds=1.0):
    """Simulate and settle the wager; returns ledger totals as a dict."""
    return json.loads(_core.ledger_json(_model(model), strategy, rounds, seed, odds))


def umpire(model, rounds=3000, seed=1):
    """Compare post-selection rates across Bob's choices."""
    return json.loads(_core.umpire_json(_model(model), rounds, seed))


def cheat_check(model, rounds=2000, seed=1):
    """Run the double-check protocol in both orders."""
    return json.loads(_core.cheat_check_json(_model(model), rounds, seed))
