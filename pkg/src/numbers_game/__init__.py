"""The numbers game on GCM graphs, played with exact rational arithmetic."""

from .core import (BudgetExhausted, Converged, FiringSequence, GameTrace, GcmGraph, GreedyMax,
                   GreedyMin, Position, Prescribed, RandomSeeded, fire, fundamental_position,
                   play_sequence, run_game)

__version__ = "0.1.0"

__all__ = [
    "BudgetExhausted", "Converged", "FiringSequence", "GameTrace", "GcmGraph", "GreedyMax", "GreedyMin",
    "Position", "Prescribed", "RandomSeeded", "fire", "fundamental_position", "play_sequence", "run_game",
]
