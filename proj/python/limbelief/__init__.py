"""Reasoner for a first-order logic of limited belief.

The heavy lifting happens in the C++ extension `_limbelief`; this package
re-exports its surface.
"""

from _limbelief import Session, minesweeper_benchmark, solve_sudoku

__all__ = ["Session", "minesweeper_benchmark", "solve_sudoku"]
