"""Stanley–Reisner ideals of stacked complexes and the tree ideals behind them."""

__version__ = "0.1.0"
