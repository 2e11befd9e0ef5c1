"""candc: exact searchers and certificate checkers for small combinatorial
problems on graphs (colorings, flows, ordered Ramsey numbers)."""

__version__ = "0.1.0"
