"""dslkit - executable calculus for special Lagrangian and degenerate special Lagrangian subequations."""
__version__ = "0.1.0"


__all__ = ["__version__"]
