"""First-order resolution with proof traces, model checking and induction unfolding."""

__version__ = "0.1.0"
