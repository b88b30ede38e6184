"""Exception types shared across the package."""


class InvariantError(RuntimeError):
    """An identity that must hold for every valid input failed.

    Raised when two independent computations of the same quantity disagree
    (lattice index vs. branch multiplicity, cell dimension by three routes,
    the three ray sums of a star resolution, ...). It signals a bug or
    corrupt data, never bad user input.
    """
