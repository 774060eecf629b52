"""Flag-orbit structure of equivelar toroids by exact lattice computation."""

__version__ = "0.1.0"
