"""uncmap: train classifiers on 2D projections and map their uncertainty."""

__version__ = "0.1.0"
