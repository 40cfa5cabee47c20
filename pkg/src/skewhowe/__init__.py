"""Random Young diagrams under the skew Howe measure and the Jacobi Unitary Ensemble."""

__version__ = "0.1.0"
