"""Super Macdonald polynomials and the gl(1|1) toroidal charges, exactly."""

__version__ = "0.1.0"
