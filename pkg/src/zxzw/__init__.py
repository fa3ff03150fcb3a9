"""zxzw: exact-arithmetic diagrams for the ZX and ZW graphical calculi."""

__version__ = "0.1.0"
