"""pacheck: a proof kernel and Gödel-numbering workbench for first-order arithmetic."""

__version__ = "0.1.0"
