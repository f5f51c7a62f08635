"""Second-order logic workbench: codings, proofs and finite semantics."""

__version__ = "0.1.0"
