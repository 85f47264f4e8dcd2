"""Quantum Bayesian nets: embed classical nets, simulate, verify, sample.

Nets travel as JSON strings in the same format the command-line tool reads
and writes; tables and results come back as plain dicts and lists.
"""

from ._qbnets import (
    QbnError,
    bernstein_vazirani,
    deutsch_jozsa,
    embed,
    grover,
    infer,
    microscope,
    sample,
    simon,
    validate,
    verify,
    younes,
)

__all__ = [
    "QbnError",
    "bernstein_vazirani",
    "deutsch_jozsa",
    "embed",
    "grover",
    "infer",
    "microscope",
    "sample",
    "simon",
    "validate",
    "verify",
    "younes",
]

__version__ = "1.0.0"
