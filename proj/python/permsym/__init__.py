"""Permutation symmetry, missing levels and configuration interaction for
exactly solvable coupled-oscillator models."""

import json
import sys

from . import _core
from ._core import (
    Error,
    InfeasibleBasisError,
    NumericalIntegrityError,
    UnboundModelError,
    ci_energies,
    level_energy,
    run,
)

__all__ = [
    "Error",
    "InfeasibleBasisError",
    "NumericalIntegrityError",
    "UnboundModelError",
    "allowed_irreps",
    "character_table",
    "ci",
    "ci_energies",
    "compare",
    "level_energy",
    "levels",
    "main",
    "multiplet_table",
    "run",
    "salc",
]


def character_table(n):
    return json.loads(_core.character_table_json(n))


def multiplet_table(n):
    return json.loads(_core.multiplet_table_json(n))


def allowed_irreps(n, *, constructive=False, xi=0.1, max_n_sym=None):
    """Spatial irreps allowed by antisymmetry, keyed by label.

    With constructive=True the map comes from explicit antisymmetrization
    of level functions times spin products up to max_n_sym quanta.
    """
    if not constructive:
        return json.loads(_core.allowed_irreps_json(n))
    if max_n_sym is None:
        max_n_sym = 3 if n == 3 else 6
    return json.loads(_core.constructive_allowed_irreps_json(n, xi, max_n_sym))


def levels(n, xi=0.1, max_quanta=4, classify=True):
    return json.loads(_core.levels_json(n, xi, max_quanta, classify))


def salc(n, n_sym, irrep, n_last=0, xi=0.1):
    return json.loads(_core.salc_json(n, xi, n_sym, n_last, irrep))


def ci(n, xi=0.1, orbitals=None, ms=None):
    """CI states; ms is a spin projection such as 0.5 or -1."""
    if orbitals is None:
        orbitals = 10 if n == 3 else 8
    twice_ms = None if ms is None else int(round(2 * ms))
    return json.loads(_core.ci_json(n, xi, orbitals, twice_ms))


def compare(n, xi=0.1, orbitals=None, max_quanta=4, tol=None):
    """Match CI against the exact levels. Returns the report; its "verified"
    field is False when an allowed level is missed or a state is spurious."""
    args = ["compare", "--n", str(n), "--xi", repr(float(xi)), "--max-quanta", str(max_quanta)]
    if orbitals is not None:
        args += ["--orbitals", str(orbitals)]
    if tol is not None:
        args += ["--tol", repr(float(tol))]
    code, out, err = _core.run(args)
    if code not in (0, 3):
        raise Error(err.strip())
    return json.loads(out)


def main(argv=None):
    code, out, err = _core.run(sys.argv[1:] if argv is None else list(argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
