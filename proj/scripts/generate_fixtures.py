#!/usr/bin/env python3
# Copyright 2026 The QSCI Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Generates the checked-in FCIDUMP fixtures and their reference energies.

Run once with PySCF available; the C++ build never calls this script.  All
reference energies are computed from the integrals read back from the
written files, so the C++ side and the oracle see identical numbers.

    python3 scripts/generate_fixtures.py data/fixtures
"""

import json
import os
import sys

import numpy as np
import pyscf
from pyscf import ao2mo, ci, fci, gto, mcscf, scf
from pyscf.tools import fcidump

FLOAT_FORMAT = " %.17g"
N_ROOTS = 6


def h_chain(n, spacing=1.0):
    return [("H", (0.0, 0.0, spacing * i)) for i in range(n)]


MOLECULES = {
    "h2": [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.735))],
    "h4": h_chain(4),
    "h6": h_chain(6),
    "h8": h_chain(8),
    "lih": [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.595))],
    "h2o": [
        ("O", (0.0, 0.0, 0.0)),
        ("H", (0.2774, 0.8929, 0.2544)),
        ("H", (0.6068, -0.2383, -0.7169)),
    ],
}


def build(atoms):
    mol = gto.M(atom=atoms, basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    assert mf.converged
    return mol, mf


def mo_integrals(mol, coeff):
    h1 = coeff.T @ mol.intor("int1e_kin") @ coeff + coeff.T @ mol.intor("int1e_nuc") @ coeff
    norb = coeff.shape[1]
    eri = ao2mo.restore(1, ao2mo.kernel(mol, coeff), norb)
    return h1, eri


def write(path, h1, eri, norb, nelec, ecore):
    fcidump.from_integrals(path, h1, eri, norb, nelec, nuc=ecore, ms=0,
                           tol=1e-15, float_format=FLOAT_FORMAT)


def sector_spectrum(path, nroots=N_ROOTS):
    data = fcidump.read(path, verbose=False)
    norb, nelec = data["NORB"], data["NELEC"]
    h1 = data["H1"]
    eri = ao2mo.restore(1, data["H2"], norb)
    ecore = data["ECORE"]
    na = nelec // 2
    solver = fci.direct_spin1.FCI()
    solver.conv_tol = 1e-13
    solver.max_cycle = 500
    dim = fci.cistring.num_strings(norb, na) ** 2
    nroots = min(nroots, dim)
    e, vecs = solver.kernel(h1, eri, norb, (na, nelec - na), ecore=ecore,
                            nroots=nroots)
    e = np.atleast_1d(e)
    if nroots == 1:
        vecs = [vecs]
    hf_diag = hf_energy(h1, eri, ecore, na)
    return data, [float(x) for x in e], vecs, hf_diag


def hf_energy(h1, eri, ecore, nocc):
    e = ecore
    for i in range(nocc):
        e += 2.0 * h1[i, i]
        for j in range(nocc):
            e += 2.0 * eri[i, i, j, j] - eri[i, j, j, i]
    return float(e)


def cisd_energy(mol, mf):
    solver = ci.CISD(mf)
    solver.conv_tol = 1e-12
    solver.kernel()
    return float(solver.e_tot)


def main(outdir):
    os.makedirs(outdir, exist_ok=True)
    os.makedirs(os.path.join(outdir, "operators"), exist_ok=True)
    oracle = {
        "generator": "pyscf " + pyscf.__version__,
        "basis": "sto-3g",
        "ms2_convention": "MS2 = N_alpha - N_beta",
        "fixtures": {},
    }

    for name, atoms in MOLECULES.items():
        mol, mf = build(atoms)
        norb = mf.mo_coeff.shape[1]
        h1, eri = mo_integrals(mol, mf.mo_coeff)
        path = os.path.join(outdir, f"{name}.fcidump")
        write(path, h1, eri, norb, mol.nelectron, mol.energy_nuc())
        entry = {
            "file": f"{name}.fcidump",
            "geometry_angstrom": [[a, list(c)] for a, c in atoms],
            "n_orbitals": norb,
            "n_electrons": mol.nelectron,
            "scf_energy": float(mf.e_tot),
        }
        if norb <= 8:
            _, roots, _, hf_diag = sector_spectrum(path)
            entry["sector_energies"] = roots
            entry["fci_energy"] = roots[0]
            entry["hf_determinant_energy"] = hf_diag
        entry["cisd_energy"] = cisd_energy(mol, mf)
        oracle["fixtures"][name] = entry
        print(name, entry.get("fci_energy"), file=sys.stderr)

    # H2O (5 active orbitals, 6 active electrons), two frozen core orbitals.
    mol, mf = build(MOLECULES["h2o"])
    cas = mcscf.CASCI(mf, 5, 6)
    h1eff, ecore = cas.get_h1eff()
    h2eff = ao2mo.restore(1, cas.get_h2eff(), 5)
    path = os.path.join(outdir, "h2o_5o6e.fcidump")
    write(path, h1eff, h2eff, 5, 6, ecore)
    _, roots, _, hf_diag = sector_spectrum(path)
    cas.fcisolver.conv_tol = 1e-13
    e_cas = float(cas.kernel()[0])
    oracle["fixtures"]["h2o_5o6e"] = {
        "file": "h2o_5o6e.fcidump",
        "parent": "h2o",
        "frozen_orbitals": [0, 1],
        "active_orbitals": [2, 3, 4, 5, 6],
        "n_orbitals": 5,
        "n_electrons": 6,
        "casci_energy": e_cas,
        "sector_energies": roots,
        "fci_energy": roots[0],
        "hf_determinant_energy": hf_diag,
    }
    print("h2o_5o6e", roots[:3], e_cas, file=sys.stderr)

    # Finite-difference nuclear-gradient operators for H4 in the reference
    # orbital basis (Loewdin-orthonormalised at displaced geometries).
    write_gradient_operators(outdir, oracle)

    with open(os.path.join(outdir, "oracle.json"), "w") as f:
        json.dump(oracle, f, indent=2, sort_keys=True)
        f.write("\n")


def write_gradient_operators(outdir, oracle, name="h4", step=1e-3):
    atoms = MOLECULES[name]
    mol0, mf0 = build(atoms)
    c0 = mf0.mo_coeff
    norb = c0.shape[1]
    ops = []

    def integrals_at(displaced):
        mol = gto.M(atom=displaced, basis="sto-3g", unit="Angstrom", verbose=0)
        s = mol.intor("int1e_ovlp")
        m = c0.T @ s @ c0
        w, v = np.linalg.eigh(m)
        coeff = c0 @ (v @ np.diag(w ** -0.5) @ v.T)
        h1, eri = mo_integrals(mol, coeff)
        return h1, eri, mol.energy_nuc()

    for atom in range(len(atoms)):
        for axis, label in enumerate("xyz"):
            plus = [(a, list(c)) for a, c in atoms]
            minus = [(a, list(c)) for a, c in atoms]
            plus[atom][1][axis] += step
            minus[atom][1][axis] -= step
            hp, ep, np_ = integrals_at(plus)
            hm, em, nm = integrals_at(minus)
            h1 = (hp - hm) / (2 * step)
            eri = (ep - em) / (2 * step)
            ecore = (np_ - nm) / (2 * step)
            fname = f"{name}_grad_{atom}{label}.fcidump"
            write(os.path.join(outdir, "operators", fname), h1, eri, norb,
                  mol0.nelectron, ecore)
            ops.append({"file": "operators/" + fname, "atom": atom,
                        "axis": label, "units": "Hartree/Angstrom"})
    oracle["fixtures"][name]["gradient_operators"] = {
        "step_angstrom": step, "operators": ops}


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/fixtures")
