#!/usr/bin/env python3
# Copyright 2026 The vqt Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled qubit Hamiltonians in data/instances/.

Offline tool; the C++ build never runs it. Requires pyscf, openfermion and
openfermionpyscf. Spin-orbital j maps to qubit j (the rightmost letter is
qubit 0), so the Hartree-Fock reference fills the lowest qubits.
"""

import argparse
import pathlib

import numpy as np
from openfermion import MolecularData, get_sparse_operator, jordan_wigner
from openfermionpyscf import run_pyscf

MOLECULES = {
    "h2_jw.txt": dict(geometry=[("H", (0, 0, 0)), ("H", (0, 0, 0.735))], occupied=None, active=None),
    "lih_jw.txt": dict(geometry=[("Li", (0, 0, 0)), ("H", (0, 0, 1.595))], occupied=[0], active=[1, 2, 3]),
    "beh2_jw.txt": dict(
        geometry=[("Be", (0, 0, 0)), ("H", (0, 0, 1.326)), ("H", (0, 0, -1.326))], occupied=[0], active=[1, 2, 3, 4]
    ),
}


def letters(term, n):
    out = ["I"] * n
    for qubit, op in term:
        out[n - 1 - qubit] = op
    return "".join(out)


def restricted_ground_energy(qubit_op, n, electrons):
    h = get_sparse_operator(qubit_op, n_qubits=n).toarray()
    idx = [i for i in range(2**n) if bin(i).count("1") == electrons]
    return float(np.linalg.eigvalsh(h[np.ix_(idx, idx)])[0])


def generate(name, molecule, out_dir):
    mol = MolecularData(molecule["geometry"], "sto-3g", 1, 0)
    mol = run_pyscf(mol, run_scf=True, run_fci=True)
    ham = mol.get_molecular_hamiltonian(occupied_indices=molecule["occupied"], active_indices=molecule["active"])
    qubit_op = jordan_wigner(ham)
    qubit_op.compress(1e-12)
    n = 2 * (len(molecule["active"]) if molecule["active"] else mol.n_orbitals)
    frozen = 2 * len(molecule["occupied"]) if molecule["occupied"] else 0
    electrons = mol.n_electrons - frozen
    energy = restricted_ground_energy(qubit_op, n, electrons)
    bits = "0" * (n - electrons) + "1" * electrons
    lines = [
        f"# {name.split('_')[0]} sto-3g jordan-wigner, {n} qubits",
        f"# ground_energy={energy:.12f} electrons={electrons} initial_bits={bits}",
    ]
    for term, coeff in sorted(qubit_op.terms.items(), key=lambda kv: letters(kv[0], n)):
        if abs(coeff.imag) > 1e-12:
            raise ValueError(f"complex coefficient on {term}")
        lines.append(f"{coeff.real:.12f} {letters(term, n)}")
    (out_dir / name).write_text("\n".join(lines) + "\n")
    print(f"{name}: n={n} electrons={electrons} terms={len(qubit_op.terms)} E0={energy:.9f}")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path(__file__).parent.parent / "data" / "instances")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for name, molecule in MOLECULES.items():
        generate(name, molecule, args.out)


if __name__ == "__main__":
    main()
