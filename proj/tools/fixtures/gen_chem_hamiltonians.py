#!/usr/bin/env python3
# Copyright 2026 The wecans Authors
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
"""Regenerates the chemistry Hamiltonian fixtures in data/hamiltonians/.

Requires pyscf, openfermion and openfermionpyscf. The C++ library never
computes molecular integrals; it only ingests the JSON written here.

  H2   : STO-3G, bond 0.74 A, Jordan-Wigner, 4 qubits.
  H3+  : STO-3G, linear chain with 0.74 A spacing, parity mapping with the
         two parity qubits tapered off, 4 qubits.
"""
import json
import sys

import numpy as np
import openfermion as of
from openfermionpyscf import run_pyscf

BOND = 0.74


def to_json(qubit_op, n_qubits, meta, path):
    terms = []
    for ops, coeff in sorted(qubit_op.terms.items()):
        if abs(coeff) < 1e-12:
            continue
        if abs(np.imag(coeff)) > 1e-10:
            raise RuntimeError(f"non-real coefficient {coeff} on {ops}")
        letters = ["I"] * n_qubits
        for q, p in ops:
            letters[q] = p
        terms.append({"coeff": float(np.real(coeff)), "pauli": "".join(letters)})
    doc = {"n_qubits": n_qubits, "terms": terms, "meta": meta}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def ground_energy(qubit_op, n_qubits):
    mat = of.get_sparse_operator(qubit_op, n_qubits=n_qubits).toarray()
    return float(np.linalg.eigvalsh(mat)[0])


def up_then_down(op, n_orb):
    # openfermion interleaves spin orbitals (2p = up, 2p+1 = down); the parity
    # tapering below wants all up modes first.
    def remap(mode):
        return mode // 2 if mode % 2 == 0 else n_orb + mode // 2

    out = of.FermionOperator()
    for ops, coeff in op.terms.items():
        out += of.FermionOperator(tuple((remap(m), a) for m, a in ops), coeff)
    return out


def taper_parity(qubit_op, n_modes, n_alpha, n_total):
    # In the parity encoding qubit j stores the parity of modes 0..j, so
    # qubit n_orb-1 holds the alpha-count parity and qubit n_modes-1 the total.
    n_orb = n_modes // 2
    fixed = {n_orb - 1: (-1) ** n_alpha, n_modes - 1: (-1) ** n_total}
    keep = [q for q in range(n_modes) if q not in fixed]
    out = of.QubitOperator()
    for ops, coeff in qubit_op.terms.items():
        factor = 1.0
        new_ops = []
        for q, p in ops:
            if q in fixed:
                if p != "Z":
                    raise RuntimeError(f"tapered qubit {q} carries {p}")
                factor *= fixed[q]
            else:
                new_ops.append((keep.index(q), p))
        out += of.QubitOperator(tuple(new_ops), coeff * factor)
    out.compress()
    return out, len(keep)


def main(outdir):
    h2 = of.MolecularData([("H", (0, 0, 0)), ("H", (0, 0, BOND))], "sto-3g", 1, 0)
    h2 = run_pyscf(h2, run_fci=True)
    fop = of.get_fermion_operator(h2.get_molecular_hamiltonian())
    qop = of.jordan_wigner(fop)
    qop.compress()
    e0 = ground_energy(qop, 4)
    assert abs(e0 - h2.fci_energy) < 1e-8, (e0, h2.fci_energy)
    to_json(qop, 4, {"molecule": "H2", "basis": "sto-3g", "bond_angstrom": BOND,
                     "mapping": "jordan-wigner", "fci_energy": h2.fci_energy}, f"{outdir}/h2_jw.json")
    print("H2  ground", e0, "fci", h2.fci_energy)

    geom = [("H", (0, 0, 0)), ("H", (0, 0, BOND)), ("H", (0, 0, 2 * BOND))]
    h3 = of.MolecularData(geom, "sto-3g", 1, 1)
    h3 = run_pyscf(h3, run_fci=True)
    fop = of.get_fermion_operator(h3.get_molecular_hamiltonian())
    n_modes = 2 * h3.n_orbitals
    fop = up_then_down(fop, h3.n_orbitals)
    qop = of.binary_code_transform(fop, of.parity_code(n_modes))
    qop.compress()
    tapered, n_q = taper_parity(qop, n_modes, n_alpha=1, n_total=2)
    e0 = ground_energy(tapered, n_q)
    assert abs(e0 - h3.fci_energy) < 1e-8, (e0, h3.fci_energy)
    to_json(tapered, n_q, {"molecule": "H3+", "basis": "sto-3g", "bond_angstrom": BOND,
                           "mapping": "parity, two qubits tapered", "fci_energy": h3.fci_energy},
            f"{outdir}/h3plus_parity.json")
    print("H3+ ground", e0, "fci", h3.fci_energy)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/hamiltonians")
