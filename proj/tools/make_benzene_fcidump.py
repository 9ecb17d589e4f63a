#!/usr/bin/env python3
"""Write the benzene RHF/STO-3G FCIDUMP used by the tests and examples.

Planar D6h benzene with the given C-C and C-H bond lengths (Angstrom),
canonical RHF orbitals under D2h symmetry, Molpro ORBSYM labels.
Needs PySCF (pip install pyscf).
"""

import argparse

import numpy as np
from pyscf import gto, mcscf, scf
from pyscf.tools import fcidump


def geometry(rcc, rch):
    atoms = []
    for k in range(6):
        a = np.pi / 3 * k
        atoms.append(("C", (rcc * np.cos(a), rcc * np.sin(a), 0.0)))
        atoms.append(("H", ((rcc + rch) * np.cos(a), (rcc + rch) * np.sin(a), 0.0)))
    return atoms


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("output", help="FCIDUMP path to write")
    ap.add_argument("--rcc", type=float, default=1.39, help="C-C bond length, Angstrom")
    ap.add_argument("--rch", type=float, default=1.09, help="C-H bond length, Angstrom")
    ap.add_argument("--casci", action="store_true", help="also print CASCI(2,2) and (4,4) energies")
    args = ap.parse_args()

    mol = gto.M(atom=geometry(args.rcc, args.rch), basis="sto-3g", symmetry="D2h", verbose=0)
    mf = scf.RHF(mol).run()
    fcidump.from_scf(mf, args.output, tol=1e-10, molpro_orbsym=True)
    print(f"RHF energy {mf.e_tot:.8f} Ha, wrote {args.output}")
    if args.casci:
        for ne, no in [(2, 2), (4, 4)]:
            mc = mcscf.CASCI(mf, no, ne)
            mc.verbose = 0
            print(f"CASCI({ne},{no}) {mc.kernel()[0]:.8f} Ha")


if __name__ == "__main__":
    main()
