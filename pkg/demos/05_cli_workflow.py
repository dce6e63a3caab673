"""The batch workflow: input files in, certified JSON documents out.

Every command reads line-oriented matrix files (see demos/data/) and
writes a deterministic JSON document that carries the answer plus enough
certificate material to re-verify it without this package.  This script
drives the command-line interface in-process on the bundled sample files.

Run:  python demos/05_cli_workflow.py
"""

import json
import pathlib
import tempfile

from bgsplit.cli import main

DATA = pathlib.Path(__file__).parent / "data"


def run(*argv) -> int:
    print(f"\n$ bgsplit {' '.join(argv)}")
    return main(list(argv))


# Splitting type with the section-count profile as certificate.
run("split", str(DATA / "extension.txt"))

# Factor, then feed the output document back into verify.
with tempfile.TemporaryDirectory() as tmp:
    factor_doc = pathlib.Path(tmp) / "factorization.json"
    run("factor", str(DATA / "extension.txt"), "--out", str(factor_doc))
    print(json.loads(factor_doc.read_text())["certificate"])
    run("verify", str(DATA / "extension.txt"), str(factor_doc), "--format", "text")

# Exact sheaf cohomology of a twist.
run("rr", str(DATA / "extension.txt"), "-k", "-2", "--format", "text")

# The scalar global exponent identity for the sample hypergeometric file.
run("fuchs-ode", str(DATA / "hypergeometric.txt"), "--format", "text")
run("indicial", str(DATA / "hypergeometric.txt"), "-p", "oo", "--format", "text")

# Residue systems: trace sums plus per-point exponent data.
run("fuchs-system", str(DATA / "residue_system.txt"), "--format", "text")

# A series fundamental matrix at the origin with its residual certificate.
run("frobenius", str(DATA / "local_system.txt"), "-N", "4", "--format", "text")

# The non-realizable monodromy tuple.
run("bolibrukh", str(DATA / "monodromy.txt"), "--format", "text")
