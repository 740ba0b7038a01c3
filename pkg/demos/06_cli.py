"""
Command line
============

The ``markednet`` command wraps the library. This script drives it
in-process; from a shell the same arguments work after ``markednet``.
"""

import pathlib
import tempfile

from markednet.cli import main

workdir = pathlib.Path(tempfile.mkdtemp())
quad = workdir / "quad.net"
kite = workdir / "kite.net"


def run(*argv):
    print("$ markednet", *argv)
    code = main([str(a) for a in argv])
    print("exit", code, "\n")


run("gallery", "quad", "--out", quad)
run("gallery", "kite", "--out", kite)
run("classify", quad)
run("chain", quad, "--format", "csv")
run("phi", quad, "--point", "v=2,w=3/2")
run("psi", quad, "--point", "v=1,w=0")
run("psi", kite, "--point", "v=0,w=0")
run("lattice", quad, "--box", "v=0..3,w=0..3", "--which", "chain")
run("check", quad, "--samples", "50")
run("plot", quad, "--out", workdir / "quad.svg")
print("plot written to", workdir / "quad.svg")
