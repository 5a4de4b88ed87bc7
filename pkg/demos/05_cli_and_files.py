"""The file formats and the command-line surface, end to end.

Writes a tuple to the JSON block schema, then drives the CLI in-process:
a support-value table, the extreme point cloud, isotrace slices, corner
and center reports, and an OBJ mesh of the sampled hull.
"""

import json
import os
import tempfile

from specscale import fixtures
from specscale.algebra import save_tuple
from specscale.cli import main

workdir = tempfile.mkdtemp(prefix="specscale_demo_")
tuple_path = os.path.join(workdir, "pauli.json")
save_tuple(fixtures.pauli_pair(), tuple_path)
print("wrote tuple to", tuple_path)
with open(tuple_path) as fh:
    schema = json.load(fh)
print("blocks:", [(b["dim"], b["weight"]) for b in schema["blocks"]])

out_dir = os.path.join(workdir, "reports")
for argv in (
    ["support", "--input", tuple_path, "--samples", "8", "--out", out_dir],
    ["extremes", "--input", tuple_path, "--samples", "32", "--out", out_dir],
    ["slice", "--input", tuple_path, "--level", "0.5", "--samples", "90",
     "--out", out_dir],
    ["corners", "--input", tuple_path, "--samples", "16", "--out", out_dir],
    ["center", "--input", tuple_path, "--samples", "16", "--out", out_dir],
    ["abelian", "--input", tuple_path, "--samples", "32", "--out", out_dir],
    ["extremes", "--input", tuple_path, "--format", "obj", "--samples", "512",
     "--out", out_dir],
):
    code = main(argv)
    assert code == 0, argv

print("\nreports written:")
for name in sorted(os.listdir(out_dir)):
    path = os.path.join(out_dir, name)
    print(f"  {name:14s} {os.path.getsize(path):7d} bytes")

with open(os.path.join(out_dir, "abelian.json")) as fh:
    print("\nabelian verdict:", json.load(fh)["abelian"])

with open(os.path.join(out_dir, "support.csv")) as fh:
    head = [next(fh).strip() for _ in range(4)]
print("\nsupport table head:")
for line in head:
    print(" ", line[:100])
