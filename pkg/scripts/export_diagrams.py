#!/usr/bin/env python3
"""Render the fixture categories and their derived objects to DOT files.

For each fixture this writes the category itself; for each identity and
inclusion functor it writes J(f), E(f), and the free lens on f with chosen
lifts highlighted.

Usage: python3 scripts/export_diagrams.py [--out DIR]
"""

import argparse
import pathlib
import sys

from deltalens.awfs import e_object, free_lens
from deltalens.fixtures import CORPUS
from deltalens.kernel import counit_inclusion, identity_functor
from deltalens.semimonad import j_object
from deltalens.serialization import export_dot


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="diagrams")
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    count = 0
    for name, cat in CORPUS.items():
        (out / f"{name}.dot").write_text(export_dot(cat, name=name))
        count += 1
        for prefix, fun in (("id", identity_functor(cat)), ("iota", counit_inclusion(cat))):
            stem = f"{prefix}-{name}"
            (out / f"jf-{stem}.dot").write_text(
                export_dot(j_object(fun).j, name=f"jf_{prefix}_{name}")
            )
            (out / f"ef-{stem}.dot").write_text(
                export_dot(e_object(fun).e, name=f"ef_{prefix}_{name}")
            )
            lens = free_lens(fun)
            (out / f"free-lens-{stem}.dot").write_text(
                export_dot(lens.functor.dom, name=f"free_lens_{prefix}_{name}", lens=lens)
            )
            count += 3
    print(f"wrote {count} DOT files to {out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
