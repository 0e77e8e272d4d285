"""Regenerate the bundled diagram corpus from strand words.

Run from the repository root: ``python3 tools/make_corpus.py``.  The theta
curve ``0_1.hkd`` is written by hand and left alone.
"""

from pathlib import Path

from qfamily.diagram import format_diagram
from qfamily.strands import from_strands

OUT = Path(__file__).resolve().parent.parent / "src" / "qfamily" / "corpus"

# Trefoil plat with a rung between its two middle strands: a genus-2
# handlebody-knot with a nontrivial invariant that takes nonzero values.
PRE = [("cap", 1), ("cap", 3), ("x", 2, "L"), ("x", 1, "L")]
POST = [("x", 1, "L"), ("x", 1, "L"), ("x", 2, "R"), ("cup", 3), ("cup", 1)]
H = PRE + [("rung", 2)] + POST
I = PRE + [("merge", 2), ("split", 2)] + POST

# inverse of s2 s1 s2, and the strand moved across the vertex carried back
UNDO = [("x", 2, "R"), ("x", 1, "R"), ("x", 2, "R")]
BACK = [("x", 2, "R"), ("x", 1, "R")]

PAIRS = {
    "r1": (H, H[:-1] + [("x", 1, "L"), ("cup", 1)],
           "a kink added just below the last cup"),
    "r2": (H, PRE + [("rung", 2), ("x", 2, "L"), ("x", 2, "R")] + POST,
           "two cancelling crossings added above the rung"),
    "r3": (PRE[:2] + [("x", 1, "L"), ("x", 2, "L"), ("x", 1, "L")] + UNDO + H[2:],
           PRE[:2] + [("x", 2, "L"), ("x", 1, "L"), ("x", 2, "L")] + UNDO + H[2:],
           "a strand slid across a crossing"),
    "r4": (PRE + [("merge", 2), ("x", 1, "L"), ("split", 1)] + BACK + POST,
           PRE + [("x", 1, "L"), ("x", 2, "L"), ("merge", 1), ("split", 1)] + BACK + POST,
           "a strand passed over a vertex"),
    "r5": (PRE + [("merge", 2), ("split", 2), ("x", 2, "L")] + POST, I,
           "a twist of two edges at a vertex undone"),
    "r6": (H, I, "an H-shaped edge replaced by an I-shaped one"),
}


def write(name, word, comment):
    d = from_strands(word, name=name)
    text = f"# {comment}\n# strand word: {word}\n" + format_diagram(d)
    (OUT / f"{name}.hkd").write_text(text)


def main():
    write("3_1-handle", H, "trefoil plat with a rung between the middle strands")
    for move, (a, b, what) in PAIRS.items():
        write(f"{move}_a", a, f"{move.upper()} pair, before the move ({what})")
        write(f"{move}_b", b, f"{move.upper()} pair, after the move ({what})")


if __name__ == "__main__":
    main()
