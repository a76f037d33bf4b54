"""Walk one derivation from source text to normal form.

Run from the repository root:

    python3 demos/tour.py
"""

from pathlib import Path

from proofmean.meaning import denotation_of, sense_of
from proofmean.nd import check_nd, node_judgments
from proofmean.rewrite import normalize
from proofmean.syntax import parse_file, render_formula, render_term

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def show_context(ctx) -> str:
    return ", ".join(f"{v.name}:{render_formula(f)}" for v, f in ctx.items())


def main() -> None:
    source = (CORPUS / "nd_identity_detour.nd").read_text()
    print("source:")
    print(source)

    sf = parse_file(source, default_name="nd_identity_detour")
    judgment = check_nd(sf.derivation)
    print(f"checked: {render_term(judgment.term)} : {render_formula(judgment.formula)}")
    print()

    print("judgments at every node, leaves first:")
    for node, j in node_judgments(sf.derivation):
        open_part = show_context(j.open)
        sep = " |- " if open_part else "|- "
        print(f"  {open_part}{sep}{render_term(j.term)} : {render_formula(j.formula)}")
    print()

    print("every term written down along the way (the sense):")
    for t in sorted(sense_of(sf.derivation), key=render_term):
        print(f"  {render_term(t)}")
    print()

    end = judgment.term
    print(f"end term:    {render_term(end)}")
    print(f"normal form: {render_term(normalize(end))}")
    print(f"denotation:  {render_term(denotation_of(sf.derivation))}")


if __name__ == "__main__":
    main()
