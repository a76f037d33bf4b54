"""Where plain beta/eta equality stops and permutative equality starts.

Two derivations of ((q /\ r) \/ p) -> ((q \/ p) /\ (r \/ p)) end in a
case-of-pair and a pair-of-cases.  Both terms are beta/eta normal and
distinct, so the strict mode separates them; allowing case permutations
identifies them.  A second pair shows what a search that runs out of
fuel reports instead of guessing.

Run from the repository root:

    python3 demos/permutations.py
"""

from pathlib import Path

from proofmean.meaning import classify, same_denotation
from proofmean.rewrite import INCONCLUSIVE, BetaEta, BetaEtaGamma, normalize
from proofmean.sc import end_term_sc
from proofmean.syntax import parse, parse_file, render_term

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def load(name: str):
    return parse_file((CORPUS / name).read_text(), default_name=name).derivation


FST_SIDE = r"""
(nd fst_side
  (imp-i u
    (and-e1
      (or-e (hyp u (p/\p)\/(p/\p)) x (hyp x p/\p) y (hyp y p/\p)))))
"""

SND_SIDE = r"""
(nd snd_side
  (imp-i u
    (and-e2
      (or-e (hyp u (p/\p)\/(p/\p)) x (hyp x p/\p) y (hyp y p/\p)))))
"""


def main() -> None:
    one_case = load("sc_dist_1.sc")
    two_cases = load("sc_dist_3.sc")
    for name, d in (("sc_dist_1", one_case), ("sc_dist_3", two_cases)):
        t = end_term_sc(d)
        print(f"{name} end term:")
        print(f"  {render_term(t)}")
        print(f"  (already normal: {render_term(normalize(t)) == render_term(t)})")
    print()

    print(f"beta/eta mode:          {classify(one_case, two_cases, BetaEta())!r}")
    print(f"with case permutations: {classify(one_case, two_cases, BetaEtaGamma(fuel=4))!r}")
    print()

    fst_side = parse(FST_SIDE)
    snd_side = parse(SND_SIDE)
    print("projecting different halves of the same case:")
    for fuel in (1, 2):
        answer = same_denotation(fst_side, snd_side, BetaEtaGamma(fuel=fuel))
        if answer is INCONCLUSIVE:
            text = "inconclusive, the search ran out of fuel"
        else:
            text = str(bool(answer))
        print(f"  fuel={fuel}: {text}")
    print()
    print(f"verdict at fuel 1: {classify(fst_side, snd_side, BetaEtaGamma(fuel=1))!r}")
    print(f"verdict at fuel 4: {classify(fst_side, snd_side, BetaEtaGamma(fuel=4))!r}")


if __name__ == "__main__":
    main()
