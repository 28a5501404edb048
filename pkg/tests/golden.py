"""Golden corpus: formula texts with frozen increasing-domain verdicts.

Every verdict was derived by running the decision procedure and
cross-checked against the bounded model-search oracle: SAT entries carry a
checker-verified extracted model, UNSAT entries were confirmed by exhaustive
search up to 3 worlds and 2 elements (the two translation entries are
argued by hand: one encodes a satisfiable relational sentence, the other a
matrix of the shape phi and not-phi').

The last four plain entries instantiate the knowing-who / knowing-a-proof /
possible-friend / key-pair sentences as closed single-modality formulas.
"""

from bfoml import format_formula, parse_fo, translate_sentence

GOLDEN = [
    ("vacuous-box", "E x [] P(x)", "SAT"),
    ("box-vs-antibox", "(E x [] P(x) & A y <> !P(y))", "UNSAT"),
    ("literal-clash", "(P(x) & !P(x))", "UNSAT"),
    ("all-diamond-neg", "A x <> !P(x)", "SAT"),
    ("footnote-pair", "(A x [] A y [] !P(x) & A z [] E w <> P(w))", "SAT"),
    ("one-diamond", "E x <> P(x)", "SAT"),
    ("all-diamond-pos", "A y <> P(y)", "SAT"),
    ("box-with-literal", "(E x [] P(x) & Q(z))", "SAT"),
    ("open-atom-and-box", "(P(x) & E y [] Q(y))", "SAT"),
    ("relation-step", "E x <> (P(x) & Q(y))", "SAT"),
    ("negated-box", "!E x [] P(x)", "SAT"),
    ("negated-and", "!(P(x) & Q(y))", "SAT"),
    ("double-dual", "!A x <> !P(x)", "SAT"),
    ("unclean-or", "(E x [] P(x) | E x [] Q(x))", "SAT"),
    ("unclean-and", "(P(x) & E x [] Q(x))", "SAT"),
    ("nested-boxes", "E x [] (P(x) & E y [] Q(x,y))", "SAT"),
    ("two-boxes", "E x [] E y [] Q(x,y)", "SAT"),
    ("box-and-alldiamond", "(E x [] P(x) & A y <> Q(y))", "SAT"),
    ("forall-box", "A x [] P(x)", "SAT"),
    ("mixed-boxes", "(E x [] P(x) & A y [] Q(y))", "SAT"),
    ("knows-who-not", "!E x [] K(x)", "SAT"),
    ("theorem-no-proof", "E x [] !E y [] Prove(x,y)", "SAT"),
    ("possible-friend", "A x <> E y [] Friend(x,y)", "SAT"),
    ("key-pair", "E x [] (E y [] Key(x,y) & !E y2 [] Key(x,y2))", "SAT"),
    ("top", "T", "SAT"),
    ("bottom", "F", "UNSAT"),
    ("tautology", "(P(x) -> P(x))", "SAT"),
    ("anti-tautology", "!(P(x) -> P(x))", "UNSAT"),
    ("diamond-vs-allbox", "(E x <> P(x) & A y [] !P(y))", "UNSAT"),
    ("alldiamond-vs-allbox", "(A x <> P(x) & A y [] !P(y))", "UNSAT"),
    ("allbox-vs-diamond", "(A x [] P(x) & E y <> !P(y))", "UNSAT"),
    ("allbox-vs-other-pred", "(A x [] P(x) & E y <> !Q(y))", "SAT"),
    ("alldiamond-vs-box", "(A x <> P(x) & E y [] !P(y))", "UNSAT"),
    ("diamond-clash", "E x <> (P(x) & !P(x))", "UNSAT"),
    ("alldiamond-clash", "A x <> (P(x) & !P(x))", "UNSAT"),
    ("serial-footnote-pair", "(E u <> T & (A x [] A y [] !P(x) & A z [] E w <> P(w)))", "SAT"),
    ("box-of-diamonds", "A x [] E y <> Q(x,y)", "SAT"),
    ("diamond-of-boxes", "E x <> A y [] Q(x,y)", "SAT"),
    ("two-diamonds", "E x <> E y <> Q(x,y)", "SAT"),
    ("disjunctive-boxes", "(A x [] (P(x) | Q(x)) & (E y <> !P(y) & E w <> !Q(w)))", "SAT"),
    ("excluded-middle", "((P(x) | !P(x)) & (Q(y) | !Q(y)))", "SAT"),
    ("encoded-sat-sentence",
     format_formula(translate_sentence(parse_fo("EX x . EX y . R(x,y)"))), "SAT"),
    ("encoded-contradiction",
     format_formula(translate_sentence(parse_fo("EX x . (R(x,x) & !R(x,x))"))), "UNSAT"),
]
