"""Three flavors of non-decomposability on small categories of partial maps."""

from revcat.models import PIdSOplus, SubPIdSOplus
from revcat.nondecomp import Classifier, check_consistency, check_pattern_matching_property
from revcat.tables import example56, example513

# One object {a,b,c}; id and the partial identities f on {a,b}, g on {a}, h on {b}.
T = example56()
clf = Classifier(T)
for m in T.hom("abc", "abc"):
    print(f"{m:>3}: {clf.classify(m)}")
# id can only be split using itself, yet f = g v h: weak non-decomposability
# is not inherited downwards, and composing with f breaks it
rep = check_consistency(T, "weak", clf)
print("weakly consistent:", rep.verdict, rep.counterexample)
print("weak pattern matching:", check_pattern_matching_property(T, "weak", clf).verdict)

# 0 < f < id is a chain: id is linearly but not strongly non-decomposable
T = example513()
print("below id:", Classifier(T).below_set("id"), Classifier(T).classify("id"))

# On the unit, all annotations of id_1 are below it; allowing only a chain
# of annotations restores linear non-decomposability
for C in (PIdSOplus("ab"), SubPIdSOplus()):
    one = C.unit_obj()
    print(C.name, "id_1:", Classifier(C, objects=[]).classify(C.identity(one)))
