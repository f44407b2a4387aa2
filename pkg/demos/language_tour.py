"""Parse, check, run, invert and interpret a small reversible program."""

from revcat.corpus import load
from revcat.denotation import default_env, denote_iso, standard_model
from revcat.evaluate import eval_term, invert_iso
from revcat.models import FinPInj
from revcat.syntax import App, Val, parse_value, print_isodef, print_value
from revcat.typecheck import check_program

program = load("bits")
enums = program.enum_table()
for verdict in check_program(program):
    print(f"{verdict.name}: {'ok' if verdict.ok else verdict.error}")

cnot = program.iso_table()["cnot"]
for text in ["(zero, one)", "(one, one)"]:
    v = parse_value(text, enums)
    w = eval_term(App(cnot, Val(v)))
    back = eval_term(App(invert_iso(cnot), Val(w)))
    print(f"cnot {text} = {print_value(w, enums)}, and back: {print_value(back, enums)}")

print()
print(print_isodef(program.get("tobool"), enums))

C = FinPInj()
env = default_env(C, enums)
for name, iso in program.iso_table().items():
    f = denote_iso(env, iso)
    agrees = f == standard_model(program)[name]
    print(f"[[{name}]] = {C.show(f)}  (agrees with evaluation: {agrees})")
