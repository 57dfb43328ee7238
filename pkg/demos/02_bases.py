"""The percept-let hierarchy: father, mother, daughter and the finer bumps.

Prints a coarse text plot of every basis up to level 4 for both built-in
families, and checks each family against the admissibility conditions.
"""
import numpy as np

from perceptlet import Perceptlet, bases_up_to, eval_basis, validate_perceptlet

xs = np.linspace(-1, 1, 41)
SHADES = " .:-=+*#"

for p in (Perceptlet.linear(), Perceptlet.sin()):
    print(f"\n{p.kind} family")
    for b in bases_up_to(4):
        ys = eval_basis(p, b, xs)
        row = "".join(SHADES[min(int(v * len(SHADES)), len(SHADES) - 1)] for v in ys)
        print(f"  level {b.level} center {str(b.center):>5} |{row}|")
    report = validate_perceptlet(p)
    print("  admissible:", report.ok, " smooth at the boundaries:", report.smooth_boundaries)

# a custom family: a steeper cubic-smoothstep father
smooth = Perceptlet.custom(lambda x: 0.5 + 0.75 * x - 0.25 * x ** 3, "smoothstep")
print("\nsmoothstep admissible:", validate_perceptlet(smooth).ok)

bent = Perceptlet.custom(lambda x: x ** 2, "square")
print("x**2 as a father:", validate_perceptlet(bent).messages)
