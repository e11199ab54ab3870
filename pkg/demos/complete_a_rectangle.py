"""Fill a 2 x 2 block out to a 3 x 3 square where the symbols have different budgets.

Symbol 1 may appear three times, symbols 2-4 twice each. The block already uses 1 and
2 twice, so the remaining five cells need one more 1 and two each of 3 and 4.
"""

from rholatin import Rectangle, RhoProfile, complete, count_completions, find_theta

profile = RhoProfile(3, 4, (3, 2, 2, 2))
rect = Rectangle([[1, 2], [2, 1]], profile)
print("occurrences so far:", rect.e, "still to place:", rect.deficit)

# The decision step: which missing symbols go into the new column (x-edges)
# and which into the new row (y-edges).
theta = find_theta(rect)
for (u, l, _), m in sorted(theta.counts().items()):
    print(f"  {u[0]}{u[1]} gets symbol {l[1]}")

square = complete(rect, seed=0)
for row in square.grid:
    print(" ".join(map(str, row)))

print("number of completions:", count_completions(rect))
