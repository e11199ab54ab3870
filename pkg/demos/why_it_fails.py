"""Two rectangles that cannot be completed, and what the solver hands back instead.

The first fails the counting bound e_l >= r + s + rho_l - 2n outright. The second
passes it, but symbols 3 and 4 each need a cell in row 1 and only one is free; the
flow finds a set of symbols whose lower bounds cannot all be met.
"""

from rholatin import Infeasible, Rectangle, RhoProfile, complete
from rholatin.completion import replay_completion_certificate

cases = [
    Rectangle([[1, 2], [2, 1]], RhoProfile(3, 3, (3, 3, 3))),
    Rectangle([[1, 2]], RhoProfile(3, 4, (2, 1, 3, 3))),
]
for rect in cases:
    res = complete(rect)
    assert isinstance(res, Infeasible)
    cert = res.certificate
    print(f"{rect.grid} rho={rect.rho}: {res.stage}")
    print(f"  {cert.family} {dict(cert.subsets)}")
    print(f"  needs {cert.lhs} {cert.relation} {cert.rhs}, recomputed as {replay_completion_certificate(cert, rect)}")
