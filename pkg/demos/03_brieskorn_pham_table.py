"""Tabulate Brieskorn-Pham link classes for small exponents.

x^a + y^b + z^c = 0 has an integral homology sphere link exactly for
pairwise coprime exponents; the rational case allows two more patterns.
The two-stage members of the monomial-curve family are Brieskorn-Pham with
exponents (n_0, n_1, n_2) and must classify identically.
"""

from branchlink import classify_brieskorn_pham, classify_link, derive_from_generators

print("selected classifications:")
for exps in [(2, 3, 5), (2, 3, 7), (2, 2, 2), (3, 4, 12), (6, 10, 15), (2, 4, 5)]:
    bp = classify_brieskorn_pham(*exps)
    print(
        f"  S{exps}: {bp.kind.value:>8}  genus {bp.genus:>2}  det {bp.determinant}"
    )

zhs = [
    (a, b, c)
    for a in range(2, 10)
    for b in range(a + 1, 12)
    for c in range(b + 1, 14)
    if classify_brieskorn_pham(a, b, c).kind.value == "ZHS"
]
print(f"\nintegral homology sphere exponent triples (a<b<c, c<14): {len(zhs)}")
print(" ", zhs[:8], "...")

print("\ntwo-stage family members against their Brieskorn-Pham models:")
for beta in [(4, 6, 13), (6, 10, 31), (4, 10, 21), (9, 12, 38)]:
    cd = derive_from_generators(beta)
    bp = classify_brieskorn_pham(cd.n[0], cd.n[1], cd.n[2])
    link = classify_link(cd)
    marker = "ok" if link.kind == bp.kind else "MISMATCH"
    print(f"  {beta} -> exponents {cd.n}: {link.kind.value:>8} [{marker}]")
