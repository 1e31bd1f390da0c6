"""Quick checks that the extension module loads and agrees with the CLI."""

import pyqcong as q

assert "T_MAIN1" in q.families()

# 1 - q^3 = (1 - q)(1 + q + q^2): one factor of Phi_3
assert q.val_phi([1, 0, 0, -1], [1], 3) == 1
assert q.val_phi([0], [1], 3) is None
assert q.cyclotomic_poly(3) == ["1", "1", "1"]

r = q.check_phi_power("T_MAIN1", 4, 2, d=5)
assert r.passed, str(r)
assert r.family == "T_MAIN1" and r.n == 4 and r.d == 5
assert str(r).startswith("family=T_MAIN1 d=5")

assert q.check_qint_square(7).passed
assert q.check_qint_square(7, truncation="(n+1)/2", backend="residue").passed

# known counterexample: P_A2 at d=3 does not vanish at n=4
bad = q.check_bivar_phi("P_A2", 4, d=3)
assert not bad.passed and bad.note

assert q.check_qbino(6, 2)
assert q.resolve_cf_ind_bracket(6).startswith("2[2N-2]")

reports = q.campaign(["T_MAIN3"], n_max=20, jobs=2)
assert len(reports) == 18 and all(x.passed for x in reports)

try:
    q.check_phi_power("NOPE", 3, 2)
except ValueError:
    pass
else:
    raise AssertionError("unknown family accepted")

print("smoke test ok:", len(reports), "campaign reports")
