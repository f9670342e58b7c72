"""Smoke test for the `hecke` extension module.

Build and run with `python/run_smoke.sh`, or put a built `hecke.so` on
`PYTHONPATH` and run this file directly.
"""

import json
import sys

import hecke


def check(cond, what):
    if not cond:
        raise AssertionError(what)
    print(f"ok  {what}")


def main():
    gl2 = hecke.Datum("GL2")
    check(gl2.num_positive_roots == 1, "GL2 has one positive root")
    check("omega: Z" in gl2.describe(), "GL2 has Omega = Z")
    check(set(hecke.Datum.labels()) >= {"A1-sc", "GL2", "C2-sc"}, "labels listed")

    q = hecke.Laurent("q")
    check(str(q - 1) == "q-1", "Laurent arithmetic")
    check(((q + 1) * (q - 1)) / (q - 1) == q + 1, "exact division")

    t = hecke.HeckeElement("A1-sc", "T[s0]")
    check(str(t * t) == "(q-1)*T[s0] + q*T[e]", "quadratic relation")
    check(not t.is_central(), "T[s0] is not central")
    check((t * t).bar().bar() == t * t, "bar is an involution")

    z = hecke.central_element("GL2", [1, 0])
    check(z.is_central(), "z_(1,0) is central")
    check(str(hecke.pi(z)) == "v^-1*m[1,0]", "pi(z_(1,0)) = v^-1 m[1,0]")

    m = hecke.SphericalElement.basis("GL2", [1, 0])
    lift, expansion = hecke.central_lift(m)
    check(hecke.pi(lift) == m, "section property")
    check(str(expansion[(1, 0)]) == "v", "lift = v z_(1,0)")

    a1 = hecke.SphericalElement.basis("A1-sc", [1])
    sq = {tuple(k): c.at_q_one() for k, c in a1.conv(a1).terms()}
    check({k: n for k, n in sq.items() if n} == {(2,): 1, (0,): 2}, "m[1]^2 at q = 1 is o_2 + 2 o_0")
    check(str(hecke.kl_polynomial("A1-sc", "e", "s0.s1.s0")) == "1", "trivial KL in affine A1")
    check(str(hecke.bott_samelson("A1-sc", "s0.s0")) == "(q+1)*T[s0] + (q+1)*T[e]", "Bott-Samelson")
    dec = dict((k, str(v)) for k, v in hecke.bs_decompose("A1-sc", "s0.s0"))
    check(dec == {"s0": "v+v^-1"}, "C'_s C'_s = (v+v^-1) C'_s")

    report = hecke.verify_gl2()
    check(report["passed"], "GL(2) regression passes")
    check((report["y1"], report["y2"], report["omega"]) == ("s0*omega^1", "s1*omega^1", "omega^1"),
          "GL(2) coset elements")

    code, out = hecke.run(["verify", "centrality", "--datum", "A2-sc", "--format", "json"])
    check(code == 0 and json.loads(out)[0]["passed"], "CLI driver from Python")

    try:
        hecke.HeckeElement("E8", "T[e]")
    except hecke.HeckeError:
        check(True, "errors raise HeckeError")
    else:
        raise AssertionError("expected HeckeError")
    print("smoke test passed")


if __name__ == "__main__":
    sys.exit(main())
