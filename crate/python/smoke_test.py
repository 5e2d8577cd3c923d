"""Smoke test for the rvequiv extension module.

    python/build.sh && PYTHONPATH=target/python python3 python/smoke_test.py
"""

import rvequiv as rv


def main():
    xs = ["x", "y"]
    f = rv.Polynomial("x^3 + y^3", xs)
    g = f.parse("2*x^3 + 5*y^3")
    phi = f.parse("x*y")
    w = rv.WeightSystem([1, 1])

    assert str(f * f.parse("x")) == "x^4 + x*y^3"
    assert rv.quasi_degree(f, w) == 3
    assert rv.euler_apply(f, w) == f.parse("3*x^3 + 3*y^3")
    assert rv.weighted_order(f.parse("x + x*y"), w) == 1
    assert rv.weighted_order(f.parse("0"), w) is None

    cusp_vars = ["x", "y", "z"]
    cusp = rv.Polynomial("x^2*y + z^2", cusp_vars)
    fields = rv.lie0(cusp_vars, rv.WeightSystem([2, 2, 3]))
    assert sorted(fields) == ["x*dx", "x*dy", "y*dx", "y*dy", "z*dz"], fields
    inferred = rv.infer_weights(cusp)
    assert inferred["weights"] == [1, 2, 2] and inferred["degree"] == 4

    assert rv.theta_piece(phi, w, 0) == ["x*dx", "y*dy"]
    assert [d for _, d in rv.hilbert_fingerprint(f, phi, w, 5)] == [1, 2, 3, 2, 1, 0]
    assert rv.ideal_equal_up_to(f, f.parse("x^3 + y^3 + x^2*y"), phi, w, 8) == (False, 3)

    report = rv.mather_verdict(f, g, phi, w, 8)
    assert report["verdict"] == "EQUIVALENT"
    assert report["rational_roots"] == ["-1", "-1/4"]

    verdict = rv.decide_rv_equiv(f, g, phi, w, 8)
    assert verdict["status"] == "EQUIVALENT"
    u = [f.parse("1/2*x"), f.parse("y")]
    holds, image = rv.verify_transport(u, f, f.parse("8*x^3 + y^3"), phi, w, 8)
    assert holds and image == f
    verdict = rv.decide_rv_equiv(f, f.parse("8*x^3 + y^3"), phi, w, 8, substitution=u)
    assert verdict["reason"] == "transport_pencil"

    assert rv.preserves_v([f.parse("y"), f.parse("x")], phi)
    assert rv.forward_invariance_check([f.parse("2*x"), f.parse("3*y")], f, phi, w, 8)
    assert not rv.saito_membership(f.parse("x^5 + y^5 + x^3*y^3"))
    assert rv.reduce_mod_ideal(f.parse("x*y + y^2"), [phi])[1] is False
    assert rv.crosscheck(3, seed=1, truncation=6)["all_agree"]

    try:
        rv.Polynomial("x^", xs)
    except ValueError as e:
        assert "1:3" in str(e)
    else:
        raise AssertionError("parse error not raised")
    try:
        f + rv.Polynomial("z", ["z", "w"])
    except ValueError:
        pass
    else:
        raise AssertionError("ring mismatch not raised")

    print(f"rvequiv {rv.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
