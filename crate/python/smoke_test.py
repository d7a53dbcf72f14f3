"""Smoke test for the extension module; run after `pip install ./crates/python`."""

import skewcodes

F4 = "p=2,s=2,mod=x^2+x+1,gen=a"


def main():
    m, q = skewcodes.period(F4, "x^3+a*x+1", t=1)
    assert m == 8, m
    print("period", m, q)

    b, rank = skewcodes.b_matrix(F4, ["x^3+x^2+a*x+a^2"], t=1)
    assert rank == 2, rank
    print("B", b, "rank", rank)

    checks = skewcodes.replicate_all()
    assert all(ok for _, ok, _ in checks), checks
    print(len(checks), "worked examples pass")

    ham = skewcodes.Code("field p=2\ntheta 0\nf=x^7+1; g=x^3+x+1\n")
    assert (ham.n, ham.k) == (7, 4)
    assert ham.min_distance() == 3
    cw = ham.encode("1,0,1,1").split(",")
    cw[5] = "1" if cw[5] == "0" else "0"
    fixed, msg = ham.decode(",".join(cw))
    assert msg == "1,0,1,1", msg
    print("hamming corrected", fixed)

    skew = skewcodes.Code("field " + F4 + "\ntheta 1\nf=x^3+x^2+a*x+a^2; g=x+a^2\n")
    assert skew.dual("hermitian") == skew.dual("quasi")
    print("hermitian dual", skew.dual("hermitian"))

    try:
        skewcodes.Code("nonsense")
    except ValueError:
        pass
    else:
        raise AssertionError("bad descriptor accepted")
    print("ok")


if __name__ == "__main__":
    main()
