import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from drinfeld import codec, dm_make, extension, fq
from drinfeld import tate as TD
from drinfeld.cli import EXIT_CAP, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from drinfeld.fields import FieldElem
from drinfeld.poly import Poly, PolyRing


@given(st.sampled_from([(2, 1), (2, 3), (3, 2), (4, 1)]), st.data())
def test_module_round_trip(qm, data):
    K = extension(fq(qm[0]), qm[1])
    el = st.integers(0, K.order - 1)
    E = dm_make(K, FieldElem(K, data.draw(el)),
                [FieldElem(K, data.draw(el)), FieldElem(K, data.draw(st.integers(1, K.order - 1)))])
    doc = json.loads(codec.dumps(codec.encode_module(E)))
    assert codec.decode_module(doc) == E


@pytest.mark.parametrize("q", [2, 3])
def test_series_and_poly_round_trip(q):
    cd = TD.cusp_data(q, 16)
    R = TD.td_ring(q)
    for s in (cd.a1, cd.a2, cd.bh, cd.l, R.zero(4)):
        back = codec.decode_series(R, json.loads(json.dumps(codec.encode_series(s))))
        assert back.identical(s)
    A = PolyRing(fq(q))
    p = Poly(A, [1, 0, q - 1])
    assert codec.decode_poly(A, codec.encode_poly(p)) == p


def test_decode_rejects_bad_digits():
    with pytest.raises(codec.CodecError):
        codec.decode_elem(fq(3), [5])


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_td_coeffs_command(capsys):
    code, out, _ = run(["td-coeffs", "--q", "2", "--prec", "8"], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["kind"] == "td-coeffs" and doc["a2"]["val"] == 1


def test_weil_command_and_scaling(capsys):
    code, out, _ = run(["weil", "--q", "3", "--n", "0,1"], capsys)
    assert code == EXIT_OK
    base = json.loads(out)
    assert base["generator"]
    code, out, _ = run(["weil", "--q", "3", "--n", "0,1", "--scale-h", "2"], capsys)
    scaled = json.loads(out)
    K = fq(3)
    L = codec.decode_field(base["torsion_field"])
    v, w = codec.decode_elem(L, base["value"]), codec.decode_elem(L, scaled["value"])
    assert w == L.mul(K.inv(2), v)


def test_derham_command(capsys):
    code, out, _ = run(["derham", "--q", "2", "--prec", "16"], capsys)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["report"]["summary"]["fail"] == 0


@pytest.mark.parametrize("args", [
    ["td-coeffs", "--q", "6"],
    ["td-coeffs", "--q", "3", "--prec", "4"],
    ["td-coeffs", "--q", "2", "--q", "3"],
    ["weil", "--q", "2", "--n", "1,0"],
    ["weil", "--q", "2", "--n", "0,2,1"],
    ["weil", "--q", "2", "--theta", "1"],
    ["weil", "--q", "3", "--scale-h", "3"],
    ["verify", "td", "--p", "4"],
    ["verify", "td", "--q", "2", "--n", "0,1,1", "--n", "x"],
])
def test_usage_errors(args, capsys):
    code, _, err = run(args, capsys)
    assert code == EXIT_USAGE and "error" in err


def test_resource_cap_exit_code(capsys):
    code, _, err = run(["weil", "--q", "4", "--ext", "5", "--theta", "3", "--alpha1", "1", "--alpha2", "1",
                        "--n", "0,0,0,1", "--maxdeg", "40"], capsys)
    assert code == EXIT_CAP and "resource cap" in err


def test_failures_exit_one(tmp_path, capsys):
    (tmp_path / "td_coeffs_q2_prec32.json").write_text("{}\n")
    code, out, err = run(["verify", "td", "--q", "2", "--golden-dir", str(tmp_path)], capsys)
    assert code == EXIT_FAIL and "td.golden" in err
    code, out, _ = run(["golden", "--check", "--golden-dir", str(tmp_path)], capsys)
    assert code == EXIT_FAIL


def test_golden_write_and_check(tmp_path, capsys):
    code, out, _ = run(["golden", "--golden-dir", str(tmp_path)], capsys)
    assert code == EXIT_OK and len(out.splitlines()) == 2
    code, out, _ = run(["golden", "--check", "--golden-dir", str(tmp_path)], capsys)
    assert code == EXIT_OK and out.count("ok") == 2


def test_verify_deterministic_subprocess(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        subprocess.run([sys.executable, "-m", "drinfeld.cli", "verify", "algebra", "--seed", "7", "--out", str(path)],
                       check=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["summary"]["fail"] == 0
