import json

import pytest

from cyclicweights.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--m", "5", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "counter,value"
    assert lines[1:] == ["n0,4586868", "n11,2548260", "nm11,2038608", "n2,283140",
                         "n13,14520", "nm13,7260", "n4,121"]


def test_weights_json_closed(capsys):
    code, out, _ = run(capsys, "weights", "--code", "c1", "--m", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert set(doc) == {"params", "result", "checks"}
    assert doc["result"]["weights"] == {"108": "14520", "144": "2548260", "162": "9740258",
                                        "180": "2038608", "216": "7260"}
    assert all(c["ok"] for c in doc["checks"])


def test_byte_stable(capsys):
    argv = ("weights", "--code", "c2", "--m", "5", "--format", "json", "--seed", "3", "--samples", "20",
            "--oracle", "all")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_c2_m7_rejected(capsys):
    code, _, err = run(capsys, "weights", "--code", "c2", "--m", "7")
    assert code == 2
    assert "m must be ≡ 1 mod 4" in err


@pytest.mark.parametrize("argv", [
    ("census", "--p", "4"),
    ("field", "--m", "0"),
    ("census", "--m", "4"),
    ("weights", "--m", "3"),
    ("weights", "--code", "c2", "--oracle", "brute"),
    ("census", "--oracle", "census", "--m", "7"),
    ("scheme", "--d", "9"),
])
def test_invalid_parameters_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ("field",),
    ("field", "--m", "1", "--format", "json"),
    ("coset", "--code", "c2"),
    ("coset", "--s", "4", "--s", "0"),
    ("moments",),
    ("moments", "--p", "7", "--m", "1", "--oracle", "census"),
    ("scheme",),
    ("scheme", "--variant", "skew", "--m", "6", "--d", "1"),
    ("count", "--m", "3", "--nvars", "3"),
    ("count", "--m", "5"),
    ("verify", "--code", "c2", "--samples", "50"),
    ("census", "--m", "3", "--oracle", "census"),
])
def test_commands_succeed(capsys, argv):
    for fmt in ("json", "csv", "text"):
        code, out, _ = run(capsys, *argv, "--format", fmt)
        assert code == 0, out
        assert out


def test_mismatch_exit_1(capsys, monkeypatch):
    from cyclicweights import codes
    real = codes.c1_distribution

    def broken(*a, **k):
        d = real(*a, **k)
        d.entries[162] += 1
        return d

    monkeypatch.setattr(codes, "c1_distribution", broken)
    code, out, _ = run(capsys, "weights", "--code", "c1", "--format", "json")
    assert code == 1
    assert not all(c["ok"] for c in json.loads(out)["checks"])


def test_include_zero_word(capsys):
    code, out, _ = run(capsys, "weights", "--include-zero-word", "--format", "csv")
    assert code == 0 and "0,1" in out.splitlines()
