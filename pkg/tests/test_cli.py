import io
import json
import subprocess
import sys

import pytest

from macwork import cli


def call(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), out=buf)
    return code, buf.getvalue()


def test_htilde_json_exact(cache_dir):
    code, out = call("htilde", "--mu", "2", "--json")
    assert code == 0
    assert out == '{"mu":[2],"coeffs":{"[2]":"1","[1,1]":"q"}}\n'


def test_usage_errors(cache_dir):
    assert call("htilde", "--mu", "1,2")[0] == 2
    assert call("htilde", "--mu", "a,b")[0] == 2
    assert call("htilde")[0] == 2
    assert call("bogus")[0] == 2
    assert call("polygraph-hilbert", "--n", "2", "--l", "1", "--m", "1")[0] == 2
    assert call("polygraph-hilbert", "--n", "2", "--l", "1", "--dx", "-1")[0] == 2
    assert call("nfact", "--max-n", "6")[0] == 2
    assert call("jpower", "--n", "3", "--d", "2")[0] == 2
    assert call("coinv", "--n", "0")[0] == 2


VERBS = [
    ("htilde", "--mu", "2,1"),
    ("ktable", "--n", "3"),
    ("positivity", "--n", "3"),
    ("nfact", "--max-n", "3"),
    ("frobenius", "--mu", "2,1"),
    ("check-fh", "--max-n", "3"),
    ("polygraph-hilbert", "--n", "2", "--l", "1", "--dx", "2", "--dy", "2"),
    ("polygraph-freeness", "--n", "2", "--l", "1", "--m", "1", "--r", "2", "--k", "1", "--dx", "3", "--dy", "3"),
    ("polygraph-basis2", "--l", "1", "--dx", "3", "--dy", "3"),
    ("jpower", "--n", "2", "--d", "2", "--dx", "3", "--dy", "3"),
    ("coinv", "--n", "3"),
    ("denominator", "--mu", "2,1"),
]


@pytest.mark.parametrize("argv", VERBS, ids=lambda a: a[0])
def test_every_verb_passes_and_is_deterministic(argv, cache_dir):
    code, fresh = call(*argv, "--json")
    assert code == 0
    json.loads(fresh)
    code2, cached = call(*argv, "--json")
    assert (code2, cached) == (0, fresh)
    code3, uncached = call(*argv, "--json", "--no-cache")
    assert (code3, uncached) == (0, fresh)
    # cache cleared in between
    for f in cache_dir.iterdir():
        f.unlink()
    assert call(*argv, "--json") == (0, fresh)
    for mode in ([], ["--csv"]):
        code, text = call(*argv, *mode)
        assert code == 0 and text.strip()


def test_nfact_table(cache_dir):
    code, out = call("nfact", "--max-n", "4", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["pass"]
    assert len(payload["rows"]) == 1 + 2 + 3 + 5
    assert all(r["dim"] == r["nfact"] for r in payload["rows"])


def test_freeness_verb(cache_dir):
    code, out = call("polygraph-freeness", "--n", "2", "--l", "1", "--dx", "6", "--dy", "6", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["check"] == "freeness" and payload["pass"] and payload["first_discrepancy"] is None


def test_failed_check_exits_one(cache_dir, monkeypatch):
    from macwork import ghmodule

    real = ghmodule.dmu_basis

    class Fake:
        total = 5

    monkeypatch.setattr(ghmodule, "dmu_basis", lambda mu: Fake() if sum(mu) == 3 else real(mu))
    code, out = call("nfact", "--max-n", "3", "--json", "--no-cache")
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_version_bump_invalidates(cache_dir, monkeypatch):
    calls = []

    def thunk():
        calls.append(1)
        return {"v": len(calls)}, True

    key = cli.cache_key("x", {"a": 1})
    assert cli.cache_get_or_compute(key, thunk) == ({"v": 1}, True)
    assert cli.cache_get_or_compute(key, thunk) == ({"v": 1}, True)
    monkeypatch.setattr(cli, "__version__", "9.9")
    assert cli.cache_get_or_compute(cli.cache_key("x", {"a": 1}), thunk) == ({"v": 2}, True)


def test_corrupt_entry_recomputed(cache_dir, caplog):
    code, first = call("htilde", "--mu", "2", "--json")
    (entry,) = list(cache_dir.iterdir())
    entry.write_text("{not json")
    with caplog.at_level("WARNING"):
        code, again = call("htilde", "--mu", "2", "--json")
    assert code == 0 and again == first
    assert any("corrupt" in r.message for r in caplog.records)
    assert json.loads(entry.read_text())["payload"] == json.loads(first)


def test_module_entry_point(cache_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "macwork.cli", "htilde", "--mu", "1,1", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == '{"mu":[1,1],"coeffs":{"[2]":"1","[1,1]":"t"}}\n'
