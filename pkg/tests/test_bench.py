from drinfeld_delta.bench import bench_exponentiation, render_bench_text, run_bench
from drinfeld_delta.config import RunConfig


def _config(**overrides):
    options = {"command": "bench", "q": 2, "r": 2, "N": 20, "B": 3, "P": 100}
    options.update(overrides)
    return RunConfig(**options)


def test_exponentiation_row():
    row = bench_exponentiation(_config(q=3, N=30))
    assert row["name"] == "charp_vs_naive"
    assert row["identical"]
    assert row["D"] == 3
    assert row["charp_seconds"] >= 0


def test_run_bench_with_builtin_point():
    messages = []
    payload = run_bench(_config(), status_callback=messages.append)
    assert payload["schema_version"] == 1
    names = [row["name"] for row in payload["rows"]]
    assert names == ["charp_vs_naive", "product_vs_direct"]
    comparison = payload["rows"][1]
    assert comparison["point"] == "q2r2-a"
    assert comparison["agreement"] is None or comparison["agreement"] > 0
    assert messages


def test_run_bench_without_builtin_point():
    payload = run_bench(_config(q=4, N=10))
    assert [row["name"] for row in payload["rows"]] == ["charp_vs_naive"]


def test_render_bench_text():
    text = render_bench_text({"rows": [{"name": "charp_vs_naive", "q": 2, "D": 1}]})
    assert text == "charp_vs_naive: D=1 q=2\n"
