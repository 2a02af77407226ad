import csv
import json
import os

from rmsyndrome.cli import main, substream_rng, substream_seed
from rmsyndrome.code import (CodeParams, ErrorSet, corrupt, encode,
                             read_word_file, sample_error_set,
                             syndrome_from_errors, write_syndrome_file,
                             write_word_file)
from rmsyndrome.polynomials import MultilinearPoly, monomial_index


def _write_poly(path, terms):
    path.write_text(json.dumps([[list(e), c] for e, c in terms]))


def _setup_corrupted(tmp_path, rng, m=8, r=1, t=5):
    params = CodeParams(m, r)
    idx = monomial_index(m, params.code_degree, 2)
    P = MultilinearPoly(idx, [rng.randrange(2) for _ in range(idx.size)])
    E = sample_error_set(params, t, rng)
    word = corrupt(encode(P, params), E)
    wpath = tmp_path / "word.bits"
    write_word_file(word, wpath)
    spath = tmp_path / "synd.json"
    assert main(["syndrome", "--word", str(wpath), "--out", str(spath)]) == 0
    return params, E, wpath, spath


def test_substream_scheme_is_stable():
    assert substream_seed(0, 0) == substream_seed(0, 0)
    assert substream_seed(0, 0) != substream_seed(0, 1)
    assert substream_rng(5, 1).random() == substream_rng(5, 1).random()


def test_encode_zero_and_constant(tmp_path):
    poly = tmp_path / "p.json"
    out = tmp_path / "w.bits"
    _write_poly(poly, [])
    assert main(["encode", "--m", "6", "--r", "1", "--poly", str(poly),
                 "--out", str(out)]) == 0
    assert read_word_file(out).values == 0
    _write_poly(poly, [([0] * 6, 1)])
    assert main(["encode", "--m", "6", "--r", "1", "--poly", str(poly),
                 "--out", str(out)]) == 0
    assert read_word_file(out).values == (1 << 64) - 1


def test_encode_rejects_high_degree(tmp_path):
    poly = tmp_path / "p.json"
    _write_poly(poly, [([1, 1, 1, 0, 0, 0], 1)])  # degree 3 > 6 - 2*2 = 2... code degree bound
    rc = main(["encode", "--m", "6", "--r", "2", "--poly", str(poly),
               "--out", str(tmp_path / "w.bits")])
    assert rc == 4


def test_syndrome_of_codeword_is_zero(tmp_path):
    poly = tmp_path / "p.json"
    _write_poly(poly, [([1, 1, 0, 0, 0, 0, 0, 0], 1), ([0] * 8, 1)])
    wpath = tmp_path / "w.bits"
    assert main(["encode", "--m", "8", "--r", "1", "--poly", str(poly),
                 "--out", str(wpath)]) == 0
    spath = tmp_path / "s.json"
    assert main(["syndrome", "--word", str(wpath), "--out", str(spath)]) == 0
    assert all(v == 0 for v in json.loads(spath.read_text())["entries"])


def test_stream_and_batch_syndrome_files_identical(tmp_path, rng):
    _, _, wpath, spath = _setup_corrupted(tmp_path, rng)
    spath2 = tmp_path / "synd_stream.json"
    assert main(["syndrome", "--word", str(wpath), "--stream",
                 "--out", str(spath2)]) == 0
    assert spath.read_bytes() == spath2.read_bytes()


def test_decode_zero_syndrome(tmp_path):
    params = CodeParams(6, 1)
    spath = tmp_path / "s.json"
    write_syndrome_file(syndrome_from_errors(ErrorSet(params, ())), spath)
    out = tmp_path / "locs.json"
    assert main(["decode", "--syndrome", str(spath), "--out", str(out)]) == 0
    assert json.loads(out.read_text()) == []


def test_decode_all_algorithms_identical_files(tmp_path, rng):
    params, E, _, spath = _setup_corrupted(tmp_path, rng)
    outputs = []
    for name, extra in [
        ("det", ["--algo", "polyspace", "--mode", "det"]),
        ("rand", ["--algo", "polyspace", "--mode", "rand", "--seed", "3"]),
        ("jrand", ["--algo", "jennrich", "--mode", "rand", "--seed", "4",
                   "--ext-degree", "32"]),
        ("jder", ["--algo", "jennrich", "--mode", "derand", "--ext-degree", "32"]),
    ]:
        out = tmp_path / f"locs_{name}.json"
        assert main(["decode", "--syndrome", str(spath), "--out", str(out)]
                    + extra) == 0
        outputs.append(out.read_bytes())
    assert len(set(outputs)) == 1
    located = [tuple(e) for e in json.loads(outputs[0].decode())]
    assert tuple(located) == E.points  # sorted in point-enumeration order


def test_decode_dump_space(tmp_path, rng):
    params, E, _, spath = _setup_corrupted(tmp_path, rng, t=3)
    out = tmp_path / "locs.json"
    dump = tmp_path / "space.json"
    assert main(["decode", "--syndrome", str(spath), "--out", str(out),
                 "--dump-space", str(dump)]) == 0
    space = json.loads(dump.read_text())
    idx = monomial_index(8, 2, 2)
    for poly_obj in space:
        P = MultilinearPoly.from_terms(idx, {tuple(e): c for e, c in poly_obj})
        assert all(P.evaluate(e) == 0 for e in E.points)


def test_decode_failure_exit_code(tmp_path, rng):
    params = CodeParams(8, 1)
    E = sample_error_set(params, 2, rng)
    entries = list(syndrome_from_errors(E).entries)
    entries[-1] ^= 1
    from rmsyndrome.code import Syndrome
    spath = tmp_path / "bad.json"
    write_syndrome_file(Syndrome(params, tuple(entries)), spath)
    out = tmp_path / "locs.json"
    for extra in (["--algo", "polyspace", "--mode", "det"],
                  ["--algo", "jennrich", "--mode", "rand", "--ext-degree", "32"]):
        assert main(["decode", "--syndrome", str(spath), "--out", str(out)]
                    + extra) == 2


def test_exit_codes_for_bad_input(tmp_path):
    assert main(["decode", "--syndrome", str(tmp_path / "missing.json"),
                 "--out", str(tmp_path / "o.json")]) == 3
    assert main(["nonsense"]) == 3
    assert main(["experiment", "--m", "3", "--r", "1", "--t", "1",
                 "--trials", "1", "--out", str(tmp_path / "e.csv")]) == 4
    assert main(["experiment", "--m", "8", "--r", "1", "--trials", "1",
                 "--out", str(tmp_path / "e.csv")]) == 4  # neither --t nor --t-range
    assert main(["experiment", "--m", "8", "--r", "1", "--t", "2",
                 "--algo", "jennrich", "--mode", "det", "--trials", "1",
                 "--out", str(tmp_path / "e.csv")]) == 4  # invalid combo


def test_experiment_reproducible_and_summary(tmp_path):
    args = ["experiment", "--m", "8", "--r", "1", "--t", "4", "--trials", "8",
            "--seed", "11", "--algo", "polyspace", "--mode", "det",
            "--omit-timing"]
    c1, c2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(c1)]) == 0
    assert main(args + ["--out", str(c2)]) == 0
    assert c1.read_bytes() == c2.read_bytes()
    rows = list(csv.DictReader(c1.read_text().splitlines()))
    trials = [r for r in rows if r["record"] == "trial"]
    summary = [r for r in rows if r["record"] == "summary"]
    assert len(trials) == 8 and len(summary) == 1
    assert all(r["success"] == "1" for r in trials)
    assert summary[0]["success_rate"] == "1.0"


def test_experiment_t_sweep_records_sampling_failures(tmp_path):
    # t sweeps past the independence bound |M_1^4| = 5: recorded, no crash
    out = tmp_path / "sweep.csv"
    assert main(["experiment", "--m", "4", "--r", "1", "--t-range", "4:7",
                 "--trials", "3", "--seed", "5", "--algo", "polyspace",
                 "--mode", "det", "--omit-timing", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    t6 = [r for r in rows if r["record"] == "trial" and r["t"] in ("6", "7")]
    assert t6 and all(r["status"] == "sampling_failed" for r in t6)


def test_experiment_jennrich_modes(tmp_path):
    out = tmp_path / "j.csv"
    assert main(["experiment", "--m", "8", "--r", "1", "--t", "4",
                 "--trials", "4", "--seed", "2", "--algo", "jennrich",
                 "--mode", "derand", "--ext-degree", "32", "--omit-timing",
                 "--out", str(out)]) == 0
    rows = [r for r in csv.DictReader(out.read_text().splitlines())
            if r["record"] == "trial"]
    assert all(r["success"] == "1" for r in rows)


def test_experiment_worker_pool_matches_serial(tmp_path):
    args = ["experiment", "--m", "6", "--r", "1", "--t", "3", "--trials", "6",
            "--seed", "9", "--algo", "polyspace", "--mode", "rand",
            "--omit-timing"]
    serial, pooled = tmp_path / "s.csv", tmp_path / "p.csv"
    assert main(args + ["--out", str(serial)]) == 0
    os.environ["RMS_THREADS"] = "3"
    try:
        assert main(args + ["--out", str(pooled)]) == 0
    finally:
        del os.environ["RMS_THREADS"]
    assert serial.read_bytes() == pooled.read_bytes()
