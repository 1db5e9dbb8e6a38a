import json

import numpy as np
import pytest

from cmrecon import coil_kspace, DynamicImage, MultiCoilKSpace, SamplingMask, SensitivityMaps
from cmrecon.cli import main
from cmrecon.dataio import read_array
from cmrecon import phantom as phantom_mod


@pytest.fixture(scope="module")
def world(tmp_path_factory):
    """Phantom, maps, masks, and k-space files shared by the CLI tests."""
    root = tmp_path_factory.mktemp("world")
    paths = {
        "image": root / "img.cmrx",
        "maps": root / "maps.cmrx",
        "mask_full": root / "mask_full.cmrx",
        "mask_r4": root / "mask_r4.cmrx",
        "y_full": root / "y_full.cmrx",
        "y_r4": root / "y_r4.cmrx",
        "root": root,
    }
    assert main([
        "phantom", "--ny", "32", "--nx", "32", "--nf", "2", "--nc", "2",
        "--seed", "0", "--image", str(paths["image"]), "--maps", str(paths["maps"]),
    ]) == 0
    assert main([
        "mask", "--scheme", "equispaced", "--R", "1", "--nx", "32", "--nf", "2",
        "--out", str(paths["mask_full"]),
    ]) == 0
    assert main([
        "mask", "--scheme", "equispaced", "--R", "4", "--nx", "32", "--nf", "2",
        "--acs", "0.125", "--seed", "3", "--out", str(paths["mask_r4"]),
    ]) == 0
    assert main([
        "undersample", "--image", str(paths["image"]), "--maps", str(paths["maps"]),
        "--mask", str(paths["mask_full"]), "--out", str(paths["y_full"]),
    ]) == 0
    assert main([
        "undersample", "--image", str(paths["image"]), "--maps", str(paths["maps"]),
        "--mask", str(paths["mask_r4"]), "--out", str(paths["y_r4"]),
    ]) == 0
    return paths


def test_phantom_files_have_expected_shapes(world):
    img, kind = read_array(world["image"])
    assert kind == "image" and img.shape == (2, 32, 32)
    maps, kind = read_array(world["maps"])
    assert kind == "maps" and maps.shape == (2, 32, 32)


def test_mask_prints_measured_acceleration(world, capsys, tmp_path):
    out = tmp_path / "m.cmrx"
    code = main([
        "mask", "--scheme", "equispaced", "--R", "4", "--nx", "32", "--nf", "2",
        "--out", str(out),
    ])
    captured = capsys.readouterr()
    assert code == 0
    assert "measured acceleration 4.000" in captured.out
    arr, kind = read_array(out)
    assert kind == "mask" and arr.shape == (2, 32, 32)


def test_zero_filled_recovers_fully_sampled_volume(world, tmp_path):
    out = tmp_path / "zf.cmrx"
    code = main([
        "recon", "--method", "zero-filled", "--kspace", str(world["y_full"]),
        "--mask", str(world["mask_full"]), "--maps", str(world["maps"]),
        "--out", str(out),
    ])
    assert code == 0
    recon, _ = read_array(out)
    truth, _ = read_array(world["image"])
    err = np.linalg.norm(recon - truth) / np.linalg.norm(truth)
    assert err < 1e-6


def test_eval_writes_report_pair(world, tmp_path):
    pred = tmp_path / "zf.cmrx"
    main([
        "recon", "--method", "zero-filled", "--kspace", str(world["y_full"]),
        "--mask", str(world["mask_full"]), "--maps", str(world["maps"]),
        "--out", str(pred),
    ])
    code = main([
        "eval", "--pred", str(pred), "--ref", str(world["image"]),
        "--method", "zf", "--volume", "demo", "--out", str(tmp_path / "rep"),
    ])
    assert code == 0
    lines = (tmp_path / "rep.csv").read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("zf,demo,")
    records = json.loads((tmp_path / "rep.json").read_text())
    assert records[0]["nmse"] < 1e-10
    # two frames cannot fill the 3-frame volume window
    assert records[0]["ssim3d"] == "nan"


def test_recon_rerun_is_byte_identical(world, tmp_path):
    args = [
        "recon", "--method", "vsharp", "--kspace", str(world["y_r4"]),
        "--mask", str(world["mask_r4"]), "--maps", str(world["maps"]),
        "--iterations", "3", "--x-steps", "2",
    ]
    a = tmp_path / "a.cmrx"
    b = tmp_path / "b.cmrx"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_arn_identity_collapse_matches_plain_vsharp(world, tmp_path):
    common = [
        "--kspace", str(world["y_r4"]), "--mask", str(world["mask_r4"]),
        "--maps", str(world["maps"]), "--iterations", "3", "--x-steps", "2",
    ]
    plain = tmp_path / "plain.cmrx"
    arn = tmp_path / "arn.cmrx"
    assert main(["recon", "--method", "vsharp", "--out", str(plain)] + common) == 0
    # one identity cascade refines the measurement to itself, and the
    # classical priors never read the recorded z0, so the solve is the same
    assert main([
        "recon", "--method", "vsharp-arn", "--arn-cascades", "1",
        "--arn-regularizer", "identity", "--out", str(arn),
    ] + common) == 0
    assert plain.read_bytes() == arn.read_bytes()


def test_recon_with_calibration(world, tmp_path):
    out = tmp_path / "cal.cmrx"
    code = main([
        "recon", "--method", "zero-filled", "--kspace", str(world["y_r4"]),
        "--mask", str(world["mask_r4"]), "--calibrate", "--acs", "0.125",
        "--out", str(out),
    ])
    assert code == 0
    arr, kind = read_array(out)
    assert kind == "image" and arr.shape == (2, 32, 32)


def test_trace_directory_contents(world, tmp_path):
    trace_dir = tmp_path / "trace"
    out = tmp_path / "img.cmrx"
    code = main([
        "recon", "--method", "vsharp-arn", "--kspace", str(world["y_r4"]),
        "--mask", str(world["mask_r4"]), "--maps", str(world["maps"]),
        "--iterations", "3", "--x-steps", "2", "--arn-cascades", "2",
        "--out", str(out), "--trace", str(trace_dir),
    ])
    assert code == 0
    names = sorted(p.name for p in trace_dir.iterdir())
    assert names == [
        "refined.cmrx", "residuals.json",
        "x_01.cmrx", "x_02.cmrx", "x_03.cmrx",
        "y_01.cmrx", "y_02.cmrx", "y_03.cmrx",
        "z0.cmrx",
    ]
    residuals = json.loads((trace_dir / "residuals.json").read_text())
    assert len(residuals) == 3 and all(np.isfinite(residuals))
    x3, kind = read_array(trace_dir / "x_03.cmrx")
    final, _ = read_array(out)
    assert kind == "image" and np.array_equal(x3, final)


def test_trace_skipped_for_direct_methods(world, tmp_path):
    trace_dir = tmp_path / "trace"
    code = main([
        "recon", "--method", "zero-filled", "--kspace", str(world["y_r4"]),
        "--mask", str(world["mask_r4"]), "--maps", str(world["maps"]),
        "--out", str(tmp_path / "o.cmrx"), "--trace", str(trace_dir),
    ])
    assert code == 0
    assert not trace_dir.exists()


def test_config_file_precedence(world, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"iterations": 2, "x_steps": 2}))
    common = [
        "recon", "--method", "vsharp", "--kspace", str(world["y_r4"]),
        "--mask", str(world["mask_r4"]), "--maps", str(world["maps"]),
        "--config", str(cfg),
    ]
    t1 = tmp_path / "t1"
    assert main(common + ["--out", str(tmp_path / "o1.cmrx"), "--trace", str(t1)]) == 0
    assert sorted(p.name for p in t1.iterdir() if p.name.startswith("x_")) == [
        "x_01.cmrx", "x_02.cmrx",
    ]
    t2 = tmp_path / "t2"
    assert main(common + [
        "--iterations", "3", "--out", str(tmp_path / "o2.cmrx"), "--trace", str(t2),
    ]) == 0
    assert sorted(p.name for p in t2.iterdir() if p.name.startswith("x_")) == [
        "x_01.cmrx", "x_02.cmrx", "x_03.cmrx",
    ]


def test_config_rejections(world, tmp_path):
    bad_key = tmp_path / "bad.json"
    bad_key.write_text(json.dumps({"bogus": 1}))
    common = [
        "recon", "--method", "vsharp", "--kspace", str(world["y_r4"]),
        "--mask", str(world["mask_r4"]), "--maps", str(world["maps"]),
        "--out", str(tmp_path / "o.cmrx"),
    ]
    assert main(common + ["--config", str(bad_key)]) == 2
    not_json = tmp_path / "broken.json"
    not_json.write_text("{nope")
    assert main(common + ["--config", str(not_json)]) == 2
    a_list = tmp_path / "list.json"
    a_list.write_text("[1, 2]")
    assert main(common + ["--config", str(a_list)]) == 2


def test_exit_codes(world, tmp_path):
    # usage errors from argparse itself
    assert main([]) == 2
    assert main(["recon", "--method", "nonsense"]) == 2
    assert main(["--help"]) == 0
    # malformed container
    junk = tmp_path / "junk.cmrx"
    junk.write_bytes(b"not a container at all")
    assert main([
        "recon", "--method", "zero-filled", "--kspace", str(junk),
        "--mask", str(world["mask_r4"]), "--maps", str(world["maps"]),
        "--out", str(tmp_path / "o.cmrx"),
    ]) == 3
    # right container, wrong kind
    assert main([
        "recon", "--method", "zero-filled", "--kspace", str(world["image"]),
        "--mask", str(world["mask_r4"]), "--maps", str(world["maps"]),
        "--out", str(tmp_path / "o.cmrx"),
    ]) == 2
    # maps neither given nor calibrated
    assert main([
        "recon", "--method", "zero-filled", "--kspace", str(world["y_r4"]),
        "--mask", str(world["mask_r4"]), "--out", str(tmp_path / "o.cmrx"),
    ]) == 2
    # missing input file
    assert main([
        "recon", "--method", "zero-filled", "--kspace", str(tmp_path / "gone.cmrx"),
        "--mask", str(world["mask_r4"]), "--maps", str(world["maps"]),
        "--out", str(tmp_path / "o.cmrx"),
    ]) == 2
    # impossible mask parameters
    assert main([
        "mask", "--scheme", "equispaced", "--R", "64", "--nx", "32",
        "--out", str(tmp_path / "m.cmrx"),
    ]) == 2


def test_divergent_solve_exits_four(world, tmp_path):
    with np.errstate(over="ignore", invalid="ignore"):
        code = main([
            "recon", "--method", "vsharp", "--kspace", str(world["y_r4"]),
            "--mask", str(world["mask_r4"]), "--maps", str(world["maps"]),
            "--iterations", "2", "--x-steps", "2", "--step-size", "1e300",
            "--out", str(tmp_path / "o.cmrx"),
        ])
    assert code == 4


def test_undersample_augment_flags(world, tmp_path):
    out = tmp_path / "aug.cmrx"
    args = [
        "undersample", "--image", str(world["image"]), "--maps", str(world["maps"]),
        "--mask", str(world["mask_full"]), "--augment", "hflip,time-reverse",
        "--augment-prob", "1.0", "--seed", "5", "--out", str(out),
    ]
    assert main(args) == 0
    got, _ = read_array(out)
    image, _ = read_array(world["image"])
    maps, _ = read_array(world["maps"])
    mask, _ = read_array(world["mask_full"])
    full = coil_kspace(DynamicImage(image), SensitivityMaps(maps))
    flipped = phantom_mod.augment(full, hflip=True, time_reverse=True)
    want = phantom_mod.corrupt(flipped, SamplingMask(mask), 0.0, 5)
    assert np.array_equal(got, want.data)
    # reruns are byte-identical
    out2 = tmp_path / "aug2.cmrx"
    assert main(args[:-1] + [str(out2)]) == 0
    assert out.read_bytes() == out2.read_bytes()
    # unknown augmentation name
    assert main([
        "undersample", "--image", str(world["image"]), "--maps", str(world["maps"]),
        "--mask", str(world["mask_full"]), "--augment", "transpose",
        "--out", str(tmp_path / "x.cmrx"),
    ]) == 2


def test_bench_small_sweep(tmp_path, capsys):
    out_dir = tmp_path / "bench"
    code = main([
        "bench", "--preset", "desk-A", "--schemes", "equispaced",
        "--accelerations", "4", "--ny", "32", "--nx", "32", "--nf", "3",
        "--nc", "2", "--methods", "zero-filled,sense", "--no-png",
        "--out-dir", str(out_dir),
    ])
    captured = capsys.readouterr()
    assert code == 0
    assert "mean ssim by method" in captured.out
    lines = (out_dir / "report.csv").read_text().splitlines()
    assert len(lines) == 3
    methods = sorted(line.split(",")[0] for line in lines[1:])
    assert methods == ["sense", "zero-filled"]
    assert not (out_dir / "png").exists()
    assert main([
        "bench", "--schemes", "mystery", "--out-dir", str(tmp_path / "b2"),
    ]) == 2


def test_bench_writes_pngs(tmp_path):
    out_dir = tmp_path / "bench"
    code = main([
        "bench", "--schemes", "equispaced", "--accelerations", "4",
        "--ny", "32", "--nx", "32", "--nf", "3", "--nc", "2",
        "--methods", "zero-filled", "--out-dir", str(out_dir),
    ])
    assert code == 0
    names = sorted(p.name for p in (out_dir / "png").iterdir())
    assert names == [
        "equispaced-R4-reference.png",
        "equispaced-R4-zero-filled.png",
    ]
    from PIL import Image

    with Image.open(out_dir / "png" / "equispaced-R4-reference.png") as img:
        # 3 frames tiled horizontally
        assert img.size == (96, 32)
