import math
import os

import pytest

import armtraj


def config(*parts):
    root = os.environ["ARMTRAJ_CONFIG_DIR"]
    return os.path.join(root, *parts)


@pytest.fixture(scope="module")
def model():
    return armtraj.load_model(config("models", "example_irb120.toml"))


@pytest.fixture(scope="module")
def square(model):
    return armtraj.load_figure(config("figures", "square_small.toml"))


def test_home_pose(model):
    p = armtraj.tool_position(model, [0.0] * 6)
    assert abs(p[0] - 374.0) < 1e-9
    assert abs(p[1]) < 1e-9
    assert abs(p[2] - 630.0) < 1e-9


def test_forward_shape(model):
    T = armtraj.forward(model, [0.1, -0.2, 0.3, 0.0, 0.5, 0.0])
    assert len(T) == 4 and all(len(row) == 4 for row in T)
    assert T[3] == [0.0, 0.0, 0.0, 1.0]


def test_ik_round_trip(model):
    q = [0.3, -0.2, 0.4, 0.1, 0.5, -0.3]
    target = armtraj.tool_position(model, q)
    sol = armtraj.solve_ik(model, target, q46=q[3:], seed=[0.25, -0.15, 0.35])
    assert sol.converged
    assert sol.residual < 1e-6
    reached = armtraj.tool_position(model, sol.q)
    assert max(abs(a - b) for a, b in zip(reached, target)) < 1e-3


def test_ik_unreachable(model):
    with pytest.raises(armtraj.UnreachableError):
        armtraj.solve_ik(model, [5000.0, 0.0, 0.0])


def test_lognormal_sigma():
    sigma = armtraj.solve_sigma(2.0, 0.99)
    assert abs(armtraj.lognormal_cdf(2.0, 0.0, 0.0, sigma) - 0.99) < 1e-9
    with pytest.raises(armtraj.ValidationError):
        armtraj.solve_sigma(2.0, 0.3)


def test_trapezoid_fixture():
    seg = armtraj.trapezoid_times(0.75, 2.0, 1.0)
    assert seg.t_acc == pytest.approx(0.5, abs=1e-12)
    assert seg.v_max == pytest.approx(0.5, abs=1e-12)
    assert seg.t_const == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(armtraj.InfeasibleError):
        armtraj.trapezoid_times(1.5, 2.0, 1.0)


def test_plan_figure_endpoints(square):
    path = armtraj.plan_figure(square, "trapezoidal", sample_period=0.024)
    assert len(path) > 100
    assert path.sample_period == 0.024
    first = path.positions()[0]
    last = path.positions()[-1]
    # closed figure: ends where it starts
    assert max(abs(a - b) for a, b in zip(first, last)) < 1e-9
    assert armtraj.arc_length(path) > 0.0


def test_pipeline_identity_snr(model, square):
    path = armtraj.plan_figure(
        square, "lognormal", sample_period=0.024, accel=model.max_accel
    )
    joints = armtraj.path_to_joints(
        model, path, q46=[0.0, 0.6, 0.0], seed0=[0.0, 0.4, 0.3]
    )
    assert len(joints) == len(path)
    assert joints.model_id == model.id

    clean = armtraj.record(path, rate=200.0, seed=3)
    report = armtraj.compare(path, clean)
    assert math.isinf(report.snr_db)

    noisy = armtraj.record(path, rate=200.0, noise=0.05, seed=3)
    degraded = armtraj.compare(path, noisy)
    assert 5.0 < degraded.snr_db < 60.0
    assert degraded.n_samples > 0


def test_record_is_seed_deterministic(square):
    path = armtraj.plan_figure(square, "trapezoidal")
    a = armtraj.record(path, noise=0.05, seed=7)
    b = armtraj.record(path, noise=0.05, seed=7)
    assert a.positions() == b.positions()
    c = armtraj.record(path, noise=0.05, seed=8)
    assert a.positions() != c.positions()


def test_make_figure_validation():
    with pytest.raises(armtraj.ValidationError):
        armtraj.make_figure("dot", [[0.0, 0.0, 0.0]], total_duration=1.0)


def test_snr_fixture():
    # signal power 200 * 1.0, error power 200 * 0.1^2 -> ratio 100
    v = [1.0] * 200
    w = [1.1] * 100 + [0.9] * 100
    assert armtraj.snr_db(v, w) == pytest.approx(20.0)
