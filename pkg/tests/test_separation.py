import numpy as np
import pytest

from sparsebss import (
    Cluster,
    ClusterFormationFailedError,
    DegenerateClusterError,
    DimensionMismatchError,
    EstimatedDirection,
    MethodParams,
    NoConsecutivePairError,
    associate,
    compute_headings,
    deflate,
    gram_schmidt_whiten,
    mhc_find_direction,
    normalize_unit_norm,
    project_source,
    separate,
    weighted_average_heading,
)
from sparsebss.headings import HeadingSet


def make_cluster(velocities):
    v = np.asarray(velocities, dtype=float)
    return Cluster(member_indices=np.arange(len(v)), member_velocities=v)


def make_heading_set(headings, accepted):
    h = np.asarray(headings, dtype=float)
    speeds = np.linalg.norm(h, axis=1)
    return HeadingSet(
        velocities=h,
        headings=h,
        speeds=speeds,
        nonzero=speeds > 0,
        accepted=np.asarray(accepted, dtype=bool),
        v_max=float(speeds.max()),
    )


class TestWeightedAverageHeading:
    def test_identical_unit_members_reduce_to_straight_average(self):
        direction = weighted_average_heading(make_cluster([[0.6, 0.8]] * 4))
        np.testing.assert_allclose(direction.unit_vector, [0.6, 0.8], atol=1e-15)
        assert direction.support_size == 4

    def test_collinear_members(self):
        # magnitudes 5 and 10; weighted sum = ((15+60)/125, (20+80)/125)
        direction = weighted_average_heading(make_cluster([[3.0, 4.0], [6.0, 8.0]]))
        np.testing.assert_allclose(direction.unit_vector, [0.6, 0.8], atol=1e-15)

    def test_antiparallel_members_are_sign_reconciled(self):
        direction = weighted_average_heading(make_cluster([[1.0, 0.0], [-1.0, 0.0]]))
        np.testing.assert_allclose(np.abs(direction.unit_vector), [1.0, 0.0], atol=1e-15)

    def test_unit_length_output(self):
        rng = np.random.default_rng(41)
        direction = weighted_average_heading(make_cluster(rng.normal(size=(7, 3))))
        assert np.linalg.norm(direction.unit_vector) == pytest.approx(1.0, abs=1e-12)

    def test_sign_reconciliation_prevents_cancellation(self):
        # after flipping against the largest member the weighted sum keeps
        # a strictly positive dot with it, so antiparallel pairs of any
        # magnitude cannot cancel
        cluster = make_cluster([[1e-20, 0.0], [-1e-20, 0.0]])
        direction = weighted_average_heading(cluster)
        np.testing.assert_allclose(np.abs(direction.unit_vector), [1.0, 0.0])

    def test_degenerate_cluster_of_zero_velocities(self):
        with pytest.raises(DegenerateClusterError):
            weighted_average_heading(make_cluster([[0.0, 0.0], [0.0, 0.0]]))


class TestMhcDirection:
    def test_zero_change_pair_wins(self):
        hs = make_heading_set([[0.6, 0.8], [0.6, 0.8], [1.0, 0.0]], [1, 1, 1])
        direction = mhc_find_direction(hs)
        np.testing.assert_allclose(direction.unit_vector, [0.6, 0.8], atol=1e-15)

    def test_sign_fold_treats_antiparallel_as_equal(self):
        hs = make_heading_set([[1.0, 0.0], [-1.0, 0.0]], [1, 1])
        direction = mhc_find_direction(hs)
        # the most recent heading of the winning pair is returned
        np.testing.assert_allclose(direction.unit_vector, [-1.0, 0.0], atol=1e-15)

    def test_single_accepted_heading_raises(self):
        hs = make_heading_set([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]], [0, 1, 0])
        with pytest.raises(NoConsecutivePairError):
            mhc_find_direction(hs)

    def test_ties_take_smallest_index(self):
        hs = make_heading_set([[1.0, 0.0]] * 4, [1, 1, 1, 1])
        assert mhc_find_direction(hs).support_size == 1


class TestProjectAndDeflate:
    def test_basis_projection_returns_channel(self):
        data = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
        d = EstimatedDirection(unit_vector=np.array([1.0, 0.0]), support_size=1)
        np.testing.assert_array_equal(project_source(data, d), data[0])

    def test_dot_product_projection(self):
        data = np.array([[1.0], [1.0]])
        d = EstimatedDirection(unit_vector=np.array([0.6, 0.8]), support_size=1)
        assert project_source(data, d)[0] == pytest.approx(1.4)

    def test_dimension_mismatch(self):
        d = EstimatedDirection(unit_vector=np.array([1.0, 0.0, 0.0]), support_size=1)
        with pytest.raises(DimensionMismatchError):
            project_source(np.ones((2, 5)), d)

    def test_deflate_removes_direction(self):
        rng = np.random.default_rng(42)
        data = rng.normal(size=(3, 40))
        d = EstimatedDirection(unit_vector=np.array([0.6, 0.8, 0.0]), support_size=1)
        source = project_source(data, d)
        residual = deflate(data, d, source)
        np.testing.assert_allclose(d.unit_vector @ residual, 0.0, atol=1e-10)

    def test_deflate_coordinate_case(self):
        data = np.array([[3.0, -1.0], [5.0, 7.0]])
        d = EstimatedDirection(unit_vector=np.array([1.0, 0.0]), support_size=1)
        residual = deflate(data, d, project_source(data, d))
        np.testing.assert_array_equal(residual, [[0.0, 0.0], [5.0, 7.0]])

    def test_deflate_idempotent(self):
        rng = np.random.default_rng(43)
        data = rng.normal(size=(2, 30))
        d = EstimatedDirection(unit_vector=np.array([0.8, -0.6]), support_size=1)
        once = deflate(data, d, project_source(data, d))
        twice = deflate(once, d, project_source(once, d))
        np.testing.assert_allclose(twice, once, atol=1e-12)


def aligned_correlations(sources, estimates):
    assoc = associate(normalize_unit_norm(sources), normalize_unit_norm(estimates))
    return np.abs(assoc.correlations)


@pytest.mark.parametrize("method,vth", [("global", 0.4), ("mhc", 0.8)])
def test_clean_two_pulse_recovery(example1, method, vth):
    _, sources, mixtures = example1
    result = separate(mixtures, MethodParams(method=method, v_th=vth, alpha=1.0))
    assert result.estimates.shape == mixtures.shape
    assert np.all(aligned_correlations(sources, result.estimates) >= 0.999)


def test_single_channel_single_source():
    t = np.linspace(0.0, 1.0, 100)
    source = np.exp(-((t - 0.5) ** 2) / 0.005)
    mixtures = 2.5 * source[None, :]
    result = separate(mixtures, MethodParams(method="global", v_th=0.3))
    corr = np.corrcoef(source, result.estimates[0])[0, 1]
    assert abs(corr) >= 1.0 - 1e-12
    assert result.iterations[-1].residual_energy < 1e-10 * np.sum(mixtures**2)


def test_cluster_formation_failure_carries_iteration():
    # two accepted headings far apart in every component: no adjacency run
    data = np.array(
        [[0.0, 1.0, 1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0, 1.0]]
    )
    with pytest.raises(ClusterFormationFailedError) as excinfo:
        separate(data, MethodParams(method="global", v_th=0.1, alpha=0.01))
    assert excinfo.value.iteration == 0


def test_mhc_no_pair_propagates():
    # velocities alternate between zero and one spike; no consecutive
    # accepted pair exists at a high threshold
    data = np.array(
        [[0.0, 5.0, 5.0, 5.0, 0.0, 0.0], [0.0, 0.1, 0.3, 0.2, 0.25, 0.25]]
    )
    with pytest.raises(NoConsecutivePairError):
        separate(data, MethodParams(method="mhc", v_th=0.9))


def test_deflation_orthogonality_and_energy(example1):
    _, _, mixtures = example1
    whitened = gram_schmidt_whiten(mixtures)
    result = separate(mixtures, MethodParams(method="global", v_th=0.4))
    directions = np.array([d.unit_vector for d in result.directions])
    # consecutive directions orthogonal
    assert abs(directions[0] @ directions[1]) < 1e-6
    # energy of the whitened data splits across the extracted sources
    total = np.sum(whitened.components**2)
    recovered = np.sum(result.estimates**2)
    residual = result.iterations[-1].residual_energy
    assert abs(total - (recovered + residual)) < 1e-8 * total


def test_scale_indifference(example1):
    _, _, mixtures = example1
    params = MethodParams(method="global", v_th=0.4)
    a = separate(mixtures, params)
    b = separate(250.0 * mixtures, params)
    for da, db in zip(a.directions, b.directions):
        np.testing.assert_allclose(da.unit_vector, db.unit_vector, atol=1e-10)


def test_perfect_sparsity_direction_oracle():
    # disjoint supports and no noise: each extracted direction must match
    # the whitened image of one true source column within 1e-6 rad
    rng = np.random.default_rng(44)
    sources = np.zeros((2, 60))
    sources[0, 5:25] = np.sin(np.linspace(0, 3 * np.pi, 20))
    sources[1, 35:55] = rng.uniform(-1, 1, 20)
    mixing = np.array([[1.2, -0.7], [0.4, 0.9]])
    mixtures = mixing @ sources
    whitened = gram_schmidt_whiten(mixtures)
    truth = [whitened.transform @ mixing[:, k] for k in range(2)]
    truth = [d / np.linalg.norm(d) for d in truth]
    result = separate(mixtures, MethodParams(method="global", v_th=0.2))
    for direction in result.directions:
        angles = [
            np.arccos(min(1.0, abs(direction.unit_vector @ t))) for t in truth
        ]
        assert min(angles) < 1e-6


def test_method_params_validation():
    with pytest.raises(ValueError):
        MethodParams(method="other")
    with pytest.raises(ValueError):
        MethodParams(v_th=1.0)
    with pytest.raises(ValueError):
        MethodParams(alpha=0.0)
