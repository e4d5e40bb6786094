import numpy as np
import pytest

from vago.clf import (
    ModelConfig,
    batch_forward,
    compute_cam,
    forward,
    init_params,
    softmax,
)


def tiny_identity_params():
    # one 1x1 conv passing the input through, then a +/- read-out
    config = ModelConfig(
        n_layers=1, kernels_per_layer=1, kernel_size=1, embed_dim=1, n_classes=2
    )
    params = init_params(config, seed=0)
    params.conv_kernels[0][:] = 1.0
    params.conv_biases[0][:] = 0.0
    params.final_weights[:] = np.array([[1.0, -1.0]], dtype=np.float32)
    params.final_biases[:] = 0.0
    return params


def random_model(seed=0, n_layers=3, kernels=8, kernel_size=5, embed_dim=6, pooling="gap"):
    config = ModelConfig(
        n_layers=n_layers,
        kernels_per_layer=kernels,
        kernel_size=kernel_size,
        embed_dim=embed_dim,
        pooling=pooling,
    )
    return init_params(config, seed=seed)


class TestConfig:
    def test_defaults_match_architecture(self):
        config = ModelConfig()
        assert (config.n_layers, config.kernels_per_layer, config.kernel_size) == (3, 128, 5)
        assert config.embed_dim == 300
        assert config.n_classes == 2

    def test_even_kernel_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            ModelConfig(kernel_size=4)

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            ModelConfig(n_layers=0)


class TestForward:
    def test_hand_computed_example(self):
        params = tiny_identity_params()
        fm = forward(params, np.array([[2.0], [4.0]]))
        assert np.allclose(fm.F, [[2.0], [4.0]])
        assert np.allclose(fm.F_g, [3.0])
        assert np.allclose(fm.S, [3.0, -3.0])

    def test_probs_sum_to_one(self, rng):
        params = random_model(seed=1)
        for t in (1, 3, 17):
            fm = forward(params, rng.normal(size=(t, 6)))
            assert fm.probs.sum() == pytest.approx(1.0, abs=1e-6)
            assert (fm.probs >= 0).all()

    def test_same_padding_single_position(self, rng):
        params = random_model(seed=2)
        fm = forward(params, rng.normal(size=(1, 6)))
        assert fm.F.shape[0] == 1

    def test_row_count_preserved(self, rng):
        params = random_model(seed=2)
        for t in (1, 2, 5, 33):
            fm = forward(params, rng.normal(size=(t, 6)))
            assert fm.F.shape == (t, params.config.kernels_per_layer)

    def test_gap_is_columnwise_mean(self, rng):
        params = random_model(seed=3)
        fm = forward(params, rng.normal(size=(9, 6)))
        assert np.allclose(fm.F_g, fm.F.mean(axis=0), atol=1e-6)

    def test_shape_mismatch_rejected(self, rng):
        params = random_model(seed=1)
        with pytest.raises(ValueError):
            forward(params, rng.normal(size=(4, 5)))

    def test_gmp_pooling(self, rng):
        params = random_model(seed=4, pooling="gmp")
        fm = forward(params, rng.normal(size=(7, 6)))
        assert np.allclose(fm.F_g, fm.F.max(axis=0), atol=1e-6)

    def test_batch_matches_single(self, rng):
        params = random_model(seed=5)
        seqs = [rng.normal(size=(t, 6)).astype(np.float32) for t in (2, 9, 17)]
        f, f_g, s, probs, mask, lengths = batch_forward(params, seqs)
        for i, x in enumerate(seqs):
            fm = forward(params, x)
            assert np.allclose(fm.F, f[i, : len(x)], atol=1e-5)
            assert np.allclose(fm.probs, probs[i], atol=1e-6)
            assert np.allclose(f[i, len(x) :], 0.0)


class TestSoftmax:
    def test_normalizes(self):
        p = softmax(np.array([1.0, 2.0, 3.0]))
        assert p.sum() == pytest.approx(1.0)

    def test_shift_invariant(self):
        a = softmax(np.array([1.0, 2.0]))
        b = softmax(np.array([101.0, 102.0]))
        assert np.allclose(a, b, atol=1e-12)

    def test_extreme_values_stable(self):
        p = softmax(np.array([1000.0, -1000.0]))
        assert np.isfinite(p).all()
        assert p[0] == pytest.approx(1.0)


class TestCam:
    def test_zero_weight_column_gives_zero_cam(self, rng):
        params = random_model(seed=6)
        params.final_weights[:, 1] = 0.0
        fm = forward(params, rng.normal(size=(5, 6)))
        cam = compute_cam(params, fm, 1)
        assert np.allclose(cam.scores, 0.0)

    def test_cam_matches_direct_sum(self, rng):
        params = random_model(seed=7)
        fm = forward(params, rng.normal(size=(6, 6)))
        cam = compute_cam(params, fm, 0)
        manual = np.array(
            [
                sum(
                    params.final_weights[k, 0] * fm.F[t, k]
                    for k in range(params.config.kernels_per_layer)
                )
                for t in range(6)
            ]
        )
        assert np.allclose(cam.scores, manual, atol=1e-5)

    @pytest.mark.parametrize("t", [1, 3, 17, 64])
    def test_gap_identity(self, rng, t):
        # mean over positions of the activation map recovers S_c - b_c
        params = random_model(seed=8)
        fm = forward(params, rng.normal(size=(t, 6)))
        for c in range(2):
            cam = compute_cam(params, fm, c)
            assert abs(cam.scores.mean() - (fm.S[c] - params.final_biases[c])) < 1e-5

    def test_single_position_identity_exact(self, rng):
        params = random_model(seed=9)
        fm = forward(params, rng.normal(size=(1, 6)))
        for c in range(2):
            cam = compute_cam(params, fm, c)
            assert cam.scores[0] == pytest.approx(float(fm.S[c] - params.final_biases[c]), abs=1e-9)

    def test_length_matches_input(self, rng):
        params = random_model(seed=10)
        for t in (1, 4, 13):
            fm = forward(params, rng.normal(size=(t, 6)))
            assert compute_cam(params, fm, 1).scores.shape == (t,)

    def test_class_out_of_range(self, rng):
        params = random_model(seed=11)
        fm = forward(params, rng.normal(size=(3, 6)))
        with pytest.raises(ValueError):
            compute_cam(params, fm, 2)

    def test_bias_shift_moves_s_not_cam_or_probs(self, rng):
        params = random_model(seed=12)
        x = rng.normal(size=(7, 6))
        fm = forward(params, x)
        cam_before = compute_cam(params, fm, 1).scores.copy()

        shifted = params.copy()
        shifted.final_biases += np.float32(2.5)
        fm2 = forward(shifted, x)
        assert np.allclose(fm2.S, fm.S + 2.5, atol=1e-5)
        assert np.allclose(fm2.probs, fm.probs, atol=1e-6)
        cam_after = compute_cam(shifted, fm2, 1).scores
        assert np.array_equal(cam_before, cam_after)
