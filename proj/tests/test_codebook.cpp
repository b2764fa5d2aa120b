#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "srmu/codebook.hpp"

using namespace srmu;

TEST_CASE("codebook generation is deterministic") {
    const Codebook a = build_codebook(5, 5, 256, 7);
    const Codebook b = build_codebook(5, 5, 256, 7);
    CHECK(a.device_keys == b.device_keys);
    CHECK(a.state_values == b.state_values);
    const Codebook c = build_codebook(5, 5, 256, 8);
    CHECK(a.device_keys != c.device_keys);
}

TEST_CASE("codebook rejects bad shapes") {
    CHECK_THROWS_AS(build_codebook(0, 5, 256, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_codebook(5, 1, 256, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_codebook(5, 5, 0, 1), std::invalid_argument);
}

TEST_CASE("codebook vectors are pairwise quasi-orthogonal") {
    const Codebook cb = build_codebook(5, 5, 256, 7);
    std::vector<const Hypervector*> all;
    for (const auto& v : cb.device_keys) all.push_back(&v);
    for (const auto& v : cb.state_values) all.push_back(&v);
    double sum = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const double s = cosine_sim(*all[i], *all[j]);
            CHECK(s < kQuasiOrthogonalThreshold);
            sum += s;
            ++pairs;
        }
    CHECK(pairs == 45);
    // Random-pair mean sqrt(pi/1024) ~ 0.0554; 45 pairs gives SE ~ 0.0044.
    CHECK(sum / pairs == doctest::Approx(std::sqrt(M_PI / 1024.0)).epsilon(0.25));
}

TEST_CASE("quasi-orthogonality is unreachable at tiny dim") {
    CHECK_THROWS_AS(build_codebook(20, 20, 2, 1), std::runtime_error);
}

TEST_CASE("ground truth memory") {
    const Codebook cb = build_codebook(5, 5, 256, 11);

    SUBCASE("single device is the bare binding") {
        const Codebook one = build_codebook(1, 5, 256, 11);
        const Hypervector gt = ground_truth_memory(one, {2});
        CHECK(gt == bind(one.device_keys[0], one.state_values[2]));
    }

    SUBCASE("five devices in one state has incoherent-sum norm") {
        const Hypervector gt = ground_truth_memory(cb, {0, 0, 0, 0, 0});
        // sqrt(5*256) ~ 35.78; quasi-orthogonal cross terms perturb by a few.
        CHECK(l2_norm(gt) == doctest::Approx(35.78).epsilon(0.10));
        CHECK(cosine_sim(gt, gt) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("out-of-range state rejected") {
        CHECK_THROWS_AS(ground_truth_memory(cb, {0, 0, 0, 0, 5}), std::out_of_range);
        CHECK_THROWS_AS(ground_truth_memory(cb, {0, 0, 0, 0, -1}), std::out_of_range);
        CHECK_THROWS_AS(ground_truth_memory(cb, {0, 0}), std::invalid_argument);
    }

    SUBCASE("permutation equivariance") {
        Codebook permuted = cb;
        std::swap(permuted.device_keys[0], permuted.device_keys[3]);
        const Hypervector a = ground_truth_memory(cb, {1, 2, 3, 4, 0});
        const Hypervector b = ground_truth_memory(permuted, {4, 2, 3, 1, 0});
        for (std::size_t j = 0; j < a.dim(); ++j)
            CHECK(std::abs(a[j] - b[j]) < 1e-12);
    }
}

TEST_CASE("cleanup_state") {
    const Codebook cb = build_codebook(5, 5, 256, 13);

    SUBCASE("exact match") {
        const auto [state, sim] = cleanup_state(cb, cb.state_values[3]);
        CHECK(state == 3);
        CHECK(sim == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("exact unbind round trip") {
        const Hypervector noisy =
            unbind(bind(cb.device_keys[2], cb.state_values[4]), cb.device_keys[2]);
        const auto [state, sim] = cleanup_state(cb, noisy);
        CHECK(state == 4);
        CHECK(sim == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("zero-norm input rejected") {
        CHECK_THROWS_AS(cleanup_state(cb, zero_vector(256)), ZeroNormError);
    }
}

TEST_CASE("property: decode-after-encode for every symbol pair") {
    const Codebook cb = build_codebook(5, 5, 256, 17);
    for (std::size_t i = 0; i < 5; ++i)
        for (int s = 0; s < 5; ++s) {
            const Hypervector retrieved = unbind(
                bind(cb.device_keys[i], cb.state_values[static_cast<std::size_t>(s)]),
                cb.device_keys[i]);
            const auto [decoded, sim] = cleanup_state(cb, retrieved);
            CHECK(decoded == s);
            CHECK(sim == doctest::Approx(1.0).epsilon(1e-10));
        }
}

TEST_CASE("cleanup from a five-association bundle is near-perfect") {
    Rng rng(19);
    int correct = 0;
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
        const Codebook cb = build_codebook(5, 5, 256, 1000 + static_cast<std::uint64_t>(t));
        std::vector<int> states(5);
        for (auto& s : states) s = static_cast<int>(rng.uniform_index(5));
        const Hypervector m = ground_truth_memory(cb, states);
        const auto device = rng.uniform_index(5);
        const auto [decoded, sim] = cleanup_state(cb, unbind(m, cb.device_keys[device]));
        (void)sim;
        if (decoded == states[device]) ++correct;
    }
    CHECK(static_cast<double>(correct) / trials > 0.99);
}

TEST_CASE("codebook JSON round trip") {
    const Codebook cb = build_codebook(3, 4, 32, 23);
    const auto path = std::filesystem::temp_directory_path() / "srmu_codebook_test.json";
    dump_codebook_json(cb, path);
    const Codebook loaded = load_codebook_json(path);
    CHECK(loaded.dim == cb.dim);
    CHECK(loaded.seed == cb.seed);
    CHECK(loaded.device_keys == cb.device_keys);
    CHECK(loaded.state_values == cb.state_values);
    std::filesystem::remove(path);
}
