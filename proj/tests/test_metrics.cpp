#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "oracles.hpp"
#include "tensvd/metrics.hpp"

using namespace tensvd;

TEST_CASE("mse basics and oracle agreement") {
    std::mt19937_64 rng(81);
    const DenseTensor x = oracles::random_tensor({5, 4, 3}, rng);
    CHECK(mse(x, x) == 0.0);

    const DenseTensor a({2}, {1.0, 1.0});
    const DenseTensor b({2}, {0.0, 1.0});
    CHECK(mse(a, b) == doctest::Approx(0.5));

    const DenseTensor y = oracles::random_tensor({5, 4, 3}, rng);
    CHECK(mse(x, y) == doctest::Approx(oracles::naive_mse(x, y)).epsilon(1e-12));
    CHECK_THROWS_AS(mse(x, DenseTensor({5, 4})), ShapeError);
}

TEST_CASE("relative error basics") {
    std::mt19937_64 rng(82);
    const DenseTensor x = oracles::random_tensor({4, 4}, rng);
    CHECK(relative_error(x, x) == 0.0);
    CHECK(relative_error(x, DenseTensor({4, 4})) == doctest::Approx(1.0));

    DenseTensor twice = x;
    for (std::int64_t i = 0; i < twice.size(); ++i) twice[i] *= 2.0;
    CHECK(relative_error(x, twice) == doctest::Approx(1.0));
    CHECK_THROWS_AS(relative_error(DenseTensor({4, 4}), x), Error);
}

TEST_CASE("psnr reproduces the reference scenario value") {
    // Peak 1 and MSE 0.0037 evaluate to ~24.3 dB; the reference value rounds to
    // 24.2, so allow 0.3 dB.
    CHECK(psnr_from(1.0, 0.0037) == doctest::Approx(24.2).epsilon(0.3 / 24.2));
    CHECK(psnr_from(1.0, 0.0037) == doctest::Approx(24.3179).epsilon(1e-4));
}

TEST_CASE("psnr log arithmetic and the printed-formula variant") {
    CHECK(psnr_from(1.0, 0.01) == doctest::Approx(20.0));
    CHECK(psnr_from(1.0, 0.01, true) == doctest::Approx(10.0 * std::log10(1.0 / 0.1)));

    // Tensor form: all-ones reference, constant offset sqrt(0.0037).
    DenseTensor x({10, 10});
    DenseTensor y({10, 10});
    for (std::int64_t i = 0; i < x.size(); ++i) {
        x[i] = 1.0;
        y[i] = 1.0 - std::sqrt(0.0037);
    }
    CHECK(psnr(x, y) == doctest::Approx(psnr_from(1.0, 0.0037)).epsilon(1e-12));
}

TEST_CASE("identical tensors give the infinity sentinel") {
    const DenseTensor x({2, 2}, {1, 2, 3, 4});
    CHECK(std::isinf(psnr(x, x)));
    CHECK(psnr(x, x) > 0);
}

TEST_CASE("psnr strictly decreases in mse for a fixed peak") {
    double previous = std::numeric_limits<double>::infinity();
    for (double m : {0.0001, 0.001, 0.01, 0.1, 1.0}) {
        const double p = psnr_from(1.0, m);
        CHECK(p < previous);
        previous = p;
    }
}

TEST_CASE("compression ratio reproduces the reference accounting") {
    const auto [f1, s1] = compression_ratio(544009, 3273600);
    CHECK(f1 == doctest::Approx(0.16618).epsilon(1e-4));
    CHECK(s1 == doctest::Approx(0.834).epsilon(1e-3));

    const auto [f2, s2] = compression_ratio(465209, 13762560);
    CHECK(s2 == doctest::Approx(0.966).epsilon(1e-3));

    const auto [f3, s3] = compression_ratio(8400909, 20736000);
    CHECK(f3 == doctest::Approx(0.405).epsilon(1e-3));

    CHECK(f1 + s1 == 1.0);
    CHECK_THROWS_AS(compression_ratio(0, 10), Error);
}

TEST_CASE("metric cross-consistency: mse == (err * ||x||)^2 / count") {
    std::mt19937_64 rng(83);
    for (int rep = 0; rep < 20; ++rep) {
        const DenseTensor x = oracles::random_tensor({6, 5, 2}, rng);
        const DenseTensor y = oracles::random_tensor({6, 5, 2}, rng);
        const double lhs = mse(x, y);
        const double e = relative_error(x, y);
        const double n = frobenius_norm(x);
        const double rhs = e * n * (e * n) / static_cast<double>(x.size());
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("timed measures wall time around the action only") {
    const auto [value, noop_seconds] = timed([] { return 42; });
    CHECK(value == 42);
    CHECK(noop_seconds >= 0.0);
    CHECK(noop_seconds < 0.01);

    const auto [unused, slept] = timed([] {
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
        return 0;
    });
    (void)unused;
    CHECK(slept >= 0.045);
    CHECK(slept < 0.5); // generous scheduler slack
}

TEST_CASE("report serialization carries every field") {
    QualityReport r{0.0037, 0.103, 24.3, 0.166, 0.834, 1.5};
    const std::string text = r.to_text();
    CHECK(text.find("mse=0.0037") != std::string::npos);
    CHECK(text.find("err=0.103") != std::string::npos);
    CHECK(text.find("psnr_db=24.3") != std::string::npos);
    CHECK(text.find("cr_stored_fraction=0.166") != std::string::npos);
    CHECK(text.find("cr_space_savings=0.834") != std::string::npos);
    CHECK(text.find("elapsed_seconds=1.5") != std::string::npos);

    const std::string json = r.to_json();
    CHECK(json.find("\"mse\"") != std::string::npos);
    CHECK(json.find("\"psnr_db\"") != std::string::npos);
}
