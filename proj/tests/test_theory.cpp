#include <doctest.h>

#include <pagraph/theory.hpp>

#include <cmath>
#include <vector>

using namespace pagraph::theory;

namespace {

// Relative agreement check for values established by independent high-precision
// evaluation of the closed forms.
void check_close(double actual, double expected, double rel_tol = 1e-13) {
    CHECK(std::abs(actual - expected) <= rel_tol * std::max(1.0, std::abs(expected)));
}

} // namespace

TEST_SUITE("theory") {

TEST_CASE("limit frequencies match hand values at delta = 0") {
    // p_k = 4 / (k (k+1) (k+2)) when delta = 0.
    check_close(pk(1, 0.0), 2.0 / 3.0);
    check_close(pk(2, 0.0), 1.0 / 6.0);
    check_close(pk(3, 0.0), 1.0 / 15.0);
    check_close(pk(10, 0.0), 4.0 / (10.0 * 11.0 * 12.0));
    check_close(c_norm(0.0), 4.0);
}

TEST_CASE("limit frequencies match hand values at delta = 1") {
    check_close(pk(1, 1.0), 3.0 / 5.0); // (2+delta)/(3+2delta)
    check_close(pk(2, 1.0), 0.2);
    check_close(c_norm(1.0), 72.0);
}

TEST_CASE("limit frequency at fractional delta matches the frozen value") {
    check_close(pk(10, 2.5), 0.00262556076049804687);
}

TEST_CASE("p_k is a probability distribution with the closed-form tail") {
    for (const double delta : {-0.5, 0.0, 1.0, 1.7, 5.0}) {
        CAPTURE(delta);
        check_close(pk_tail(1, delta), 1.0, 1e-14);
        double partial = 0.0;
        for (int k = 1; k <= 40; ++k) {
            partial += pk(k, delta);
        }
        check_close(partial + pk_tail(41, delta), 1.0, 1e-12);
        CHECK(pk(1, delta) > pk(2, delta)); // monotone decreasing tail
    }
}

TEST_CASE("degree-biased sums close to 2 and 2 + delta") {
    for (const double delta : {-0.5, 0.0, 1.0, 1.7, 5.0}) {
        CAPTURE(delta);
        double biased = 0.0;  // sum (k+delta) p_k
        double plain = 0.0;   // sum k p_k
        const int cutoff = 400;
        for (int k = 1; k <= cutoff; ++k) {
            const double p = pk(k, delta);
            biased += (k + delta) * p;
            plain += k * p;
        }
        const double biased_tail = weighted_pk_tail(cutoff + 1, delta);
        const double plain_tail = biased_tail - delta * pk_tail(cutoff + 1, delta);
        check_close(biased + biased_tail, 2.0 + delta, 1e-10);
        check_close(plain + plain_tail, 2.0, 1e-10);
    }
}

TEST_CASE("weighted tail matches the frozen value") {
    check_close(weighted_pk_tail(6, 0.5), 0.523681640625);
}

TEST_CASE("sigma_1^2 closed form") {
    check_close(sigma1_sq(0.0), 1.0 / 9.0);
    check_close(sigma1_sq(1.0), 18.0 / 175.0);
    CHECK(sigma1_sq(-0.5) > 0.0);
    CHECK(sigma1_sq(5.0) > 0.0);
}

TEST_CASE("mixing coefficients b_j^(k) at delta = 0") {
    check_close(b_coef(2, 2, 0.0), 1.0); // b_k^(k) = 1 always
    check_close(b_coef(1, 2, 0.0), -1.0);
    check_close(b_coef(1, 3, 0.0), 1.0);
    check_close(b_coef(2, 4, 0.0), 3.0);
    check_close(b_coef(1, 4, 0.0), -1.0);
    CHECK(b_coef(5, 4, 0.0) == 0.0); // j > k vanishes
}

TEST_CASE("mixing coefficient at fractional delta matches the frozen value") {
    check_close(b_coef(3, 9, -0.5), 14.6630859375);
    check_close(b_coef(9, 9, -0.5), 1.0);
}

TEST_CASE("normalizers a_n^(k)") {
    for (const double delta : {-0.5, 0.0, 1.0, 5.0}) {
        CAPTURE(delta);
        for (int k = 1; k <= 6; ++k) {
            check_close(a_coef(k, k, delta), 1.0); // starts at 1
        }
    }
    check_close(a_coef(2, 1, 0.0), 1.5);
    check_close(a_coef(3, 1, 0.0), 15.0 / 8.0);
    check_close(a_coef(12, 4, 0.5), 9.68085695816788254);

    // Monotone growth in n (positive regular-variation index).
    double prev = a_coef(4, 4, 0.3);
    for (std::int64_t n = 5; n <= 30; ++n) {
        const double next = a_coef(n, 4, 0.3);
        CHECK(next > prev);
        prev = next;
    }
}

TEST_CASE("normalizer sequence wraps gamma and w_n") {
    NormalizerSequence seq(0.0);
    check_close(seq.gamma, 0.5);
    check_close(seq.w(2), 2.0 / 2.5);
    check_close(seq.a(12, 3), a_coef(12, 3, 0.0));

    NormalizerSequence seq1(1.0);
    check_close(seq1.gamma, 2.0 / 3.0);
}

TEST_CASE("mean recursion reproduces hand values at delta = 0") {
    const MeanTable table = mean_recursion(3, 4, 0.0);
    // Stage 1: the single node has degree 2.
    check_close(table.at(1, 1), 0.0);
    check_close(table.at(1, 2), 1.0);
    // Stage 2 splits 2/3 attach vs 1/3 self-loop.
    check_close(table.at(2, 1), 2.0 / 3.0);
    check_close(table.at(2, 2), 2.0 / 3.0);
    check_close(table.at(2, 3), 2.0 / 3.0);
    check_close(table.at(3, 1), 4.0 / 3.0);
}

TEST_CASE("mean recursion final row matches the frozen stage-6 values at delta = 1") {
    const auto row = mean_row(6, 7, 1.0);
    const std::vector<double> frozen{
        3.0,
        1.41176470588235294,
        0.732238349885408709,
        0.458365164247517189,
        0.263559969442322383,
        0.110007639419404125,
        0.0240641711229946524,
    };
    REQUIRE(row.size() == frozen.size());
    for (std::size_t i = 0; i < frozen.size(); ++i) {
        CAPTURE(i);
        check_close(row[i], frozen[i]);
    }
    // Counts sum to n and degree mass to 2n (k > n+1 has zero mass).
    double nodes = 0.0;
    double mass = 0.0;
    const auto wide = mean_row(6, 7, 1.0);
    for (std::size_t i = 0; i < wide.size(); ++i) {
        nodes += wide[i];
        mass += wide[i] * static_cast<double>(i + 1);
    }
    check_close(nodes, 6.0, 1e-12);
    check_close(mass, 12.0, 1e-12);
}

TEST_CASE("mean table and mean_row agree") {
    const MeanTable table = mean_recursion(9, 5, 0.8);
    const auto row = mean_row(9, 5, 0.8);
    for (int k = 1; k <= 5; ++k) {
        CHECK(table.at(9, k) == row[static_cast<std::size_t>(k) - 1]);
    }
}

TEST_CASE("mean fractions approach the limit frequencies") {
    for (const double delta : {-0.5, 0.0, 1.3}) {
        CAPTURE(delta);
        const auto row = mean_row(20000, 3, delta);
        for (int k = 1; k <= 3; ++k) {
            CAPTURE(k);
            // |nu_n(k) - n p_k| stays bounded, so the fractions converge.
            CHECK(std::abs(row[static_cast<std::size_t>(k) - 1] / 20000.0 - pk(k, delta)) < 1e-3);
        }
    }
}

TEST_CASE("telescoping identity residual vanishes") {
    for (const double delta : {-0.5, 0.0, 1.0, 1.7, 5.0}) {
        for (int i = 2; i <= 15; ++i) {
            CAPTURE(delta);
            CAPTURE(i);
            CHECK(std::abs(zero_identity_residual(i, delta)) < 1e-10);
        }
    }
}

TEST_CASE("beta closed form matches its series") {
    check_close(simplify_rhs(7, 1.0), 21.0 / 11.0); // frozen: 1.909090...
    for (const double delta : {-0.5, 0.0, 1.0, 5.0}) {
        for (int i = 1; i <= 12; ++i) {
            CAPTURE(delta);
            CAPTURE(i);
            CHECK(std::abs(simplify_identity_residual(i, delta)) < 1e-10);
        }
    }
}

TEST_CASE("binomial mixing identity holds for several arguments") {
    for (const double delta : {-0.5, 0.0, 1.0}) {
        for (const double r : {-0.6, 0.25, 1.5}) {
            for (int i = 1; i <= 12; ++i) {
                for (int j = 1; j <= i; ++j) {
                    CAPTURE(delta);
                    CAPTURE(r);
                    CAPTURE(i);
                    CAPTURE(j);
                    CHECK(std::abs(ident_b_residual(i, j, r, delta)) < 1e-10);
                }
            }
        }
    }
}

} // TEST_SUITE("theory")
