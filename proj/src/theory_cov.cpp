// Covariance-layer computations: a(i,j), R_Y, Sigma_k = D R_Y D^T, and the
// direct R_Z series.
//
// These are evaluated internally in quad precision (boost cpp_bin_float_quad,
// ~33 significant digits) rather than double. The alternating double sum in
// R_Z cancels by up to ~12 orders of magnitude at large delta (measured: the
// sum of term magnitudes exceeds the result by 7e11 at delta=5, i=j=8), so a
// double-precision evaluation cannot meet the 1e-8 cross-path agreement the
// tests demand. Quad precision leaves ~21 digits of headroom after the worst
// cancellation, at negligible cost for these tiny fixed-size tables.
//
// All gamma ratios appearing here have integer-offset arguments, so they are
// computed as exact products of linear factors (rising factorials) — no
// transcendental functions are needed in the extended-precision path.

#include <pagraph/theory.hpp>
#include <pagraph/model.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>
#include <vector>

namespace pagraph::theory {

namespace {

using quad = boost::multiprecision::cpp_bin_float_quad;

// Rising factorial x (x+1) ... (x+n-1); empty product for n <= 0.
quad rising(const quad& x, int n) {
    quad product = 1;
    for (int t = 0; t < n; ++t) {
        product *= x + t;
    }
    return product;
}

// Gamma(base + num_off) / Gamma(base + den_off) for integer offsets.
quad gamma_ratio(const quad& base, int num_off, int den_off) {
    if (num_off >= den_off) {
        return rising(base + den_off, num_off - den_off);
    }
    return 1 / rising(base + num_off, den_off - num_off);
}

quad factorial_q(int n) {
    return rising(quad(1), n);
}

// p_k = (2+d) * rising(1+d, k-1) / rising(3+2d, k).
quad pk_q(int k, const quad& d) {
    return (2 + d) * rising(1 + d, k - 1) / rising(3 + 2 * d, k);
}

// b_j^(k) = (-1)^(k-j) rising(j+d, k-j) / (k-j)!; zero for j > k.
quad b_q(int j, int k, const quad& d) {
    if (j > k || j < 1) {
        return 0;
    }
    const quad magnitude = rising(j + d, k - j) / factorial_q(k - j);
    return ((k - j) % 2 == 0) ? magnitude : -magnitude;
}

// beta_i = (2+d) (-1)^(i-1) rising(1+d, i-1) / ((i-1)! (i+2+2d)).
quad beta_q(int i, const quad& d) {
    const quad magnitude = (2 + d) * rising(1 + d, i - 1) / (factorial_q(i - 1) * (i + 2 + 2 * d));
    return ((i - 1) % 2 == 0) ? magnitude : -magnitude;
}

// sum_{m >= m_start} (m+d) p_m = (2+d) rising(2+d, m_start-1) / rising(3+2d, m_start-1).
quad weighted_tail_q(int m_start, const quad& d) {
    return (2 + d) * rising(2 + d, m_start - 1) / rising(3 + 2 * d, m_start - 1);
}

quad a_cov_q(int i, int j, const quad& d) {
    const int m_top = std::max(i, j);
    quad sum = 0;
    for (int m = 1; m <= m_top; ++m) {
        const quad bracket_i = b_q(1, i, d) - b_q(m, i, d) + b_q(m + 1, i, d);
        const quad bracket_j = b_q(1, j, d) - b_q(m, j, d) + b_q(m + 1, j, d);
        sum += (m + d) / (2 + d) * bracket_i * bracket_j * pk_q(m, d);
    }
    // Beyond m_top both brackets collapse to b_1, so the tail closes exactly.
    sum += b_q(1, i, d) * b_q(1, j, d) * weighted_tail_q(m_top + 1, d) / (2 + d);
    return sum - beta_q(i, d) * beta_q(j, d);
}

quad r_y_q(int i, int j, const quad& d) {
    return (2 + d) / (i + j + 2 + 3 * d) * a_cov_q(i, j, d);
}

quad r_z_q(int i, int j, const quad& d) {
    // m-series: every term carries Gamma(offset + 3d) / Gamma(i+j+3 + 3d),
    // taken as an integer-offset ratio, and a plain factorial.
    const quad base3 = 3 * d;
    const int denom_off = i + j + 3;
    const quad sign_pref = ((i + j) % 2 == 0) ? quad(1) : quad(-1);

    quad series = 0;
    // m-independent bracket, summed against the full weight sum_m (m+d)p_m = 2+d.
    series += (2 + d) * b_q(1, i, d) * b_q(1, j, d)
            * gamma_ratio(base3, 4, denom_off) * factorial_q(i + j - 2);

    for (int m = 1; m <= std::max(i, j); ++m) {
        const quad weight = (m + d) * pk_q(m, d);
        const quad sign_m = (m % 2 == 0) ? quad(1) : quad(-1);

        struct Piece { quad sign; quad coef; int gamma_off; int fact_arg; };
        const Piece pieces[] = {
            {sign_m, b_q(1, i, d) * b_q(m, j, d) + b_q(m, i, d) * b_q(1, j, d), m + 3, i + j - m - 1},
            {sign_m, b_q(1, i, d) * b_q(m + 1, j, d) + b_q(m + 1, i, d) * b_q(1, j, d), m + 4, i + j - m - 2},
            {quad(1), b_q(m, i, d) * b_q(m, j, d), 2 * m + 2, i + j - 2 * m},
            {quad(1), b_q(m, i, d) * b_q(m + 1, j, d) + b_q(m + 1, i, d) * b_q(m, j, d), 2 * m + 3, i + j - 2 * m - 1},
            {quad(1), b_q(m + 1, i, d) * b_q(m + 1, j, d), 2 * m + 4, i + j - 2 * m - 2},
        };
        for (const auto& piece : pieces) {
            // A negative factorial argument only occurs when the accompanying
            // b coefficients vanish, which zeroes the whole piece.
            if (piece.coef == 0) {
                continue;
            }
            series += weight * piece.sign * piece.coef
                    * gamma_ratio(base3, piece.gamma_off, denom_off) * factorial_q(piece.fact_arg);
        }
    }

    // Double sum with weight 1/(l1+l2+2+3d) replacing the global gamma factor.
    quad double_sum = 0;
    for (int l1 = 1; l1 <= i; ++l1) {
        for (int l2 = 1; l2 <= j; ++l2) {
            const quad sign = ((l1 + l2) % 2 == 0) ? quad(1) : quad(-1);
            double_sum += sign / (factorial_q(i - l1) * factorial_q(l1 - 1) * (l1 + 2 + 2 * d)
                                  * factorial_q(j - l2) * factorial_q(l2 - 1) * (l2 + 2 + 2 * d)
                                  * (l1 + l2 + 2 + 3 * d));
        }
    }
    const quad double_sum_scale = (2 + d) * (2 + d) * (2 + d)
        * rising(1 + d, i - 1) * rising(1 + d, j - 1);

    return sign_pref * series - double_sum_scale * double_sum;
}

void require_indices(int i, int j) {
    if (i < 1 || j < 1) {
        throw std::invalid_argument("covariance indices must be >= 1");
    }
}

} // namespace

double a_cov(int i, int j, double delta) {
    validate_delta(delta);
    require_indices(i, j);
    return static_cast<double>(a_cov_q(i, j, quad(delta)));
}

double r_y(int i, int j, double delta) {
    validate_delta(delta);
    require_indices(i, j);
    return static_cast<double>(r_y_q(i, j, quad(delta)));
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> coeff_matrices(int k_max, double delta) {
    validate_delta(delta);
    if (k_max < 1) {
        throw std::invalid_argument("coeff_matrices requires k_max >= 1");
    }
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k_max, k_max);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(k_max, k_max);
    for (int i = 1; i <= k_max; ++i) {
        for (int j = 1; j <= i; ++j) {
            const double b = b_coef(j, i, delta);
            c(i - 1, j - 1) = b;
            d(i - 1, j - 1) = ((i - j) % 2 == 0) ? b : -b;
        }
    }
    return {c, d};
}

Eigen::MatrixXd sigma_matrix(int k_max, double delta) {
    validate_delta(delta);
    if (k_max < 1) {
        throw std::invalid_argument("sigma_matrix requires k_max >= 1");
    }
    const quad d(delta);

    std::vector<std::vector<quad>> r(k_max, std::vector<quad>(k_max));
    for (int i = 0; i < k_max; ++i) {
        for (int j = 0; j <= i; ++j) {
            r[i][j] = r_y_q(i + 1, j + 1, d);
            r[j][i] = r[i][j];
        }
    }
    std::vector<std::vector<quad>> dm(k_max, std::vector<quad>(k_max, quad(0)));
    for (int i = 1; i <= k_max; ++i) {
        for (int j = 1; j <= i; ++j) {
            const quad b = b_q(j, i, d);
            dm[i - 1][j - 1] = ((i - j) % 2 == 0) ? b : -b;
        }
    }

    Eigen::MatrixXd sigma(k_max, k_max);
    for (int i = 0; i < k_max; ++i) {
        for (int j = 0; j <= i; ++j) {
            quad acc = 0;
            for (int p = 0; p <= i; ++p) {
                quad inner = 0;
                for (int q = 0; q <= j; ++q) {
                    inner += r[p][q] * dm[j][q];
                }
                acc += dm[i][p] * inner;
            }
            sigma(i, j) = static_cast<double>(acc);
            sigma(j, i) = sigma(i, j);
        }
    }
    return sigma;
}

double r_z(int i, int j, double delta) {
    validate_delta(delta);
    require_indices(i, j);
    return static_cast<double>(r_z_q(i, j, quad(delta)));
}

CovarianceTheory CovarianceTheory::build(int k_max, double delta) {
    validate_delta(delta);
    if (k_max < 1) {
        throw std::invalid_argument("CovarianceTheory requires k_max >= 1");
    }
    CovarianceTheory theory;
    theory.delta = delta;
    theory.k_max = k_max;
    theory.a_kernel.resize(k_max, k_max);
    theory.r_y.resize(k_max, k_max);
    theory.r_z.resize(k_max, k_max);
    for (int i = 1; i <= k_max; ++i) {
        for (int j = 1; j <= k_max; ++j) {
            theory.a_kernel(i - 1, j - 1) = a_cov(i, j, delta);
            theory.r_y(i - 1, j - 1) = pagraph::theory::r_y(i, j, delta);
            theory.r_z(i - 1, j - 1) = pagraph::theory::r_z(i, j, delta);
        }
    }
    std::tie(theory.c_mat, theory.d_mat) = coeff_matrices(k_max, delta);
    theory.sigma = sigma_matrix(k_max, delta);
    return theory;
}

} // namespace pagraph::theory
