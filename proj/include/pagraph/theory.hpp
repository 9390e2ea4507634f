#ifndef PAGRAPH_THEORY_HPP
#define PAGRAPH_THEORY_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

namespace pagraph::theory {

// ------------------------------------------------------------- scalar limits

// Limiting degree-k frequency p_k = c(delta) * Gamma(k+delta)/Gamma(k+3+2delta).
double pk(int k, double delta);

// Normalizing constant c(delta) = (2+delta) * Gamma(3+2delta)/Gamma(1+delta).
double c_norm(double delta);

// Limiting variance of the scaled degree-1 count:
// sigma_1^2 = (1+delta)(2+delta)^2 / ((3+2delta)^2 (4+3delta)).
double sigma1_sq(double delta);

// Closed-form tails of the p_k series, used to close partial sums exactly.
double pk_tail(int k_start, double delta);            // sum_{k >= k_start} p_k
double weighted_pk_tail(int m_start, double delta);   // sum_{m >= m_start} (m+delta) p_m

// ------------------------------------------------- martingale coefficients

// Mixing coefficient b_j^(k) = (-1)^(k-j) Gamma(k+delta) / ((k-j)! Gamma(j+delta));
// zero for j > k.
double b_coef(int j, int k, double delta);

// Normalizer a_n^(k) (closed gamma form); a_k^(k) = 1, grows regularly in n.
double a_coef(std::int64_t n, int k, double delta);

/** Normalizing sequence: gamma = (1+delta)/(2+delta), w_n = n/(n+gamma), a_n^(k). */
struct NormalizerSequence {
    double delta;
    double gamma;

    explicit NormalizerSequence(double delta_in);

    double w(std::int64_t n) const { return static_cast<double>(n) / (static_cast<double>(n) + gamma); }
    double a(std::int64_t n, int k) const { return a_coef(n, k, delta); }
};

// ------------------------------------------------------------ mean recursion

/** Expected census values nu_n(k) = E N_n(k) for n = 1..n_max, k = 1..k_max. */
struct MeanTable {
    double delta = 0.0;
    int k_max = 0;
    std::int64_t n_max = 0;
    std::vector<double> values; // row-major: values[(n-1)*k_max + (k-1)]

    double at(std::int64_t n, int k) const {
        return values[static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(k_max)
                      + static_cast<std::size_t>(k - 1)];
    }
};

// Forward recursion from nu_1 = (0, 1, 0, ...); computed with one extra
// internal degree row, truncated to k_max on output.
MeanTable mean_recursion(std::int64_t n_max, int k_max, double delta);

// Just the final row nu_n(1..k_max), without storing the whole table.
std::vector<double> mean_row(std::int64_t n, int k_max, double delta);

// ------------------------------------------------------------- identities

// Left side of the telescoping identity
// sum_{d=1}^{i-1} p_d [ (i-d) b_d^(i) + (d+delta) b_{d+1}^(i) ]; exactly 0 in
// real arithmetic. Returned as a residual relative to the largest term.
double zero_identity_residual(int i, double delta);

// beta_i = b_1^(i) - (i+delta)/(2+delta) * sum_d b_d^(i) p_d, closed form:
// (2+delta) (-1)^(i-1) Gamma(i+delta) / (Gamma(1+delta) (i-1)! (i+2+2delta)).
double simplify_rhs(int i, double delta);

// Relative residual between the series and closed forms of beta_i.
double simplify_identity_residual(int i, double delta);

// Relative residual of sum_{m=j}^{i} r^(m-j) b_m^(i) b_j^(m) = b_j^(i) (1+r)^(i-j).
double ident_b_residual(int i, int j, double r, double delta);

// ------------------------------------------------------- covariance theory

// Covariance kernel a(i,j) of the scaled martingale limits (exact series:
// explicit terms to m = max(i,j), closed-form tail, centering product).
double a_cov(int i, int j, double delta);

// R_Y(i,j) = (2+delta)/(i+j+2+3delta) * a(i,j).
double r_y(int i, int j, double delta);

// Lower-triangular C (c_ij = b_j^(i)) and its inverse D (d_ij = (-1)^(i-j) b_j^(i)).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> coeff_matrices(int k_max, double delta);

// Sigma_k = D R_Y D^T, the limiting covariance of the scaled census vector.
Eigen::MatrixXd sigma_matrix(int k_max, double delta);

// R_Z(i,j): the same covariance by direct evaluation of its closed-form
// series (an independent computation path from sigma_matrix).
double r_z(int i, int j, double delta);

/** All covariance-layer tables for one (delta, k_max), built in one pass. */
struct CovarianceTheory {
    double delta = 0.0;
    int k_max = 0;
    Eigen::MatrixXd a_kernel; // a(i,j)
    Eigen::MatrixXd r_y;      // R_Y(i,j)
    Eigen::MatrixXd c_mat;    // C
    Eigen::MatrixXd d_mat;    // D = C^-1
    Eigen::MatrixXd sigma;    // D R_Y D^T
    Eigen::MatrixXd r_z;      // direct evaluation

    static CovarianceTheory build(int k_max, double delta);
};

} // namespace pagraph::theory

#endif // PAGRAPH_THEORY_HPP
