#pragma once

// Truncated eigen-data of self-adjoint generators on (0, pi), the diagonal
// semigroup, spectral power norms, and graded time grids.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace initrec {

enum class OperatorFamily {
    Dirichlet2,  // d u'' - c0 u, u = 0 at both ends
    Neumann2,    // d u'' - c0 u, u' = 0 at both ends
    Pinned4,     // -d1 u'''' + d2 u'', u = u'' = 0 at both ends
};

std::string_view family_tag(OperatorFamily family) noexcept;
OperatorFamily parse_family(std::string_view tag);

enum class BoundaryCondition { Dirichlet, Neumann };

/// Eigenvalues lambda_1 >= lambda_2 >= ... >= lambda_N of a self-adjoint
/// operator A <= alpha, together with its eigenfunctions sampled on a physical
/// grid whose quadrature weights make them discretely orthonormal.
class SpectralOperator {
public:
    /// `basis` is row-major grid_size x mode_count: basis[i * N + j] = phi_j(x_i).
    /// Throws InvalidInput if the eigenvalues are not nonincreasing, exceed
    /// `upper_bound`, or the basis is not orthonormal to 1e-10.
    SpectralOperator(OperatorFamily family, std::vector<double> eigenvalues,
                     double upper_bound, std::vector<double> grid_points,
                     std::vector<double> quadrature_weights,
                     std::vector<double> basis);

    OperatorFamily family() const noexcept { return family_; }
    std::size_t mode_count() const noexcept { return eigenvalues_.size(); }
    std::size_t grid_size() const noexcept { return grid_points_.size(); }

    std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
    /// Zero-based: eigenvalue(0) is lambda_1.
    double eigenvalue(std::size_t j) const { return eigenvalues_[j]; }
    double upper_bound() const noexcept { return upper_bound_; }

    std::span<const double> grid_points() const noexcept { return grid_points_; }
    std::span<const double> quadrature_weights() const noexcept { return weights_; }
    double basis(std::size_t i, std::size_t j) const { return basis_[i * mode_count() + j]; }

    /// max_{i,j} |<phi_i, phi_j>_w - delta_ij| under the stored weights.
    double orthonormality_defect() const;

private:
    OperatorFamily family_;
    std::vector<double> eigenvalues_;
    double upper_bound_;
    std::vector<double> grid_points_;
    std::vector<double> weights_;
    std::vector<double> basis_;
};

/// grid_size == 0 selects 4 * N physical points.
/// Neumann with c0 == 0 has a zero eigenvalue and is rejected with
/// AdmissibilityViolation unless `allow_zero_mode` is set.
SpectralOperator build_second_order(std::size_t modes, double d, double c0,
                                    BoundaryCondition bc, std::size_t grid_size = 0,
                                    bool allow_zero_mode = false);

/// Pinned plate operator, sine-diagonal: lambda_j = -d1 j^4 - d2 j^2.
SpectralOperator build_fourth_order(std::size_t modes, double d1, double d2,
                                    std::size_t grid_size = 0);

/// Spectral power norm ||(delta0 - A)^theta x|| realizing E_theta.
struct FractionalNormSpec {
    double theta = 0.0;
    double delta0 = 0.0;

    /// Throws InvalidSpec unless theta in [0,1] and delta0 > alpha.
    void validate(const SpectralOperator& op) const;
};

/// delta0 = max(0, alpha) + 1 if some lambda_j >= 0, otherwise 0.
FractionalNormSpec default_norm_spec(const SpectralOperator& op, double theta);

std::vector<double> semigroup_apply(const SpectralOperator& op, double t,
                                    std::span<const double> c);

double fractional_norm(const SpectralOperator& op, std::span<const double> c,
                       const FractionalNormSpec& spec);

double euclidean_norm(std::span<const double> c) noexcept;

class TimeGrid {
public:
    /// Nodes t_i = T (i/n)^r for i = 0..n.
    TimeGrid(double final_time, std::size_t intervals, double grading);

    double final_time() const noexcept { return final_time_; }
    double grading() const noexcept { return grading_; }
    std::size_t intervals() const noexcept { return nodes_.size() - 1; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    bool operator==(const TimeGrid&) const = default;

private:
    double final_time_;
    double grading_;
    std::vector<double> nodes_;
};

TimeGrid make_graded_grid(double final_time, std::size_t intervals, double grading);

/// r = max(1, 1/theta), capped at 4.
double default_grading(double theta) noexcept;

/// Eigen-coefficients of u(t_i) at every node of a grid.
/// The t_0 slot always exists; `includes_t0` says whether it carries data.
class Trajectory {
public:
    Trajectory(TimeGrid grid, std::size_t modes, bool includes_t0 = true);

    const TimeGrid& grid() const noexcept { return grid_; }
    std::size_t node_count() const noexcept { return grid_.node_count(); }
    std::size_t mode_count() const noexcept { return modes_; }
    double time(std::size_t i) const { return grid_[i]; }

    bool includes_t0() const noexcept { return includes_t0_; }
    void set_includes_t0(bool value) noexcept { includes_t0_ = value; }

    std::span<double> at(std::size_t i) { return {coeffs_.data() + i * modes_, modes_}; }
    std::span<const double> at(std::size_t i) const
    {
        return {coeffs_.data() + i * modes_, modes_};
    }
    std::span<const double> flat() const noexcept { return coeffs_; }

    bool all_finite() const noexcept;

    Trajectory& operator+=(const Trajectory& other);
    Trajectory& operator-=(const Trajectory& other);
    Trajectory& operator*=(double s) noexcept;

private:
    TimeGrid grid_;
    std::size_t modes_;
    bool includes_t0_;
    std::vector<double> coeffs_;
};

Trajectory operator-(Trajectory lhs, const Trajectory& rhs);
Trajectory operator+(Trajectory lhs, const Trajectory& rhs);

/// max over nodes t_i > 0 of t_i^mu ||u(t_i)||_theta. The t_0 slot only
/// participates when mu == 0, theta == 0 and it is populated.
double weighted_sup_norm(const SpectralOperator& op, const Trajectory& u, double mu,
                         const FractionalNormSpec& spec);

/// sup over all populated nodes of the coefficient (E_0) norm.
double sup_norm_e0(const Trajectory& u);

/// v_i = sum_j c_j phi_j(x_i).
std::vector<double> synthesize(const SpectralOperator& op, std::span<const double> c);
/// c_j = sum_i w_i phi_j(x_i) v_i.
std::vector<double> analyze(const SpectralOperator& op, std::span<const double> v);

}  // namespace initrec
