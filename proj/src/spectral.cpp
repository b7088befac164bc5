#include "initrec/spectral.hpp"

#include "initrec/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace initrec {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidSpec: return "invalid-spec";
    case ErrorKind::NumericFailure: return "numeric-failure";
    case ErrorKind::IllPosedMode: return "ill-posed-mode";
    case ErrorKind::AdmissibilityViolation: return "admissibility-violation";
    case ErrorKind::ConfigError: return "config-error";
    }
    return "unknown";
}

std::string_view family_tag(OperatorFamily family) noexcept
{
    switch (family) {
    case OperatorFamily::Dirichlet2: return "dirichlet2";
    case OperatorFamily::Neumann2: return "neumann2";
    case OperatorFamily::Pinned4: return "pinned4";
    }
    return "unknown";
}

OperatorFamily parse_family(std::string_view tag)
{
    if (tag == "dirichlet2") return OperatorFamily::Dirichlet2;
    if (tag == "neumann2") return OperatorFamily::Neumann2;
    if (tag == "pinned4") return OperatorFamily::Pinned4;
    fail(ErrorKind::InvalidParameter, "unknown operator family '" + std::string(tag) + "'");
}

SpectralOperator::SpectralOperator(OperatorFamily family, std::vector<double> eigenvalues,
                                   double upper_bound, std::vector<double> grid_points,
                                   std::vector<double> quadrature_weights,
                                   std::vector<double> basis)
    : family_(family),
      eigenvalues_(std::move(eigenvalues)),
      upper_bound_(upper_bound),
      grid_points_(std::move(grid_points)),
      weights_(std::move(quadrature_weights)),
      basis_(std::move(basis))
{
    require(!eigenvalues_.empty(), ErrorKind::InvalidInput, "operator needs at least one mode");
    require(weights_.size() == grid_points_.size(), ErrorKind::InvalidInput,
            "quadrature weights and grid points differ in length");
    require(basis_.size() == grid_points_.size() * eigenvalues_.size(), ErrorKind::InvalidInput,
            "basis matrix does not match grid_size x mode_count");
    for (std::size_t j = 0; j < eigenvalues_.size(); ++j) {
        require(std::isfinite(eigenvalues_[j]), ErrorKind::InvalidInput, "non-finite eigenvalue");
        require(eigenvalues_[j] <= upper_bound_, ErrorKind::InvalidInput,
                "eigenvalue exceeds the upper bound alpha");
        if (j > 0)
            require(eigenvalues_[j] <= eigenvalues_[j - 1], ErrorKind::InvalidInput,
                    "eigenvalues must be nonincreasing");
    }
    require(orthonormality_defect() <= 1e-10, ErrorKind::InvalidInput,
            "basis is not discretely orthonormal under the quadrature weights");
}

double SpectralOperator::orthonormality_defect() const
{
    const std::size_t n = mode_count();
    const std::size_t g = grid_size();
    double defect = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < g; ++i) s += weights_[i] * basis(i, a) * basis(i, b);
            defect = std::max(defect, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    }
    return defect;
}

namespace {

struct SineGrid {
    std::vector<double> x, w, basis;
};

// Interior nodes x_i = i pi / (G+1); sin(jx) is exactly orthogonal for j <= G.
SineGrid sine_basis(std::size_t modes, std::size_t grid_size)
{
    const double pi = std::numbers::pi;
    const double h = pi / static_cast<double>(grid_size + 1);
    const double norm = std::sqrt(2.0 / pi);
    SineGrid out;
    out.x.resize(grid_size);
    out.w.assign(grid_size, h);
    out.basis.resize(grid_size * modes);
    for (std::size_t i = 0; i < grid_size; ++i) {
        out.x[i] = h * static_cast<double>(i + 1);
        for (std::size_t j = 0; j < modes; ++j)
            out.basis[i * modes + j] = norm * std::sin(static_cast<double>(j + 1) * out.x[i]);
    }
    return out;
}

// Nodes x_i = i pi / (G-1) including both ends with trapezoid weights;
// cos(kx) is exactly orthogonal for k <= G-2.
SineGrid cosine_basis(std::size_t modes, std::size_t grid_size)
{
    const double pi = std::numbers::pi;
    const double h = pi / static_cast<double>(grid_size - 1);
    SineGrid out;
    out.x.resize(grid_size);
    out.w.assign(grid_size, h);
    out.w.front() = out.w.back() = 0.5 * h;
    out.basis.resize(grid_size * modes);
    for (std::size_t i = 0; i < grid_size; ++i) {
        out.x[i] = h * static_cast<double>(i);
        out.basis[i * modes] = 1.0 / std::sqrt(pi);
        for (std::size_t j = 1; j < modes; ++j)
            out.basis[i * modes + j] =
                std::sqrt(2.0 / pi) * std::cos(static_cast<double>(j) * out.x[i]);
    }
    return out;
}

std::size_t resolve_grid_size(std::size_t modes, std::size_t requested, std::size_t minimum)
{
    const std::size_t g = requested == 0 ? std::max<std::size_t>(4 * modes, minimum) : requested;
    require(g >= minimum, ErrorKind::InvalidParameter,
            "grid_size " + std::to_string(g) + " too small for " + std::to_string(modes) +
                " modes (need at least " + std::to_string(minimum) + ")");
    return g;
}

}  // namespace

SpectralOperator build_second_order(std::size_t modes, double d, double c0,
                                    BoundaryCondition bc, std::size_t grid_size,
                                    bool allow_zero_mode)
{
    require(modes >= 1, ErrorKind::InvalidParameter, "mode count must be at least 1");
    require(d > 0.0 && std::isfinite(d), ErrorKind::InvalidParameter,
            "diffusivity d must be positive");
    require(c0 >= 0.0 && std::isfinite(c0), ErrorKind::InvalidParameter,
            "reaction c0 must be nonnegative");

    std::vector<double> lambda(modes);
    if (bc == BoundaryCondition::Dirichlet) {
        for (std::size_t j = 0; j < modes; ++j) {
            const double k = static_cast<double>(j + 1);
            lambda[j] = -d * k * k - c0;
        }
        auto g = sine_basis(modes, resolve_grid_size(modes, grid_size, modes));
        const double alpha = lambda.front();
        return {OperatorFamily::Dirichlet2, std::move(lambda), alpha, std::move(g.x),
                std::move(g.w), std::move(g.basis)};
    }

    if (c0 == 0.0 && !allow_zero_mode)
        fail(ErrorKind::AdmissibilityViolation,
             "Neumann operator with c0 = 0 has a zero eigenvalue; require c0 > 0 or set "
             "allow_zero_mode");
    for (std::size_t j = 0; j < modes; ++j) {
        const double k = static_cast<double>(j);
        lambda[j] = -d * k * k - c0;
    }
    auto g = cosine_basis(modes, resolve_grid_size(modes, grid_size, modes + 1));
    const double alpha = lambda.front();
    return {OperatorFamily::Neumann2, std::move(lambda), alpha, std::move(g.x), std::move(g.w),
            std::move(g.basis)};
}

SpectralOperator build_fourth_order(std::size_t modes, double d1, double d2,
                                    std::size_t grid_size)
{
    require(modes >= 1, ErrorKind::InvalidParameter, "mode count must be at least 1");
    require(d1 > 0.0 && std::isfinite(d1), ErrorKind::InvalidParameter, "d1 must be positive");
    require(d2 >= 0.0 && std::isfinite(d2), ErrorKind::InvalidParameter,
            "d2 must be nonnegative");
    std::vector<double> lambda(modes);
    for (std::size_t j = 0; j < modes; ++j) {
        const double k = static_cast<double>(j + 1);
        lambda[j] = -d1 * k * k * k * k - d2 * k * k;
    }
    auto g = sine_basis(modes, resolve_grid_size(modes, grid_size, modes));
    const double alpha = lambda.front();
    return {OperatorFamily::Pinned4, std::move(lambda), alpha, std::move(g.x), std::move(g.w),
            std::move(g.basis)};
}

void FractionalNormSpec::validate(const SpectralOperator& op) const
{
    require(theta >= 0.0 && theta <= 1.0, ErrorKind::InvalidSpec, "theta must lie in [0,1]");
    require(delta0 > op.upper_bound(), ErrorKind::InvalidSpec,
            "shift delta0 must exceed the upper bound alpha");
}

FractionalNormSpec default_norm_spec(const SpectralOperator& op, double theta)
{
    const bool nonnegative_mode = op.eigenvalue(0) >= 0.0;
    return {theta, nonnegative_mode ? std::max(0.0, op.upper_bound()) + 1.0 : 0.0};
}

std::vector<double> semigroup_apply(const SpectralOperator& op, double t,
                                    std::span<const double> c)
{
    require(t >= 0.0, ErrorKind::InvalidParameter, "semigroup time must be nonnegative");
    require(c.size() == op.mode_count(), ErrorKind::InvalidInput,
            "coefficient vector length does not match mode count");
    std::vector<double> out(c.begin(), c.end());
    if (t == 0.0) return out;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= std::exp(t * op.eigenvalue(j));
    return out;
}

double euclidean_norm(std::span<const double> c) noexcept
{
    double s = 0.0;
    for (double v : c) s += v * v;
    return std::sqrt(s);
}

double fractional_norm(const SpectralOperator& op, std::span<const double> c,
                       const FractionalNormSpec& spec)
{
    spec.validate(op);
    require(c.size() == op.mode_count(), ErrorKind::InvalidInput,
            "coefficient vector length does not match mode count");
    if (spec.theta == 0.0) return euclidean_norm(c);
    double s = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double w = std::pow(spec.delta0 - op.eigenvalue(j), spec.theta);
        s += w * w * c[j] * c[j];
    }
    return std::sqrt(s);
}

TimeGrid::TimeGrid(double final_time, std::size_t intervals, double grading)
    : final_time_(final_time), grading_(grading)
{
    require(final_time > 0.0 && std::isfinite(final_time), ErrorKind::InvalidParameter,
            "final time T must be positive");
    require(intervals >= 2, ErrorKind::InvalidParameter, "time grid needs n >= 2");
    require(grading >= 1.0 && std::isfinite(grading), ErrorKind::InvalidParameter,
            "grading exponent r must be >= 1");
    nodes_.resize(intervals + 1);
    const double n = static_cast<double>(intervals);
    for (std::size_t i = 0; i <= intervals; ++i) {
        const double s = static_cast<double>(i) / n;
        nodes_[i] = grading == 1.0 ? final_time * s : final_time * std::pow(s, grading);
    }
    nodes_.back() = final_time;
}

TimeGrid make_graded_grid(double final_time, std::size_t intervals, double grading)
{
    return TimeGrid(final_time, intervals, grading);
}

double default_grading(double theta) noexcept
{
    if (theta <= 0.0) return 4.0;
    return std::clamp(1.0 / theta, 1.0, 4.0);
}

Trajectory::Trajectory(TimeGrid grid, std::size_t modes, bool includes_t0)
    : grid_(std::move(grid)), modes_(modes), includes_t0_(includes_t0),
      coeffs_(grid_.node_count() * modes, 0.0)
{
    require(modes >= 1, ErrorKind::InvalidInput, "trajectory needs at least one mode");
}

bool Trajectory::all_finite() const noexcept
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](double v) { return std::isfinite(v); });
}

Trajectory& Trajectory::operator+=(const Trajectory& other)
{
    require(other.modes_ == modes_ && other.grid_ == grid_, ErrorKind::InvalidInput,
            "trajectory shapes differ");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    includes_t0_ = includes_t0_ && other.includes_t0_;
    return *this;
}

Trajectory& Trajectory::operator-=(const Trajectory& other)
{
    require(other.modes_ == modes_ && other.grid_ == grid_, ErrorKind::InvalidInput,
            "trajectory shapes differ");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
    includes_t0_ = includes_t0_ && other.includes_t0_;
    return *this;
}

Trajectory& Trajectory::operator*=(double s) noexcept
{
    for (double& v : coeffs_) v *= s;
    return *this;
}

Trajectory operator-(Trajectory lhs, const Trajectory& rhs) { return lhs -= rhs; }
Trajectory operator+(Trajectory lhs, const Trajectory& rhs) { return lhs += rhs; }

double weighted_sup_norm(const SpectralOperator& op, const Trajectory& u, double mu,
                         const FractionalNormSpec& spec)
{
    require(u.node_count() >= 2, ErrorKind::InvalidInput, "empty trajectory");
    require(u.mode_count() == op.mode_count(), ErrorKind::InvalidInput,
            "trajectory mode count does not match operator");
    spec.validate(op);
    double sup = 0.0;
    const bool use_t0 = mu == 0.0 && spec.theta == 0.0 && u.includes_t0();
    for (std::size_t i = use_t0 ? 0 : 1; i < u.node_count(); ++i) {
        const double t = u.time(i);
        if (t <= 0.0 && !use_t0) continue;
        const double weight = mu == 0.0 ? 1.0 : std::pow(t, mu);
        sup = std::max(sup, weight * fractional_norm(op, u.at(i), spec));
    }
    return sup;
}

double sup_norm_e0(const Trajectory& u)
{
    double sup = 0.0;
    for (std::size_t i = u.includes_t0() ? 0 : 1; i < u.node_count(); ++i)
        sup = std::max(sup, euclidean_norm(u.at(i)));
    return sup;
}

std::vector<double> synthesize(const SpectralOperator& op, std::span<const double> c)
{
    require(c.size() == op.mode_count(), ErrorKind::InvalidInput,
            "coefficient vector length does not match mode count");
    const std::size_t n = op.mode_count();
    std::vector<double> v(op.grid_size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += c[j] * op.basis(i, j);
        v[i] = s;
    }
    return v;
}

std::vector<double> analyze(const SpectralOperator& op, std::span<const double> v)
{
    require(v.size() == op.grid_size(), ErrorKind::InvalidInput,
            "physical vector length does not match grid size");
    const std::size_t n = op.mode_count();
    const auto w = op.quadrature_weights();
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double wv = w[i] * v[i];
        for (std::size_t j = 0; j < n; ++j) c[j] += wv * op.basis(i, j);
    }
    return c;
}

}  // namespace initrec
