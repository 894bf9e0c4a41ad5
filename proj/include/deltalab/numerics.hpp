#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "deltalab/errors.hpp"

namespace deltalab::numerics {

/// Tolerances and limits for adaptive quadrature. `breakpoints` are interior
/// abscissae where the integrand is non-smooth; the interval is split there
/// before any adaptive refinement starts.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 5000;
    std::vector<double> breakpoints;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [lo, hi].
/// Throws invalid_interval if lo >= hi, non_convergence if the subdivision
/// budget is exhausted before the error estimate drops below
/// max(abs_tol, rel_tol * |I|).
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

/// Neumaier-compensated running sum. Deterministic for a fixed add order.
class CompensatedAccumulator {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Compensated sum of `terms` in the given order.
double compensated_sum(std::span<const double> terms);

/// Orthonormal harmonic-oscillator eigenfunction psi_n(y) in dimensionless
/// form (unit mass and frequency, hbar = 1), evaluated by the normalized
/// three-term recurrence with exponent rescaling, so no intermediate
/// overflow/underflow occurs for n <= 1e4, |y| <= 50.
double hermite_psi(int n, double y);

/// |chi~(p)|^2 sampled on the symmetric conjugate momentum grid.
struct MomentumDistribution {
    std::vector<double> momenta; ///< ascending, spacing dp
    std::vector<double> density; ///< |chi~(p)|^2
    double dp = 0.0;
    double position_norm = 0.0; ///< sum |chi|^2 dx
    double momentum_norm = 0.0; ///< sum |chi~|^2 dp
};

/// Discrete realization of chi~(p) = (2 pi hbar)^{-1/2} Int chi(x) e^{-ipx/hbar} dx
/// for uniformly spaced samples. Sample count must be a power of two (radix-2
/// transform); fewer than 16 samples throws grid_too_coarse. The discrete
/// Parseval identity (momentum_norm == position_norm) holds to machine
/// precision by construction.
MomentumDistribution dft_momentum(std::span<const std::complex<double>> samples,
                                  double dx, double hbar);

/// Least-squares line through (ln x, ln y).
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
};

/// Throws insufficient_points for fewer than 3 points, non_positive_data if
/// any coordinate is <= 0. xs must be strictly increasing.
SlopeFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys);

namespace detail {
/// In-place radix-2 decimation-in-time FFT, forward sign convention
/// (exp(-2 pi i jk / N)). Size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& data);
} // namespace detail

} // namespace deltalab::numerics
