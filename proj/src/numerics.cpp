#include "deltalab/numerics.hpp"

#include <algorithm>
#include <bit>
#include <numbers>
#include <queue>

namespace deltalab::numerics {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants). Nodes are the non-negative half.
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gauss_kronrod15(const std::function<double(double)>& f, double lo,
                            double hi) {
    const double center = 0.5 * (lo + hi);
    const double halflen = 0.5 * (hi - lo);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        const double dx = halflen * kKronrodNodes[i];
        fv[i] = f(center - dx);
        fv[14 - i] = f(center + dx);
    }
    fv[7] = f(center);

    double kronrod = kKronrodWeights[7] * fv[7];
    double gauss = kGaussWeights[3] * fv[7];
    double resabs = std::abs(kronrod);
    for (int i = 0; i < 7; ++i) {
        const double pair = fv[i] + fv[14 - i];
        kronrod += kKronrodWeights[i] * pair;
        resabs += kKronrodWeights[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
    }

    const double mean = 0.5 * kronrod;
    double resasc = kKronrodWeights[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kKronrodWeights[i] *
                  (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));

    const double integral = kronrod * halflen;
    resabs *= std::abs(halflen);
    resasc *= std::abs(halflen);

    // QUADPACK-style damped error estimate.
    double err = std::abs((kronrod - gauss) * halflen);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50)
        err = std::max(err, eps50 * resabs);
    return {integral, err};
}

struct Panel {
    double lo, hi;
    double integral, error;
    long seq; // insertion order, tie-break for a deterministic heap
};

struct PanelOrder {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.seq > b.seq;
    }
};

} // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec) {
    if (!(lo < hi))
        throw invalid_interval("integrate: lower bound must be below upper bound");
    if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0) || spec.max_subdivisions < 1)
        throw invalid_interval("integrate: invalid quadrature spec");

    std::vector<double> edges;
    edges.push_back(lo);
    for (double b : spec.breakpoints) {
        if (!(b > edges.back()) || !(b < hi))
            throw invalid_interval(
                "integrate: breakpoints must be strictly increasing interior points");
        edges.push_back(b);
    }
    edges.push_back(hi);

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
    double total = 0.0, total_err = 0.0;
    long seq = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const auto r = gauss_kronrod15(f, edges[i], edges[i + 1]);
        heap.push({edges[i], edges[i + 1], r.integral, r.error, seq++});
        total += r.integral;
        total_err += r.error;
    }

    int splits = 0;
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (splits >= spec.max_subdivisions)
            throw non_convergence("integrate: subdivision budget exhausted");
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi)
            throw non_convergence("integrate: interval too small to split further");
        const auto left = gauss_kronrod15(f, worst.lo, mid);
        const auto right = gauss_kronrod15(f, mid, worst.hi);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.lo, mid, left.integral, left.error, seq++});
        heap.push({mid, worst.hi, right.integral, right.error, seq++});
        ++splits;
    }

    // Recompute the total in a fixed (interval-ordered) compensated pass; the
    // running value above accumulates cancellation over many splits.
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
    CompensatedAccumulator acc;
    for (const Panel& p : panels) acc.add(p.integral);
    return acc.value();
}

double compensated_sum(std::span<const double> terms) {
    CompensatedAccumulator acc;
    for (double t : terms) acc.add(t);
    return acc.value();
}

double hermite_psi(int n, double y) {
    if (n < 0) throw index_out_of_range("hermite_psi: negative index");

    // psi_0 = pi^{-1/4} exp(-y^2/2), tracked as mantissa * 2^scale so the
    // recurrence survives the classically forbidden region for large |y|.
    constexpr double kPiQuarterInv = 0.7511255444649424828587030047762276930510;
    const double t = -0.5 * y * y / std::numbers::ln2; // log2 of the envelope
    const double tfloor = std::floor(t);
    int64_t scale = static_cast<int64_t>(tfloor);
    double prev = kPiQuarterInv * std::exp2(t - tfloor); // psi_0 mantissa
    if (n == 0) return std::ldexp(prev, static_cast<int>(std::max<int64_t>(scale, -1100)));

    double cur = std::numbers::sqrt2 * y * prev; // psi_1 mantissa
    for (int k = 1; k < n; ++k) {
        const double next = y * std::sqrt(2.0 / (k + 1)) * cur -
                            std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
        prev = cur;
        cur = next;
        const double mag = std::max(std::abs(cur), std::abs(prev));
        if (mag > 0x1p+512) {
            prev = std::ldexp(prev, -512);
            cur = std::ldexp(cur, -512);
            scale += 512;
        } else if (mag < 0x1p-512 && mag > 0.0) {
            prev = std::ldexp(prev, 512);
            cur = std::ldexp(cur, 512);
            scale -= 512;
        }
    }
    const int s = static_cast<int>(std::clamp<int64_t>(scale, -1100, 1100));
    return std::ldexp(cur, s);
}

namespace detail {

void fft_pow2(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    if (n < 2) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    // Twiddle table w[k] = exp(-2 pi i k / n), each entry from std::polar so
    // the roundoff does not accumulate along a running product.
    std::vector<std::complex<double>> tw(n / 2);
    const double step = -2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        tw[k] = std::polar(1.0, step * static_cast<double>(k));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w = tw[k * stride];
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
            }
        }
    }
}

} // namespace detail

MomentumDistribution dft_momentum(std::span<const std::complex<double>> samples,
                                  double dx, double hbar) {
    const std::size_t n = samples.size();
    if (n < 16) throw grid_too_coarse("dft_momentum: need at least 16 samples");
    if (!std::has_single_bit(n))
        throw std::invalid_argument("dft_momentum: sample count must be a power of two");
    if (!(dx > 0.0) || !(hbar > 0.0))
        throw std::invalid_argument("dft_momentum: dx and hbar must be positive");

    std::vector<std::complex<double>> spec(samples.begin(), samples.end());
    detail::fft_pow2(spec);

    MomentumDistribution out;
    out.dp = 2.0 * std::numbers::pi * hbar / (static_cast<double>(n) * dx);
    out.momenta.resize(n);
    out.density.resize(n);

    const double amp2 = dx * dx / (2.0 * std::numbers::pi * hbar);
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    for (std::ptrdiff_t k = -half; k < half; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k + half);
        const std::size_t src = static_cast<std::size_t>(k < 0 ? k + static_cast<std::ptrdiff_t>(n) : k);
        out.momenta[idx] = static_cast<double>(k) * out.dp;
        out.density[idx] = std::norm(spec[src]) * amp2;
    }

    CompensatedAccumulator pos, mom;
    for (const auto& s : samples) pos.add(std::norm(s) * dx);
    for (double d : out.density) mom.add(d * out.dp);
    out.position_norm = pos.value();
    out.momentum_norm = mom.value();
    return out;
}

SlopeFit fit_loglog_slope(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("fit_loglog_slope: size mismatch");
    if (xs.size() < 3)
        throw insufficient_points("fit_loglog_slope: need at least 3 points");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw non_positive_data("fit_loglog_slope: coordinates must be positive");
        if (i > 0 && !(xs[i] > xs[i - 1]))
            throw std::invalid_argument("fit_loglog_slope: xs must be strictly increasing");
    }

    const auto n = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += std::log(xs[i]);
        sy += std::log(ys[i]);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = std::log(xs[i]) - mx;
        const double dy = std::log(ys[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    SlopeFit fit;
    fit.n_points = static_cast<int>(xs.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = std::log(ys[i]) - (fit.intercept + fit.slope * std::log(xs[i]));
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ss_res / syy)
                              : (ss_res == 0.0 ? 1.0 : 0.0);
    return fit;
}

} // namespace deltalab::numerics
