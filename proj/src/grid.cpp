#include "cjet/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace cjet {

std::mutex& fft_planner_mutex() {
    static std::mutex m;
    return m;
}

namespace {

// Complex-to-complex plans plus work buffers for one transform size.
// Cached per thread so concurrent runs never share buffers.
class FftEngine {
public:
    explicit FftEngine(int n) : n_(n) {
        in_ = fftw_alloc_complex(n);
        out_ = fftw_alloc_complex(n);
        std::lock_guard<std::mutex> lock(fft_planner_mutex());
        fwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~FftEngine() {
        std::lock_guard<std::mutex> lock(fft_planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(in_);
        fftw_free(out_);
    }

    FftEngine(const FftEngine&) = delete;
    FftEngine& operator=(const FftEngine&) = delete;

    void forward(const double* in, Complex* out) {
        for (int j = 0; j < n_; ++j) {
            in_[j][0] = in[j];
            in_[j][1] = 0.0;
        }
        fftw_execute(fwd_);
        const double scale = 1.0 / n_;
        for (int k = 0; k < n_; ++k)
            out[k] = Complex(out_[k][0] * scale, out_[k][1] * scale);
    }

    void inverse(const Complex* in, double* out) {
        for (int k = 0; k < n_; ++k) {
            in_[k][0] = in[k].real();
            in_[k][1] = in[k].imag();
        }
        fftw_execute(bwd_);
        for (int j = 0; j < n_; ++j) out[j] = out_[j][0];
    }

private:
    int n_;
    fftw_complex* in_;
    fftw_complex* out_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

FftEngine& engine_for(int n) {
    thread_local std::unordered_map<int, std::unique_ptr<FftEngine>> cache;
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftEngine>(n);
    return *slot;
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw GridMismatch("fields live on different grids");
}

} // namespace

GridSpec::GridSpec(double half_period, int point_count)
    : half_period_(half_period), point_count_(point_count) {
    if (!(half_period > 0.0)) throw BadGrid("half period L must be positive");
    if (point_count % 2 != 0) throw OddPointCount("point count N must be even");
    if (point_count < 8) throw BadGrid("point count N must be at least 8");
    dz_ = 2.0 * half_period / point_count;
    wavenumbers_.resize(point_count);
    for (int k = 0; k < point_count; ++k)
        wavenumbers_[k] = std::numbers::pi * mode_index(k) / half_period;
}

GridPtr make_grid(double half_period, int point_count) {
    return std::make_shared<const GridSpec>(half_period, point_count);
}

RealField::RealField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->size(), fill) {}

RealField::RealField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_->size())
        throw GridMismatch("value count does not match grid size");
}

RealField& RealField::operator+=(const RealField& other) {
    require_same_grid(*grid_, *other.grid_);
    for (int j = 0; j < size(); ++j) values_[j] += other.values_[j];
    return *this;
}

RealField& RealField::operator-=(const RealField& other) {
    require_same_grid(*grid_, *other.grid_);
    for (int j = 0; j < size(); ++j) values_[j] -= other.values_[j];
    return *this;
}

RealField& RealField::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double a, RealField u) { return u *= a; }

RealField operator*(const RealField& a, const RealField& b) {
    require_same_grid(*a.grid(), *b.grid());
    RealField out(a.grid());
    for (int j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
    return out;
}

SpectralField::SpectralField(GridPtr grid)
    : grid_(std::move(grid)), coeffs_(grid_->size(), Complex(0.0)) {}

SpectralField::SpectralField(GridPtr grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != grid_->size())
        throw GridMismatch("coefficient count does not match grid size");
}

void fft_forward(const GridSpec& g, const double* in, Complex* out) {
    engine_for(g.size()).forward(in, out);
}

void fft_inverse(const GridSpec& g, const Complex* in, double* out) {
    engine_for(g.size()).inverse(in, out);
}

SpectralField transform_forward(const RealField& u) {
    SpectralField out(u.grid());
    fft_forward(*u.grid(), u.values().data(), out.coeffs().data());
    return out;
}

RealField transform_inverse(const SpectralField& u) {
    RealField out(u.grid());
    fft_inverse(*u.grid(), u.coeffs().data(), out.values().data());
    return out;
}

namespace {

// Multiplier table in storage order, with the Hermitian check and the
// even-part rule at the Nyquist mode.
std::vector<Complex> sample_multiplier(const GridSpec& g, const Multiplier& m,
                                       bool real_output) {
    const int n = g.size();
    std::vector<Complex> table(n);
    for (int k = 0; k < n; ++k) table[k] = m(g.wavenumber(k));

    const int nyq = g.nyquist_index();
    const double xi_nyq = -g.wavenumber(nyq); // positive Nyquist wavenumber
    const Complex even_part = 0.5 * (m(xi_nyq) + m(-xi_nyq));

    if (real_output) {
        for (int k = 1; k < nyq; ++k) {
            Complex a = table[k];
            Complex b = table[n - k];
            double err = std::abs(std::conj(a) - b);
            if (err > 1e-12 * (1.0 + std::abs(a)))
                throw NonHermitianMultiplier("multiplier breaks conj(m(xi)) = m(-xi)");
        }
        Complex m0 = table[0];
        if (std::abs(m0.imag()) > 1e-12 * (1.0 + std::abs(m0)))
            throw NonHermitianMultiplier("multiplier not real at xi = 0");
        table[nyq] = even_part.real();
    } else {
        table[nyq] = even_part;
    }
    return table;
}

} // namespace

RealField apply_multiplier(const RealField& u, const Multiplier& m) {
    const GridSpec& g = *u.grid();
    auto table = sample_multiplier(g, m, true);
    SpectralField spec = transform_forward(u);
    for (int k = 0; k < g.size(); ++k) spec[k] *= table[k];
    return transform_inverse(spec);
}

SpectralField apply_multiplier(const SpectralField& u, const Multiplier& m) {
    const GridSpec& g = *u.grid();
    auto table = sample_multiplier(g, m, false);
    SpectralField out = u;
    for (int k = 0; k < g.size(); ++k) out[k] *= table[k];
    return out;
}

RealField derivative(const RealField& u) {
    return apply_multiplier(u, [](double xi) { return Complex(0.0, xi); });
}

double sobolev_norm(const SpectralField& u, double s) {
    const GridSpec& g = *u.grid();
    double sum = 0.0;
    for (int k = 0; k < g.size(); ++k) {
        double xi = g.wavenumber(k);
        sum += std::pow(1.0 + xi * xi, s) * std::norm(u[k]);
    }
    return std::sqrt(2.0 * g.half_period() * sum);
}

double sobolev_norm(const RealField& u, double s) {
    return sobolev_norm(transform_forward(u), s);
}

RealField dealias(const RealField& u) {
    const GridSpec& g = *u.grid();
    const double cut = g.size() / 3.0;
    SpectralField spec = transform_forward(u);
    for (int k = 0; k < g.size(); ++k)
        if (std::abs(g.mode_index(k)) > cut) spec[k] = 0.0;
    return transform_inverse(spec);
}

RealField shift_field(const RealField& u, double shift) {
    const GridSpec& g = *u.grid();
    SpectralField spec = transform_forward(u);
    for (int k = 0; k < g.size(); ++k) {
        double xi = g.wavenumber(k);
        if (k == g.nyquist_index())
            spec[k] *= std::cos(xi * shift);
        else
            spec[k] *= std::exp(Complex(0.0, -xi * shift));
    }
    return transform_inverse(spec);
}

double min_value(const RealField& u) {
    return *std::min_element(u.values().begin(), u.values().end());
}

double max_value(const RealField& u) {
    return *std::max_element(u.values().begin(), u.values().end());
}

double mean_value(const RealField& u) {
    double sum = 0.0;
    for (double v : u.values()) sum += v;
    return sum / u.size();
}

double l2_norm(const RealField& u) {
    double sum = 0.0;
    for (double v : u.values()) sum += v * v;
    return std::sqrt(sum * u.grid()->dz());
}

double integrate(const RealField& u) {
    double sum = 0.0;
    for (double v : u.values()) sum += v;
    return sum * u.grid()->dz();
}

} // namespace cjet
