#ifndef CJET_GRID_HPP
#define CJET_GRID_HPP

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "cjet/errors.hpp"

namespace cjet {

using Complex = std::complex<double>;

/// Periodic Fourier collocation grid on z in [0, 2L).
///
/// Nodes z_j = j*dz with dz = 2L/N.  Spectral storage order follows the DFT
/// layout: index k in [0, N) carries the signed mode m = k for k <= N/2-1 and
/// m = k-N otherwise, with wavenumber xi = pi*m/L.  The single unpaired mode
/// is the Nyquist m = -N/2.
class GridSpec {
public:
    GridSpec(double half_period, int point_count);

    double half_period() const { return half_period_; }
    int size() const { return point_count_; }
    double dz() const { return dz_; }
    double node(int j) const { return dz_ * j; }

    int mode_index(int k) const { return k <= point_count_ / 2 - 1 ? k : k - point_count_; }
    double wavenumber(int k) const { return wavenumbers_[k]; }
    const std::vector<double>& wavenumbers() const { return wavenumbers_; }
    int nyquist_index() const { return point_count_ / 2; }

    /// Storage index of signed mode m, or -1 if unresolved.
    int index_of_mode(int m) const {
        if (m < -point_count_ / 2 || m > point_count_ / 2 - 1) return -1;
        return m >= 0 ? m : m + point_count_;
    }

    bool operator==(const GridSpec& other) const {
        return half_period_ == other.half_period_ && point_count_ == other.point_count_;
    }

private:
    double half_period_;
    int point_count_;
    double dz_;
    std::vector<double> wavenumbers_;
};

using GridPtr = std::shared_ptr<const GridSpec>;

GridPtr make_grid(double half_period, int point_count);

/// Real samples on the collocation nodes.
class RealField {
public:
    RealField() = default;
    RealField(GridPtr grid, double fill = 0.0);
    RealField(GridPtr grid, std::vector<double> values);

    const GridPtr& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int j) const { return values_[j]; }
    double& operator[](int j) { return values_[j]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    RealField& operator+=(const RealField& other);
    RealField& operator-=(const RealField& other);
    RealField& operator*=(double a);

private:
    GridPtr grid_;
    std::vector<double> values_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double a, RealField u);
RealField operator*(const RealField& a, const RealField& b); // pointwise

/// Fourier coefficients, Hermitian-symmetric whenever they represent a real field.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(GridPtr grid, std::vector<Complex> coeffs);
    explicit SpectralField(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    int size() const { return static_cast<int>(coeffs_.size()); }
    Complex operator[](int k) const { return coeffs_[k]; }
    Complex& operator[](int k) { return coeffs_[k]; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }
    std::vector<Complex>& coeffs() { return coeffs_; }

    /// Coefficient of signed mode m (0 if unresolved).
    Complex mode(int m) const {
        int k = grid_->index_of_mode(m);
        return k < 0 ? Complex(0.0) : coeffs_[k];
    }

private:
    GridPtr grid_;
    std::vector<Complex> coeffs_;
};

// Forward transform carries 1/N; inverse is the plain synthesis sum.
SpectralField transform_forward(const RealField& u);
RealField transform_inverse(const SpectralField& u);

// In-place spectral workhorses on raw storage (used by the solver hot loops).
void fft_forward(const GridSpec& g, const double* in, Complex* out);
void fft_inverse(const GridSpec& g, const Complex* in, double* out);

/// Serializes FFTW plan creation/destruction (the planner is not thread-safe).
std::mutex& fft_planner_mutex();

using Multiplier = std::function<Complex(double)>;

/// coeff_out(xi) = m(xi) * coeff_in(xi).  For RealField input the multiplier
/// must be Hermitian (conj(m(xi)) = m(-xi) within 1e-12); the Nyquist mode is
/// scaled by the real even part of m, which zeroes it for odd multipliers.
RealField apply_multiplier(const RealField& u, const Multiplier& m);
SpectralField apply_multiplier(const SpectralField& u, const Multiplier& m);

RealField derivative(const RealField& u);
double sobolev_norm(const RealField& u, double s);
double sobolev_norm(const SpectralField& u, double s);

/// 2/3-rule filter: zeroes all modes with |m| > N/3.
RealField dealias(const RealField& u);

/// u(z - shift), computed spectrally (exact for resolved modes; the Nyquist
/// coefficient is scaled by cos(xi*shift) to stay real).
RealField shift_field(const RealField& u, double shift);

double min_value(const RealField& u);
double max_value(const RealField& u);
double mean_value(const RealField& u);

/// Discrete L2 norm sqrt(sum u_j^2 dz).
double l2_norm(const RealField& u);

/// Trapezoid (= spectral) quadrature over one period.
double integrate(const RealField& u);

} // namespace cjet

#endif
