#include "cjet/dno.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <numbers>
#include <tuple>

#include "cjet/bessel.hpp"
#include "cjet/errors.hpp"

namespace cjet {

StripField::StripField(GridPtr grid, int cell_count)
    : grid_(std::move(grid)), cells_(cell_count),
      values_(static_cast<size_t>(cell_count + 1) * grid_->size(), 0.0) {
    if (cell_count < 2) throw BadGrid("strip needs at least 2 cells");
}

RealField StripField::level(int m) const {
    std::vector<double> row_values(grid_->size());
    std::memcpy(row_values.data(), row(m), sizeof(double) * grid_->size());
    return RealField(grid_, std::move(row_values));
}

void require_positive_radius(const RealField& eta) {
    double lo = min_value(eta);
    double mean = mean_value(eta);
    if (!(lo > 1e-6 * std::max(mean, 0.0)))
        throw NonpositiveRadius("surface radius at or below pinch-off floor");
}

double flat_multiplier(double radius, double xi) {
    if (!(radius > 0.0)) throw NonpositiveRadius("flat multiplier needs R > 0");
    return std::abs(xi) * bessel::ratio_i1_i0(radius * std::abs(xi));
}

RealField dn_flat(double radius, const RealField& psi) {
    return apply_multiplier(psi, [radius](double xi) {
        return Complex(flat_multiplier(radius, xi), 0.0);
    });
}

StripField harmonic_extension_flat(double radius, const RealField& psi, int cells) {
    if (!(radius > 0.0)) throw NonpositiveRadius("extension needs R > 0");
    const GridSpec& g = *psi.grid();
    StripField out(psi.grid(), cells);
    SpectralField spec = transform_forward(psi);
    std::vector<Complex> level(g.size());
    for (int m = 0; m <= cells; ++m) {
        double y = out.y(m);
        for (int k = 0; k < g.size(); ++k) {
            double x = radius * std::abs(g.wavenumber(k));
            level[k] = spec[k] * bessel::ratio_i0k(0, y, x);
        }
        fft_inverse(g, level.data(), out.row(m));
    }
    return out;
}

CoefficientMatrixField assemble_coefficients(const RealField& eta, int cells) {
    require_positive_radius(eta);
    const GridSpec& g = *eta.grid();
    const int n = g.size();
    RealField eta_z = derivative(eta);
    CoefficientMatrixField A;
    A.grid = eta.grid();
    A.cells = cells;
    A.a11.resize(static_cast<size_t>(cells) * n);
    A.a12.resize(static_cast<size_t>(cells) * n);
    A.a22.resize(static_cast<size_t>(cells) * n);
    const double dy = 1.0 / cells;
    for (int m = 0; m < cells; ++m) {
        double y = (m + 0.5) * dy;
        for (int j = 0; j < n; ++j) {
            size_t idx = static_cast<size_t>(m) * n + j;
            double e = eta[j], ez = eta_z[j];
            A.a11[idx] = y * e * e;
            A.a12[idx] = -y * y * e * ez;
            A.a22[idx] = y * (1.0 + y * y * ez * ez);
        }
    }
    return A;
}

namespace {

// Batched real row transforms over a strip block (rows x N), one r2c/c2r
// plan execution per direction.  This is the solver hot path.  Half spectra
// hold bins k = 0..N/2 with wavenumber pi*k/L; bin N/2 is the Nyquist.
class BatchedFft {
public:
    BatchedFft(const GridSpec& g, int rows)
        : g_(g), rows_(rows), n_(g.size()), h_(g.size() / 2 + 1) {
        rbuf_ = fftw_alloc_real(static_cast<size_t>(rows_) * n_);
        cbuf_ = fftw_alloc_complex(static_cast<size_t>(rows_) * h_);
        std::lock_guard<std::mutex> lock(fft_planner_mutex());
        int sizes[1] = {n_};
        fwd_ = fftw_plan_many_dft_r2c(1, sizes, rows_, rbuf_, nullptr, 1, n_, cbuf_, nullptr,
                                      1, h_, FFTW_ESTIMATE);
        bwd_ = fftw_plan_many_dft_c2r(1, sizes, rows_, cbuf_, nullptr, 1, h_, rbuf_, nullptr,
                                      1, n_, FFTW_ESTIMATE);
    }

    ~BatchedFft() {
        std::lock_guard<std::mutex> lock(fft_planner_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(rbuf_);
        fftw_free(cbuf_);
    }

    BatchedFft(const BatchedFft&) = delete;
    BatchedFft& operator=(const BatchedFft&) = delete;

    int half_size() const { return h_; }
    double bin_wavenumber(int k) const {
        return std::numbers::pi * k / g_.half_period();
    }

    // out := d/dz(in) row-wise, Nyquist zeroed.
    void derivative(const double* in, double* out) {
        const size_t total = static_cast<size_t>(rows_) * n_;
        std::memcpy(rbuf_, in, total * sizeof(double));
        fftw_execute(fwd_);
        const double scale = 1.0 / n_;
        for (int r = 0; r < rows_; ++r) {
            fftw_complex* row = cbuf_ + static_cast<size_t>(r) * h_;
            for (int k = 0; k < h_; ++k) {
                double xi = k == n_ / 2 ? 0.0 : bin_wavenumber(k) * scale;
                double re = row[k][0], im = row[k][1];
                row[k][0] = -xi * im;
                row[k][1] = xi * re;
            }
        }
        fftw_execute(bwd_);
        std::memcpy(out, rbuf_, total * sizeof(double));
    }

    // Real rows -> half spectra (1/N convention) into caller storage.
    void forward(const double* in, Complex* out) {
        const size_t total = static_cast<size_t>(rows_) * n_;
        std::memcpy(rbuf_, in, total * sizeof(double));
        fftw_execute(fwd_);
        const double scale = 1.0 / n_;
        const size_t spec_total = static_cast<size_t>(rows_) * h_;
        for (size_t i = 0; i < spec_total; ++i)
            out[i] = Complex(cbuf_[i][0] * scale, cbuf_[i][1] * scale);
    }

    void inverse(const Complex* in, double* out) {
        const size_t spec_total = static_cast<size_t>(rows_) * h_;
        for (size_t i = 0; i < spec_total; ++i) {
            cbuf_[i][0] = in[i].real();
            cbuf_[i][1] = in[i].imag();
        }
        fftw_execute(bwd_);
        std::memcpy(out, rbuf_, static_cast<size_t>(rows_) * n_ * sizeof(double));
    }

private:
    GridSpec g_;
    int rows_;
    int n_;
    int h_;
    double* rbuf_;
    fftw_complex* cbuf_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

BatchedFft& batched_fft_for(const GridSpec& g, int rows) {
    // Keyed on the full grid geometry: the engine bakes the wavenumber
    // scaling pi/L into its derivative tables.
    thread_local std::map<std::tuple<int, int, double>, std::unique_ptr<BatchedFft>> cache;
    auto& slot = cache[{g.size(), rows, g.half_period()}];
    if (!slot) slot = std::make_unique<BatchedFft>(g, rows);
    return *slot;
}

// Spectral d/dz of one strip row; zeroes the Nyquist mode.
class RowDeriv {
public:
    explicit RowDeriv(const GridSpec& g) : g_(g), buf_(g.size()) {}

    void operator()(const double* in, double* out) {
        fft_forward(g_, in, buf_.data());
        const int n = g_.size();
        for (int k = 0; k < n; ++k)
            buf_[k] *= Complex(0.0, k == g_.nyquist_index() ? 0.0 : g_.wavenumber(k));
        fft_inverse(g_, buf_.data(), out);
    }

private:
    const GridSpec& g_;
    std::vector<Complex> buf_;
};

// Discrete operator of the cell scheme.  Rows 0..M-1 are unknowns; row M is
// Dirichlet.  apply() returns the (symmetric) energy gradient scaled by
// 1/(dz dy), i.e. a consistent collocation residual of -div(A grad v).
class EllipticOperator {
public:
    EllipticOperator(const RealField& eta, int cells)
        : grid_(eta.grid()), A_(assemble_coefficients(eta, cells)),
          M_(cells), n_(grid_->size()), dy_(1.0 / cells),
          level_fft_(batched_fft_for(*grid_, cells + 1)),
          cell_fft_(batched_fft_for(*grid_, cells)) {
        vz_.resize(static_cast<size_t>(M_ + 1) * n_);
        fz_.resize(static_cast<size_t>(M_) * n_);
        fy_.resize(static_cast<size_t>(M_) * n_);
        dzfz_.resize(static_cast<size_t>(M_) * n_);
    }

    const GridSpec& grid() const { return *grid_; }
    const CoefficientMatrixField& coefficients() const { return A_; }
    int cells() const { return M_; }

    // full: (M+1) x N strip values; out: M x N gradient rows.
    void apply(const double* full, double* out) {
        compute_fluxes(full);
        for (int p = 0; p < M_; ++p) {
            const double* dzfz_lo = p > 0 ? &dzfz_[static_cast<size_t>(p - 1) * n_] : nullptr;
            const double* dzfz_hi = &dzfz_[static_cast<size_t>(p) * n_];
            const double* fy_lo = p > 0 ? &fy_[static_cast<size_t>(p - 1) * n_] : nullptr;
            const double* fy_hi = &fy_[static_cast<size_t>(p) * n_];
            double* row = out + static_cast<size_t>(p) * n_;
            for (int j = 0; j < n_; ++j) {
                double dz_part = dzfz_hi[j] + (dzfz_lo ? dzfz_lo[j] : 0.0);
                double fy_jump = fy_hi[j] - (fy_lo ? fy_lo[j] : 0.0);
                row[j] = -0.5 * dz_part - fy_jump / dy_;
            }
        }
    }

    // Variational boundary flux at y=1: eta*G = Fy_{M-1/2} - (dy/2) dz(Fz_{M-1/2}).
    void boundary_flux(const double* full, double* eta_g) {
        compute_fluxes(full);
        const double* fy_top = &fy_[static_cast<size_t>(M_ - 1) * n_];
        const double* dzfz_top = &dzfz_[static_cast<size_t>(M_ - 1) * n_];
        for (int j = 0; j < n_; ++j)
            eta_g[j] = fy_top[j] - 0.5 * dy_ * dzfz_top[j];
    }

private:
    void compute_fluxes(const double* full) {
        level_fft_.derivative(full, vz_.data());
        for (int m = 0; m < M_; ++m) {
            const double* v_lo = full + static_cast<size_t>(m) * n_;
            const double* v_hi = full + static_cast<size_t>(m + 1) * n_;
            const double* vz_lo = &vz_[static_cast<size_t>(m) * n_];
            const double* vz_hi = &vz_[static_cast<size_t>(m + 1) * n_];
            size_t base = static_cast<size_t>(m) * n_;
            for (int j = 0; j < n_; ++j) {
                double vzh = 0.5 * (vz_lo[j] + vz_hi[j]);
                double w = (v_hi[j] - v_lo[j]) / dy_;
                fz_[base + j] = A_.a11[base + j] * vzh + A_.a12[base + j] * w;
                fy_[base + j] = A_.a12[base + j] * vzh + A_.a22[base + j] * w;
            }
        }
        cell_fft_.derivative(fz_.data(), dzfz_.data());
    }

    GridPtr grid_;
    CoefficientMatrixField A_;
    int M_;
    int n_;
    double dy_;
    BatchedFft& level_fft_;
    BatchedFft& cell_fft_;
    std::vector<double> vz_, fz_, fy_, dzfz_;
};

// Exact inverse of the flat-cylinder operator at radius rbar: the same cell
// scheme decouples per Fourier mode into an SPD tridiagonal system, factored
// once and solved by forward/back substitution.
class FlatPreconditioner {
public:
    FlatPreconditioner(const GridSpec& g, double rbar, int cells)
        : g_(g), M_(cells), n_(g.size()), h_(g.size() / 2 + 1), dy_(1.0 / cells),
          fft_(batched_fft_for(g, cells)) {
        diag_.resize(static_cast<size_t>(h_) * M_);
        lower_.resize(static_cast<size_t>(h_) * M_); // lower_[.., m] couples m-1, m
        for (int k = 0; k < h_; ++k) {
            double xi = k == n_ / 2 ? 0.0 : fft_.bin_wavenumber(k);
            double xi2 = xi * xi;
            // cell quantities a_m = y_{m+1/2} rbar^2, c_m = y_{m+1/2}
            auto acell = [&](int m) { return (m + 0.5) * dy_ * rbar * rbar; };
            auto ccell = [&](int m) { return (m + 0.5) * dy_; };
            std::vector<double> d(M_), e(M_, 0.0);
            d[0] = xi2 * acell(0) * 0.25 + ccell(0) / (dy_ * dy_);
            for (int m = 1; m < M_; ++m) {
                d[m] = xi2 * (acell(m - 1) + acell(m)) * 0.25 +
                       (ccell(m - 1) + ccell(m)) / (dy_ * dy_);
                e[m] = xi2 * acell(m - 1) * 0.25 - ccell(m - 1) / (dy_ * dy_);
            }
            // LDL^T factorization
            size_t base = static_cast<size_t>(k) * M_;
            diag_[base] = d[0];
            for (int m = 1; m < M_; ++m) {
                double l = e[m] / diag_[base + m - 1];
                lower_[base + m] = l;
                diag_[base + m] = d[m] - l * e[m];
            }
        }
        spec_.resize(static_cast<size_t>(M_) * h_);
        col_.resize(M_);
    }

    // in/out: M x N real rows.
    void apply(const double* in, double* out) {
        fft_.forward(in, spec_.data());
        for (int k = 0; k < h_; ++k) {
            size_t base = static_cast<size_t>(k) * M_;
            for (int m = 0; m < M_; ++m) col_[m] = spec_[static_cast<size_t>(m) * h_ + k];
            for (int m = 1; m < M_; ++m) col_[m] -= lower_[base + m] * col_[m - 1];
            for (int m = 0; m < M_; ++m) col_[m] /= diag_[base + m];
            for (int m = M_ - 2; m >= 0; --m) col_[m] -= lower_[base + m + 1] * col_[m + 1];
            for (int m = 0; m < M_; ++m) spec_[static_cast<size_t>(m) * h_ + k] = col_[m];
        }
        fft_.inverse(spec_.data(), out);
    }

private:
    const GridSpec& g_;
    int M_;
    int n_;
    int h_;
    double dy_;
    BatchedFft& fft_;
    std::vector<double> diag_, lower_;
    std::vector<Complex> spec_;
    std::vector<Complex> col_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

namespace {

EllipticSolution solve_with_operator(EllipticOperator& K, const RealField& eta,
                                     const RealField& psi, const DnoOptions& opt,
                                     const StripField* guess) {
    const GridSpec& g = *eta.grid();
    if (!(*psi.grid() == g)) throw GridMismatch("eta and psi on different grids");
    if (!(opt.tol > 0.0)) throw ConfigError("solver tolerance must be positive");
    const int n = g.size();
    const int M = K.cells();
    const int max_iter = opt.max_iterations > 0 ? opt.max_iterations : 10 * n;
    const size_t interior = static_cast<size_t>(M) * n;

    FlatPreconditioner P(g, mean_value(eta), M);

    EllipticSolution sol;
    sol.v = StripField(eta.grid(), M);
    std::memcpy(sol.v.row(M), psi.values().data(), sizeof(double) * n);

    // rhs = -K (lift), lift = psi on the Dirichlet row.
    std::vector<double> full(static_cast<size_t>(M + 1) * n, 0.0);
    std::memcpy(&full[interior], psi.values().data(), sizeof(double) * n);
    std::vector<double> b(interior);
    K.apply(full.data(), b.data());
    for (double& v : b) v = -v;

    const double psi_norm = l2_norm(psi);
    const double cell_area = g.dz() / M;
    const double target = opt.tol * std::max(psi_norm, 1e-300);

    std::vector<double> x(interior, 0.0);
    if (guess && guess->cells() == M && *guess->grid() == g)
        std::memcpy(x.data(), guess->values().data(), sizeof(double) * interior);

    std::vector<double> r(interior), z(interior), p(interior), q(interior);

    // r = b - K x
    std::memcpy(full.data(), x.data(), sizeof(double) * interior);
    std::memset(&full[interior], 0, sizeof(double) * n);
    K.apply(full.data(), r.data());
    for (size_t i = 0; i < interior; ++i) r[i] = b[i] - r[i];

    auto phys_norm = [&](const std::vector<double>& v) {
        return std::sqrt(dot(v, v) * cell_area);
    };

    double res = phys_norm(r);
    int it = 0;
    if (res > target) {
        P.apply(r.data(), z.data());
        p = z;
        double rz = dot(r, z);
        for (it = 1; it <= max_iter; ++it) {
            std::memcpy(full.data(), p.data(), sizeof(double) * interior);
            std::memset(&full[interior], 0, sizeof(double) * n);
            K.apply(full.data(), q.data());
            double pq = dot(p, q);
            if (!(pq > 0.0)) throw NoConvergence(it, res / std::max(psi_norm, 1e-300));
            double alpha = rz / pq;
            for (size_t i = 0; i < interior; ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * q[i];
            }
            res = phys_norm(r);
            if (res <= target) break;
            P.apply(r.data(), z.data());
            double rz_next = dot(r, z);
            double beta = rz_next / rz;
            rz = rz_next;
            for (size_t i = 0; i < interior; ++i) p[i] = z[i] + beta * p[i];
        }
        if (res > target)
            throw NoConvergence(it, res / std::max(psi_norm, 1e-300));
    }

    std::memcpy(sol.v.values().data(), x.data(), sizeof(double) * interior);
    sol.iterations = it;
    sol.residual = res / std::max(psi_norm, 1e-300);
    return sol;
}

} // namespace

EllipticSolution solve_elliptic(const RealField& eta, const RealField& psi,
                                const DnoOptions& opt, const StripField* guess) {
    const int M = opt.cells > 0 ? opt.cells : 2 * eta.grid()->size();
    EllipticOperator K(eta, M);
    return solve_with_operator(K, eta, psi, opt, guess);
}

DnResult dn_general_full(const RealField& eta, const RealField& psi,
                         const DnoOptions& opt, const StripField* guess) {
    const GridSpec& g = *eta.grid();
    const int M = opt.cells > 0 ? opt.cells : 2 * g.size();
    EllipticOperator K(eta, M);
    EllipticSolution sol = solve_with_operator(K, eta, psi, opt, guess);
    RealField eta_g(eta.grid());
    K.boundary_flux(sol.v.values().data(), eta_g.values().data());
    RealField gfield(eta.grid());
    for (int j = 0; j < g.size(); ++j) gfield[j] = eta_g[j] / eta[j];
    return DnResult{std::move(gfield), std::move(sol.v), sol.iterations, sol.residual};
}

RealField dn_general(const RealField& eta, const RealField& psi, const DnoOptions& opt) {
    return dn_general_full(eta, psi, opt).g;
}

TraceVelocities trace_velocities(const RealField& eta, const RealField& psi,
                                 const RealField& g) {
    RealField eta_z = derivative(eta);
    RealField psi_z = derivative(psi);
    RealField B(eta.grid());
    RealField V(eta.grid());
    for (int j = 0; j < eta.size(); ++j) {
        B[j] = (eta_z[j] * psi_z[j] + g[j]) / (1.0 + eta_z[j] * eta_z[j]);
        V[j] = psi_z[j] - B[j] * eta_z[j];
    }
    return TraceVelocities{std::move(B), std::move(V)};
}

RealField shape_derivative(const RealField& eta, const RealField& psi,
                           const RealField& h, const DnoOptions& opt) {
    require_positive_radius(eta);
    RealField g = dn_general(eta, psi, opt);
    TraceVelocities tv = trace_velocities(eta, psi, g);
    RealField hB = h * tv.B;
    RealField term1 = dn_general(eta, hB, opt);
    RealField term2 = derivative(h * tv.V);
    RealField out(eta.grid());
    for (int j = 0; j < eta.size(); ++j)
        out[j] = -term1[j] - term2[j] - hB[j] / eta[j];
    return out;
}

RealField cancellation_probe(const RealField& eta, const RealField& psi,
                             const DnoOptions& opt) {
    RealField g = dn_general(eta, psi, opt);
    TraceVelocities tv = trace_velocities(eta, psi, g);
    RealField gb = dn_general(eta, tv.B, opt);
    return gb + derivative(tv.V);
}

double strip_bilinear(const CoefficientMatrixField& A, const StripField& u,
                      const StripField& v) {
    const GridSpec& g = *A.grid;
    if (!(*u.grid() == g) || !(*v.grid() == g) || u.cells() != A.cells || v.cells() != A.cells)
        throw GridMismatch("bilinear form arguments mismatch");
    const int n = g.size();
    const int M = A.cells;
    const double dy = 1.0 / M;
    RowDeriv deriv(g);
    std::vector<double> uz(static_cast<size_t>(M + 1) * n), vz(uz.size());
    for (int m = 0; m <= M; ++m) {
        deriv(u.row(m), &uz[static_cast<size_t>(m) * n]);
        deriv(v.row(m), &vz[static_cast<size_t>(m) * n]);
    }
    double sum = 0.0;
    for (int m = 0; m < M; ++m) {
        size_t base = static_cast<size_t>(m) * n;
        for (int j = 0; j < n; ++j) {
            double uzh = 0.5 * (uz[base + j] + uz[base + n + j]);
            double vzh = 0.5 * (vz[base + j] + vz[base + n + j]);
            double wu = (u.row(m + 1)[j] - u.row(m)[j]) / dy;
            double wv = (v.row(m + 1)[j] - v.row(m)[j]) / dy;
            sum += A.a11[base + j] * uzh * vzh + A.a22[base + j] * wu * wv +
                   A.a12[base + j] * (uzh * wv + wu * vzh);
        }
    }
    return sum * g.dz() * dy;
}

} // namespace cjet
